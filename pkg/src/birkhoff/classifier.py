"""Markov embeddability of symmetric bistochastic 3x3 matrices.

A symmetric matrix W(a, b e^{i phi}) (b >= 0) with a > b lies on exactly one
symmetric semigroup of the half-plane phi, the one with

    tan(theta) = (ln(a - b) - ln(a + b)) / (ln(a - b) + ln(a + b)),

and that semigroup stays bistochastic iff 0 <= tan(theta) <= f(phi). Matrices
with a < b have a negative eigenvalue and lie on no such semigroup. On a = b
only B*, and W(1/2, e^{i phi}/2) for the three phi with f(phi) = 1, are limits
of Markov semigroups; the open segments 0 < a = b < 1/2 at those phi are
infinitely divisible without being Markov limits.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .polytope3 import (
    DEFAULT_EPS,
    HalfPlaneCoord,
    as_matrix,
    boundary_f,
    from_coords,
    half_plane_of,
    in_w,
    is_bistochastic,
    is_positive_semidefinite,
    to_coords,
)

SPECIAL_PHIS = (0.0, 2 * math.pi / 3, 4 * math.pi / 3)


class MarkovClass(str, enum.Enum):
    MARKOV_INTERIOR = "MARKOV_INTERIOR"
    MARKOV_LIMIT_BOUNDARY = "MARKOV_LIMIT_BOUNDARY"
    DIVISIBLE_NOT_MARKOV_LIMIT = "DIVISIBLE_NOT_MARKOV_LIMIT"
    NOT_MARKOV = "NOT_MARKOV"

    @property
    def divisible(self) -> bool:
        return self is not MarkovClass.NOT_MARKOV


@dataclass(frozen=True)
class Classification:
    in_B3sym: bool
    positive_semidefinite: bool
    positive_definite: bool
    markov_class: MarkovClass
    theta: float | None
    phi: float
    a: float
    b: float
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        has_theta = self.markov_class in (
            MarkovClass.MARKOV_INTERIOR,
            MarkovClass.MARKOV_LIMIT_BOUNDARY,
        )
        if has_theta != (self.theta is not None):
            raise ValueError("theta must be set exactly for Markov verdicts")

    def to_dict(self) -> dict:
        return {
            "in_B3sym": self.in_B3sym,
            "positive_semidefinite": self.positive_semidefinite,
            "positive_definite": self.positive_definite,
            "markov_class": self.markov_class.value,
            "theta": self.theta,
            "tan_theta": None if self.theta is None else math.tan(self.theta),
            "phi": self.phi,
            "a": self.a,
            "b": self.b,
            "notes": list(self.notes),
        }


def theta_of(a: float, b: float) -> float:
    """tan(theta) of the symmetric semigroup through W(a, b e^{i phi}).

    Bistochastic inputs have a + b <= 1, which makes the result nonnegative;
    the identity itself holds for any a > b >= 0 off the identity matrix.
    """
    if b < 0:
        raise DomainError(f"b must be >= 0, got {b}")
    if a <= b:
        raise DomainError(
            "tan(theta) needs a > b; for a < b there is no semigroup, "
            "for a = b only the special limit points qualify"
        )
    lo = math.log(a - b)
    hi = math.log(a + b)
    if lo + hi == 0.0:
        raise DomainError("theta undefined: identity belongs to every semigroup")
    return (lo - hi) / (lo + hi)


def _angle_close(phi: float, target: float, eps: float) -> bool:
    d = abs(phi - target) % (2 * math.pi)
    return min(d, 2 * math.pi - d) <= eps


def _at_special_phi(h: HalfPlaneCoord, eps: float) -> bool:
    return any(_angle_close(h.phi, p, eps) for p in SPECIAL_PHIS)


def classify(h: HalfPlaneCoord, eps: float = DEFAULT_EPS) -> Classification:
    m = from_coords(h.to_coords())
    if not in_w(m, eps):
        raise DomainError("matrix is outside W3 within tolerance")
    a, b, phi = h.a, h.b, h.phi
    in_b = is_bistochastic(m, eps)
    psd = is_positive_semidefinite(h, strict=False, eps=eps)
    pd = is_positive_semidefinite(h, strict=True, eps=eps)
    notes: list[str] = []

    def verdict(cls, theta=None):
        return Classification(in_b, psd, pd, cls, theta, phi, a, b, notes)

    if not in_b:
        notes.append("matrix has negative entries (not in B3sym)")
        return verdict(MarkovClass.NOT_MARKOV)

    # a = b is decided before any logarithm: tan(theta) -> 1 there for every point
    if abs(a - b) <= eps:
        if abs(a) <= eps:
            notes.append("B*: limit of every Markov semigroup")
            return verdict(MarkovClass.MARKOV_LIMIT_BOUNDARY, 0.0)
        if _at_special_phi(h, eps):
            if abs(a - 0.5) <= eps:
                notes.append("idempotent W(1/2, e^{i phi}/2): limit of the tan(theta) = 1 semigroup")
                return verdict(MarkovClass.MARKOV_LIMIT_BOUNDARY, math.pi / 4)
            if 0.0 < a < 0.5:
                notes.append("on a non-identity-neutral semigroup: divisible but not a Markov limit")
                return verdict(MarkovClass.DIVISIBLE_NOT_MARKOV_LIMIT)
        notes.append("a = b outside the special points")
        return verdict(MarkovClass.NOT_MARKOV)

    if a < b:
        notes.append("a < b: negative eigenvalue a - b, on no semigroup")
        return verdict(MarkovClass.NOT_MARKOV)

    if abs(a - 1.0) <= eps and b <= eps:
        notes.append("identity belongs to every semigroup")
        return verdict(MarkovClass.MARKOV_INTERIOR, 0.0)

    tan_theta = theta_of(a, b)
    f = boundary_f(phi)
    if tan_theta < -eps:
        notes.append(f"tan(theta) = {tan_theta!r} < 0")
        return verdict(MarkovClass.NOT_MARKOV)
    theta = math.atan(max(tan_theta, 0.0))
    if abs(tan_theta - f) <= eps:
        notes.append(f"tan(theta) = f(phi) = {f!r}")
        return verdict(MarkovClass.MARKOV_LIMIT_BOUNDARY, theta)
    if tan_theta < f:
        return verdict(MarkovClass.MARKOV_INTERIOR, theta)
    notes.append(f"tan(theta) = {tan_theta!r} exceeds f(phi) = {f!r}")
    return verdict(MarkovClass.NOT_MARKOV)


def classify_matrix(m, eps: float = DEFAULT_EPS) -> Classification:
    arr = as_matrix(m, 3)
    if not in_w(arr, eps):
        raise DomainError("matrix is not in W3: row or column sums differ from 1")
    return classify(half_plane_of(to_coords(arr, eps), eps), eps)
