"""One-parameter semigroups inside W3 and a reference matrix exponential.

Two time conventions coexist and are deliberately not unified:

* :func:`general_point` uses unit decay rate; the semigroup (a, b) has 2x2
  generator ``-I + [[i a, conj(b)], [b, -i a]]``.
* :func:`sym_point` uses unit speed in the direction (-cos theta, sin theta):
  ``sym_point(theta, phi, t) == general_point(SemigroupSpec(0, tan(theta) e^{i phi}), t cos(theta))``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .polytope3 import DEFAULT_EPS, M1, M2, CoordUW, from_coords, is_bistochastic

# below this |Delta| the hyperbolic/trigonometric split is replaced by its series
DEGENERATE_DELTA = 1e-7


@dataclass(frozen=True)
class SemigroupSpec:
    a: float
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", complex(self.b))

    @property
    def discriminant(self) -> float:
        return abs(self.b) ** 2 - self.a**2

    @property
    def delta(self) -> float | None:
        d = self.discriminant
        return math.sqrt(d) if d > 0 else None

    @property
    def gamma(self) -> float | None:
        d = self.discriminant
        return math.sqrt(-d) if d < 0 else None


def symmetric_spec(theta: float, phi: float) -> tuple[SemigroupSpec, float]:
    """General-form spec of the symmetric semigroup (theta, phi) and its time scale.

    Returns ``(spec, cos(theta))``: symmetric time ``t`` corresponds to general
    time ``t * cos(theta)``. Undefined at theta = pi/2.
    """
    c = math.cos(theta)
    if abs(c) < 1e-15:
        raise DomainError("theta = pi/2 has no unit-decay form (pure growth direction)")
    return SemigroupSpec(0.0, math.tan(theta) * cmath.exp(1j * phi)), c


def sym_point(theta: float, phi: float, t: float) -> CoordUW:
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    decay = math.exp(-t * math.cos(theta))
    s = t * math.sin(theta)
    u = decay * math.cosh(s)
    radius = decay * math.sinh(s)
    return CoordUW(u, radius * cmath.exp(1j * phi))


def _even_odd_series(z: float, t: float) -> tuple[float, float]:
    """cosh(sqrt(z) t) and sinh(sqrt(z) t)/sqrt(z) as power series in z t^2."""
    x = z * t * t
    c_term, s_term = 1.0, t
    c_sum, s_sum = c_term, s_term
    k = 0
    while True:
        k += 1
        c_term *= x / ((2 * k - 1) * (2 * k))
        s_term *= x / ((2 * k) * (2 * k + 1))
        c_sum += c_term
        s_sum += s_term
        if abs(c_term) <= 1e-17 * abs(c_sum) and abs(s_term) <= 1e-17 * abs(s_sum):
            break
        if k > 200:
            break
    return c_sum, s_sum


def _even_odd(spec: SemigroupSpec, t: float) -> tuple[float, float]:
    d = spec.discriminant
    root = math.sqrt(abs(d))
    if root < DEGENERATE_DELTA:
        return _even_odd_series(d, t)
    if d > 0:
        return math.cosh(root * t), math.sinh(root * t) / root
    return math.cos(root * t), math.sin(root * t) / root


def general_point(spec: SemigroupSpec, t: float) -> CoordUW:
    """Point at time ``t`` of the semigroup through the identity with tangent (-1 + i a, b).

    The hyperbolic branch (|b| > |a|), trigonometric branch (|a| > |b|) and
    the degenerate |a| = |b| limit all come from ``(C + i a S) e^{-t}``,
    ``b S e^{-t}`` with C, S the even and odd parts of the 2x2 exponential.
    """
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    c, s = _even_odd(spec, t)
    decay = math.exp(-t)
    return CoordUW(complex(c, spec.a * s) * decay, spec.b * (s * decay))


def generator(spec: SemigroupSpec) -> np.ndarray:
    """Real 3x3 generator L with exp(tL) = from_coords(general_point(spec, t))."""
    return (2.0 / 3.0) * np.real(complex(-1.0, spec.a) * M1 + spec.b * M2)


def is_markov_generator(l, eps: float = DEFAULT_EPS) -> bool:
    """Zero row and column sums and nonnegative off-diagonal entries."""
    arr = np.asarray(l, dtype=float)
    sums_ok = np.all(np.abs(arr.sum(axis=0)) <= 1e-12) and np.all(np.abs(arr.sum(axis=1)) <= 1e-12)
    off = arr[~np.eye(arr.shape[0], dtype=bool)]
    return bool(sums_ok and np.all(off >= -eps))


def expm(l, t: float = 1.0) -> np.ndarray:
    """exp(t * l) by scaling and squaring around a truncated Taylor series."""
    a = np.asarray(l, dtype=float if np.isrealobj(l) else complex) * t
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expm needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("expm input has non-finite entries")
    norm = np.abs(a).sum(axis=0).max()
    squarings = 0
    if norm > 0.5:
        squarings = int(math.ceil(math.log2(norm / 0.5)))
    a = a / (2.0**squarings)
    n = a.shape[0]
    result = np.eye(n, dtype=a.dtype)
    term = np.eye(n, dtype=a.dtype)
    # ||a|| <= 1/2, so 22 terms leave a remainder far below 2^-53
    for k in range(1, 23):
        term = term @ a / k
        result = result + term
        if np.abs(term).max() <= 1e-18 * np.abs(result).max():
            break
    for _ in range(squarings):
        result = result @ result
    return result


def neutral_family_point(phi: float, t: float) -> CoordUW:
    """Semigroup with the idempotent W(1/2, e^{i phi}/2) as its neutral element."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    r = 0.5 * math.exp(-t)
    return CoordUW(r, r * cmath.exp(1j * phi))


def stays_bistochastic(
    spec: SemigroupSpec, horizon: float, samples: int = 1001, eps: float = DEFAULT_EPS
) -> bool:
    """Sampled check that the orbit stays in B3 on [0, horizon].

    A sampled test, not a proof; see :func:`is_markov_generator` for the exact
    sufficient condition on the generator.
    """
    for t in np.linspace(0.0, horizon, samples):
        if not is_bistochastic(from_coords(general_point(spec, float(t))), eps):
            return False
    return True


def trajectory(spec: SemigroupSpec, times) -> list[tuple[float, CoordUW]]:
    return [(float(t), general_point(spec, float(t))) for t in times]
