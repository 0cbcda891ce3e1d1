"""Brute-force checks, kept independent of the closed-form classifier.

Roots are found by eigenvalue-branch enumeration: a symmetric root of a
symmetric W(a, b e^{i phi}) commutes with it, so for b > 0 it shares the
eigenvectors and only the real roots of the eigenvalues a + b and a - b need
to be tried. For w = 0 the traceless eigenspace is degenerate and candidate
roots are additionally swept over a grid of half-planes.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .classifier import classify
from .polytope3 import (
    DEFAULT_EPS,
    M1,
    M2,
    HalfPlaneCoord,
    boundary_f,
    from_coords,
    is_bistochastic,
    normalize_angle,
)

ROOT_TOL = 1e-9
CONE_TOL = 1e-12
DEFAULT_N_MAX = 12
# half-planes tried for roots of w = 0 matrices
_SWEEP_PHIS = tuple(2 * math.pi * k / 360 for k in range(360))


def _real_roots(lam: float, n: int) -> list[float]:
    if lam == 0.0:
        return [0.0]
    out = []
    if abs(lam) < 1e-12:
        out.append(0.0)
    r = abs(lam) ** (1.0 / n)
    if lam > 0:
        out.append(r)
        if n % 2 == 0:
            out.append(-r)
    elif n % 2 == 1:
        out.append(-r)
    return out


def _candidate(mu_plus: float, mu_minus: float, phi: float) -> HalfPlaneCoord:
    a = 0.5 * (mu_plus + mu_minus)
    b = 0.5 * (mu_plus - mu_minus)
    if b < 0:
        return HalfPlaneCoord(normalize_angle(phi + math.pi), a, -b)
    return HalfPlaneCoord(normalize_angle(phi), a, b)


def _verified(root: HalfPlaneCoord, target: np.ndarray, n: int, eps: float) -> bool:
    m = from_coords(root.to_coords())
    if not is_bistochastic(m, eps):
        return False
    return bool(np.abs(np.linalg.matrix_power(m, n) - target).max() < ROOT_TOL)


def _iter_roots(h: HalfPlaneCoord, n: int, eps: float):
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    target = from_coords(h.to_coords())
    plus = _real_roots(h.a + h.b, n)
    minus = _real_roots(h.a - h.b, n)
    candidates = [_candidate(p, q, h.phi) for p in plus for q in minus]
    if h.b <= eps:
        for p in plus:
            for q in minus:
                if p != q:
                    candidates.extend(_candidate(p, q, phi) for phi in _SWEEP_PHIS)
    seen = set()
    for c in candidates:
        key = (round(c.a, 12), round(c.b, 12), round(c.phi, 12) if c.b > eps else 0.0)
        if key in seen:
            continue
        seen.add(key)
        if _verified(c, target, n, eps):
            yield c


def nth_roots(h: HalfPlaneCoord, n: int, eps: float = DEFAULT_EPS) -> list[HalfPlaneCoord]:
    """Symmetric bistochastic nth roots of W(a, b e^{i phi}) among the real branches.

    Each returned root is bistochastic and reproduces the input to 1e-9 when
    raised to the nth power as a 3x3 matrix.
    """
    return list(_iter_roots(h, n, eps))


def first_missing_root(
    h: HalfPlaneCoord, n_max: int = DEFAULT_N_MAX, eps: float = DEFAULT_EPS
) -> int | None:
    """Smallest n <= n_max with no root found, or None."""
    for n in range(1, n_max + 1):
        if next(_iter_roots(h, n, eps), None) is None:
            return n
    return None


def is_inf_divisible(h: HalfPlaneCoord, n_max: int = DEFAULT_N_MAX, eps: float = DEFAULT_EPS) -> bool:
    """True iff roots exist for every n <= n_max.

    Only a necessary condition for infinite divisibility: the quantifier over
    all n is truncated at ``n_max``.
    """
    return first_missing_root(h, n_max, eps) is None


def cone_generator(theta: float, phi: float) -> np.ndarray:
    return (2.0 / 3.0) * np.real(-math.cos(theta) * M1 + math.sin(theta) * cmath.exp(1j * phi) * M2)


def generator_cone_check(theta: float, phi: float) -> bool:
    """Off-diagonal entries of the symmetric generator at (theta, phi) are >= 0."""
    l = cone_generator(theta, phi)
    off = l[~np.eye(3, dtype=bool)]
    return bool(np.all(off >= -CONE_TOL))


def f_numeric(phi: float, tol: float = 1e-7) -> float:
    """Largest tan(theta) accepted by :func:`generator_cone_check`, by bisection."""
    lo, hi = 0.0, 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if generator_cone_check(math.atan(mid), phi):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class SweepRow:
    phi: float
    a: float
    b: float
    classifier_verdict: str
    oracle_verdict: bool
    agree: bool
    boundary_distance: float


def boundary_distance(h: HalfPlaneCoord) -> float:
    """Distance to the nearest place where the verdict may legitimately flip.

    Measured as the smaller of |a - b| and, when a > b, |tan(theta) - f(phi)|
    (tan(theta) evaluated without any tolerance gate).
    """
    d = abs(h.a - h.b)
    if h.a > h.b and h.a + h.b <= 1.0:
        lo, hi = math.log(h.a - h.b), math.log(h.a + h.b)
        if lo + hi != 0.0:
            d = min(d, abs((lo - hi) / (lo + hi) - boundary_f(h.phi)))
    return d


def triangle_grid(phis, steps: int) -> list[HalfPlaneCoord]:
    """Barycentric lattice of each bistochastic triangle, ``steps`` intervals per edge."""
    out = []
    for phi in phis:
        f = boundary_f(phi)
        verts = np.array([[-0.5, 0.0], [1.0, 0.0], [0.0, f]])
        for i in range(steps + 1):
            for j in range(steps + 1 - i):
                k = steps - i - j
                a, b = (i * verts[0] + j * verts[1] + k * verts[2]) / steps
                out.append(HalfPlaneCoord(float(phi), float(a), max(float(b), 0.0)))
    return out


def agreement_sweep(points, n_max: int = DEFAULT_N_MAX, eps: float = DEFAULT_EPS) -> list[SweepRow]:
    rows = []
    for h in points:
        verdict = classify(h, eps).markov_class
        oracle = is_inf_divisible(h, n_max, eps)
        rows.append(
            SweepRow(h.phi, h.a, h.b, verdict.value, oracle, verdict.divisible == oracle, boundary_distance(h))
        )
    rows.sort(key=lambda r: (r.phi, r.a, r.b))
    return rows
