"""Complex coordinates on the affine set W3 of 3x3 matrices with unit line sums.

Every real 3x3 matrix whose rows and columns all sum to one is written as

    W(u, w) = B* + (2/3) Re[u M1] + (2/3) Re[w M2],      u, w complex,

with B* the uniform 1/3 matrix. The pair (u, w) multiplies like the 2x2 matrix
[[u, conj(w)], [w, conj(u)]], so the product of two matrices in W3 corresponds to

    u12 = u1 u2 + conj(w1) w2,     w12 = w1 u2 + conj(u1) w2,

where the left factor is the one applied last to a column vector
(``from_coords(compose(c1, c2)) == from_coords(c1) @ from_coords(c2)``).

Symmetric matrices are exactly those with real ``u``; they split into the
half-planes of fixed ``arg(w)`` that are closed under multiplication.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .serialize import parse_complex

DEFAULT_EPS = 1e-9
TWO_PI = 2.0 * math.pi

OMEGA = cmath.exp(2j * math.pi / 3)
B_STAR = np.full((3, 3), 1.0 / 3.0)
M1 = np.array(
    [
        [1, OMEGA, OMEGA**2],
        [OMEGA**2, 1, OMEGA],
        [OMEGA, OMEGA**2, 1],
    ],
    dtype=complex,
)
M2 = np.array(
    [
        [OMEGA**2, 1, OMEGA],
        [1, OMEGA, OMEGA**2],
        [OMEGA, OMEGA**2, 1],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class CoordUW:
    """Point (u, w) of C^2 labelling a matrix of W3."""

    u: complex
    w: complex

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "w", complex(self.w))

    def to_dict(self) -> dict:
        return {"u": [self.u.real, self.u.imag], "w": [self.w.real, self.w.imag]}

    @classmethod
    def from_dict(cls, data: dict) -> "CoordUW":
        return cls(parse_complex(data["u"]), parse_complex(data["w"]))


@dataclass(frozen=True)
class HalfPlaneCoord:
    """Symmetric point W(a, b e^{i phi}) with a real and b = |w| >= 0.

    ``all_planes`` marks w = 0, a point shared by every half-plane; such points
    carry the canonical ``phi = 0``.
    """

    phi: float
    a: float
    b: float
    all_planes: bool = False

    def __post_init__(self):
        if self.b < 0:
            raise DomainError(f"half-plane radius must be >= 0, got {self.b}")

    def to_coords(self) -> CoordUW:
        return CoordUW(self.a, self.b * cmath.exp(1j * self.phi))


@dataclass(frozen=True)
class BasisSet3:
    b_star: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    omega: complex


BASIS3 = BasisSet3(B_STAR, M1, M2, OMEGA)


def as_matrix(m, size: int = 3) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape != (size, size):
        raise DomainError(f"expected a {size}x{size} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix has non-finite entries")
    return arr


def in_w(m, eps: float = DEFAULT_EPS) -> bool:
    """All row and column sums within ``eps`` of one (any size)."""
    arr = np.asarray(m, dtype=float)
    return bool(
        np.all(np.abs(arr.sum(axis=0) - 1.0) <= eps)
        and np.all(np.abs(arr.sum(axis=1) - 1.0) <= eps)
    )


def is_bistochastic(m, eps: float = DEFAULT_EPS) -> bool:
    arr = np.asarray(m, dtype=float)
    return in_w(arr, eps) and bool(np.all(arr >= -eps))


def is_symmetric(m, eps: float = DEFAULT_EPS) -> bool:
    arr = np.asarray(m, dtype=float)
    return bool(np.all(np.abs(arr - arr.T) <= eps))


def permutation_matrix(perm) -> np.ndarray:
    """Matrix with a one at (i, perm[i]) for each row i."""
    n = len(perm)
    p = np.zeros((n, n))
    p[np.arange(n), list(perm)] = 1.0
    return p


# The six vertices of the Birkhoff polytope B3 with their coordinates.
# Keys name the permutation in cycle notation on {1, 2, 3}.
PERMUTATIONS3 = {
    "e": ((0, 1, 2), CoordUW(1, 0)),
    "(12)": ((1, 0, 2), CoordUW(0, 1)),
    "(123)": ((1, 2, 0), CoordUW(OMEGA**2, 0)),
    "(13)": ((2, 1, 0), CoordUW(0, OMEGA**2)),
    "(132)": ((2, 0, 1), CoordUW(OMEGA, 0)),
    "(23)": ((0, 2, 1), CoordUW(0, OMEGA)),
}


def from_coords(c: CoordUW) -> np.ndarray:
    return B_STAR + (2.0 / 3.0) * np.real(c.u * M1) + (2.0 / 3.0) * np.real(c.w * M2)


@lru_cache(maxsize=None)
def _basis_is_orthogonal(tol: float = 1e-12) -> bool:
    def ip(x, y):
        return np.sum(np.conj(x) * y)

    checks = [
        abs(ip(M1, M1) - 9),
        abs(ip(M2, M2) - 9),
        abs(ip(M1, M2)),
        abs(ip(M1, M1.conj())),
        abs(ip(M1, M2.conj())),
        abs(ip(M2, M2.conj())),
        abs(ip(M1, B_STAR)),
        abs(ip(M2, B_STAR)),
    ]
    return max(checks) < tol


def _solve_coords(arr: np.ndarray) -> CoordUW:
    # columns: responses to Re u, Im u, Re w, Im w
    cols = [
        from_coords(CoordUW(1, 0)) - B_STAR,
        from_coords(CoordUW(1j, 0)) - B_STAR,
        from_coords(CoordUW(0, 1)) - B_STAR,
        from_coords(CoordUW(0, 1j)) - B_STAR,
    ]
    design = np.stack([col.ravel() for col in cols], axis=1)
    x, *_ = np.linalg.lstsq(design, (arr - B_STAR).ravel(), rcond=None)
    return CoordUW(complex(x[0], x[1]), complex(x[2], x[3]))


def to_coords(m, eps: float = DEFAULT_EPS) -> CoordUW:
    """Inverse of :func:`from_coords` on W3.

    Uses the Frobenius projections u = <M1, m>/3 and w = <M2, m>/3, which are
    exact because M1, M2, their conjugates and B* are mutually orthogonal.
    """
    arr = as_matrix(m, 3)
    if not in_w(arr, eps):
        raise DomainError("matrix is not in W3: row or column sums differ from 1")
    if not _basis_is_orthogonal():
        return _solve_coords(arr)
    u = np.sum(np.conj(M1) * arr) / 3.0
    w = np.sum(np.conj(M2) * arr) / 3.0
    return CoordUW(complex(u), complex(w))


def rep2(c: CoordUW) -> np.ndarray:
    return np.array([[c.u, c.w.conjugate()], [c.w, c.u.conjugate()]], dtype=complex)


def compose(c1: CoordUW, c2: CoordUW) -> CoordUW:
    """Coordinates of ``from_coords(c1) @ from_coords(c2)``."""
    u = c1.u * c2.u + c1.w.conjugate() * c2.w
    w = c1.w * c2.u + c1.u.conjugate() * c2.w
    return CoordUW(u, w)


def spectrum(c: CoordUW) -> tuple[complex, complex, complex]:
    """Eigenvalues of W(u, w): 1 on the all-ones vector, then those of rep2."""
    re_u = c.u.real
    root = cmath.sqrt(abs(c.w) ** 2 - c.u.imag**2)
    return (1 + 0j, re_u + root, re_u - root)


def half_plane_of(c: CoordUW, eps: float = DEFAULT_EPS) -> HalfPlaneCoord:
    if abs(c.u.imag) > eps:
        raise DomainError(
            f"matrix is not symmetric: Im(u) = {c.u.imag!r} (symmetric iff u is real)"
        )
    b = abs(c.w)
    if b <= eps:
        return HalfPlaneCoord(0.0, c.u.real, b, all_planes=True)
    return HalfPlaneCoord(normalize_angle(cmath.phase(c.w)), c.u.real, b)


def normalize_angle(phi: float) -> float:
    r = math.fmod(phi, TWO_PI)
    if r < 0:
        r += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    return 0.0 if r >= TWO_PI else r


_SQRT3 = math.sqrt(3.0)
# +sec(p - pi/3)/2, -sec(p)/2, +sec(p + pi/3)/2 with the shifts expanded,
# which keeps f(0) = 1 and f(pi/3) = 1/2 exact in floating point
_F_PIECES = (
    lambda p: 1.0 / (math.cos(p) + _SQRT3 * math.sin(p)),
    lambda p: -0.5 / math.cos(p),
    lambda p: 1.0 / (math.cos(p) - _SQRT3 * math.sin(p)),
)


def boundary_f(phi: float) -> float:
    """Distance along arg(w) = phi from B* to the far edge of B3sym.

    Piecewise secant with pieces on [0, 2pi/3], [2pi/3, 4pi/3], [4pi/3, 2pi];
    exact piece boundaries go to the lower piece. Range [1/2, 1], with f = 1
    at phi in {0, 2pi/3, 4pi/3}.
    """
    p = normalize_angle(phi)
    if p <= 2 * math.pi / 3:
        return _F_PIECES[0](p)
    if p <= 4 * math.pi / 3:
        return _F_PIECES[1](p)
    return _F_PIECES[2](p)


def bistochastic_extreme_points(phi: float) -> tuple[CoordUW, CoordUW, CoordUW]:
    """Vertices of the triangle cut from B3sym by the half-plane at ``phi``."""
    return (
        CoordUW(-0.5, 0),
        CoordUW(1, 0),
        CoordUW(0, boundary_f(phi) * cmath.exp(1j * phi)),
    )


def is_positive_semidefinite(
    h: HalfPlaneCoord, strict: bool = False, eps: float = DEFAULT_EPS
) -> bool:
    """Eigenvalues of W(a, b e^{i phi}) are 1, a + b and a - b."""
    lo = h.a - h.b
    hi = h.a + h.b
    if strict:
        return lo > eps and hi > eps
    return lo >= -eps and hi >= -eps
