"""Parametrization of W4, the 4x4 matrices with unit line sums.

    W(u, w2, w3, w4, x) = B* + x X + 2 Re[u D1 + w2 D2 + w3 D3 + w4 D4]

with four complex and one real parameter, matching dim W4 = 9. The inverse is
a linear solve against the nine real basis directions. The 3x3 arrangement
returned by :func:`rep3` is checked for multiplicativity empirically by
:func:`rep3_multiplicativity_residual`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .polytope3 import DEFAULT_EPS, as_matrix, in_w
from .serialize import parse_complex

_I = 1j

B_STAR4 = np.full((4, 4), 0.25)
X4 = 0.25 * np.array(
    [
        [+1, -1, +1, -1],
        [-1, +1, -1, +1],
        [+1, -1, +1, -1],
        [-1, +1, -1, +1],
    ],
    dtype=float,
)
D1 = 0.25 * np.array(
    [
        [+1, +_I, -1, -_I],
        [-_I, +1, +_I, -1],
        [-1, -_I, +1, +_I],
        [+_I, -1, -_I, +1],
    ]
)
D2 = 0.25 * np.array(
    [
        [-_I, +1, +_I, -1],
        [+_I, -1, -_I, +1],
        [-_I, +1, +_I, -1],
        [+_I, -1, -_I, +1],
    ]
)
D3 = 0.25 * np.array(
    [
        [-1, -_I, +1, +_I],
        [-_I, +1, +_I, -1],
        [+1, +_I, -1, -_I],
        [+_I, -1, -_I, +1],
    ]
)
D4 = 0.25 * np.array(
    [
        [+_I, -_I, +_I, -_I],
        [+1, -1, +1, -1],
        [-_I, +_I, -_I, +_I],
        [-1, +1, -1, +1],
    ]
)


@dataclass(frozen=True)
class BasisSet4:
    b_star4: np.ndarray
    x_mat: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    d4: np.ndarray

    def zero_sum_matrices(self) -> tuple[np.ndarray, ...]:
        return (self.x_mat, self.d1, self.d2, self.d3, self.d4)


BASIS4 = BasisSet4(B_STAR4, X4, D1, D2, D3, D4)


@dataclass(frozen=True)
class Coord4:
    u: complex = 0j
    w2: complex = 0j
    w3: complex = 0j
    w4: complex = 0j
    x: float = 0.0

    def __post_init__(self):
        for name in ("u", "w2", "w3", "w4"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "x", float(self.x))

    def to_real(self) -> np.ndarray:
        return np.array(
            [
                self.u.real, self.u.imag,
                self.w2.real, self.w2.imag,
                self.w3.real, self.w3.imag,
                self.w4.real, self.w4.imag,
                self.x,
            ]
        )

    @classmethod
    def from_real(cls, v) -> "Coord4":
        v = [float(z) for z in v]
        return cls(complex(v[0], v[1]), complex(v[2], v[3]), complex(v[4], v[5]), complex(v[6], v[7]), v[8])

    def to_dict(self) -> dict:
        out = {k: [getattr(self, k).real, getattr(self, k).imag] for k in ("u", "w2", "w3", "w4")}
        out["x"] = self.x
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Coord4":
        return cls(
            parse_complex(data.get("u", 0)),
            parse_complex(data.get("w2", 0)),
            parse_complex(data.get("w3", 0)),
            parse_complex(data.get("w4", 0)),
            float(data.get("x", 0.0)),
        )


def from_coords4(c: Coord4) -> np.ndarray:
    return B_STAR4 + c.x * X4 + 2.0 * np.real(c.u * D1 + c.w2 * D2 + c.w3 * D3 + c.w4 * D4)


def _design_matrix() -> np.ndarray:
    cols = []
    for k in range(9):
        e = np.zeros(9)
        e[k] = 1.0
        cols.append((from_coords4(Coord4.from_real(e)) - B_STAR4).ravel())
    return np.stack(cols, axis=1)


_DESIGN = _design_matrix()
_PINV = np.linalg.pinv(_DESIGN)


def to_coords4(m, eps: float = DEFAULT_EPS) -> Coord4:
    arr = as_matrix(m, 4)
    if not in_w(arr, eps):
        raise DomainError("matrix is not in W4: row or column sums differ from 1")
    return Coord4.from_real(_PINV @ (arr - B_STAR4).ravel())


def rep3(c: Coord4) -> np.ndarray:
    return np.array(
        [
            [c.u, c.w3.conjugate(), c.w4],
            [c.w3, c.u.conjugate(), c.w4.conjugate()],
            [c.w2, c.w2.conjugate(), c.x],
        ],
        dtype=complex,
    )


def compose4(c1: Coord4, c2: Coord4) -> Coord4:
    return to_coords4(from_coords4(c1) @ from_coords4(c2))


def random_coord4(rng: np.random.Generator, scale: float = 1.0) -> Coord4:
    return Coord4.from_real(rng.uniform(-scale, scale, size=9))


@dataclass(frozen=True)
class MultiplicativityReport:
    pairs: int
    max_residual: float
    threshold: float

    @property
    def holds(self) -> bool:
        return self.max_residual < self.threshold


def rep3_multiplicativity_residual(
    pairs: int = 1000, seed: int = 0, threshold: float = 1e-10
) -> MultiplicativityReport:
    """max |rep3(c1 c2) - rep3(c1) rep3(c2)| over random pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(pairs):
        c1, c2 = random_coord4(rng), random_coord4(rng)
        resid = np.abs(rep3(compose4(c1, c2)) - rep3(c1) @ rep3(c2)).max()
        worst = max(worst, float(resid))
    return MultiplicativityReport(pairs, worst, threshold)
