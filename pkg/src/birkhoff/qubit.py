"""Pauli channels and their classical 2x2 bistochastic shadows.

A Pauli channel rho -> a0 rho + sum_g a_g s_g rho s_g moves the diagonal of rho
by the symmetric bistochastic matrix [[a0 + az, ax + ay], [ax + ay, a0 + az]],
no matter what the coherence is. Channels sharing that matrix form one layer
of a foliation, labelled by lambda = 1 - 2 (ax + ay).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class DensityMatrix2:
    p1: float
    p2: float
    c: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        if self.p1 < -TOL or self.p2 < -TOL:
            raise DomainError("populations must be nonnegative")
        if abs(self.p1 + self.p2 - 1.0) > 1e-9:
            raise DomainError(f"populations must sum to 1, got {self.p1 + self.p2}")
        if self.p1 * self.p2 - abs(self.c) ** 2 < -1e-9:
            raise DomainError("state is not positive: p1 p2 < |c|^2")

    def matrix(self) -> np.ndarray:
        return np.array([[self.p1, self.c], [self.c.conjugate(), self.p2]], dtype=complex)

    @classmethod
    def from_matrix(cls, rho) -> "DensityMatrix2":
        rho = np.asarray(rho, dtype=complex)
        return cls(float(rho[0, 0].real), float(rho[1, 1].real), complex(rho[0, 1]))

    def to_dict(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "c": [self.c.real, self.c.imag]}


@dataclass(frozen=True)
class PauliChannel:
    ax: float
    ay: float
    az: float

    def __post_init__(self):
        for name in ("ax", "ay", "az"):
            if getattr(self, name) < -TOL:
                raise DomainError(f"{name} = {getattr(self, name)!r} is negative")
        if self.a0 < -TOL:
            raise DomainError(f"a0 = 1 - ax - ay - az = {self.a0!r} is negative")

    @property
    def a0(self) -> float:
        return 1.0 - self.ax - self.ay - self.az

    def to_dict(self) -> dict:
        return {"ax": self.ax, "ay": self.ay, "az": self.az}


@dataclass(frozen=True)
class RateVector:
    vx: float
    vy: float
    vz: float

    def __post_init__(self):
        if min(self.vx, self.vy, self.vz) < 0:
            raise DomainError("decay rates must be nonnegative")

    @property
    def is_completely_positive(self) -> bool:
        """Each rate is at most the sum of the other two.

        Equivalent to nonnegative Lindblad rates (vy + vz - vx) / 4 etc., and
        to every member of the family being a valid channel.
        """
        vx, vy, vz = self.vx, self.vy, self.vz
        return vx <= vy + vz + TOL and vy <= vx + vz + TOL and vz <= vx + vy + TOL


def apply_channel(ch: PauliChannel, rho: DensityMatrix2) -> DensityMatrix2:
    r = rho.matrix()
    out = ch.a0 * r
    for coeff, s in ((ch.ax, SIGMA_X), (ch.ay, SIGMA_Y), (ch.az, SIGMA_Z)):
        out = out + coeff * (s @ r @ s)
    return DensityMatrix2.from_matrix(out)


def to_classical(ch: PauliChannel) -> np.ndarray:
    keep = ch.a0 + ch.az
    flip = ch.ax + ch.ay
    return np.array([[keep, flip], [flip, keep]])


def layer_matrix(lam: float) -> np.ndarray:
    return 0.5 * np.array([[1 + lam, 1 - lam], [1 - lam, 1 + lam]])


def layer_lambda(ch: PauliChannel) -> float:
    return 1.0 - 2.0 * (ch.ax + ch.ay)


def transfer_eigenvalues(ch: PauliChannel) -> tuple[float, float, float]:
    """Factors by which the channel scales sigma_x, sigma_y, sigma_z."""
    a0 = ch.a0
    return (
        a0 + ch.ax - ch.ay - ch.az,
        a0 - ch.ax + ch.ay - ch.az,
        a0 - ch.ax - ch.ay + ch.az,
    )


def compose_channels(first: PauliChannel, second: PauliChannel) -> PauliChannel:
    """Coefficients of ``second`` applied after ``first``.

    Pauli operators multiply like the Klein four-group up to phases, which
    cancel in s rho s, so coefficients convolve over that group.
    """
    p = (first.a0, first.ax, first.ay, first.az)
    q = (second.a0, second.ax, second.ay, second.az)
    out = [0.0] * 4
    for i in range(4):
        for j in range(4):
            out[i ^ j] += p[i] * q[j]
    return PauliChannel(out[1], out[2], out[3])


def family_coefficients(v: RateVector, t: float) -> tuple[float, float, float]:
    """(ax, ay, az) of the affine family, without channel validation."""
    ex, ey, ez = math.exp(-v.vx * t), math.exp(-v.vy * t), math.exp(-v.vz * t)
    return (
        0.25 * (1 + ex - ey - ez),
        0.25 * (1 - ex + ey - ez),
        0.25 * (1 - ex - ey + ez),
    )


def markov_family(v: RateVector, t: float) -> PauliChannel:
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if not v.is_completely_positive:
        raise DomainError(
            "rates violate vx <= vy + vz (and permutations): the family leaves the "
            "set of channels for small t"
        )
    return PauliChannel(*family_coefficients(v, t))


def consistency_residual(v: RateVector, t: float) -> float:
    """|a0 + az - (1 + e^{-vz t}) / 2| for the family at time t."""
    ax, ay, az = family_coefficients(v, t)
    a0 = 1.0 - ax - ay - az
    return abs(a0 + az - 0.5 * (1.0 + math.exp(-v.vz * t)))
