"""Tabular data behind the standard pictures of B3, its half-planes and the Pauli tetrahedron.

Every function returns ``(header, rows)`` and is deterministic; rendering is
left to the caller.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .polytope3 import (
    PERMUTATIONS3,
    CoordUW,
    bistochastic_extreme_points,
    boundary_f,
)
from .qubit import RateVector, markov_family
from .semigroups import SemigroupSpec, general_point, sym_point


def _is_cycle(perm) -> bool:
    """True for a single cycle of length >= 2 (fixed points allowed)."""
    moved = [i for i in range(len(perm)) if perm[i] != i]
    if not moved:
        return False
    seen, j = set(), moved[0]
    while j not in seen:
        seen.add(j)
        j = perm[j]
    return len(seen) == len(moved)


def polytope3():
    """Vertices of B3 in (u, w) and its edges.

    Two permutation matrices span an edge iff one permutation applied after the
    inverse of the other is a single cycle; in S3 every pair qualifies.
    """
    header = ["kind", "label", "re_u", "im_u", "re_w", "im_w"]
    rows = []
    for label, (_, c) in PERMUTATIONS3.items():
        rows.append(["vertex", label, c.u.real, c.u.imag, c.w.real, c.w.imag])
    for (l1, (p1, c1)), (l2, (p2, c2)) in itertools.combinations(PERMUTATIONS3.items(), 2):
        inv = [0] * 3
        for i, j in enumerate(p1):
            inv[j] = i
        if _is_cycle([p2[inv[k]] for k in range(3)]):
            for c in (c1, c2):
                rows.append(["edge", f"{l1}-{l2}", c.u.real, c.u.imag, c.w.real, c.w.imag])
    return header, rows


def bipyramid():
    """B3sym as a trigonal bipyramid in (u, Re w, Im w)."""
    apexes = {"e": CoordUW(1, 0), "((123)+(132))/2": CoordUW(-0.5, 0)}
    equator = {k: PERMUTATIONS3[k][1] for k in ("(12)", "(13)", "(23)")}
    header = ["kind", "label", "u", "re_w", "im_w"]
    rows = []
    for label, c in {**apexes, **equator}.items():
        rows.append(["vertex", label, c.u.real, c.w.real, c.w.imag])
    pairs = list(itertools.combinations(equator.items(), 2))
    pairs += [(ap, eq) for ap in apexes.items() for eq in equator.items()]
    for (l1, c1), (l2, c2) in pairs:
        for c in (c1, c2):
            rows.append(["edge", f"{l1}-{l2}", c.u.real, c.w.real, c.w.imag])
    return header, rows


def halfplane(phi: float, samples: int = 50, t_max: float = 10.0):
    """Regions of the half-plane ``phi`` in (a, b): bistochastic triangle,
    positive-definite wedge clipped to a <= 1, and sample semigroup curves."""
    header = ["series", "a", "b"]
    rows = []
    tri = bistochastic_extreme_points(phi)
    for c in tri + tri[:1]:
        rows.append(["bistochastic", c.u.real, abs(c.w)])
    for a, b in ((0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 0.0)):
        rows.append(["positive_definite", a, b])
    f = boundary_f(phi)
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        theta = math.atan(frac * f)
        name = f"semigroup_tan_theta={frac * f!r}"
        for t in np.linspace(0.0, t_max, samples):
            c = sym_point(theta, phi, float(t))
            rows.append([name, c.u.real, abs(c.w)])
    return header, rows


def boundary(samples: int = 720):
    header = ["phi", "f"]
    rows = []
    for k in range(samples):
        phi = 2 * math.pi * k / samples
        rows.append([phi, boundary_f(phi)])
    return header, rows


def semigroup(spec: SemigroupSpec, t_max: float = 10.0, steps: int = 200, extra_times=()):
    header = ["t", "re_u", "im_u", "re_w", "im_w"]
    times = sorted(set(float(t) for t in np.linspace(0.0, t_max, steps + 1)) | set(map(float, extra_times)))
    rows = []
    for t in times:
        c = general_point(spec, t)
        rows.append([t, c.u.real, c.u.imag, c.w.real, c.w.imag])
    return header, rows


_TETRA = {"id": (0.0, 0.0, 0.0), "x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}


def pauli(layers: int = 5, rates: RateVector | None = None, t_max: float = 5.0, steps: int = 50):
    """Pauli tetrahedron in (ax, ay, az), foliation layers and an optional Markov family.

    Layer lambda is the cut ax + ay = (1 - lambda) / 2, intersected with the
    six tetrahedron edges.
    """
    header = ["kind", "label", "ax", "ay", "az"]
    rows = [["vertex", k, *v] for k, v in _TETRA.items()]
    verts = list(_TETRA.items())
    for k in range(layers + 1):
        lam = -1.0 + 2.0 * k / layers
        level = 0.5 * (1.0 - lam)
        pts = []
        for (_, p), (_, q) in itertools.combinations(verts, 2):
            sp, sq = p[0] + p[1], q[0] + q[1]
            if sp == sq:
                if sp == level:
                    pts.extend([p, q])
                continue
            s = (level - sp) / (sq - sp)
            if 0.0 <= s <= 1.0:
                pts.append(tuple(pi + s * (qi - pi) for pi, qi in zip(p, q)))
        for pt in sorted(set(pts)):
            rows.append(["layer", f"lambda={lam!r}", *pt])
    if rates is not None:
        for t in np.linspace(0.0, t_max, steps + 1):
            ch = markov_family(rates, float(t))
            rows.append(["family", f"t={float(t)!r}", ch.ax, ch.ay, ch.az])
    return header, rows


FIGURES = ("polytope3", "bipyramid", "halfplane", "boundary", "semigroup", "pauli")
