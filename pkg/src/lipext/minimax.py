"""Exact weighted planar 1-center: minimise max_i w_i |z - q_i| over z.

The minimiser is pinned by at most three active constraints, so it is one
of: an input point, the equaliser of a pair on its segment, or a point
where three weighted distances agree.  All candidates are enumerated and
evaluated; the best one is the global optimum.

Equal-weighted-distance loci are handled in the implicit form
``a|z|^2 + Re(conj(b) z) + c = 0`` (a circle, or a line when a = 0), which
avoids the blow-up of the centre/radius form as the weight ratio tends to 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import EmptyInput, NonpositiveWeight

ACTIVE_RTOL = 1e-7


class Conic(NamedTuple):
    """Zero set of a|z|^2 + Re(conj(b) z) + c."""

    a: float
    b: complex
    c: float

    def __call__(self, z: complex) -> float:
        return self.a * abs(z) ** 2 + (self.b.conjugate() * z).real + self.c


def equal_distance_locus(qi: complex, wi: float, qj: complex, wj: float) -> Conic:
    """{z : wi |z - qi| = wj |z - qj|}, squared out."""
    a = wi * wi - wj * wj
    b = -2 * (wi * wi * qi - wj * wj * qj)
    c = wi * wi * abs(qi) ** 2 - wj * wj * abs(qj) ** 2
    return Conic(a, b, c)


def level_circle(q: complex, w: float, level: float) -> Conic:
    """{z : w |z - q| = level}."""
    return Conic(w * w, -2 * w * w * q, w * w * abs(q) ** 2 - level * level)


def _line_circle(line_b: complex, line_c: float, circ: Conic) -> list[complex]:
    nb = abs(line_b)
    u = 1j * line_b / nb
    z0 = -(line_c / nb) * (line_b / nb)
    qa = circ.a
    qb = 2 * circ.a * (z0.conjugate() * u).real + (circ.b.conjugate() * u).real
    qc = circ(z0)
    disc = qb * qb - 4 * qa * qc
    scale = qb * qb + abs(4 * qa * qc)
    if disc < 0:
        if disc < -1e-12 * scale:
            return []
        disc = 0.0
    root = math.sqrt(disc)
    # numerically stable quadratic roots
    if qb >= 0:
        t1 = (-qb - root) / (2 * qa)
        t2 = (2 * qc) / (-qb - root) if (qb + root) != 0 else t1
    else:
        t1 = (-qb + root) / (2 * qa)
        t2 = (2 * qc) / (-qb + root)
    return [z0 + t1 * u, z0 + t2 * u]


def intersect(e1: Conic, e2: Conic) -> list[complex]:
    """Common points of two circles/lines (at most two; [] if none or if the
    curves coincide)."""
    s1 = abs(e1.a) + abs(e1.b)
    s2 = abs(e2.a) + abs(e2.b)
    if s1 == 0 or s2 == 0:
        return []
    lin1 = abs(e1.a) <= 1e-14 * s1
    lin2 = abs(e2.a) <= 1e-14 * s2
    if lin1 and lin2:
        # Re(conj(b1) z) = -c1, Re(conj(b2) z) = -c2
        m = np.array([[e1.b.real, e1.b.imag], [e2.b.real, e2.b.imag]])
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) <= 1e-14 * abs(e1.b) * abs(e2.b):
            return []
        x, y = np.linalg.solve(m, [-e1.c, -e2.c])
        return [complex(x, y)]
    if lin1:
        return _line_circle(e1.b, e1.c, e2)
    if lin2:
        return _line_circle(e2.b, e2.c, e1)
    # radical axis: a2*E1 - a1*E2 kills the quadratic term
    lb = e2.a * e1.b - e1.a * e2.b
    lc = e2.a * e1.c - e1.a * e2.c
    if abs(lb) <= 1e-14 * (abs(e2.a * e1.b) + abs(e1.a * e2.b)):
        return []
    circ = e1 if abs(e1.a) >= abs(e2.a) else e2
    return _line_circle(lb, lc, circ)


def circle_samples(e: Conic, count: int = 8) -> list[complex]:
    """Evenly spaced points on a circle-type conic (none for lines)."""
    if e.a == 0:
        return []
    center = -e.b / (2 * e.a)
    r2 = abs(center) ** 2 - e.c / e.a
    if r2 < 0:
        return []
    r = math.sqrt(r2)
    return [center + r * complex(math.cos(t), math.sin(t))
            for t in (2 * math.pi * k / count for k in range(count))]


def evaluate(points: np.ndarray, weights: np.ndarray, zs: Sequence[complex]) -> np.ndarray:
    z = np.asarray(zs, dtype=complex)
    return kernels.max_weighted_distance(points.real, points.imag, weights, z.real, z.imag)


@dataclass(frozen=True)
class OneCenterSolution:
    z_star: complex
    value: float
    support: tuple[int, ...]


def _check_inputs(points, weights) -> tuple[np.ndarray, np.ndarray]:
    q = np.asarray(points, dtype=complex).ravel()
    w = np.asarray(weights, dtype=np.float64).ravel()
    if q.size == 0:
        raise EmptyInput("one_center needs at least one point")
    if q.size != w.size:
        raise EmptyInput(f"{q.size} points but {w.size} weights")
    if not np.all(w > 0) or not np.all(np.isfinite(w)):
        raise NonpositiveWeight("weights must be positive and finite")
    if not np.all(np.isfinite(q)):
        raise ValueError("points must be finite")
    return q, w


def _dominant(q: np.ndarray, w: np.ndarray) -> list[int]:
    """Indices after merging coincident points (heaviest weight survives)."""
    keep: list[int] = []
    for i in np.argsort(-w, kind="stable"):
        if all(q[i] != q[k] for k in keep):
            keep.append(int(i))
    return sorted(keep)


def _candidates(q: np.ndarray, w: np.ndarray, idx: Sequence[int]):
    cands: list[complex] = []
    gens: list[tuple[int, ...]] = []
    for i in idx:
        cands.append(complex(q[i]))
        gens.append((i,))
    for i, j in itertools.combinations(idx, 2):
        t = w[j] / (w[i] + w[j])
        cands.append(complex(q[i] + t * (q[j] - q[i])))
        gens.append((i, j))
    for i, j, k in itertools.combinations(idx, 3):
        e1 = equal_distance_locus(q[i], w[i], q[j], w[j])
        e2 = equal_distance_locus(q[j], w[j], q[k], w[k])
        for z in intersect(e1, e2):
            if math.isfinite(z.real) and math.isfinite(z.imag):
                cands.append(z)
                gens.append((i, j, k))
    return cands, gens


def _solve(q: np.ndarray, w: np.ndarray, idx: Sequence[int]) -> tuple[complex, float, tuple[int, ...]]:
    cands, gens = _candidates(q, w, idx)
    vals = evaluate(q[list(idx)], w[list(idx)], cands)
    # ties: smallest value, then earliest candidate
    best = int(np.argmin(vals))
    return cands[best], float(vals[best]), gens[best]


def one_center(points, weights) -> OneCenterSolution:
    q, w = _check_inputs(points, weights)
    idx = _dominant(q, w)
    if len(idx) == 1:
        return OneCenterSolution(complex(q[idx[0]]), 0.0, (idx[0],))
    z, value, gen = _solve(q, w, idx)
    # the full problem's value at z (merged duplicates never exceed it)
    value = float(evaluate(q, w, [z])[0])
    return OneCenterSolution(z, value, _support(q, w, z, value, gen))


def _support(q, w, z, value, fallback) -> tuple[int, ...]:
    g = w * np.abs(z - q)
    near = np.flatnonzero(np.abs(g - value) <= ACTIVE_RTOL * (1 + value))
    active = [int(near[k]) for k in _dominant(q[near], w[near])]
    target = value - 1e-9 * (1 + value)
    for size in (1, 2, 3):
        for sub in itertools.combinations(active, size):
            if size == 1:
                sub_value = 0.0
            else:
                sub_value = _solve(q, w, sub)[1]
            if sub_value >= target:
                return tuple(sub)
    return tuple(fallback)


@dataclass(frozen=True)
class DiscPoint:
    """Result of a disc-family intersection query."""

    point: complex | None
    # smallest uniform scaling of all radii that makes the family intersect
    scale: float

    def __bool__(self) -> bool:
        return self.point is not None


def disc_intersection(centers, radii, slack: float = 1e-9) -> DiscPoint:
    """A common point of the closed discs |z - c_i| <= r_i, if any.

    Decided through the 1-center with weights 1/r_i; zero radii are handled
    directly.
    """
    c = np.asarray(centers, dtype=complex).ravel()
    r = np.asarray(radii, dtype=np.float64).ravel()
    if c.size == 0:
        raise EmptyInput("no discs")
    if np.any(r < 0):
        raise ValueError("radii must be nonnegative")
    zero = np.flatnonzero(r == 0)
    if zero.size:
        z = complex(c[zero[0]])
        ok = np.all(np.abs(z - c) <= r + slack * (1 + r))
        return DiscPoint(z if ok else None, 0.0 if ok else math.inf)
    sol = one_center(c, 1.0 / r)
    ok = sol.value <= 1 + slack
    return DiscPoint(sol.z_star if ok else None, sol.value)
