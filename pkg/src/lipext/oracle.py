"""Brute-force references for certifying the exact solvers.

``grid_minimax`` is a branch-and-bound grid search for
min_z max_i w_i |z - q_i|.  Since the objective is (max w)-Lipschitz, the
value at a cell center minus (max w) * half-diagonal bounds the cell from
below; cells that cannot beat the incumbent are dropped and the rest are
subdivided.  ``disc_family_intersects`` decides whether closed discs share
a point by testing an explicit finite candidate set, without any
optimisation.

Test-and-CLI only; the library never calls these.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import BoxTooSmall, EmptyInput, NonpositiveWeight
from .lipschitz import MetricFunction, extend_with, lipschitz_number


@dataclass(frozen=True)
class GridSpec:
    center: complex
    half_width: float
    resolution: int = 64
    rounds: int = 6
    # each surviving cell is split into split x split children per round
    split: int = 8

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if self.split < 2:
            raise ValueError("split must be at least 2")

    def cell_size(self, round_index: int) -> float:
        return 2 * self.half_width / self.resolution / self.split ** round_index


def default_spec(points: Sequence[complex], **overrides) -> GridSpec:
    """Bounding box of the points inflated by 10%, squared up."""
    z = np.asarray(points, dtype=complex)
    lo = complex(z.real.min(), z.imag.min())
    hi = complex(z.real.max(), z.imag.max())
    half = 0.55 * max(hi.real - lo.real, hi.imag - lo.imag)
    if half == 0:
        half = 0.5
    return GridSpec(center=(lo + hi) / 2, half_width=half, **overrides)


@dataclass(frozen=True)
class GridResult:
    z: complex
    value: float
    error_bound: float
    history: tuple[float, ...] = field(default=())


def grid_minimax(points, weights, spec: Optional[GridSpec] = None) -> GridResult:
    q = np.asarray(points, dtype=complex).ravel()
    w = np.asarray(weights, dtype=np.float64).ravel()
    if q.size == 0 or q.size != w.size:
        raise EmptyInput("need equally many points and weights, at least one")
    if not np.all(w > 0):
        raise NonpositiveWeight("weights must be positive")
    if spec is None:
        spec = default_spec(q)
    hw = spec.half_width
    slack = 1e-12 * hw
    if (np.any(np.abs(q.real - spec.center.real) > hw + slack)
            or np.any(np.abs(q.imag - spec.center.imag) > hw + slack)):
        raise BoxTooSmall("grid box does not contain the input points")
    wmax = float(w.max())

    def evaluate(z: np.ndarray) -> np.ndarray:
        return kernels.max_weighted_distance(q.real, q.imag, w, z.real, z.imag)

    h = spec.cell_size(0)
    ticks = -hw + h * (np.arange(spec.resolution) + 0.5)
    cells = (spec.center + ticks[:, None] + 1j * ticks[None, :]).ravel()
    best_z, best_v = complex(q[0]), math.inf
    history = []
    for r in range(spec.rounds):
        if r:
            h = spec.cell_size(r)
            sub = -h * spec.split / 2 + h * (np.arange(spec.split) + 0.5)
            offsets = (sub[:, None] + 1j * sub[None, :]).ravel()
            cells = (cells[:, None] + offsets[None, :]).ravel()
        vals = evaluate(cells)
        k = int(np.argmin(vals))
        if vals[k] < best_v:
            best_v, best_z = float(vals[k]), complex(cells[k])
        history.append(best_v)
        lower = vals - wmax * h * math.sqrt(2) / 2
        cells = cells[lower <= best_v]
    return GridResult(best_z, best_v, wmax * h * math.sqrt(2), tuple(history))


@dataclass(frozen=True)
class OracleVerdict:
    ok: bool
    candidate_p: float
    grid_p: float
    error_bound: float

    def __bool__(self) -> bool:
        return self.ok


def grid_extension_check(f0: MetricFunction, e: str, candidate: complex,
                         spec: Optional[GridSpec] = None) -> OracleVerdict:
    """Is ``candidate`` at ``e`` within the grid's error bound of optimal?"""
    if e in f0.values:
        raise ValueError(f"{e!r} is already in the domain")
    ie = f0.space.index(e)
    q = f0.array()
    w = 1.0 / f0.space.dist[ie, f0.space.indices(f0.domain)] ** f0.alpha
    res = grid_minimax(q, w, spec)
    base = lipschitz_number(f0).p_alpha
    cand = lipschitz_number(extend_with(f0, {e: candidate})).p_alpha
    grid_p = max(base, res.value)
    return OracleVerdict(cand <= grid_p + res.error_bound, cand, grid_p, res.error_bound)


def disc_family_intersects(centers, radii, atol: float = 1e-9) -> bool:
    """Whether closed discs |z - c_i| <= r_i have a common point.

    If the intersection I is nonempty it contains one of: a disc center
    (when some disc lies inside all others), a crossing point of two
    boundary circles (a corner of I), or the point of a disc nearest to
    another center (a tangency).  All such points are tested.
    """
    c = [complex(x) for x in centers]
    r = [float(x) for x in radii]
    if not c:
        raise EmptyInput("no discs")
    cands = list(c)
    for i, j in itertools.permutations(range(len(c)), 2):
        d = abs(c[j] - c[i])
        if d == 0:
            continue
        u = (c[j] - c[i]) / d
        cands.append(c[i] + r[i] * u)
        if i < j and d <= r[i] + r[j] and d >= abs(r[i] - r[j]):
            a = (d * d + r[i] * r[i] - r[j] * r[j]) / (2 * d)
            h = math.sqrt(max(0.0, r[i] * r[i] - a * a))
            foot = c[i] + a * u
            cands.extend([foot + 1j * h * u, foot - 1j * h * u])
    z = np.array(cands)[:, None]
    rz = np.array(r)
    inside = np.abs(z - np.array(c)[None, :]) <= rz + atol * (1 + rz)
    return bool(inside.all(axis=1).any())
