"""Complex-valued functions on finite metric spaces and their Lipschitz numbers."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from . import kernels
from .errors import EmptyDomain, OverlappingDomain, UnknownLabel
from .metric_space import FiniteMetricSpace
from .plane_geometry import is_degenerate

DISTINCT_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class MetricFunction:
    """A partial assignment label -> complex value on ``space``.

    The domain is the key set of ``values``, kept in the space's label
    order.
    """

    space: FiniteMetricSpace
    values: Mapping[str, complex]
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.values:
            raise EmptyDomain("function has an empty domain")
        clean: dict[str, complex] = {}
        for lab in sorted(self.values, key=self.space.index):
            v = complex(self.values[lab])
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"non-finite value at {lab!r}")
            clean[lab] = v
        object.__setattr__(self, "values", MappingProxyType(clean))

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(self.values)

    def __getitem__(self, label: str) -> complex:
        return self.values[label]

    def array(self) -> np.ndarray:
        return np.array(list(self.values.values()), dtype=complex)

    def with_alpha(self, alpha: float) -> "MetricFunction":
        return MetricFunction(self.space, self.values, alpha)

    def distinct_values(self) -> list[complex]:
        """Range of the function, first occurrence order, merged within 1e-9."""
        out: list[complex] = []
        for v in self.values.values():
            if all(abs(v - u) > DISTINCT_ATOL for u in out):
                out.append(v)
        return out


@dataclass(frozen=True)
class LipschitzReport:
    p_alpha: float
    sup_norm: float
    alpha_norm: float
    witness: Optional[tuple[str, str]] = field(default=None)


def lipschitz_number(f: MetricFunction) -> LipschitzReport:
    labels = f.domain
    idx = f.space.indices(labels)
    vals = f.array()
    sup = float(np.abs(vals).max())
    if len(idx) < 2:
        return LipschitzReport(0.0, sup, sup, None)
    dpow = f.space.dist[np.ix_(idx, idx)] ** f.alpha
    p, i, j = kernels.lipschitz_scan(vals.real, vals.imag, dpow)
    p = float(p)
    return LipschitzReport(p, sup, p + sup, (labels[i], labels[j]))


def p_alpha(f: MetricFunction) -> float:
    return lipschitz_number(f).p_alpha


def in_convex_position(points: list[complex]) -> bool:
    """True iff every point is a strict vertex of the convex hull."""
    n = len(points)
    if n < 3:
        return False
    if n == 3:
        return not is_degenerate(*points)
    c = sum(points) / n
    ring = sorted(points, key=lambda z: cmath.phase(z - c))
    scale = max(abs(z - c) for z in ring)
    if scale == 0:
        return False
    for k in range(n):
        a, b, d = ring[k], ring[(k + 1) % n], ring[(k + 2) % n]
        if ((b - a).conjugate() * (d - b)).imag <= 1e-12 * scale * scale:
            return False
    return True


def is_n_polygon(f: MetricFunction, n: int) -> bool:
    vals = f.distinct_values()
    return len(vals) == n and in_convex_position(vals)


def extend_with(f0: MetricFunction, assignments: Mapping[str, complex]) -> MetricFunction:
    for lab in assignments:
        if lab not in f0.space:
            raise UnknownLabel(f"unknown label {lab!r}", label=lab)
        if lab in f0.values:
            raise OverlappingDomain(f"{lab!r} is already in the domain", label=lab)
    merged = dict(f0.values)
    merged.update({k: complex(v) for k, v in assignments.items()})
    return MetricFunction(f0.space, merged, f0.alpha)
