"""Urysohn-type separating functions with Lipschitz certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadExponent, EmptySet, SetsOverlap, SetsTouch, SpaceMismatch
from .lipschitz import MetricFunction
from .metric_space import FiniteMetricSpace, PointSubset, point_set_distance, set_distance


@dataclass(frozen=True)
class SeparationCertificate:
    separable: bool
    gap: float
    alpha: float
    function: Optional[MetricFunction] = None
    lipschitz_bound: Optional[float] = None
    note: str = ""


def _check_sets(space: FiniteMetricSpace, a: PointSubset, b: PointSubset) -> None:
    if a.space is not space or b.space is not space:
        raise SpaceMismatch("subsets belong to a different space")
    if not a.members or not b.members:
        raise EmptySet("separation needs two nonempty sets")


def urysohn_function(space: FiniteMetricSpace, a: PointSubset, b: PointSubset,
                     alpha: float = 1.0) -> MetricFunction:
    """f = d^a(., A) / (d^a(., A) + d^a(., B)): 0 on A, 1 on B,
    Lipschitz number at most 1 / d^a(A, B)."""
    _check_sets(space, a, b)
    if not 0 < alpha <= 1:
        raise BadExponent(f"alpha must lie in (0, 1], got {alpha}", alpha=alpha)
    gap = set_distance(a, b)
    if gap == 0:
        raise SetsTouch("d(A, B) = 0", gap=gap)
    da = point_set_distance(space, a.members) ** alpha
    db = point_set_distance(space, b.members) ** alpha
    f = da / (da + db)
    return MetricFunction(space, dict(zip(space.labels, f.astype(complex))), alpha)


def separate(space: FiniteMetricSpace, a: PointSubset, b: PointSubset,
             alpha: float = 1.0) -> SeparationCertificate:
    _check_sets(space, a, b)
    if not alpha > 0:
        raise BadExponent(f"alpha must be positive, got {alpha}", alpha=alpha)
    if a.members & b.members:
        raise SetsOverlap("A and B share points", shared=sorted(space.labels[i] for i in a.members & b.members))
    gap = set_distance(a, b)
    separable = gap > 0
    if alpha > 1:
        return SeparationCertificate(
            separable, gap, alpha,
            note="alpha > 1: a positive gap is necessary for separation, "
                 "but the separating construction is only guaranteed for alpha <= 1",
        )
    if not separable:
        return SeparationCertificate(False, gap, alpha)
    return SeparationCertificate(True, gap, alpha, urysohn_function(space, a, b, alpha), gap ** -alpha)


def truncated_counterexample(n: int) -> tuple[FiniteMetricSpace, PointSubset, PointSubset]:
    """A = {1..n}, B = {k + 1/k : 2 <= k <= n} on the real line.

    k = 1 is skipped because 1 + 1/1 = 2 already lies in A.  The gap is
    1/n, attained between n and n + 1/n.
    """
    if n < 2:
        raise ValueError("truncation needs n >= 2")
    ints = np.arange(1, n + 1, dtype=np.float64)
    ks = np.arange(2, n + 1, dtype=np.float64)
    fracs = 1.0 / ks
    # integer and fractional parts are differenced separately so d(n, n + 1/n)
    # is exactly the float 1/n
    whole = np.concatenate([ints, ks])
    frac = np.concatenate([np.zeros(n), fracs])
    d = np.abs((whole[:, None] - whole[None, :]) + (frac[:, None] - frac[None, :]))
    labels = [f"a{int(k)}" for k in ints] + [f"b{int(k)}" for k in ks]
    space = FiniteMetricSpace(labels, d, _check_triangle=n <= 50)
    return space, space.subset(labels[:n]), space.subset(labels[n:])
