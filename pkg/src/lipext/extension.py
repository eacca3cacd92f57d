"""One-point (and averaged multi-point) Lipschitz extensions.

Closed-form rules for triangles, tetragons and regular polygons on the
discrete-apex metric, the averaging rule, disc-intersection feasibility,
and the exact optimal one-point extension.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    AlphaNotOne,
    AlreadyDefined,
    AngleConditionFails,
    ApexTooClose,
    BadOrdering,
    EmptySet,
    EmptyTargets,
    Infeasible,
    NoClosedFormRule,
    NotATetragon,
    NotATriangle,
    NotRegularPolygon,
    OverlappingDomain,
    SetsOverlap,
    SpaceMismatch,
    UnknownLabel,
    WrongMetricShape,
)
from .lipschitz import MetricFunction, extend_with, is_n_polygon, lipschitz_number
from .metric_space import FiniteMetricSpace, PointSubset
from .minimax import (
    Conic,
    circle_samples,
    disc_intersection,
    equal_distance_locus,
    intersect,
    level_circle,
    one_center,
)
from .plane_geometry import (
    ApexRegion,
    circumcenter,
    classify_apex,
    largest_angle,
    normalize,
)

RATIO_ATOL = 1e-9
SHAPE_RTOL = 1e-12
ANGLE_SLACK = 1e-9
REGULAR_RTOL = 1e-6


class Rule(str, Enum):
    TRIANGLE = "TriangleClosedForm"
    TETRAGON = "TetragonDiagonal"
    POLYGON = "PolygonCenter"
    AVERAGE = "Average"
    ONE_CENTER = "OneCenterOptimal"
    HELLY = "HellyFeasible"


@dataclass(frozen=True)
class ExtensionReport:
    extended: MetricFunction
    new_p_alpha: float
    base_p_alpha: float
    ratio: Optional[float]
    rule: Rule
    chosen_points: Mapping[str, complex]
    hypothesis: Optional[bool] = None
    details: Mapping[str, Any] = field(default_factory=dict)


def _ratio(new: float, base: float, atol: Optional[float] = None) -> Optional[float]:
    if atol is None:
        atol = RATIO_ATOL
    if base <= 0:
        return None
    if abs(new - base) <= atol * (1 + base):
        return 1.0
    return new / base


def _report(f0: MetricFunction, chosen: Mapping[str, complex], rule: Rule, **extra: Any) -> ExtensionReport:
    extended = extend_with(f0, chosen)
    base = lipschitz_number(f0).p_alpha
    new = lipschitz_number(extended).p_alpha
    return ExtensionReport(
        extended=extended,
        new_p_alpha=new,
        base_p_alpha=base,
        ratio=_ratio(new, base),
        rule=rule,
        chosen_points=dict(chosen),
        **extra,
    )


def _check_target(f0: MetricFunction, e: str) -> int:
    if e not in f0.space:
        raise UnknownLabel(f"unknown label {e!r}", label=e)
    if e in f0.values:
        raise AlreadyDefined(f"{e!r} is already in the domain", label=e)
    return f0.space.index(e)


def _weights(f0: MetricFunction, e: str) -> tuple[np.ndarray, np.ndarray]:
    """Values of f0 and the weights 1/d(e, x)^alpha over its domain."""
    ie = _check_target(f0, e)
    idx = f0.space.indices(f0.domain)
    return f0.array(), 1.0 / f0.space.dist[ie, idx] ** f0.alpha


# -- optimal -----------------------------------------------------------------


def optimal_one_point_extension(f0: MetricFunction, e: str) -> ExtensionReport:
    """Value at ``e`` minimising the Lipschitz number of the extension."""
    q, w = _weights(f0, e)
    sol = one_center(q, w)
    support = [f0.domain[i] for i in sol.support]
    return _report(f0, {e: sol.z_star}, Rule.ONE_CENTER,
                   details={"one_center_value": sol.value, "support": support})


# -- closed forms on the discrete-apex metric --------------------------------


def apex_distance(f0: MetricFunction, e: str) -> float:
    """``l`` when domain + e carries the discrete-apex metric, else raise."""
    ie = _check_target(f0, e)
    idx = f0.space.indices(f0.domain)
    d = f0.space.dist
    base = d[np.ix_(idx, idx)]
    off = base[~np.eye(len(idx), dtype=bool)]
    if off.size and np.any(np.abs(off - 1.0) > SHAPE_RTOL):
        raise WrongMetricShape("domain points are not mutually at distance 1")
    to_e = d[ie, idx]
    l = float(to_e[0])
    if np.any(np.abs(to_e - l) > SHAPE_RTOL * l):
        raise WrongMetricShape(f"{e!r} is not equidistant from the domain")
    if l < 0.5:
        raise ApexTooClose(f"apex distance {l} < 1/2", l=l)
    return l


def _require_alpha_one(f0: MetricFunction) -> None:
    if f0.alpha != 1:
        raise AlphaNotOne(f"closed-form rules need alpha = 1, got {f0.alpha}", alpha=f0.alpha)


def _check_l(f0: MetricFunction, e: str, l: Optional[float]) -> float:
    actual = apex_distance(f0, e)
    if l is not None and abs(l - actual) > SHAPE_RTOL * actual:
        raise WrongMetricShape(f"metric has apex distance {actual}, not {l}")
    return actual


def triangle_extension(f0: MetricFunction, e: str) -> ExtensionReport:
    """Base midpoint when the apex lies in the Thales disc of the base,
    circumcenter otherwise; computed on the normal form and moved back."""
    _require_alpha_one(f0)
    if not is_n_polygon(f0, 3):
        raise NotATriangle("range of f0 is not a nondegenerate triangle")
    l = apex_distance(f0, e)
    nt = normalize(f0.distinct_values())
    region = classify_apex(nt)
    local = complex(nt.r / 2) if region is ApexRegion.IN_D1 else circumcenter(nt)
    value = nt.motion.invert(local)
    return _report(f0, {e: value}, Rule.TRIANGLE,
                   details={"region": region.value, "l": l, "largest_angle": largest_angle(nt)})


def equality_criterion(f0: MetricFunction, l: float) -> bool:
    """Some angle of the range triangle is at least arcsin(1/(2l))."""
    if not is_n_polygon(f0, 3):
        raise NotATriangle("range of f0 is not a nondegenerate triangle")
    if not l >= 0.5:
        raise ApexTooClose(f"apex distance {l} < 1/2", l=l)
    theta = largest_angle(normalize(f0.distinct_values()))
    return theta >= math.asin(1 / (2 * l)) - ANGLE_SLACK


def _ring(values: Sequence[complex]) -> list[complex]:
    c = sum(values) / len(values)
    return sorted(values, key=lambda z: cmath.phase(z - c))


def interior_angles(ring: Sequence[complex]) -> list[float]:
    n = len(ring)
    out = []
    for k in range(n):
        u = ring[k - 1] - ring[k]
        v = ring[(k + 1) % n] - ring[k]
        cos = (u.conjugate() * v).real / (abs(u) * abs(v))
        out.append(math.acos(min(1.0, max(-1.0, cos))))
    return out


def tetragon_extension(f0: MetricFunction, e: str, l: Optional[float] = None) -> ExtensionReport:
    """Midpoint of the diagonal joining the pair of opposite vertices other
    than the pair whose angles clear arcsin(1/(2l))."""
    _require_alpha_one(f0)
    if not is_n_polygon(f0, 4):
        raise NotATetragon("range of f0 is not a convex tetragon")
    l = _check_l(f0, e, l)
    ring = _ring(f0.distinct_values())
    angles = interior_angles(ring)
    threshold = math.asin(1 / (2 * l))
    good = [(a, c) for a, c in ((0, 2), (1, 3))
            if min(angles[a], angles[c]) >= threshold - ANGLE_SLACK]
    if not good:
        raise AngleConditionFails(
            "no pair of opposite angles reaches arcsin(1/(2l))",
            threshold=threshold,
            opposite_angles=[[angles[0], angles[2]], [angles[1], angles[3]]],
        )
    smallest = min(range(4), key=lambda k: (ring[k].real, ring[k].imag))
    wide = next((p for p in good if smallest in p), good[0])
    b, d = (1, 3) if wide == (0, 2) else (0, 2)
    value = (ring[b] + ring[d]) / 2
    return _report(f0, {e: value}, Rule.TETRAGON,
                   details={"l": l, "wide_pair": [ring[wide[0]], ring[wide[1]]],
                            "diagonal": [ring[b], ring[d]], "angles": angles})


def regular_polygon_center(values: Sequence[complex]) -> tuple[complex, float, float]:
    """(center, circumradius, side) of a regular polygon, else raise."""
    n = len(values)
    if n < 3:
        raise NotRegularPolygon(f"{n} distinct values cannot form a polygon")
    c = sum(values) / n
    radii = [abs(v - c) for v in values]
    e = max(radii)
    if e == 0 or min(radii) < e * (1 - REGULAR_RTOL):
        raise NotRegularPolygon("vertices are not concyclic about their centroid")
    ring = sorted(values, key=lambda z: cmath.phase(z - c))
    gaps = [abs(ring[(k + 1) % n] - ring[k]) for k in range(n)]
    if min(gaps) < max(gaps) * (1 - REGULAR_RTOL):
        raise NotRegularPolygon("consecutive sides differ")
    return c, e, sum(gaps) / n


def polygon_extension(f0: MetricFunction, e: str, l: Optional[float] = None) -> ExtensionReport:
    """Center of a regular n-gon range; L(f) = max(D, E/l)."""
    _require_alpha_one(f0)
    l = _check_l(f0, e, l)
    values = f0.distinct_values()
    center, radius, side = regular_polygon_center(values)
    diam = max(abs(u - v) for u, v in itertools.combinations(values, 2))
    return _report(f0, {e: center}, Rule.POLYGON,
                   details={"n": len(values), "l": l, "side": side,
                            "circumradius": radius, "diameter": diam})


def closed_form_extension(f0: MetricFunction, e: str) -> ExtensionReport:
    """Pick the triangle, tetragon or regular-polygon rule by range shape."""
    n = len(f0.distinct_values())
    if n == 3:
        return triangle_extension(f0, e)
    if n == 4:
        try:
            return tetragon_extension(f0, e)
        except (NotATetragon, AngleConditionFails):
            pass
    try:
        return polygon_extension(f0, e)
    except NotRegularPolygon:
        raise NoClosedFormRule(f"no closed-form rule applies to a {n}-valued range",
                               distinct_values=n) from None


# -- averaging ---------------------------------------------------------------


def check_average_hypothesis(space: FiniteMetricSpace, domain: PointSubset, targets: PointSubset) -> bool:
    """d(t, y) >= d(y, z) for every target t and every y, z in the domain."""
    if domain.space is not space or targets.space is not space:
        raise SpaceMismatch("subsets belong to a different space")
    if not domain.members or not targets.members:
        raise EmptySet("hypothesis check on an empty set")
    if domain.members & targets.members:
        raise SetsOverlap("domain and targets intersect")
    dom, tgt = sorted(domain.members), sorted(targets.members)
    ecc = space.dist[np.ix_(dom, dom)].max(axis=1)
    nearest_target = space.dist[np.ix_(tgt, dom)].min(axis=0)
    return bool(np.all(nearest_target >= ecc * (1 - SHAPE_RTOL)))


def average_extension(f0: MetricFunction, targets: Iterable[str]) -> ExtensionReport:
    """Assign every target the mean of f0 over its domain."""
    targets = list(dict.fromkeys(targets))
    if not targets:
        raise EmptyTargets("no targets to extend to")
    for t in targets:
        if t not in f0.space:
            raise UnknownLabel(f"unknown label {t!r}", label=t)
        if t in f0.values:
            raise OverlappingDomain(f"{t!r} is already in the domain", label=t)
    mean = complex(f0.array().mean())
    space = f0.space
    hyp = check_average_hypothesis(space, space.subset(f0.domain), space.subset(targets))
    return _report(f0, {t: mean for t in targets}, Rule.AVERAGE, hypothesis=hyp,
                   details={"mean": mean})


# -- feasibility -------------------------------------------------------------


@dataclass(frozen=True)
class Feasibility:
    point: Optional[complex]
    budget: float
    # smallest budget at which the disc family intersects (helly only)
    threshold: Optional[float] = None

    @property
    def feasible(self) -> bool:
        return self.point is not None

    def __bool__(self) -> bool:
        return self.feasible


def _budget(f0: MetricFunction, budget: Optional[float]) -> float:
    if budget is None:
        return lipschitz_number(f0).p_alpha
    if not budget >= 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    return float(budget)


def helly_feasible(f0: MetricFunction, e: str, budget: Optional[float] = None,
                   include_origin: bool = False) -> Feasibility:
    """A value for ``e`` inside every disc |z - f0(x)| <= d(x, e)^alpha * budget.

    With ``include_origin`` the disc |z| <= sup|f0| is added as well, which
    keeps the sup norm.  ``budget`` defaults to p_alpha(f0).
    """
    q, w = _weights(f0, e)
    budget = _budget(f0, budget)
    threshold = one_center(q, w).value
    centers, radii = list(q), list(budget / w)
    if include_origin:
        centers.append(0j)
        radii.append(float(np.abs(q).max()))
        threshold = None
    hit = disc_intersection(centers, radii)
    return Feasibility(hit.point, budget, threshold)


def chain_values(f0: MetricFunction, e: str, z: complex, order: Sequence[str]) -> list[float]:
    """|z - f0(x_j)| / d(e, x_j)^alpha along ``order``."""
    ie = f0.space.index(e)
    return [abs(z - f0[x]) / f0.space.dist[ie, f0.space.index(x)] ** f0.alpha for x in order]


def chained_feasible(f0: MetricFunction, e: str, budget: Optional[float] = None,
                     order: Optional[Sequence[str]] = None) -> Feasibility:
    """A point z whose weighted distances are sorted along ``order`` with the
    last at most ``budget``.

    The feasible set is compact and bounded by arcs of the curves
    {g_j = g_(j+1)} and {g_n = budget}.  A nonempty such set contains a
    corner (two curves meet), a point on a full boundary circle, or an input
    value; all of those are enumerated and tested.
    """
    _check_target(f0, e)
    order = list(f0.domain if order is None else order)
    if sorted(order) != sorted(f0.domain) or len(set(order)) != len(order):
        raise BadOrdering("order must list every domain label exactly once", order=order)
    budget = _budget(f0, budget)
    outer = helly_feasible(f0, e, budget)
    if not outer:
        return Feasibility(None, budget, outer.threshold)
    ie = f0.space.index(e)
    q = np.array([f0[x] for x in order])
    w = np.array([1.0 / f0.space.dist[ie, f0.space.index(x)] ** f0.alpha for x in order])
    tol = 1e-9 * (1 + budget)

    def inside(z: complex) -> bool:
        g = w * np.abs(z - q)
        return bool(np.all(g[:-1] <= g[1:] + tol) and g[-1] <= budget + tol)

    curves: list[Conic] = [equal_distance_locus(q[j], w[j], q[j + 1], w[j + 1])
                           for j in range(len(q) - 1)]
    curves.append(level_circle(q[-1], w[-1], budget))
    candidates: list[complex] = [outer.point] + [complex(v) for v in q]
    for c1, c2 in itertools.combinations(curves, 2):
        candidates.extend(intersect(c1, c2))
    for c in curves:
        candidates.extend(circle_samples(c))
    for z in candidates:
        if inside(z):
            return Feasibility(z, budget, outer.threshold)
    return Feasibility(None, budget, outer.threshold)


def helly_extension(f0: MetricFunction, e: str, budget: Optional[float] = None) -> ExtensionReport:
    hit = helly_feasible(f0, e, budget)
    if not hit:
        raise Infeasible("the disc family has empty intersection at this budget",
                         budget=hit.budget, threshold=hit.threshold)
    return _report(f0, {e: hit.point}, Rule.HELLY,
                   details={"budget": hit.budget, "threshold": hit.threshold})

