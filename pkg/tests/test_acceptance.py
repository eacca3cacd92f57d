"""The eleven acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, printed at the end of the run and
also to stdout (visible with ``-s``).
"""

import itertools
import math
import time

import numpy as np

from builders import (
    apex_function,
    averaging_space,
    near_equilateral,
    random_convex_tetragon,
    random_metric,
    random_parallelogram,
    random_triangle,
)
from conftest import ACCEPTANCE
from lipext import (
    MetricFunction,
    average_extension,
    check_average_hypothesis,
    equality_criterion,
    grid_minimax,
    helly_feasible,
    lipschitz_number,
    one_center,
    optimal_one_point_extension,
    polygon_extension,
    four_point_space,
    separate,
    tetragon_extension,
    triangle_extension,
    truncated_counterexample,
)
from lipext.errors import AngleConditionFails
from lipext.extension import Rule
from lipext.metric_space import diameter, set_distance
from lipext.oracle import default_spec, disc_family_intersects
from lipext.plane_geometry import (
    Disc,
    apollonius_locus,
    largest_angle,
    normalize,
    regular_polygon,
    regular_polygon_diameter,
    regular_polygon_radius,
    sample_boundary,
)

BEST = 2 / math.sqrt(3)
EQUILATERAL = [0j, 1 + 0j, complex(0.5, math.sqrt(3) / 2)]


def record(name: str, ok: bool, info: str) -> None:
    ACCEPTANCE.append((name, ok, info))
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {info}")
    assert ok, info


def weights_of(f0: MetricFunction, e: str) -> tuple[np.ndarray, np.ndarray]:
    d = f0.space.dist[f0.space.index(e), f0.space.indices(f0.domain)]
    return f0.array(), 1.0 / d ** f0.alpha


def triangle_sample(seed: int = 7, count: int = 1000, near: int = 50):
    """Random triangles with l ~ U[0.5, 3], plus near-equilateral ones at l = 0.5."""
    rng = np.random.default_rng(seed)
    out = [(random_triangle(rng), float(rng.uniform(0.5, 3.0))) for _ in range(count - near)]
    out += [(near_equilateral(rng, 1e-4), 0.5) for _ in range(near)]
    return out


def helly_sample(seed: int = 9, count: int = 500):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(3, 8))
        space = random_metric(rng, n + 1)
        alpha = float(rng.choice([0.5, 1.0]))
        vals = rng.normal(size=n) + 1j * rng.normal(size=n)
        f0 = MetricFunction(space, dict(zip(space.labels[:n], vals)), alpha)
        out.append((f0, space.labels[n]))
    return out


def test_criterion_01_best_constant():
    t0 = time.perf_counter()
    f0 = apex_function(EQUILATERAL, 0.5)
    rep = optimal_one_point_extension(f0, "e")
    q, w = weights_of(f0, "e")
    grid = grid_minimax(q, w)
    elapsed = time.perf_counter() - t0
    grid_ratio = max(grid.value, rep.base_p_alpha) / rep.base_p_alpha
    ok = (abs(rep.ratio - BEST) <= 1e-9 and abs(grid_ratio - BEST) <= 1e-5
          and grid.error_bound <= 1e-5 and elapsed < 1.0)
    record("1 best constant", ok,
           f"ratio={rep.ratio:.15f} target={BEST:.15f} grid={grid_ratio:.9f} "
           f"bound={grid.error_bound:.1e} time={elapsed:.3f}s")


def test_criterion_02_envelope():
    t0 = time.perf_counter()
    worst = 0.0
    near_max = 0.0
    for values, l in triangle_sample():
        rep = optimal_one_point_extension(apex_function(values, l), "e")
        worst = max(worst, rep.ratio)
        if l == 0.5:
            near_max = max(near_max, rep.ratio)
    elapsed = time.perf_counter() - t0
    ok = worst <= BEST + 1e-9 and near_max > BEST - 1e-3 and elapsed < 30
    record("2 envelope", ok,
           f"max ratio={worst:.12f} near-equilateral max={near_max:.12f} time={elapsed:.2f}s")


def test_criterion_03_equality_threshold():
    mismatches = band = 0
    for values, l in triangle_sample():
        f0 = apex_function(values, l)
        rep = optimal_one_point_extension(f0, "e")
        predicted = equality_criterion(f0, l)
        actual = abs(rep.ratio - 1) <= 1e-7
        if predicted != actual:
            theta = largest_angle(normalize(values))
            if abs(theta - math.asin(1 / (2 * l))) <= 1e-6:
                band += 1
            else:
                mismatches += 1
    record("3 equality threshold", mismatches == 0,
           f"mismatches={mismatches} inside-band={band} of 1000")


def test_criterion_04_large_apex():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(200):
        f0 = apex_function(random_triangle(rng), float(rng.uniform(1 / math.sqrt(3), 3)))
        for rep in (optimal_one_point_extension(f0, "e"), triangle_extension(f0, "e")):
            worst = max(worst, abs(rep.new_p_alpha / rep.base_p_alpha - 1))
    record("4 ratio one for l >= 1/sqrt3", worst <= 1e-9, f"max |ratio-1|={worst:.2e} over 200")


def test_criterion_05_tetragon():
    rng = np.random.default_rng(13)
    worst = 0.0
    rules = set()
    for _ in range(200):
        rep = tetragon_extension(apex_function(random_parallelogram(rng), 0.5), "e")
        rules.add(rep.rule)
        worst = max(worst, abs(rep.new_p_alpha / rep.base_p_alpha - 1))
    raised = None
    for _ in range(100):
        quad = random_convex_tetragon(rng)
        try:
            tetragon_extension(apex_function(quad, 0.5), "e")
        except AngleConditionFails as exc:
            raised = exc
            break
    ok = worst <= 1e-9 and rules == {Rule.TETRAGON} and raised is not None
    record("5 tetragon", ok,
           f"max |ratio-1|={worst:.2e} over 200 parallelograms; "
           f"angle violation raised={'AngleConditionFails' if raised else 'no'}")


def test_criterion_06_polygon():
    bad = []
    worst = 0.0
    for n in range(3, 13):
        for l in (0.5, 1 / math.sqrt(3), 1.0, 2.0):
            rep = polygon_extension(apex_function(regular_polygon(n, 1.0), l), "e")
            d = regular_polygon_diameter(n, 1.0)
            e = regular_polygon_radius(n, 1.0)
            expected = max(d, e / l)
            acos = math.acos(1 / (2 * l))
            one = n % 2 == 0 or (acos > 0 and n >= math.pi / (2 * acos) - 1e-9)
            worst = max(worst, rep.new_p_alpha / rep.base_p_alpha)
            if abs(rep.new_p_alpha - expected) > 1e-12 * expected:
                bad.append((n, l, "value"))
            if (rep.ratio == 1.0) != one:
                bad.append((n, l, "ratio"))
    ok = not bad and worst <= BEST + 1e-12
    record("6 polygon ratios", ok, f"40 cases, failures={bad} max ratio={worst:.15f}")


def test_criterion_07_averaging():
    rng = np.random.default_rng(17)
    worst = 0.0
    for k in range(300):
        space, dom, tgt = averaging_space(rng, int(rng.integers(2, 7)), int(rng.integers(1, 4)))
        assert check_average_hypothesis(space, space.subset(dom), space.subset(tgt))
        alpha = 0.5 if k % 2 else 1.0
        vals = rng.normal(size=len(dom)) + 1j * rng.normal(size=len(dom))
        f0 = MetricFunction(space, dict(zip(dom, vals)), alpha)
        rep = average_extension(f0, tgt)
        before = lipschitz_number(f0)
        after = lipschitz_number(rep.extended)
        worst = max(worst,
                    abs(after.p_alpha - before.p_alpha) / before.p_alpha,
                    abs(after.sup_norm - before.sup_norm) / before.sup_norm)
    space, m, e = four_point_space()
    passes = check_average_hypothesis(space, m, e)
    diam, gap = diameter(m), set_distance(m, e)
    ok = worst <= 1e-12 and passes and not gap >= diam
    record("7 averaging", ok,
           f"max rel change={worst:.2e} over 300; four-point space hypothesis={passes} "
           f"with d(M,e)={gap:g} < diam M={diam:g}")


def test_criterion_08_apollonius():
    rng = np.random.default_rng(19)
    worst = 0.0
    for _ in range(100):
        p1, p2 = (complex(*rng.normal(size=2)) for _ in range(2))
        k = float(np.exp(rng.uniform(-1.5, 1.5)))
        loc = apollonius_locus(p1, p2, k)
        z = sample_boundary(loc, 64, abs(p2 - p1))
        worst = max(worst, float(np.max(np.abs(np.abs(z - p1) / np.abs(z - p2) / k - 1))))
    loc = apollonius_locus(0, 1, 2)
    exact = isinstance(loc, Disc) and abs(loc.center - 4 / 3) <= 1e-15 and abs(loc.radius - 2 / 3) <= 1e-15
    k, p1, p2 = 2.0, 0j, 1 + 0j
    printed_radius = k / abs(k * k - 1) * abs(p1 - p2)
    printed_center = (k * k * p1 - p2) / (k * k - 1)
    z = sample_boundary(Disc(printed_center, printed_radius), 64)
    printed_fails = bool(np.any(np.abs(np.abs(z - p1) / np.abs(z - p2) - k) > 1e-9))
    ok = worst <= 1e-9 and exact and abs(printed_radius - loc.radius) <= 1e-15 and printed_fails
    record("8 apollonius", ok,
           f"max rel ratio error={worst:.2e}; (0,1,2) center={loc.center.real!r} radius={loc.radius!r}; "
           f"printed-order center {printed_center.real:.6f} fails sampling={printed_fails}")


def test_criterion_09_helly():
    disagreements = 0
    worst = 0.0
    for f0, e in helly_sample():
        q, w = weights_of(f0, e)
        star = one_center(q, w).value
        radii = 1.0 / w
        for factor in (0.5, 0.9, 0.999, 1.001, 1.1, 2.0):
            budget = star * factor
            triples = all(disc_family_intersects(q[list(t)], budget * radii[list(t)])
                          for t in itertools.combinations(range(len(q)), 3))
            whole = disc_family_intersects(q, budget * radii)
            solver = bool(helly_feasible(f0, e, budget))
            if not (triples == whole == solver == (factor > 1)):
                disagreements += 1
        lo, hi = 0.0, 2 * star
        for _ in range(60):
            mid = (lo + hi) / 2
            if disc_family_intersects(q, mid * radii, atol=1e-12):
                hi = mid
            else:
                lo = mid
        worst = max(worst, abs(hi - star))
    ok = disagreements == 0 and worst <= 1e-7
    record("9 helly", ok,
           f"disagreements={disagreements} over 500x6 budgets; max |threshold - one_center|={worst:.2e}")


def test_criterion_10_urysohn():
    rng = np.random.default_rng(23)
    worst = -math.inf
    clause_failures = 0
    for k in range(300):
        space = random_metric(rng, int(rng.integers(4, 11)))
        labels = list(space.labels)
        rng.shuffle(labels)
        cut = int(rng.integers(1, len(labels) - 1))
        stop = int(rng.integers(cut + 1, len(labels) + 1))
        a, b = space.subset(labels[:cut]), space.subset(labels[cut:stop])
        alpha = 0.5 if k % 2 else 1.0
        cert = separate(space, a, b, alpha)
        f = cert.function
        vals = np.array([f[x] for x in space.labels])
        in_range = np.all(np.abs(vals.imag) <= 1e-12) and np.all((vals.real >= -1e-12) & (vals.real <= 1 + 1e-12))
        boundary = (all(abs(f[x]) <= 1e-12 for x in a.labels)
                    and all(abs(f[x] - 1) <= 1e-12 for x in b.labels))
        p = lipschitz_number(f).p_alpha
        worst = max(worst, p - cert.lipschitz_bound)
        if not (cert.separable and in_range and boundary and p <= cert.lipschitz_bound + 1e-12):
            clause_failures += 1
    truncated = []
    for n in (10, 100, 1000):
        space, a, b = truncated_counterexample(n)
        for alpha in (0.5, 1.0):
            cert = separate(space, a, b, alpha)
            truncated.append(cert.gap == 1 / n and abs(cert.lipschitz_bound - n ** alpha) <= 1e-12 * n ** alpha)
    ok = clause_failures == 0 and all(truncated)
    record("10 urysohn", ok,
           f"clause failures={clause_failures} over 300 (max p - bound={worst:.1e}); "
           f"truncations N=10,100,1000 gap=1/N bound=N^alpha: {all(truncated)}")


def test_criterion_11_oracle_agreement():
    instances = []
    for values, l in triangle_sample():
        instances.append(weights_of(apex_function(values, l), "e"))
    rng = np.random.default_rng(29)
    for _ in range(200):
        f0 = apex_function(random_triangle(rng), float(rng.uniform(1 / math.sqrt(3), 3)))
        instances.append(weights_of(f0, "e"))
    instances.extend(weights_of(f0, e) for f0, e in helly_sample())
    misses = 0
    worst_bound = 0.0
    for q, w in instances:
        exact = one_center(q, w).value
        grid = grid_minimax(q, w)
        if abs(exact - grid.value) > grid.error_bound:
            misses += 1
        # unit scale: bounding box of width 1, largest weight 1
        spec = default_spec(q)
        unit_q = (q - spec.center) / (2 * spec.half_width / 1.1)
        unit = grid_minimax(unit_q, w / w.max())
        worst_bound = max(worst_bound, unit.error_bound)
    ok = misses == 0 and worst_bound <= 1e-5
    record("11 oracle agreement", ok,
           f"misses={misses} over {len(instances)} instances; max unit-scale error_bound={worst_bound:.2e}")
