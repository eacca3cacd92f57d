"""Small hand-checkable instances with known answers."""

import cmath
import math

import numpy as np
import pytest

from builders import apex_function
from lipext import (
    FiniteMetricSpace,
    MetricFunction,
    average_extension,
    chained_feasible,
    check_average_hypothesis,
    diameter,
    discrete_apex,
    equality_criterion,
    grid_extension_check,
    grid_minimax,
    helly_feasible,
    lipschitz_number,
    one_center,
    optimal_one_point_extension,
    four_point_space,
    separate,
    tetragon_extension,
    triangle_extension,
    validate,
)
from lipext.errors import TriangleViolation
from lipext.extension import chain_values, polygon_extension
from lipext.lipschitz import is_n_polygon
from lipext.metric_space import discrete_apex_matrix, set_distance
from lipext.oracle import GridSpec
from lipext.plane_geometry import (
    ApexRegion,
    Apollonius,
    Disc,
    RigidMotion,
    circumcenter,
    circumradius,
    classify_apex,
    largest_angle,
    normalize,
    region_membership,
    regular_polygon,
    regular_polygon_diameter,
    regular_polygon_radius,
)

SQ3 = math.sqrt(3)
EQUI = [0j, 1 + 0j, complex(0.5, SQ3 / 2)]


def test_apex_below_half_is_not_a_metric():
    with pytest.raises(TriangleViolation):
        validate(discrete_apex_matrix(3, 0.4))


def test_discrete_apex_half():
    s = discrete_apex(3, 0.5)
    assert len(s) == 4
    assert s.dist[:3, :3].tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert s.dist[3, :3].tolist() == [0.5] * 3


def test_four_point_diameter():
    s, m, e = four_point_space()
    assert diameter(m) == 5 and set_distance(m, e) == 4


def test_normal_form_is_rigid_invariant():
    rng = np.random.default_rng(0)
    ref = normalize(EQUI)
    for _ in range(50):
        rot = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        shift = complex(*rng.normal(size=2))
        moved = [rot * z + shift for z in EQUI]
        if rng.random() < 0.5:
            moved = [z.conjugate() for z in moved]
        nt = normalize(moved)
        assert nt.r == pytest.approx(ref.r, abs=1e-9)
        assert nt.apex == pytest.approx(ref.apex, abs=1e-9)


def test_normal_form_example():
    pts = [0j, 3 + 4j, 8j]
    nt = normalize(pts)
    # sides are 5, 5 and 8; the base is the side of length 8
    assert nt.r == pytest.approx(8)
    assert nt.apex == pytest.approx(4 + 3j)
    for k, v in zip(nt.order, nt.vertices):
        assert nt.motion.apply(pts[k]) == pytest.approx(v, abs=1e-9)
    assert normalize(nt.vertices).apex == pytest.approx(nt.apex)


def test_equilateral_circle():
    nt = normalize(EQUI)
    assert circumcenter(nt) == pytest.approx(complex(0.5, SQ3 / 6))
    assert circumradius(nt) == pytest.approx(1 / SQ3)
    assert classify_apex(nt) is ApexRegion.IN_D2


def test_obtuse_angle():
    nt = normalize([0, 1, 0.5 + 0.1j])
    assert largest_angle(nt) > math.pi / 2
    assert classify_apex(nt) is ApexRegion.IN_D1


def test_apollonius_membership():
    a = Apollonius(0j, 1 + 0j, 2)
    assert not region_membership(a, 1)
    assert region_membership(a, 2)
    assert region_membership(Disc(0j, 0), 0)
    for z in (2 / 3, 2):
        assert abs(z - 0) / abs(z - 1) == pytest.approx(2)


@pytest.mark.parametrize("n, e, d", [(4, 1 / math.sqrt(2), math.sqrt(2)), (3, 1 / SQ3, 1.0)])
def test_polygon_radii(n, e, d):
    assert regular_polygon_radius(n, 1) == pytest.approx(e)
    assert regular_polygon_diameter(n, 1) == pytest.approx(d)


def test_pentagon_ratio():
    ratio = 2 * regular_polygon_radius(5, 1) / regular_polygon_diameter(5, 1)
    assert ratio == pytest.approx(1 / math.cos(math.pi / 10))
    assert ratio == pytest.approx(1.051462, abs=1e-6)
    rep = polygon_extension(apex_function(regular_polygon(5, 1), 1.0), "e")
    assert rep.ratio == 1.0


def test_polygon_square_and_triangle():
    assert polygon_extension(apex_function(regular_polygon(4, 1), 0.5), "e").ratio == 1.0
    rep = polygon_extension(apex_function(regular_polygon(3, 1), 0.5), "e")
    assert rep.ratio == pytest.approx(2 / SQ3)


def test_equilateral_number():
    assert lipschitz_number(apex_function(EQUI, 0.5)).p_alpha == pytest.approx(1)


def test_square_over_seven_points():
    s = discrete_apex(7, 1)
    vals = [0, 1, 1 + 1j, 1j, 0, 1, 1j]
    f = MetricFunction(s, dict(zip(s.labels[:7], vals)))
    assert is_n_polygon(f, 4)


def test_one_center_examples():
    sol = one_center(EQUI, [1, 1, 1])
    assert sol.z_star == pytest.approx(complex(0.5, SQ3 / 6))
    assert sol.value == pytest.approx(1 / SQ3)
    sol = one_center([0, 1], [1, 3])
    assert sol.z_star == pytest.approx(0.75)
    grid = grid_minimax([0, 1], [1, 3])
    assert abs(grid.value - 0.75) <= grid.error_bound


def test_triangle_cases():
    f = apex_function(EQUI, 0.5)
    assert optimal_one_point_extension(f, "e").new_p_alpha == pytest.approx(2 / SQ3)
    assert triangle_extension(f, "e").chosen_points["e"] == pytest.approx(complex(0.5, SQ3 / 6))
    obtuse = apex_function([0, 1, 0.5 + 0.1j], 0.5)
    assert optimal_one_point_extension(obtuse, "e").ratio == 1.0
    right = apex_function([0, 1, 0.5 + 0.5j], 0.5)
    assert triangle_extension(right, "e").ratio == 1.0
    assert optimal_one_point_extension(right, "e").ratio == 1.0
    far = apex_function(EQUI, 1.0)
    rep = triangle_extension(far, "e")
    assert rep.chosen_points["e"] == pytest.approx(complex(0.5, SQ3 / 6))
    assert rep.new_p_alpha == pytest.approx(1.0) and rep.ratio == 1.0


def test_equality_examples():
    assert not equality_criterion(apex_function(EQUI, 0.5), 0.5)
    rng = np.random.default_rng(1)
    for _ in range(20):
        v = list(rng.normal(size=3) + 1j * rng.normal(size=3))
        assert equality_criterion(apex_function(v, 1 / SQ3), 1 / SQ3)


def test_tetragon_examples():
    sq = tetragon_extension(apex_function([0, 1, 1 + 1j, 1j], 0.5), "e")
    assert sq.chosen_points["e"] == pytest.approx(0.5 + 0.5j)
    assert sq.new_p_alpha == pytest.approx(math.sqrt(2)) and sq.ratio == 1.0
    rect = apex_function([0, 2, 2 + 1j, 1j], 0.5)
    rep = tetragon_extension(rect, "e")
    assert rep.chosen_points["e"] == pytest.approx(1 + 0.5j)
    assert rep.base_p_alpha == pytest.approx(math.sqrt(5))
    assert rep.new_p_alpha == pytest.approx(math.sqrt(5))
    assert optimal_one_point_extension(rect, "e").new_p_alpha == pytest.approx(math.sqrt(5))


def test_average_examples():
    s = FiniteMetricSpace(["x", "y", "e"], [[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    rep = average_extension(MetricFunction(s, {"x": 0, "y": 1}), ["e"])
    assert rep.chosen_points["e"] == 0.5 and rep.new_p_alpha == 1.0 and rep.hypothesis
    space, m, e = four_point_space()
    f0 = MetricFunction(space, {"x": 1, "y": -2j, "z": 4})
    rep = average_extension(f0, ["e"])
    assert rep.hypothesis and rep.ratio == 1.0
    assert check_average_hypothesis(s, s.subset(["x", "y"]), s.subset(["e"]))


def test_feasibility_examples():
    f = apex_function(EQUI, 0.5)
    assert not helly_feasible(f, "e", 1.0)
    hit = helly_feasible(f, "e", 2 / SQ3)
    assert hit.point == pytest.approx(complex(0.5, SQ3 / 6), abs=1e-6)
    for order in (["x0", "x1", "x2"], ["x2", "x0", "x1"]):
        assert not chained_feasible(f, "e", 1.0, order)
        res = chained_feasible(f, "e", 2 / SQ3, order)
        assert res
        chain = chain_values(f, "e", res.point, order)
        assert all(a <= b + 1e-8 for a, b in zip(chain, chain[1:]))


def test_path_separation():
    s = FiniteMetricSpace(["a", "m", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    a, b = s.subset(["a"]), s.subset(["b"])
    cert = separate(s, a, b, 1.0)
    assert cert.function["m"] == 0.5
    assert lipschitz_number(cert.function).p_alpha == pytest.approx(0.5)
    assert cert.lipschitz_bound == 0.5
    half = separate(s, a, b, 0.5)
    assert half.function["m"] == 0.5
    assert half.lipschitz_bound == pytest.approx(1 / math.sqrt(2))


def test_finite_sets_have_positive_gap():
    rng = np.random.default_rng(3)
    from builders import random_metric
    for _ in range(20):
        s = random_metric(rng, 6)
        cert = separate(s, s.subset(s.labels[:2]), s.subset(s.labels[2:]))
        assert cert.gap > 0 and cert.separable


def test_grid_examples():
    res = grid_minimax(EQUI, [1, 1, 1], GridSpec(complex(0.5, 0.4), 0.6, resolution=64, rounds=5))
    assert res.error_bound < 1e-4
    assert abs(res.value - 1 / SQ3) <= res.error_bound
    f = apex_function(EQUI, 0.5)
    assert grid_extension_check(f, "e", complex(0.5, SQ3 / 6))
    assert not grid_extension_check(f, "e", EQUI[0])


def test_rigid_motion_roundtrip():
    m = RigidMotion(1 + 2j, cmath.exp(0.3j), True)
    z = 0.4 - 1.1j
    assert m.invert(m.apply(z)) == pytest.approx(z)
