import numpy as np
import pytest

from builders import random_metric
from lipext import lipschitz_number, separate, truncated_counterexample, urysohn_function
from lipext.errors import BadExponent, EmptySet, SetsOverlap


def test_truncated_gap():
    space, a, b = truncated_counterexample(100)
    cert = separate(space, a, b, 1.0)
    assert cert.gap == 0.01
    assert cert.lipschitz_bound == pytest.approx(100)
    assert lipschitz_number(cert.function).p_alpha <= 100 + 1e-12


def test_bound_sharpness_grows():
    products = []
    for n in (5, 20, 80):
        space, a, b = truncated_counterexample(n)
        cert = separate(space, a, b, 1.0)
        products.append(lipschitz_number(cert.function).p_alpha * cert.gap)
    assert all(p <= 1 + 1e-12 for p in products)
    assert products[-1] >= 0.99


def test_alpha_above_one():
    space, a, b = truncated_counterexample(4)
    cert = separate(space, a, b, 2.0)
    assert cert.separable and cert.function is None and cert.note
    with pytest.raises(BadExponent):
        urysohn_function(space, a, b, 2.0)


def test_errors():
    space, a, b = truncated_counterexample(4)
    with pytest.raises(SetsOverlap):
        separate(space, a, space.subset(["a1", "b2"]))
    with pytest.raises(EmptySet):
        separate(space, a, space.subset([]))


def test_random_clauses():
    rng = np.random.default_rng(1)
    for k in range(100):
        space = random_metric(rng, 7)
        a, b = space.subset(space.labels[:3]), space.subset(space.labels[3:5])
        f = urysohn_function(space, a, b, 0.5 if k % 2 else 1.0)
        vals = np.array([f[x].real for x in space.labels])
        assert np.all((vals >= 0) & (vals <= 1))
        assert np.all(vals[:3] == 0) and np.all(vals[3:5] == 1)
