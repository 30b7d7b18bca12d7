import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pinchwpc import _kernels
from pinchwpc.specfun import chebyshev_rule, dilog


def li2_ref(x):
    return float(mpmath.polylog(2, x))


def test_identity_values():
    assert dilog(0.0) == 0.0
    assert abs(dilog(1.0) - math.pi**2 / 6) <= 1e-12
    assert abs(dilog(-1.0) + math.pi**2 / 12) <= 1e-12


@pytest.mark.parametrize("x", [-1e12, -3e5, -1000.0, -17.0, -2.0, -1.0001, -0.75, -0.5, -1e-8, 0.3, 0.5, 0.6, 0.95, 0.999999])
def test_against_mpmath(x):
    ref = li2_ref(x)
    assert abs(float(dilog(x)) - ref) <= 1e-12 * max(1.0, abs(ref))


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-1e15, max_value=1.0, allow_nan=False))
def test_against_mpmath_random(x):
    ref = li2_ref(x)
    assert abs(float(dilog(x)) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_reflection():
    x = (np.arange(100) + 0.5) / 100
    lhs = dilog(x) + dilog(1 - x)
    rhs = math.pi**2 / 6 - np.log(x) * np.log1p(-x)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_monotone():
    x = -np.logspace(8, -8, 2000)
    x = np.concatenate([x, np.linspace(0, 1, 1000)])
    assert np.all(np.diff(dilog(x)) > 0)


def test_domain():
    with pytest.raises(ValueError):
        dilog(1.0000001)
    with pytest.raises(ValueError):
        dilog(np.array([0.5, 2.0]))


def test_backends_agree():
    x = np.concatenate([-np.logspace(10, -10, 500), np.linspace(0, 1, 200)])
    for name in _kernels.available_backends():
        np.testing.assert_allclose(_kernels.get_backend(name).dilog(x), dilog(x), rtol=1e-15, atol=1e-16)


def test_rule_nodes():
    assert chebyshev_rule(1).nodes.tolist() == [0.0]
    for K in (2, 5, 50, 51):
        r = chebyshev_rule(K)
        assert np.all(np.diff(r.nodes) < 0)
        assert np.all(np.abs(r.nodes) < 1)
        assert np.array_equal(r.nodes, -r.nodes[::-1])
        np.testing.assert_allclose(r.nodes, np.cos((2 * np.arange(1, K + 1) - 1) * np.pi / (2 * K)), atol=1e-15)
    with pytest.raises(ValueError):
        chebyshev_rule(0)


def test_rule_arrays_read_only():
    r = chebyshev_rule(7)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0


def test_rule_constant_and_odd():
    r = chebyshev_rule(50)
    assert abs(r.integrate(lambda x: np.ones_like(x), -1, 1) - 2) <= 1e-3
    for K in (1, 2, 3, 10, 50, 51, 999):
        assert chebyshev_rule(K).integrate(lambda x: x, -1, 1) == 0.0


def test_rule_mapped_interval():
    r = chebyshev_rule(400)
    assert r.integrate(np.exp, 0.0, 2.0) == pytest.approx(math.exp(2) - 1, rel=1e-5)


@pytest.mark.parametrize("g", [np.exp, lambda x: np.exp(-3 * x), lambda x: np.exp(0.5 * x * x)])
def test_rule_convergence(g):
    # the mapped rule carries an O(1/K^2) bias, so 1e-6 self-agreement needs K in the thousands
    a = chebyshev_rule(4000).integrate(g, -1, 1)
    b = chebyshev_rule(16000).integrate(g, -1, 1)
    assert abs(a - b) <= 1e-6
