import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kpdist.airy import airy_ai
from kpdist.errors import ContractError
from kpdist.quadrature import build_rule, gauss_legendre


def test_constant_and_cubic():
    rule = build_rule(20, 40.0)
    assert abs(rule.integrate(np.ones(20)) - 40.0) < 1e-12
    assert abs(rule.integrate(rule.nodes ** 3) / (40.0 ** 4 / 4) - 1) < 1e-12


def test_nodes_inside_and_increasing():
    rule = build_rule(60, 10.0, panels=3)
    assert np.all(np.diff(rule.nodes) > 0)
    assert rule.nodes[0] > 0 and rule.nodes[-1] < 10.0
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - 10.0) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(10, 40), st.floats(0.5, 50.0), st.integers(0, 200))
def test_polynomial_exactness(m, L, seed):
    rng = np.random.default_rng(seed)
    deg = 2 * m - 1
    c = rng.standard_normal(deg + 1)
    rule = build_rule(m, L)
    t = rule.nodes / L
    exact = L * np.sum(c / np.arange(1, deg + 2))
    assert abs(rule.integrate(np.polyval(c[::-1], t)) - exact) <= 1e-10 * max(1.0, np.sum(np.abs(c)) * L)


def test_airy_integral_is_one_third():
    rule = build_rule(120, 40.0)
    assert abs(rule.integrate(airy_ai(rule.nodes)) - 1.0 / 3.0) < 1e-10


@pytest.mark.parametrize("m,L", [(9, 1.0), (20, 0.0), (20, -1.0)])
def test_degenerate_rules_rejected(m, L):
    with pytest.raises(ContractError):
        build_rule(m, L)


def test_panel_divisibility():
    with pytest.raises(ContractError):
        build_rule(25, 1.0, panels=2)
    with pytest.raises(ContractError):
        gauss_legendre(1.0, 1.0, 5)
