import numpy as np
import pytest

from kpdist.errors import DomainError
from kpdist.fredholm import (airy_kernel, airy_kernel_diagonal, discretize_kernel,
                             fredholm_det_airy, g_fn, kernel_apply, phi_hat, psi_hat,
                             resolvent_apply)
from kpdist.quadrature import build_rule

RULE = build_rule(120, 40.0)


def test_kernel_symmetric_and_small_far_right():
    assert airy_kernel(0.3, 1.0, 2.0, RULE) == airy_kernel(0.3, 2.0, 1.0, RULE)
    assert airy_kernel(6.0, 0.0, 0.0, RULE) < 1e-8


@pytest.mark.parametrize("s,x", [(-2.0, 0.5), (0.0, 0.0), (1.0, 3.0)])
def test_kernel_diagonal_closed_form(s, x):
    assert abs(airy_kernel(s, x, x, RULE) - airy_kernel_diagonal(s, x)) <= 1e-9


def test_kernel_rejects_negative_arguments():
    with pytest.raises(DomainError):
        airy_kernel(0.0, -1.0, 0.0, RULE)


@pytest.mark.parametrize("s", [-8.0, -4.0, 0.0, 4.0])
def test_discretised_kernel_is_contraction(s):
    dk = discretize_kernel(s, RULE)
    assert np.max(np.abs(dk.matrix - dk.matrix.T)) <= 1e-13
    ev = dk.eigenvalues()
    assert ev.min() > -1e-13 and ev.max() < 1


def test_determinant_limits_and_monotone():
    assert abs(fredholm_det_airy(8.0) - 1) <= 1e-10
    vals = [fredholm_det_airy(s) for s in np.arange(-8, 6.1, 1.0)]
    assert all(0 < v <= 1 for v in vals)
    assert np.all(np.diff(vals) > 0)


def test_determinant_self_convergence():
    assert abs(fredholm_det_airy(0.0, m=80) - fredholm_det_airy(0.0, m=160)) < 1e-9
    for s in (-6.0, 0.0, 6.0):
        assert abs(fredholm_det_airy(s) - fredholm_det_airy(s, m=240, L=80.0)) < 1e-9


def test_resolvent_basic_cases():
    assert np.all(resolvent_apply(0.0, np.zeros(120)) == 0)
    rhs = np.exp(-RULE.nodes)
    assert np.max(np.abs(resolvent_apply(8.0, rhs) - rhs)) <= 1e-8


def test_resolvent_neumann_series():
    rhs = np.cos(RULE.nodes) * np.exp(-0.1 * RULE.nodes)
    k1 = kernel_apply(2.0, rhs, RULE)
    k2 = kernel_apply(2.0, k1, RULE)
    assert np.max(np.abs(resolvent_apply(2.0, rhs) - (rhs + k1 + k2))) <= 1e-8


def test_resolvent_residual():
    rhs = np.exp(-RULE.nodes / 3)
    f = resolvent_apply(-3.0, rhs)
    res = f - kernel_apply(-3.0, f, RULE) - rhs
    assert np.linalg.norm(res) <= 1e-12 * np.linalg.norm(rhs) * 10


def test_phi_two_ways():
    xs = np.array([0.0, 0.7, 2.0, 5.0])
    for s, w in [(0.0, 0.5), (-2.0, 0.25), (1.0, 1.0)]:
        assert np.max(np.abs(phi_hat(xs, s, w) - phi_hat(xs, s, w, method="direct"))) <= 1e-9
        assert np.max(np.abs(psi_hat(xs, s, w) - psi_hat(xs, s, w, method="direct"))) <= 1e-9


def test_g_matches_painleve(ps, family):
    from kpdist.distributions import y_fn
    for s in (0.0, 6.0):
        assert abs(g_fn(s, 0.5) - y_fn(s, 0.5, ps, family(0.5))) <= 1e-6


def test_g_truncation_refinement():
    a = g_fn(0.0, 0.25, Z=60.0, method="direct")
    b = g_fn(0.0, 0.25, Z=90.0, method="direct")
    assert abs(a - b) < 1e-8


def test_g_refinement_in_m_and_L():
    for s, w in [(-4.0, 0.1), (0.0, 0.5), (4.0, 1.0)]:
        assert abs(g_fn(s, w) - g_fn(s, w, m=240, L=80.0)) < 1e-8


def test_g_methods_agree_where_damped():
    for s in (-2.0, 2.0):
        assert abs(g_fn(s, 0.5) - g_fn(s, 0.5, method="direct")) < 1e-9


def test_g_needs_w_above_minimum():
    with pytest.raises(DomainError, match="Painleve"):
        g_fn(0.0, 0.01)
