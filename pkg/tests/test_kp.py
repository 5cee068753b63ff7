import json

import numpy as np
import pytest

from kpdist.checks import KP_BR_GRID, KP_GUE_GRID
from kpdist.distributions import y_fn
from kpdist.errors import ContractError, DomainError, NumericError
from kpdist.kp import (BaikRainsField, GueField, KpResidualReport, goe_ode_residual,
                       goe_ode_residual_fd, kp_residual_br, kp_residual_br_full, kp_residual_fd,
                       kp_residual_gue, kp_residual_zero, log_partials, modified_kp_residual_fd,
                       similarity_variables, y_partial_values)
from kpdist.painleve import ABFamily, solve_hastings_mcleod

GRID = [(x, t, r) for x in KP_GUE_GRID[0] for t in KP_GUE_GRID[1] for r in KP_GUE_GRID[2]]
BR_GRID = [(x, t, r) for x in KP_BR_GRID[0] for t in KP_BR_GRID[1] for r in KP_BR_GRID[2]]


def test_similarity_variables():
    assert similarity_variables(0.0, 1.0, 0.3) == (0.3, 0.0)
    xi, w = similarity_variables(1.0, 8.0, 2.0)
    assert abs(xi - (1.0 + 1 / 16)) < 1e-15 and abs(w - 0.125) < 1e-15
    with pytest.raises(DomainError):
        similarity_variables(0.0, 0.0, 0.0)


@pytest.mark.parametrize("point", GRID)
def test_gue_residual_grid(ps, point):
    assert abs(kp_residual_gue(*point, ps).residual) <= 1e-6


def test_gue_report_terms_add_up(ps):
    rep = kp_residual_gue(0.5, 1.0, 0.0, ps)
    total = rep.term_t + rep.term_nl + rep.term_rrr + rep.term_xx
    assert rep.residual == float(total)
    assert max(abs(rep.term_t), abs(rep.term_nl), abs(rep.term_rrr)) > 1e-3
    assert rep.method == "analytic" and rep.coupling_terms == []


def test_gue_fd_agrees(ps):
    field = GueField(ps)
    for point in [(0.0, 1.0, 0.0), (0.5, 2.0, -2.0), (1.0, 0.5, 2.0)]:
        fd = kp_residual_fd(field, point)
        an = kp_residual_gue(*point, ps)
        assert fd.method == "finite-difference"
        assert abs(fd.residual - an.residual) <= 1e-4
        assert abs(fd.term_t - an.term_t) <= 1e-6
        assert abs(fd.term_xx - an.term_xx) <= 1e-5


def test_zero_and_constant_fields():
    assert kp_residual_zero(0.3, 1.0, 0.0).residual == 0.0
    assert kp_residual_fd(lambda x, t, r: 0.0, (0.0, 1.0, 0.0)).residual == 0.0
    rep = kp_residual_fd(lambda x, t, r: 2.5, (0.1, 1.0, 0.3), anchor=5.0)
    assert abs(rep.residual) <= 1e-9


def test_fd_rejects_bad_steps():
    with pytest.raises(DomainError):
        kp_residual_fd(lambda x, t, r: 0.0, (0.0, 1.0, 0.0), steps=0.0)


def test_gue_scaling_covariance(ps):
    for x, t, r in [(0.5, 1.0, 0.0), (0.3, 0.7, -1.0)]:
        a = kp_residual_gue(x, t, r, ps)
        b = kp_residual_gue(2 ** (2 / 3) * x, 2 * t, 2 ** (1 / 3) * r, ps)
        assert abs(a.residual) <= 1e-6 and abs(b.residual) <= 1e-6


def test_gue_left_of_domain(ps):
    with pytest.raises(DomainError):
        kp_residual_gue(0.0, 1.0, -20.0, ps)


@pytest.mark.parametrize("r", np.arange(-4.0, 4.01, 0.5))
def test_goe_residual(ps, r):
    assert abs(goe_ode_residual(r, ps)) <= 1e-6


def test_goe_examples(ps):
    assert abs(goe_ode_residual(6.0, ps)) <= 1e-8
    assert abs(goe_ode_residual(-4.0, ps)) <= 1e-5
    for r in (-4.0, 0.0, 2.0):
        assert abs(goe_ode_residual_fd(r, ps)) <= 1e-3


@pytest.mark.parametrize("point", BR_GRID)
def test_br_residual_grid(ps, family, point):
    rep = kp_residual_br(*point, ps, family)
    assert abs(rep.residual) <= 1e-4
    assert len(rep.coupling_terms) == 2


def test_br_stationary_point_and_full_equation(ps, family):
    assert abs(kp_residual_br(0.0, 1.0, 0.0, ps, family).residual) <= 1e-4
    for point in [(0.5, 1.0, 0.0), (1.0, 2.0, -1.0)]:
        assert abs(kp_residual_br_full(*point, ps, family).residual) <= 1e-4


def test_br_fd_agrees(ps, family):
    for point in [(0.5, 1.0, 0.0), (0.2, 2.0, 1.0)]:
        fd = modified_kp_residual_fd(ps, family, point)
        assert abs(fd.residual - kp_residual_br(*point, ps, family).residual) <= 1e-3
    full = kp_residual_fd(BaikRainsField(ps, family, include_gue=True), (0.5, 1.0, 0.0))
    assert abs(full.residual) <= 1e-3


def test_br_rejects_foreign_family(ps):
    other = ABFamily(solve_hastings_mcleod(x_max=10.0))
    with pytest.raises(ContractError):
        kp_residual_br(0.5, 1.0, 0.0, ps, other)


def test_w_partial_matches_difference(ps, family):
    s, w, h = 0.0, 0.5, 1e-4
    yw = y_partial_values(s, w, family)["yw"]
    fd = (y_fn(s, w + h, ps, family(w + h)) - y_fn(s, w - h, ps, family(w - h))) / (2 * h)
    assert abs(yw - fd) <= 1e-5


def test_log_partials_guard():
    vals = {k: 1.0 for k in ("y", "y1", "y2", "y3", "y4", "y5", "yw", "y1w", "y2w", "yww", "y1ww")}
    vals["y"] = 1e-14
    with pytest.raises(NumericError):
        log_partials(vals)


def test_report_json_fields(ps, family):
    rep = kp_residual_br(0.5, 1.0, 0.0, ps, family)
    d = json.loads(rep.to_json())
    assert list(d) == ["x", "t", "r", "term_t", "term_nl", "term_rrr", "term_xx",
                       "coupling_terms", "residual", "method"]
    assert d["residual"] == rep.residual
    assert isinstance(KpResidualReport(**d), KpResidualReport)
