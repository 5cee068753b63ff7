"""The nine acceptance criteria, each at its stated tolerance and time budget.

Run with ``pytest tests/test_acceptance.py -s`` or as a script; a one-line
verdict per criterion is printed and collected in the terminal summary.
"""
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from kpdist import checks
from kpdist.diffring import golden_report, mutation_survey, verify_kp_cancellation, DiffPoly
from kpdist.distributions import baik_rains_cdf, f_gue, y_fn
from kpdist.fredholm import fredholm_det_airy, g_fn
from kpdist.kp import (GueField, goe_ode_residual, kp_residual_br, kp_residual_fd,
                       kp_residual_gue)


def record(n, title, ok, detail, elapsed, budget):
    within = elapsed < budget
    line = "criterion %d %-28s %s  %s  [%.1fs / %gs]" % (
        n, title, "PASS" if ok and within else "FAIL", detail, elapsed, budget)
    ACCEPTANCE_RESULTS[n] = line
    print(line)
    assert within, "runtime %.1fs exceeds %gs" % (elapsed, budget)
    assert ok, line


def test_1_symbolic_cancellation():
    t0 = time.perf_counter()
    zero = verify_kp_cancellation()["zero"]
    survey = mutation_survey()
    ok = zero and not any(survey.values())
    record(1, "symbolic-cancellation", ok,
           "zero=%s, %d/%d mutations nonzero" % (zero, sum(not v for v in survey.values()), len(survey)),
           time.perf_counter() - t0, 5)


def test_2_golden_formulas():
    t0 = time.perf_counter()
    lines = golden_report()
    forms = [ln for ln in lines if ln.name != "u3-rule"]
    rule = next(ln for ln in lines if ln.name == "u3-rule")
    # the printed u''' rule is a documented erratum, reported by its delta
    documented = rule.delta == DiffPoly.parse("6*u*u1 - 6*u**2*u1")
    ok = all(ln.match for ln in forms) and (rule.match or documented)
    record(2, "golden-formulas", ok,
           "%d/%d printed forms exact, u3 rule erratum documented=%s"
           % (sum(ln.match for ln in forms), len(forms), documented),
           time.perf_counter() - t0, 5)


def test_3_dual_route_gue(ps):
    t0 = time.perf_counter()
    ss = (-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0)
    dev = max(abs(f_gue(s, ps) - fredholm_det_airy(s)) for s in ss)
    conv = max(abs(fredholm_det_airy(s) - fredholm_det_airy(s, m=240, L=80.0)) for s in ss)
    record(3, "dual-route-F_GUE", dev <= 1e-8 and conv < 1e-9,
           "max dev %.1e (tol 1e-8), doubling %.1e (tol 1e-9)" % (dev, conv),
           time.perf_counter() - t0, 60)


def test_4_y_equals_g(ps, family):
    t0 = time.perf_counter()
    dev = max(abs(y_fn(s, w, ps, family(w)) - g_fn(s, w))
              for s in (-4.0, -2.0, 0.0, 2.0, 4.0) for w in (0.1, 0.25, 0.5, 1.0))
    record(4, "y=g", dev <= 1e-6, "max |y-g| %.1e (tol 1e-6)" % dev, time.perf_counter() - t0, 300)


def test_5_kp_gue(ps):
    t0 = time.perf_counter()
    field = GueField(ps)
    an = fd = 0.0
    for x in checks.KP_GUE_GRID[0]:
        for t in checks.KP_GUE_GRID[1]:
            for r in checks.KP_GUE_GRID[2]:
                an = max(an, abs(kp_residual_gue(x, t, r, ps).residual))
                fd = max(fd, abs(kp_residual_fd(field, (x, t, r)).residual))
    record(5, "KP-GUE", an <= 1e-6 and fd <= 1e-3,
           "analytic %.1e (tol 1e-6), fd %.1e (tol 1e-3)" % (an, fd), time.perf_counter() - t0, 30)


def test_6_goe_ode(ps):
    t0 = time.perf_counter()
    worst = max(abs(goe_ode_residual(r, ps)) for r in np.arange(-4.0, 4.0 + 1e-9, 0.5))
    record(6, "GOE-ODE", worst <= 1e-6, "max residual %.1e (tol 1e-6)" % worst,
           time.perf_counter() - t0, 10)


def test_7_baik_rains_kp(ps, family):
    t0 = time.perf_counter()
    worst, complete = 0.0, True
    for x in checks.KP_BR_GRID[0]:
        for t in checks.KP_BR_GRID[1]:
            for r in checks.KP_BR_GRID[2]:
                rep = kp_residual_br(x, t, r, ps, family)
                parts = [rep.term_t, rep.term_nl, rep.term_rrr, rep.term_xx, *rep.coupling_terms]
                complete &= len(parts) == 6 and all(np.isfinite(parts))
                worst = max(worst, abs(rep.residual))
    record(7, "KP-Baik-Rains", worst <= 1e-4 and complete,
           "max residual %.1e (tol 1e-4), per-term report=%s" % (worst, complete),
           time.perf_counter() - t0, 120)


def test_8_cdf_axioms(ps, family):
    t0 = time.perf_counter()
    rs = np.round(np.arange(-7.0, 6.0 + 1e-9, 0.1), 10)
    parts, ok = [], True
    for tau in (0.0, 0.5, 1.0):
        ab = family(tau / 2)
        f = np.array([baik_rains_cdf(tau, r, ps, ab).f_tau for r in rs])
        mono = bool(np.all(np.diff(f) >= 0))
        lo, hi = abs(f[0]), abs(1 - f[-1])
        ok &= mono and lo <= 1e-4 and hi <= 1e-4
        parts.append("tau=%g mono=%s |F(-7)|=%.0e |1-F(6)|=%.1e" % (tau, mono, lo, hi))
    record(8, "CDF-axioms", ok, "; ".join(parts) + " (tol 1e-4)", time.perf_counter() - t0, 60)


def test_9_identities(ps, family):
    t0 = time.perf_counter()
    res = checks.identity_suite(ps, family=family)
    failed = [c.name for c in res if not c.passed]
    worst = {}
    for c in res:
        key = c.name.split(":")[0]
        worst[key] = max(worst.get(key, 0.0), c.value)
    detail = ", ".join("%s %.0e" % kv for kv in worst.items())
    record(9, "identities", not failed, detail + (" failed: %s" % failed if failed else ""),
           time.perf_counter() - t0, 30)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
