"""The Baik-Rains distribution F_tau for a few values of tau.

F_tau(r) is the r-derivative of y(r + tau^2, tau/2) F_GUE(r + tau^2).  The
function y is evaluated on the Painleve route and compared at one point
with its Fredholm-determinant counterpart g.
"""
import numpy as np

from kpdist import ABFamily, baik_rains_cdf, g_fn, solve_hastings_mcleod, y_fn

ps = solve_hastings_mcleod()
family = ABFamily(ps)

print("y(0, 0.5) = %.15f   g(0, 0.5) = %.15f" % (y_fn(0.0, 0.5, ps, family(0.5)), g_fn(0.0, 0.5)))
print()
rs = np.arange(-4.0, 4.01, 1.0)
print("%6s" % "r" + "".join("%14s" % ("tau=%g" % t) for t in (0.0, 0.5, 1.0)))
for r in rs:
    row = [baik_rains_cdf(t, r, ps, family(t / 2)).f_tau for t in (0.0, 0.5, 1.0)]
    print("%6.1f" % r + "".join("%14.8f" % v for v in row))

# the tau = 1 law still carries visible mass at r = 6
print("\n1 - F_1(6) = %.2e" % (1 - baik_rains_cdf(1.0, 6.0, ps, family(0.5)).f_tau))
