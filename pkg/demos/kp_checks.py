"""KP equation checks: exact cancellation and numerical residuals.

First the differential-ring identity behind the Baik-Rains solution is
reduced to zero in rational arithmetic.  Then the residual of the KP
equation is evaluated numerically for the GUE and Baik-Rains fields.
"""
import time

from kpdist import ABFamily, kp_residual_br, kp_residual_gue, solve_hastings_mcleod
from kpdist.diffring import format_golden_report, verify_kp_cancellation

t0 = time.perf_counter()
res = verify_kp_cancellation()
print("exact cancellation: %s (%.2fs)" % (res["zero"], time.perf_counter() - t0))
print(format_golden_report())
print()

ps = solve_hastings_mcleod()
family = ABFamily(ps)
for point in [(0.0, 1.0, 0.0), (0.5, 2.0, -1.0), (1.0, 0.5, 2.0)]:
    g = kp_residual_gue(*point, ps)
    b = kp_residual_br(*point, ps, family)
    print("(x,t,r)=%-16s GUE residual %9.1e   Baik-Rains residual %9.1e" % (point, g.residual, b.residual))

rep = kp_residual_br(0.5, 1.0, 0.0, ps, family)
print("\nper-term report at (0.5, 1, 0):")
print(rep.to_json())
