"""Tracy-Widom GUE by two independent routes.

The Painleve II solution gives log F_GUE as a double integral of u^2; the
Fredholm determinant of the Airy kernel gives the same number directly.
Both are printed side by side together with the GOE law.
"""
from kpdist import f_goe, f_gue, fredholm_det_airy, solve_hastings_mcleod

ps = solve_hastings_mcleod()
print("%6s %22s %22s %10s %12s" % ("s", "F_GUE (Painleve)", "F_GUE (Fredholm)", "diff", "F_GOE"))
for s in (-5.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0):
    p, f = f_gue(s, ps), fredholm_det_airy(s)
    print("%6.1f %22.17f %22.17f %10.1e %12.8f" % (s, p, f, abs(p - f), f_goe(s, ps)))
