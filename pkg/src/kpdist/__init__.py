"""Tracy-Widom and Baik-Rains distributions with KP-equation checks.

Two independent routes are provided: Painleve II (`painleve`,
`distributions`) and Fredholm determinants of the Airy kernel
(`fredholm`).  `diffring` verifies the KP identity for the Baik-Rains
family in exact arithmetic and `kp` evaluates residuals numerically.
"""
from .airy import AiryValue, airy, airy_ai, airy_aip, airy_value
from .diffring import (CoeffTable, DiffPoly, build_y, d_dw, d_dx, export_coeff_table,
                       verify_kp_cancellation)
from .distributions import (BaikRainsPoint, DistributionPoint, baik_rains_cdf, f_goe, f_gue,
                            y_fn)
from .errors import (ContractError, DomainError, ExponentOverflowError, InstabilityError,
                     NumericError)
from .fredholm import (DiscretizedKernel, airy_kernel, discretize_kernel, fredholm_det_airy,
                       g_fn, resolvent_apply)
from .kp import (KpResidualReport, goe_ode_residual, kp_residual_br, kp_residual_fd,
                 kp_residual_gue)
from .painleve import (ABFamily, ABSolution, PainleveSolution, reflect_ab, solve_ab,
                       solve_hastings_mcleod)
from .quadrature import QuadratureRule, build_rule

__version__ = "0.1.0"
