"""Painleve-route distribution functions.

With ``v = -int_x^inf u^2`` the pieces are

    F(x)      = exp(1/2 int_x^inf v)        F_GUE = F^2
    E(x)      = exp(1/2 int_x^inf u)        F_GOE = F E
    y(x, w)   = (2u^2 + x - 4w^2) a am - (u' + 2wu) b am - (u' - 2wu) a bm

and the Baik-Rains distribution at shift ``tau`` is

    F_tau(r) = d/dx [ y(x, tau/2) F_GUE(x) ]  at  x = r + tau^2.

Because ``y' = a am`` and ``(log F_GUE)' = -v``, the derivative is
``(a am - y v) F_GUE``.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import ContractError, DomainError
from .quadrature import gauss_legendre


@dataclass(frozen=True)
class DistributionPoint:
    s: float
    f_gue: float
    f_goe: float
    f_cap: float
    e_cap: float


@dataclass(frozen=True)
class BaikRainsPoint:
    tau: float
    r: float
    y_val: float
    f_tau: float
    antideriv: float


def _check(s, ps):
    if not np.isfinite(s):
        raise DomainError("s must be finite")
    if s < ps.x_min:
        raise DomainError("s=%g is left of the solved domain (x_min=%g)" % (s, ps.x_min))


def f_cap(s, ps):
    """``F(s) = exp(1/2 int_s^inf v)``."""
    _check(s, ps)
    return math.exp(0.5 * ps.log_f_gue_at(float(s)))


def e_cap(s, ps):
    """``E(s) = exp(1/2 int_s^inf u)``."""
    _check(s, ps)
    return math.exp(0.5 * ps.int_u_at(float(s)))


def f_gue(s, ps):
    """Tracy-Widom GUE distribution ``exp(-int_s^inf (t - s) u(t)^2 dt)``."""
    _check(s, ps)
    return math.exp(ps.log_f_gue_at(float(s)))


def f_goe(s, ps):
    """Tracy-Widom GOE distribution ``F(s) E(s)``."""
    return f_cap(s, ps) * e_cap(s, ps)


def f_goe_q_form(s, ps, panels=None):
    """GOE through ``exp(-1/2 int_s^inf q) F_GUE(s)^(1/2)`` with ``q = -u``.

    The q-integral is computed by fresh Gauss-Legendre quadrature of the
    tabulated solution, so it is independent of the integrator's running
    integral used by `f_goe`.
    """
    _check(s, ps)
    hi = ps.x_max
    int_q = 0.0
    if s < hi:
        panels = panels or max(4, int(math.ceil(hi - s)) * 2)
        t, wt = gauss_legendre(float(s), hi, 20, panels)
        int_q = -float(np.dot(wt, ps.u_at(t)))
    int_q += -ps.int_u_at(max(float(s), hi))  # tail beyond x_max
    return math.exp(-0.5 * int_q) * math.sqrt(f_gue(s, ps))


def distribution_point(s, ps):
    fc, ec = f_cap(s, ps), e_cap(s, ps)
    return DistributionPoint(s=float(s), f_gue=f_gue(s, ps), f_goe=fc * ec, f_cap=fc, e_cap=ec)


def _ab_state(x, w, ab):
    if not math.isclose(ab.w, w, rel_tol=0, abs_tol=1e-14):
        raise ContractError("ABSolution is for w=%r, requested w=%r" % (ab.w, w))
    return [float(c[0]) for c in ab.at(float(x))]


def y_fn(x, w, ps, ab):
    """``y(x, w)`` from the stored ``u, u', a, b, am, bm``."""
    _check(x, ps)
    u, up, a, b, am, bm = _ab_state(x, w, ab)
    return ((2 * u * u + x - 4 * w * w) * a * am - (up + 2 * w * u) * b * am
            - (up - 2 * w * u) * a * bm)


def y_prime(x, w, ab):
    """``y' = a(x, w) a(x, -w)``."""
    _, _, a, _, am, _ = _ab_state(x, w, ab)
    return a * am


def h_printed(x, w, ps, ab):
    """``{y' - y v} F_GUE`` with ``v = -int_x^inf u^2``."""
    return (y_prime(x, w, ab) - y_fn(x, w, ps, ab) * ps.v_at(float(x))) * f_gue(x, ps)


def h_product_rule(x, w, ps, ab, h=1e-4):
    """``d/dx (y F_GUE)`` by a fourth-order central difference."""
    def yf(t):
        return y_fn(t, w, ps, ab) * f_gue(t, ps)
    return (-yf(x + 2 * h) + 8 * yf(x + h) - 8 * yf(x - h) + yf(x - 2 * h)) / (12 * h)


def baik_rains_cdf(tau, r, ps, ab):
    """``F_tau(r)`` together with ``y`` and the anti-derivative ``y F_GUE``.

    `ab` must be solved at ``w = tau/2`` (reflected when ``tau < 0``).
    """
    if not np.isfinite(tau) or not np.isfinite(r):
        raise DomainError("tau and r must be finite")
    w = 0.5 * tau
    x = r + tau * tau
    _check(x, ps)
    if x > ab.x_max:
        raise DomainError("x=%g is right of the (a, b) domain" % x)
    y = y_fn(x, w, ps, ab)
    fg = f_gue(x, ps)
    f_tau = (y_prime(x, w, ab) - y * ps.v_at(float(x))) * fg
    return BaikRainsPoint(tau=float(tau), r=float(r), y_val=y, f_tau=f_tau, antideriv=y * fg)
