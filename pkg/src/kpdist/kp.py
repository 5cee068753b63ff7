"""KP residuals for the GUE, GOE and Baik-Rains families.

The KP equation is

    phi_t + phi phi_r + 1/12 phi_rrr + 1/4 d_r^{-1} phi_xx = 0

with ``d_r^{-1}`` the antiderivative vanishing as ``r -> +inf``.  Every
family here has the self-similar form

    phi(x, t, r) = t^{-2/3} P(xi, w),   xi = t^{-1/3} r + t^{-4/3} x^2,   w = t^{-2/3} x / 2

so all four terms follow from the chain rule applied to the xi- and
w-derivatives of ``P``.  For the GUE family ``P = -u(xi)^2``; for the
Baik-Rains correction ``P = d_xi^2 log y(xi, w)`` and the partials of ``y``
come from the exact differential ring.  The Baik-Rains correction ``psi``
satisfies the modified equation

    psi_t + psi psi_r + 1/12 psi_rrr + 1/4 d_r^{-1} psi_xx
        + phi_gue psi_r + psi d_r phi_gue = 0.
"""
from dataclasses import asdict, dataclass, field
import json
import math

import numpy as np

from .diffring import DiffPoly, compiled_partials
from .errors import ContractError, DomainError, NumericError
from .quadrature import gauss_legendre

_SMALL_Y = 1e-12


@dataclass(frozen=True)
class KpResidualReport:
    x: float
    t: float
    r: float
    term_t: float
    term_nl: float
    term_rrr: float
    term_xx: float
    coupling_terms: list = field(default_factory=list)
    residual: float = 0.0
    method: str = "analytic"

    @classmethod
    def from_terms(cls, x, t, r, term_t, term_nl, term_rrr, term_xx, coupling=(), method="analytic"):
        coupling = [float(c) for c in coupling]
        residual = float(term_t + term_nl + term_rrr + term_xx + sum(coupling))
        return cls(float(x), float(t), float(r), float(term_t), float(term_nl), float(term_rrr),
                   float(term_xx), coupling, residual, method)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=False)


def similarity_variables(x, t, r):
    if not t > 0:
        raise DomainError("t must be positive, got %g" % t)
    xi = t ** (-1.0 / 3.0) * r + t ** (-4.0 / 3.0) * x * x
    w = 0.5 * t ** (-2.0 / 3.0) * x
    return xi, w


@dataclass(frozen=True)
class _Profile:
    """Partials of the profile ``P(xi, w)`` and of its xi-antiderivative ``Q``."""

    p: float
    p_xi: float
    p_xixixi: float
    p_w: float = 0.0
    q_ww: float = 0.0


def _kp_terms(x, t, r, prof):
    """``(term_t, term_nl, term_rrr, term_xx, phi, phi_r)`` for ``phi = t^{-2/3} P``."""
    xi_t = -t ** (-4.0 / 3.0) * r / 3.0 - 4.0 / 3.0 * t ** (-7.0 / 3.0) * x * x
    w_t = -t ** (-5.0 / 3.0) * x / 3.0
    phi = t ** (-2.0 / 3.0) * prof.p
    phi_r = t ** -1.0 * prof.p_xi
    term_t = -2.0 / 3.0 * t ** (-5.0 / 3.0) * prof.p + t ** (-2.0 / 3.0) * (prof.p_xi * xi_t + prof.p_w * w_t)
    term_nl = phi * phi_r
    term_rrr = t ** (-5.0 / 3.0) * prof.p_xixixi / 12.0
    inv_xx = (2.0 * t ** (-5.0 / 3.0) * prof.p + 4.0 * x * x * t ** -3.0 * prof.p_xi
              + 2.0 * x * t ** (-7.0 / 3.0) * prof.p_w + 0.25 * t ** (-5.0 / 3.0) * prof.q_ww)
    return term_t, term_nl, term_rrr, 0.25 * inv_xx, phi, phi_r


# u-only polynomials for the GUE profile P = -u^2
def _u_stack(expr, n):
    p = DiffPoly.parse(expr)
    out = [p]
    for _ in range(n):
        out.append(out[-1].d_dx())
    return [q.compile() for q in out]


_GUE_STACK = None


def _gue_stack():
    global _GUE_STACK
    if _GUE_STACK is None:
        _GUE_STACK = _u_stack("-u**2", 3)
    return _GUE_STACK


def _u_values(xi, ps):
    if xi < ps.x_min:
        raise DomainError("xi=%g is left of the Painleve domain (x_min=%g)" % (xi, ps.x_min))
    st = ps.state(xi)
    return float(st[0, 0]), float(st[1, 0])


def _gue_profile(xi, ps):
    u, u1 = _u_values(xi, ps)
    vals = [float(f(u, u1, 0, 0, 0, 0, xi, 0)) for f in _gue_stack()]
    return _Profile(p=vals[0], p_xi=vals[1], p_xixixi=vals[3])


def kp_residual_gue(x, t, r, ps):
    """Analytic KP residual of ``phi = -t^{-2/3} u(xi)^2``."""
    xi, _ = similarity_variables(x, t, r)
    terms = _kp_terms(x, t, r, _gue_profile(xi, ps))
    return KpResidualReport.from_terms(x, t, r, *terms[:4])


def kp_residual_zero(x, t, r):
    """Residual of the zero solution, built through the same term assembly."""
    terms = _kp_terms(x, t, r, _Profile(0.0, 0.0, 0.0))
    return KpResidualReport.from_terms(x, t, r, *terms[:4])


_GOE_STACK = None


def goe_ode_residual(r, ps):
    """``psi''' + 12 psi' psi - r psi' - 2 psi`` for ``psi = (q' - q^2)/2``, ``q = -u``."""
    global _GOE_STACK
    if _GOE_STACK is None:
        _GOE_STACK = _u_stack("(-u1 - u**2)/2", 3)
    u, u1 = _u_values(r, ps)
    p0, p1, _, p3 = (float(f(u, u1, 0, 0, 0, 0, r, 0)) for f in _GOE_STACK)
    return p3 + 12.0 * p1 * p0 - r * p1 - 2.0 * p0


def goe_ode_residual_fd(r, ps, h=1e-2):
    """The same residual with psi-derivatives by finite differences of the tabulated solution."""
    def psi(s):
        u, u1 = _u_values(s, ps)
        return 0.5 * (-u1 - u * u)
    f = [psi(r + k * h) for k in range(-3, 4)]
    d1 = (-f[5] + 8 * f[4] - 8 * f[2] + f[1]) / (12 * h)
    d3 = (-f[6] + 8 * f[5] - 13 * f[4] + 13 * f[2] - 8 * f[1] + f[0]) / (8 * h ** 3)
    return d3 + 12.0 * d1 * f[3] - r * d1 - 2.0 * f[3]


# ---------------------------------------------------------------------------
# Baik-Rains


def y_partial_values(xi, w, ab_family):
    """Numeric ``y, y1..y5, yw, y1w, y2w, yww, y1ww`` at ``(xi, w)``."""
    sol = ab_family(w)
    u, u1, a, b, am, bm = (float(c[0]) for c in sol.at(xi))
    return {name: float(f(u, u1, a, b, am, bm, xi, w)) for name, f in compiled_partials().items()}


def log_partials(yv):
    """xi- and w-partials of ``L = log y`` from the partials of ``y``."""
    y = yv["y"]
    if abs(y) < _SMALL_Y:
        raise NumericError("|y| = %.3g is too small for log-derivatives" % abs(y))
    ys = [yv["y%d" % k] if k else y for k in range(6)]
    lx = [0.0] * 6
    for n in range(1, 6):
        acc = ys[n]
        for k in range(1, n):
            acc -= math.comb(n - 1, k) * ys[k] * lx[n - k]
        lx[n] = acc / y
    lw = yv["yw"] / y
    l1w = (yv["y1w"] - yv["yw"] * lx[1]) / y
    l2w = (yv["y2w"] - yv["y1w"] * lx[1] - ys[1] * l1w - yv["yw"] * lx[2]) / y
    l1ww = (yv["y1ww"] - yv["yww"] * lx[1] - 2 * yv["yw"] * l1w) / y
    return {"L1": lx[1], "L2": lx[2], "L3": lx[3], "L4": lx[4], "L5": lx[5],
            "Lw": lw, "L1w": l1w, "L2w": l2w, "L1ww": l1ww}


def _br_profile(xi, w, ab_family):
    lp = log_partials(y_partial_values(xi, w, ab_family))
    return _Profile(p=lp["L2"], p_xi=lp["L3"], p_xixixi=lp["L5"], p_w=lp["L2w"], q_ww=lp["L1ww"])


def kp_residual_br(x, t, r, ps, ab_family):
    """Residual of the modified KP equation for ``psi = d_r^2 log y``.

    The coupling terms are ``phi_gue psi_r`` and ``psi d_r phi_gue``.
    """
    xi, w = similarity_variables(x, t, r)
    if ab_family.ps is not ps:
        raise ContractError("ab_family was built on a different Painleve solution")
    gue = _gue_profile(xi, ps)
    term_t, term_nl, term_rrr, term_xx, psi, psi_r = _kp_terms(x, t, r, _br_profile(xi, w, ab_family))
    phi_g = t ** (-2.0 / 3.0) * gue.p
    phi_g_r = t ** -1.0 * gue.p_xi
    return KpResidualReport.from_terms(x, t, r, term_t, term_nl, term_rrr, term_xx,
                                       coupling=(phi_g * psi_r, psi * phi_g_r))


def kp_residual_br_full(x, t, r, ps, ab_family):
    """Plain KP residual of ``phi_br = phi_gue + psi``."""
    xi, w = similarity_variables(x, t, r)
    g = _gue_profile(xi, ps)
    c = _br_profile(xi, w, ab_family)
    prof = _Profile(g.p + c.p, g.p_xi + c.p_xi, g.p_xixixi + c.p_xixixi, c.p_w, c.q_ww)
    return KpResidualReport.from_terms(x, t, r, *_kp_terms(x, t, r, prof)[:4])


# ---------------------------------------------------------------------------
# finite differences


def _d1(f, h):
    return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h)


def _d2(f, h):
    return (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h)


def _d3(f, h):
    return (-f(3 * h) + 8 * f(2 * h) - 13 * f(h) + 13 * f(-h) - 8 * f(-2 * h) + f(-3 * h)) / (8 * h ** 3)


def kp_residual_fd(field, point, steps=1e-3, anchor=None, nodes=48):
    """Finite-difference KP residual of an arbitrary field ``field(x, t, r)``.

    Parameters
    ----------
    field : callable
        Scalar field.  If it has an ``anchor(x, t)`` method, that r-value is
        used as the right end of the ``d_r^{-1}`` quadrature.
    point : tuple
        ``(x, t, r)``.
    steps : float or tuple
        Steps ``(hx, ht, hr)``; fourth-order central stencils throughout.
    anchor : float, optional
        r-value beyond which ``phi_xx`` is negligible.
    nodes : int
        Gauss-Legendre nodes per unit-length panel for the r-quadrature.
    """
    x, t, r = (float(v) for v in point)
    hx, ht, hr = (steps,) * 3 if np.isscalar(steps) else steps
    if min(hx, ht, hr) <= 0:
        raise DomainError("finite-difference steps must be positive")
    if anchor is None:
        anchor = field.anchor(x, t) if hasattr(field, "anchor") else r + 20.0
    phi = field(x, t, r)
    term_t = _d1(lambda h: field(x, t + h, r), ht)
    phi_r = _d1(lambda h: field(x, t, r + h), hr)
    term_rrr = _d3(lambda h: field(x, t, r + h), hr) / 12.0
    term_xx = 0.0
    if anchor > r:
        panels = max(1, int(math.ceil(anchor - r)))
        s, ws = gauss_legendre(r, anchor, max(8, nodes // 4), panels)
        vals = np.array([_d2(lambda h, si=si: field(x + h, t, si), hx) for si in s])
        term_xx = -0.25 * float(np.dot(ws, vals))
    return KpResidualReport.from_terms(x, t, r, term_t, phi * phi_r, term_rrr, term_xx,
                                       method="finite-difference")


class GueField:
    """``phi(x, t, r) = -t^{-2/3} u(xi)^2``."""

    def __init__(self, ps, xi_anchor=10.0):
        self.ps = ps
        self.xi_anchor = xi_anchor

    def __call__(self, x, t, r):
        xi, _ = similarity_variables(x, t, r)
        u, _ = _u_values(xi, self.ps)
        return -t ** (-2.0 / 3.0) * u * u

    def anchor(self, x, t):
        return t ** (1.0 / 3.0) * (self.xi_anchor - t ** (-4.0 / 3.0) * x * x)


class BaikRainsField:
    """``phi(x, t, r) = t^{-2/3} (log y)_xixi(xi, w)``, optionally plus the GUE field.

    Beyond ``xi_anchor`` the profile is ``-(xi - 4w^2)^{-2}`` up to
    exponentially small terms, whose ``x``-curvature in the r-antiderivative
    vanishes identically, so the quadrature anchor sits there.
    """

    def __init__(self, ps, ab_family, include_gue=False, xi_anchor=10.0):
        self.ps = ps
        self.ab_family = ab_family
        self.include_gue = include_gue
        self.xi_anchor = xi_anchor

    def __call__(self, x, t, r):
        xi, w = similarity_variables(x, t, r)
        sol = self.ab_family(w)
        u, u1, a, b, am, bm = (float(c[0]) for c in sol.at(xi))
        y = ((2 * u * u + xi - 4 * w * w) * a * am - (u1 + 2 * w * u) * b * am
             - (u1 - 2 * w * u) * a * bm)
        y1 = a * am
        y2 = u * (b * am + a * bm)
        val = y2 / y - (y1 / y) ** 2
        if self.include_gue:
            val -= u * u
        return t ** (-2.0 / 3.0) * val

    def anchor(self, x, t):
        return t ** (1.0 / 3.0) * (self.xi_anchor - t ** (-4.0 / 3.0) * x * x)


def modified_kp_residual_fd(ps, ab_family, point, steps=1e-3):
    """Finite-difference residual of the modified equation for the Baik-Rains correction."""
    x, t, r = point
    rep = kp_residual_fd(BaikRainsField(ps, ab_family), point, steps)
    gue = GueField(ps)
    hx, ht, hr = (steps,) * 3 if np.isscalar(steps) else steps
    psi = BaikRainsField(ps, ab_family)(x, t, r)
    psi_r = _d1(lambda h: BaikRainsField(ps, ab_family)(x, t, r + h), hr)
    phi_g = gue(x, t, r)
    phi_g_r = _d1(lambda h: gue(x, t, r + h), hr)
    return KpResidualReport.from_terms(x, t, r, rep.term_t, rep.term_nl, rep.term_rrr, rep.term_xx,
                                       coupling=(phi_g * psi_r, psi * phi_g_r),
                                       method="finite-difference")
