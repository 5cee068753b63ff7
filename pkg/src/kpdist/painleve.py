"""Hastings-McLeod solution of Painleve II and the auxiliary pair (a, b).

The solution ``u`` of ``u'' = 2u^3 + xu`` with ``u ~ -Ai`` at +infinity is
obtained by integrating leftward from ``x_max``.  Alongside ``u`` the
integrator carries

    v(x)      = -int_x^inf u^2          (v' = u^2)
    log_f(x)  =  int_x^inf v            (log F_GUE, log_f' = -v)
    int_u(x)  =  int_x^inf u            (int_u' = -u)

so the distribution functions need no further quadrature.

For a spectral parameter ``w >= 0`` the pair ``a(x, w), b(x, w)`` solves

    a' = u b,    b' = u a - 2 w b

and the reflected pair ``a(x, -w), b(x, -w)`` the same system with ``-w``.
Both are normalised at +infinity by

    a(x, +-w) -> 1,    b(x, w) e^{2wx} -> -e^{8w^3/3}

which is the only choice compatible with the reflection identities
``a(x, w) = -b(x, -w) e^{8w^3/3 - 2wx}`` and the w-flow of b.
"""
from dataclasses import dataclass, field
import math
import warnings

import numpy as np
from scipy.integrate import solve_ivp

from .airy import airy
from .errors import ContractError, DomainError, ExponentOverflowError, InstabilityError
from .quadrature import gauss_legendre

BLOWUP = 1e6
ACCURATE_LEFT = -10.0
WARN_LEFT = -12.0
GRID_STEP = 1.0 / 16.0
_TAIL_SPAN = 30.0
_EXP_LIMIT = 690.0


def _airy_tail_integrals(x0):
    """Integrals over [x0, inf) of Ai, Ai^2 and (t - x0) Ai^2."""
    t, wt = gauss_legendre(x0, x0 + _TAIL_SPAN, 40, panels=3)
    ai_t, _ = airy(t)
    ai, aip = airy(float(x0))
    int_ai = float(np.dot(wt, ai_t))
    # closed forms: int Ai^2 = Ai'^2 - x Ai^2, int (t-x) Ai^2 = (2x^2Ai^2 - 2xAi'^2 - AiAi')/3
    int_ai2 = aip * aip - x0 * ai * ai
    int_lin = (2 * x0 * x0 * ai * ai - 2 * x0 * aip * aip - ai * aip) / 3.0
    return int_ai, int_ai2, int_lin


def _asymptotic_state(x):
    """State [u, u', v, log_f, int_u] to the right of the seeding point (u = -Ai)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((5, x.size))
    for i, xi in enumerate(x):
        ai, aip = airy(float(xi))
        int_ai, int_ai2, int_lin = _airy_tail_integrals(float(xi))
        out[:, i] = (-ai, -aip, -int_ai2, -int_lin, -int_ai)
    return out


def _blowup_event(x, y):
    return BLOWUP - abs(y[0])


_blowup_event.terminal = True


@dataclass(frozen=True)
class PainleveSolution:
    """Hastings-McLeod ``u`` on ``[x_min, x_max]``, tabulated on `grid`.

    Arbitrary points are served by the integrator's dense output; points
    right of `x_max` fall back to the ``u = -Ai`` asymptotics.
    """

    grid: np.ndarray
    u: np.ndarray
    up: np.ndarray
    v: np.ndarray
    x_min: float
    x_max: float
    tol: float
    accuracy_warning: bool = False
    _dense: object = field(default=None, repr=False, compare=False)

    def state(self, x):
        """Rows ``u, u', v, log F_GUE, int_x^inf u`` at the points `x`."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x < self.x_min - 1e-12):
            raise DomainError("x=%g is left of the solved domain [%g, %g]"
                              % (x.min(), self.x_min, self.x_max))
        out = np.empty((5, x.size))
        inside = x <= self.x_max
        if np.any(inside):
            out[:, inside] = self._dense(np.clip(x[inside], self.x_min, self.x_max))
        if np.any(~inside):
            out[:, ~inside] = _asymptotic_state(x[~inside])
        return out

    def _pick(self, row, x):
        vals = self.state(x)[row]
        return float(vals[0]) if np.ndim(x) == 0 else vals

    def u_at(self, x):
        return self._pick(0, x)

    def up_at(self, x):
        return self._pick(1, x)

    def v_at(self, x):
        return self._pick(2, x)

    def log_f_gue_at(self, x):
        return self._pick(3, x)

    def int_u_at(self, x):
        """``int_x^inf u(s) ds`` (negative, since u < 0)."""
        return self._pick(4, x)

    def to_csv(self, path):
        """Dump ``x, u, up, v`` on the grid."""
        np.savetxt(path, np.column_stack([self.grid, self.u, self.up, self.v]),
                   delimiter=",", header="x,u,up,v", comments="", fmt="%.17g")


def solve_hastings_mcleod(x_min=ACCURATE_LEFT, x_max=12.0, tol=1e-13):
    """Integrate Painleve II leftward from `x_max` seeded with ``u = -Ai``.

    Parameters
    ----------
    x_min, x_max : float
        Domain.  ``x_max >= 8`` so that ``Ai(x_max)^2`` (the neglected
        nonlinear part of the seed) is below double precision.
    tol : float
        Relative tolerance of the DOP853 integrator, in ``[1e-13, 1e-6]``.

    Raises
    ------
    InstabilityError
        If ``|u|`` exceeds 1e6, which happens when the unstable leftward
        shooting has lost all digits.
    """
    if not x_min < x_max:
        raise ContractError("need x_min < x_max")
    if x_max < 8.0:
        raise DomainError("x_max must be >= 8 for the Airy seed, got %g" % x_max)
    if not 1e-13 <= tol <= 1e-6:
        raise DomainError("tol must lie in [1e-13, 1e-6], got %g" % tol)
    warn = x_min < WARN_LEFT
    if warn:
        warnings.warn("x_min=%g: leftward shooting loses accuracy past %g" % (x_min, WARN_LEFT),
                      RuntimeWarning, stacklevel=2)

    def rhs(x, y):
        u, up, v = y[0], y[1], y[2]
        return [up, 2.0 * u ** 3 + x * u, u * u, -v, -u]

    y0 = _asymptotic_state(x_max)[:, 0]
    sol = solve_ivp(rhs, (x_max, x_min), y0, method="DOP853", rtol=tol, atol=1e-40,
                    dense_output=True, events=_blowup_event)
    if sol.status == 1:
        xb = float(sol.t_events[0][0])
        raise InstabilityError("Hastings-McLeod shooting blew up at x=%.4f" % xb, x=xb)
    if sol.status != 0:
        raise InstabilityError("integration failed: %s" % sol.message)

    n = int(math.floor((x_max - x_min) / GRID_STEP + 1e-9))
    grid = np.append(x_min + GRID_STEP * np.arange(n + 1), x_max)
    grid = np.unique(grid)
    vals = sol.sol(grid)
    return PainleveSolution(grid=grid, u=vals[0], up=vals[1], v=vals[2], x_min=float(x_min),
                            x_max=float(x_max), tol=tol, accuracy_warning=warn, _dense=sol.sol)


def painleve_residual(ps, x, h=1e-4):
    """``u'' - 2u^3 - xu`` with ``u''`` from a central difference of ``u'``."""
    x = np.asarray(x, dtype=float)
    upp = (ps.up_at(x + h) - ps.up_at(x - h)) / (2 * h)
    u = ps.u_at(x)
    return upp - 2 * u ** 3 - x * u


# ---------------------------------------------------------------------------
# a, b


@dataclass(frozen=True)
class ABSolution:
    """``a(x, +-w), b(x, +-w)`` on `grid`.

    ``am, bm`` hold ``a(x, -w), b(x, -w)``.  The grid arrays are snapshots;
    `at` evaluates anywhere in ``[x_min, x_max]``.
    """

    w: float
    grid: np.ndarray
    a: np.ndarray
    b: np.ndarray
    am: np.ndarray
    bm: np.ndarray
    x_min: float
    x_max: float
    _eval: object = field(default=None, repr=False, compare=False)

    def at(self, x):
        """Rows ``u, u', a, b, am, bm`` at `x`."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x < self.x_min - 1e-12) or np.any(x > self.x_max + 1e-12):
            raise DomainError("x outside the (a, b) domain [%g, %g]" % (self.x_min, self.x_max))
        return self._eval(np.clip(x, self.x_min, self.x_max))

    @property
    def derived_w_partials(self):
        """``(d_w a, d_w b)`` on the grid from the w-flow identities."""
        u, up, a, b, _, _ = self.at(self.grid)
        return dw_ab(self.grid, self.w, u, up, a, b)

    def to_csv(self, path):
        """Dump ``x, a, b, am, bm`` on the grid."""
        np.savetxt(path, np.column_stack([self.grid, self.a, self.b, self.am, self.bm]),
                   delimiter=",", header="x,a,b,am,bm", comments="", fmt="%.17g")


def dw_ab(x, w, u, up, a, b):
    """Right-hand sides of the w-flow: ``(d_w a, d_w b)``."""
    da = 2 * u * u * a - (4 * w * u + 2 * up) * b
    db = (-4 * w * u + 2 * up) * a + (8 * w * w - 2 * x - 2 * u * u) * b
    return da, db


def ab_seed(w, x0):
    """``a, b, am, bm`` at `x0` to first order in the forcing ``u = -Ai``.

    Starting from the limits ``a -> 1``, ``b e^{2wx} -> -e^{c}``,
    ``am -> 1``, ``bm e^{-2wx} -> -e^{-c}`` (``c = 8w^3/3``), one
    Born iteration of the integral equations gives the values at `x0`.
    """
    c = 8.0 * w ** 3 / 3.0
    t, wt = gauss_legendre(x0, x0 + _TAIL_SPAN, 40, panels=3)
    ai_t, _ = airy(t)
    grow = float(np.dot(wt, ai_t * np.exp(2 * w * (t - x0))))   # e^{-2w x0} int Ai e^{2wt}
    decay = float(np.dot(wt, ai_t * np.exp(-2 * w * (t - x0))))  # e^{2w x0} int Ai e^{-2wt}
    expo = c - 2 * w * x0
    if abs(expo) > _EXP_LIMIT:
        raise ExponentOverflowError("seed factor exp(%.1f) at x=%g overflows" % (expo, x0), x=x0)
    e = math.exp(expo)
    a0 = 1.0 - e * decay
    am0 = 1.0 - grow / e
    b0 = -e + grow
    bm0 = -1.0 / e + decay
    return a0, b0, am0, bm0


def solve_ab(w, ps, tol=None):
    """Integrate ``(a, b)`` at `w` and at ``-w`` leftward across ``ps``'s domain.

    The seed point is ``max(ps.x_max, 4w^2 + 8)``: the reflected pair only
    settles to its limit once ``Ai(x) e^{2wx}`` has died out, and the
    integrand of that tail peaks near ``x = 4w^2``.
    """
    w = float(w)
    if w < 0:
        raise DomainError("solve_ab integrates w >= 0; use reflect_ab for w=%g" % w)
    tol = ps.tol if tol is None else tol
    x0 = max(ps.x_max, 4 * w * w + 8.0)
    a0, b0, am0, bm0 = ab_seed(w, x0)
    ai, aip = airy(x0)

    def rhs(x, y):
        u, up, a, b, am, bm = y
        return [up, 2.0 * u ** 3 + x * u, u * b, u * a - 2 * w * b, u * bm, u * am + 2 * w * bm]

    sol = solve_ivp(rhs, (x0, ps.x_min), [-ai, -aip, a0, b0, am0, bm0], method="DOP853",
                    rtol=tol, atol=1e-40, dense_output=True, events=_blowup_event)
    if sol.status == 1:
        xb = float(sol.t_events[0][0])
        raise InstabilityError("(a, b) integration blew up at x=%.4f" % xb, x=xb)
    if sol.status != 0:
        raise InstabilityError("integration failed: %s" % sol.message)
    grid = ps.grid
    vals = sol.sol(grid)
    return ABSolution(w=w, grid=grid, a=vals[2], b=vals[3], am=vals[4], bm=vals[5],
                      x_min=ps.x_min, x_max=ps.x_max, _eval=sol.sol)


def _reflection_factor(w, x):
    """``exp(8w^3/3 - 2wx)`` with an overflow guard."""
    expo = 8.0 * w ** 3 / 3.0 - 2.0 * w * np.asarray(x, dtype=float)
    if np.any(np.abs(expo) > _EXP_LIMIT):
        bad = np.atleast_1d(np.asarray(x))[np.argmax(np.abs(np.atleast_1d(expo)))]
        raise ExponentOverflowError("reflection factor overflows at x=%g" % bad, x=float(bad))
    return np.exp(expo)


def reflect_ab(sol):
    """The solution at ``-w`` built from `sol` through the reflection identities.

    ``a(x,-w) = -b(x,w) / E``, ``b(x,-w) = -a(x,w) / E`` and
    ``a(x,w) = -b(x,-w) E``, ``b(x,w) = -a(x,-w) E`` with
    ``E = exp(8w^3/3 - 2wx)``.
    """
    w = sol.w

    def reflected(x):
        u, up, a, b, am, bm = sol._eval(x)
        e = _reflection_factor(w, x)
        return np.array([u, up, -b / e, -a / e, -bm * e, -am * e])

    vals = reflected(sol.grid)
    return ABSolution(w=-w, grid=sol.grid, a=vals[2], b=vals[3], am=vals[4], bm=vals[5],
                      x_min=sol.x_min, x_max=sol.x_max, _eval=reflected)


class ABFamily:
    """Cache of `ABSolution` objects keyed by ``w`` for one Painleve solution.

    Negative ``w`` is served by reflecting the solve at ``|w|``.
    """

    def __init__(self, ps, tol=None):
        self.ps = ps
        self.tol = tol
        self._cache = {}

    def __call__(self, w):
        w = float(w)
        key = abs(w)
        if key not in self._cache:
            self._cache[key] = solve_ab(key, self.ps, tol=self.tol)
        sol = self._cache[key]
        return sol if w >= 0 or key == 0.0 else reflect_ab(sol)
