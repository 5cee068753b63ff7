"""Fredholm-determinant route: the Airy kernel on [0, inf) and g(s, w).

The shifted Airy kernel

    K_s(x, y) = int_0^inf Ai(x + l + s) Ai(y + l + s) dl

factors as ``K_s = A_s A_s`` with ``A_s(x, y) = Ai(x + y + s)``.  On a
Gauss-Legendre rule the symmetrised Nystrom matrix is ``M = B @ B`` with
``B = sqrt(w) A_s sqrt(w)``, which is symmetric positive semidefinite by
construction.

``g`` is computed from

    g(s, w) = e^{Ws - W^3/3} [ T1 + <Phi, (I - K_s)^{-1} Psi> ],   W = 2w,

    T1      = int_{-inf}^0 (-z) e^{Wz} Ai(z + s) dz
    Psi(y)  = int_{-inf}^0 e^{Wz} Ai(y + z + s) dz
    Phi(x)  = int_{-inf}^0 e^{Wz} K_s(z, x) dz = (A_s Psi)(x)

Two evaluation methods are offered.  ``"laplace"`` removes the half-line
integrals with ``int_R e^{Wt} Ai(t) dt = e^{W^3/3}``, leaving only
integrals over [0, L]; ``"direct"`` truncates the half-line at ``-Z`` and
integrates the oscillatory Airy tail by quadrature.
"""
from dataclasses import dataclass
import math

import numpy as np

from .airy import airy_ai
from .errors import DomainError, NumericError
from .quadrature import QuadratureRule, build_rule, gauss_legendre

W_MIN = 0.05
DEFAULT_M = 120
DEFAULT_L = 40.0
DEFAULT_Z = 60.0
_PANEL_LENGTH = 2.0
_PANEL_NODES = 24


def airy_kernel(s, x, y, rule=None):
    """``K_s(x, y)`` by quadrature of the l-integral over ``[0, rule.L]``.

    The omitted tail is bounded by ``Ai(L + s)^2`` times a constant, far
    below 1e-12 for the default ``L = 40`` and ``s >= -10``.
    """
    if x < 0 or y < 0:
        raise DomainError("airy_kernel is defined for x, y >= 0")
    rule = rule or build_rule(DEFAULT_M, DEFAULT_L)
    lam = rule.nodes
    return rule.integrate(airy_ai(x + lam + s) * airy_ai(y + lam + s))


def airy_kernel_diagonal(s, x):
    """Closed form ``K_s(x, x) = Ai'(x+s)^2 - (x+s) Ai(x+s)^2``."""
    from .airy import airy
    ai, aip = airy(x + s)
    return aip * aip - (x + s) * ai * ai


@dataclass(frozen=True)
class DiscretizedKernel:
    """Symmetrised Nystrom matrix ``sqrt(w_i) K_s(x_i, x_j) sqrt(w_j)``."""

    s: float
    rule: QuadratureRule
    matrix: np.ndarray
    half: np.ndarray  # B with matrix = B @ B

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)


def _shift_matrix(s, rule):
    x = rule.nodes
    return airy_ai(x[:, None] + x[None, :] + s)


def discretize_kernel(s, rule):
    sw = np.sqrt(rule.weights)
    half = sw[:, None] * _shift_matrix(s, rule) * sw[None, :]
    half = 0.5 * (half + half.T)
    return DiscretizedKernel(s=float(s), rule=rule, matrix=half @ half, half=half)


def fredholm_det_airy(s, m=DEFAULT_M, L=DEFAULT_L):
    """``det(I - K_s)`` on ``L^2(0, inf)``, i.e. F_GUE(s)."""
    dk = discretize_kernel(s, build_rule(m, L))
    # I - B^2 = (I - B)(I + B); both factors symmetric
    n = dk.half.shape[0]
    with np.errstate(over="raise", invalid="raise"):
        try:
            d1 = np.linalg.det(np.eye(n) - dk.half)
            d2 = np.linalg.det(np.eye(n) + dk.half)
        except (np.linalg.LinAlgError, FloatingPointError) as exc:
            raise NumericError("determinant failed at s=%g: %s" % (s, exc)) from exc
    det = d1 * d2
    if not np.isfinite(det):
        raise NumericError("non-finite determinant at s=%g" % s)
    return float(det)


def _solve(dk, rhs_sym):
    n = dk.matrix.shape[0]
    op = np.eye(n) - dk.matrix
    try:
        sol = np.linalg.solve(op, rhs_sym)
    except np.linalg.LinAlgError as exc:
        raise NumericError("resolvent solve failed at s=%g: %s" % (dk.s, exc)) from exc
    res = np.linalg.norm(op @ sol - rhs_sym)
    if res > 1e-10 * max(np.linalg.norm(rhs_sym), 1e-300):
        raise NumericError("resolvent residual %.2e too large at s=%g" % (res, dk.s))
    return sol


def resolvent_apply(s, rhs, m=DEFAULT_M, L=DEFAULT_L, rule=None):
    """Solve ``f - K_s f = rhs`` for node values `rhs` on the rule.

    The Nystrom system ``f_i - sum_j K_s(x_i, x_j) w_j f_j = rhs_i`` is
    solved in its symmetrised form.
    """
    rule = rule or build_rule(m, L)
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != rule.nodes.shape:
        raise DomainError("rhs must have one value per node (%d)" % rule.m)
    dk = discretize_kernel(s, rule)
    sw = np.sqrt(rule.weights)
    return _solve(dk, sw * rhs) / sw


def kernel_apply(s, f, rule):
    """``(K_s f)(x_i) = sum_j K_s(x_i, x_j) w_j f_j``."""
    a = _shift_matrix(s, rule)
    w = rule.weights
    return a @ (w * (a @ (w * f)))


def _check_w(w):
    if w < W_MIN:
        raise DomainError("g_fn needs w >= %g for the half-line damping; "
                          "use the Painleve route (y_fn) for w=%g" % (W_MIN, w))


def _half_line_rule(Z):
    panels = max(1, int(math.ceil(Z / _PANEL_LENGTH)))
    return gauss_legendre(-float(Z), 0.0, _PANEL_NODES, panels)


def psi_hat(y, s, w, rule=None, method="laplace", Z=DEFAULT_Z):
    """``Psi(y) = int_{-inf}^0 e^{2wz} Ai(y + z + s) dz`` at points `y`."""
    big_w = 2.0 * w
    y = np.asarray(y, dtype=float)
    if method == "laplace":
        rule = rule or build_rule(DEFAULT_M, DEFAULT_L)
        lam, wl = rule.nodes, rule.weights
        right = airy_ai(y[..., None] + lam + s) @ (wl * np.exp(big_w * lam))
        return np.exp(big_w ** 3 / 3.0 - big_w * (y + s)) - right
    if method == "direct":
        z, wz = _half_line_rule(Z)
        return airy_ai(y[..., None] + z + s) @ (wz * np.exp(big_w * z))
    raise DomainError("unknown method %r" % method)


def phi_hat(x, s, w, rule=None, method="laplace", Z=DEFAULT_Z):
    """``Phi(x) = int_{-inf}^0 e^{2wz} K_s(z, x) dz`` at points `x`.

    ``"laplace"`` uses ``Phi = A_s Psi``; ``"direct"`` integrates the kernel
    (extended to negative first argument) over ``[-Z, 0]``.
    """
    rule = rule or build_rule(DEFAULT_M, DEFAULT_L)
    lam, wl = rule.nodes, rule.weights
    x = np.asarray(x, dtype=float)
    if method == "laplace":
        psi = psi_hat(lam, s, w, rule, "laplace")
        return airy_ai(x[..., None] + lam + s) @ (wl * psi)
    if method == "direct":
        z, wz = _half_line_rule(Z)
        kz = airy_ai(z[:, None] + lam[None, :] + s) * wl  # Ai(z+l+s) w_l
        kzx = kz @ airy_ai(lam[:, None] + x.ravel()[None, :] + s)  # K_s(z, x)
        out = (wz * np.exp(2.0 * w * z)) @ kzx
        return out.reshape(x.shape)
    raise DomainError("unknown method %r" % method)


def _first_term(s, big_w, rule, method, Z):
    if method == "laplace":
        lam, wl = rule.nodes, rule.weights
        tail = float(np.dot(wl * lam * np.exp(big_w * lam), airy_ai(lam + s)))
        return (s - big_w ** 2) * math.exp(big_w ** 3 / 3.0 - big_w * s) + tail
    z, wz = _half_line_rule(Z)
    return float(np.dot(wz * (-z) * np.exp(big_w * z), airy_ai(z + s)))


def g_fn(s, w, m=DEFAULT_M, L=DEFAULT_L, Z=DEFAULT_Z, method="laplace"):
    """``g(s, w)``; equal to the Painleve-route ``y(s, w)``.

    Parameters
    ----------
    s : float
        Shift.
    w : float
        Spectral parameter, ``w >= 0.05``.
    m, L : int, float
        Gauss-Legendre nodes and truncation of [0, inf).
    Z : float
        Truncation depth of the negative half-line (``method="direct"`` only).
    method : {"laplace", "direct"}
    """
    _check_w(w)
    rule = build_rule(m, L)
    big_w = 2.0 * w
    dk = discretize_kernel(s, rule)
    sw = np.sqrt(rule.weights)
    psi = psi_hat(rule.nodes, s, w, rule, method, Z)
    phi = phi_hat(rule.nodes, s, w, rule, method, Z)
    pairing = float(np.dot(sw * phi, _solve(dk, sw * psi)))
    t1 = _first_term(s, big_w, rule, method, Z)
    expo = big_w * s - big_w ** 3 / 3.0
    return math.exp(expo) * (t1 + pairing)
