"""Gauss-Legendre rules on finite intervals."""
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ContractError


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for integrals over ``[lo, lo + L]``."""

    nodes: np.ndarray
    weights: np.ndarray
    L: float
    m: int
    lo: float = 0.0

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def gauss_legendre(lo, hi, m, panels=1):
    """Composite Gauss-Legendre rule with `m` nodes per panel on ``[lo, hi]``."""
    if not hi > lo:
        raise ContractError("need hi > lo, got [%r, %r]" % (lo, hi))
    if m < 1 or panels < 1:
        raise ContractError("need at least one node and one panel")
    t, wt = leggauss(m)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * wt[None, :]).ravel()
    return nodes, weights


def build_rule(m, L, panels=1):
    """Gauss-Legendre rule with `m` nodes in total mapped onto ``[0, L]``.

    With ``panels > 1`` the nodes are split evenly across equal panels, so
    `m` must be divisible by `panels`.
    """
    if m < 10 or not L > 0:
        raise ContractError("build_rule needs m >= 10 and L > 0 (got m=%r, L=%r)" % (m, L))
    if m % panels:
        raise ContractError("m=%d is not divisible into %d panels" % (m, panels))
    nodes, weights = gauss_legendre(0.0, float(L), m // panels, panels)
    return QuadratureRule(nodes=nodes, weights=weights, L=float(L), m=int(m))
