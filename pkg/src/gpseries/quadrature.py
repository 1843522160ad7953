"""Composite Gauss-Legendre quadrature in extended precision.

All downstream modules keep their state in ``numpy.longdouble`` (80-bit on
x86-64); the panel nodes and weights are therefore refined to long-double
accuracy here with a couple of Newton steps on the Legendre polynomial,
starting from the float64 nodes that ``numpy.polynomial.legendre`` provides.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P_n(x) and P_n'(x) by the three-term recurrence, in the dtype of x."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        p_prev, p = p, p_next
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1], refined to long-double precision."""
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    x64, _ = leggauss(n)
    x = x64.astype(np.longdouble)
    for _ in range(3):
        p, dp = _legendre_and_derivative(n, x)
        x = x - p / dp
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights on an interval [a, b]; integrate with ``weights @ values``."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def integrate(self, values: np.ndarray) -> np.longdouble:
        return self.weights @ values


def composite_gauss_legendre(a: float, b: float, panels: int,
                             nodes_per_panel: int = 16) -> QuadratureRule:
    """Composite rule: ``panels`` equal panels of an n-point Gauss rule each."""
    if panels < 1:
        raise ValueError(f"need at least one panel, got {panels}")
    a_ld = np.longdouble(a)
    b_ld = np.longdouble(b)
    xr, wr = gauss_legendre(nodes_per_panel)
    h = (b_ld - a_ld) / panels
    edges = a_ld + h * np.arange(panels, dtype=np.longdouble)
    # map the reference nodes into every panel
    nodes = (edges[:, None] + (xr[None, :] + 1.0) * (h / 2.0)).ravel()
    weights = np.broadcast_to(wr * (h / 2.0), (panels, nodes_per_panel)).ravel().copy()
    return QuadratureRule(nodes=nodes, weights=weights, interval=(float(a), float(b)))
