"""Gauss-Hermite quadrature (physicists' convention, weight exp(-v^2))."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

MAX_ORDER = 64


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of an M-point Gauss-Hermite rule.

    Nodes are strictly ascending and exactly symmetric about zero; for odd
    order the middle node is exactly 0.0 so it can be skipped by callers.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=None)
def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Compute the M-point Gauss-Hermite rule by Golub-Welsch.

    Eigen-decomposition of the symmetric tridiagonal Jacobi matrix of the
    (physicists') Hermite polynomials: zero diagonal, off-diagonal
    sqrt(k/2). Weights are sqrt(pi) times the squared first components of
    the eigenvectors. Exact for polynomials of degree <= 2M-1 under the
    weight exp(-v^2).
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool):
        raise ValueError(f"order must be an integer, got {order!r}")
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {order}")

    if order == 1:
        nodes = np.zeros(1)
        weights = np.array([np.sqrt(np.pi)])
    else:
        diag = np.zeros(order)
        offdiag = np.sqrt(np.arange(1, order) / 2.0)
        # 'stev' (plain QR) keeps the tiny first eigenvector components of
        # extreme nodes accurate; the default 'stemr' flushes them to zero
        eigvals, eigvecs = eigh_tridiagonal(diag, offdiag, lapack_driver="stev")
        nodes = eigvals
        weights = np.sqrt(np.pi) * eigvecs[0, :] ** 2
        # enforce exact symmetry; makes the odd-order middle node exactly 0
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])

    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(order=int(order), nodes=nodes, weights=weights)
