"""Directional-Gaussian-smoothing gradient and the Monte-Carlo GS estimator.

The smoothed directional derivative along a unit vector xi is estimated by
Gauss-Hermite quadrature,

    D[G_sigma](0) ~= (1 / (sqrt(pi) * sigma)) * sum_m w_m F(x + sqrt(2) sigma v_m xi) sqrt(2) v_m,

and the d per-direction derivatives are assembled against the orthonormal
frame to form a gradient surrogate in ambient coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EvaluationError
from .quadrature import QuadratureRule

SQRT2 = np.sqrt(2.0)
SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class Frame:
    """Orthonormal direction system; row i of `matrix` is direction xi_i."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def direction(self, i: int) -> np.ndarray:
        return self.matrix[i]

    @staticmethod
    def identity(d: int) -> "Frame":
        return Frame(np.eye(d))

    def check(self, tol: float = 1e-10) -> None:
        G = self.matrix @ self.matrix.T
        err = np.max(np.abs(G - np.eye(self.dim)))
        if err > tol:
            raise ValueError(f"frame not orthonormal: max deviation {err:.3e}")


@dataclass(frozen=True)
class DgsGradient:
    """Per-direction smoothed derivatives and their ambient-space assembly."""

    directional: np.ndarray  # shape (d,)
    vector: np.ndarray  # shape (d,)
    evals_used: int


class Stencil(NamedTuple):
    """Sample points labelled by (direction index, quadrature node index)."""

    points: np.ndarray  # shape (n, d)
    dir_index: np.ndarray  # shape (n,)
    node_index: np.ndarray  # shape (n,)


def dgs_stencil(
    x: np.ndarray,
    frame: Frame,
    sigma: float,
    rule: QuadratureRule,
    skip_zero_node: bool = True,
) -> Stencil:
    """Sample locations x + sqrt(2) sigma v_m xi_i for all (i, m).

    Zero nodes contribute nothing to the quadrature sum (their summand is
    multiplied by v_m = 0), so they are omitted when skip_zero_node is set.
    """
    x = np.asarray(x, float)
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite point x")
    if not (np.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be positive and finite, got {sigma}")
    if frame.dim != x.shape[0]:
        raise ValueError(f"frame dim {frame.dim} != point dim {x.shape[0]}")

    nodes = rule.nodes
    keep = nodes != 0.0 if skip_zero_node else np.ones(rule.order, dtype=bool)
    node_idx = np.nonzero(keep)[0]
    d = frame.dim
    # direction-major, node-ascending within each direction
    dir_index = np.repeat(np.arange(d), node_idx.size)
    node_index = np.tile(node_idx, d)
    offsets = SQRT2 * sigma * nodes[node_index, None] * frame.matrix[dir_index]
    return Stencil(points=x[None, :] + offsets, dir_index=dir_index, node_index=node_index)


def directional_derivative(
    values: np.ndarray,
    sigma: float,
    rule: QuadratureRule,
    node_index: np.ndarray | None = None,
) -> float:
    """GH estimate of the smoothed derivative from cross-section samples.

    `values` aligns index-for-index with rule nodes; entries for skipped
    zero nodes may be absent when `node_index` identifies the present ones
    (or, with no index given, when exactly the zero nodes are missing).
    """
    values = np.asarray(values, float)
    if not np.all(np.isfinite(values)):
        bad = int(np.nonzero(~np.isfinite(values))[0][0])
        raise EvaluationError(f"non-finite objective value at sample {bad}", index=bad)

    full = np.zeros(rule.order)
    if node_index is not None:
        full[np.asarray(node_index, int)] = values
    elif values.shape[0] == rule.order:
        full[:] = values
    elif values.shape[0] == rule.order - 1 and rule.order % 2 == 1:
        present = np.nonzero(rule.nodes != 0.0)[0]
        full[present] = values
    else:
        raise ValueError(
            f"got {values.shape[0]} values for a rule of order {rule.order}"
        )

    # summand for a zero node is exactly 0, so the padded sum is
    # bit-identical with and without zero-node skipping
    terms = rule.weights * full * (SQRT2 * rule.nodes)
    return float(np.sum(terms) / (SQRT_PI * sigma))


def dgs_gradient(
    F,
    x: np.ndarray,
    frame: Frame,
    sigma: float,
    rule: QuadratureRule,
    skip_zero_node: bool = True,
) -> DgsGradient:
    """Evaluate the full DGS gradient surrogate at x (batched stencil)."""
    stencil = dgs_stencil(x, frame, sigma, rule, skip_zero_node=skip_zero_node)
    values = np.asarray(F(stencil.points), float)
    if not np.all(np.isfinite(values)):
        bad = int(np.nonzero(~np.isfinite(values))[0][0])
        raise EvaluationError(
            f"non-finite objective value at stencil sample {bad}", index=bad
        )

    d = frame.dim
    per_dir = stencil.points.shape[0] // d
    directional = np.empty(d)
    for i in range(d):
        sl = slice(i * per_dir, (i + 1) * per_dir)
        directional[i] = directional_derivative(
            values[sl], sigma, rule, node_index=stencil.node_index[sl]
        )
    vector = directional @ frame.matrix
    return DgsGradient(
        directional=directional, vector=vector, evals_used=stencil.points.shape[0]
    )


def gs_mc_gradient(
    F,
    x: np.ndarray,
    sigma: float,
    n_samples: int,
    antithetic: bool = True,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Monte-Carlo estimate of the Gaussian-smoothed gradient.

    Returns (1 / (n sigma)) sum_k F(x + sigma u_k) u_k with u_k standard
    normal. With antithetic sampling the directions come in (u, -u) pairs,
    which cancels even-order terms exactly (a constant F yields exactly 0).
    """
    if rng is None:
        rng = np.random.default_rng()
    x = np.asarray(x, float)
    d = x.shape[0]
    if n_samples < 1:
        raise ValueError("n_samples must be positive")

    if antithetic:
        if n_samples % 2 != 0:
            raise ValueError("n_samples must be even with antithetic sampling")
        half = n_samples // 2
        U = rng.standard_normal((half, d))
        f_plus = np.asarray(F(x[None, :] + sigma * U), float)
        f_minus = np.asarray(F(x[None, :] - sigma * U), float)
        vals = np.concatenate([f_plus, f_minus])
        if not np.all(np.isfinite(vals)):
            bad = int(np.nonzero(~np.isfinite(vals))[0][0])
            raise EvaluationError(f"non-finite objective value at sample {bad}", index=bad)
        # pairwise form of the estimator: exact cancellation when F constant
        return (f_plus - f_minus) @ U / (n_samples * sigma)

    U = rng.standard_normal((n_samples, d))
    vals = np.asarray(F(x[None, :] + sigma * U), float)
    if not np.all(np.isfinite(vals)):
        bad = int(np.nonzero(~np.isfinite(vals))[0][0])
        raise EvaluationError(f"non-finite objective value at sample {bad}", index=bad)
    return vals @ U / (n_samples * sigma)
