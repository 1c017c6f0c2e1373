"""Reference optimizers: big-population GS evolution strategy, Nesterov
random search with forward differences, and central-finite-difference
gradient descent.

These use fixed learning rates and difference steps; they exist as
comparison curves, not as tuned competitors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gradient import gs_mc_gradient
from .trace import Trace

METHODS = ("es_bpop", "nesterov", "fd")


@dataclass(frozen=True)
class BaselineConfig:
    method: str
    learning_rate: float
    sigma_or_h: float  # GS radius for es_bpop, difference step for nesterov/fd
    population: int | None = None  # es_bpop only; default M*d handled by caller
    budget: int | None = None
    T_max: int | None = None
    seed: int | None = None

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown baseline method {self.method!r}")
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if not self.sigma_or_h > 0:
            raise ValueError(f"sigma_or_h must be positive, got {self.sigma_or_h}")
        if self.T_max is None and self.budget is None:
            raise ValueError("need at least one of T_max, budget")


def _continue(t, evals, step_cost, cfg) -> bool:
    if cfg.T_max is not None and t >= cfg.T_max:
        return False
    if cfg.budget is not None and evals + step_cost > cfg.budget:
        return False
    return True


def es_bpop_minimize(F, x0, cfg: BaselineConfig):
    """Gradient descent on the MC Gaussian-smoothing gradient estimate.

    Antithetic sampling with `population` samples per iteration; the
    per-iteration f_current is the best sampled value (the iterate itself
    is never evaluated after initialization, keeping the accounting at
    exactly `population` evaluations per iteration).
    """
    cfg.validate()
    if cfg.population is None or cfg.population < 2 or cfg.population % 2 != 0:
        raise ValueError(f"population must be a positive even integer, got {cfg.population}")
    rng = np.random.default_rng(cfg.seed)
    x = np.asarray(x0, float)
    d = x.shape[0]
    sigma, lam, n = cfg.sigma_or_h, cfg.learning_rate, cfg.population

    f0 = float(F(x))
    evals, t = 1, 0
    f_best, x_best = f0, x
    trace = Trace()
    trace.append(0, evals, f0, f0, sigma, 0.0)

    while _continue(t, evals, n, cfg):
        half = n // 2
        U = rng.standard_normal((half, d))
        f_plus = np.asarray(F(x[None, :] + sigma * U), float)
        f_minus = np.asarray(F(x[None, :] - sigma * U), float)
        evals += n
        g = (f_plus - f_minus) @ U / (n * sigma)

        samples = np.concatenate([f_plus, f_minus])
        k = int(np.argmin(samples))
        f_iter = float(samples[k])
        if f_iter < f_best:
            f_best = f_iter
            x_best = x + sigma * U[k] if k < half else x - sigma * U[k - half]

        x_new = x - lam * g
        step = float(np.linalg.norm(x_new - x))
        x = x_new
        t += 1
        trace.append(t, evals, f_iter, f_best, sigma, step)
    return x_best, f_best, trace


def nesterov_minimize(F, x0, cfg: BaselineConfig):
    """Random search with forward-difference directional derivative.

    Per step: draw u ~ N(0, I), estimate F'(x; u) = (F(x+hu) - F(x))/h,
    move x <- x - lr * F' * u. Exactly 2 evaluations per step.
    """
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    x = np.asarray(x0, float)
    d = x.shape[0]
    h, lam = cfg.sigma_or_h, cfg.learning_rate

    f0 = float(F(x))
    evals, t = 1, 0
    f_best, x_best = f0, x
    trace = Trace()
    trace.append(0, evals, f0, f0, h, 0.0)

    while _continue(t, evals, 2, cfg):
        u = rng.standard_normal(d)
        fx = float(F(x))
        fxh = float(F(x + h * u))
        evals += 2
        deriv = (fxh - fx) / h
        x_new = x - lam * deriv * u
        step = float(np.linalg.norm(x_new - x))
        t += 1
        for f_val, pt in ((fx, x), (fxh, x + h * u)):
            if f_val < f_best:
                f_best, x_best = f_val, pt
        x = x_new
        trace.append(t, evals, fx, f_best, h, step)
    return x_best, f_best, trace


def fd_gradient(F, x, h: float) -> np.ndarray:
    """Central-difference gradient estimate (2d evaluations, batched)."""
    x = np.asarray(x, float)
    d = x.shape[0]
    E = h * np.eye(d)
    f_plus = np.asarray(F(x[None, :] + E), float)
    f_minus = np.asarray(F(x[None, :] - E), float)
    return (f_plus - f_minus) / (2.0 * h)


def fd_minimize(F, x0, cfg: BaselineConfig):
    """Gradient descent on the central-finite-difference gradient.

    Exactly 2d evaluations per iteration; f_current is the best probe
    value of the iteration (the iterate is only evaluated once, at x0).
    """
    cfg.validate()
    x = np.asarray(x0, float)
    d = x.shape[0]
    h, lam = cfg.sigma_or_h, cfg.learning_rate

    f0 = float(F(x))
    evals, t = 1, 0
    f_best, x_best = f0, x
    trace = Trace()
    trace.append(0, evals, f0, f0, h, 0.0)

    while _continue(t, evals, 2 * d, cfg):
        E = h * np.eye(d)
        f_plus = np.asarray(F(x[None, :] + E), float)
        f_minus = np.asarray(F(x[None, :] - E), float)
        evals += 2 * d
        g = (f_plus - f_minus) / (2.0 * h)
        x_new = x - lam * g
        step = float(np.linalg.norm(x_new - x))
        t += 1

        probes = np.concatenate([f_plus, f_minus])
        k = int(np.argmin(probes))
        f_iter = float(probes[k])
        if f_iter < f_best:
            f_best = f_iter
            x_best = x + E[k] if k < d else x - E[k - d]
        x = x_new
        trace.append(t, evals, f_iter, f_best, h, step)
    return x_best, f_best, trace
