"""Adaptive DGS optimizer: line search along the smoothed gradient plus
radius adaptation and random-exploration triggers.

Per iteration: estimate the DGS gradient at the current iterate, pick the
step length by an exhaustive log-spaced line search along the negative
gradient direction, set the next smoothing radius to the mean of the
current radius and the learned step, and re-randomize the direction frame
(resetting the radius) whenever relative improvement falls below gamma.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .benchmarks import Objective, haar_rotation
from .gradient import Frame, dgs_gradient
from .quadrature import gauss_hermite_rule
from .trace import Trace

DEGENERATE_NORM = 1e-12
_NEVER_RESET = -(10**9)


@dataclass(frozen=True)
class AdaDgsConfig:
    """Hyper-parameters; None fields are resolved from the objective.

    L_max defaults to the search-domain diagonal, L_min to 0.005*L_max
    (or L_max * contraction**(S-1) when a contraction factor is given),
    S to max(12, round(0.05*M*d)), and sigma0 to the domain width.
    """

    M: int = 5
    L_max: float | None = None
    L_min: float | None = None
    S: int | None = None
    sigma0: float | None = None
    sigma0_scale: float = 1.0  # used when sigma0 is resolved from the domain
    gamma: float = 0.001
    T_max: int | None = None
    budget: int | None = None
    reset_interval: int = 10
    radius_update_uses: str = "distance"  # "distance" | "learning_rate"
    initial_frame: str = "identity"  # "identity" | "random"
    contraction: float | None = None
    skip_zero_node: bool = True
    seed: int | None = None

    def resolved(self, objective: Objective) -> "AdaDgsConfig":
        d = objective.dim
        L_max = self.L_max if self.L_max is not None else objective.domain_diagonal
        S = self.S if self.S is not None else max(12, round(0.05 * self.M * d))
        if self.L_min is not None:
            L_min = self.L_min
        elif self.contraction is not None:
            L_min = L_max * self.contraction ** (S - 1)
        else:
            L_min = 0.005 * L_max
        sigma0 = self.sigma0 if self.sigma0 is not None \
            else self.sigma0_scale * objective.domain_width
        cfg = dataclasses.replace(self, L_max=L_max, L_min=L_min, S=S, sigma0=sigma0)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if not 1 <= self.M <= 64:
            raise ValueError(f"M out of range: {self.M}")
        if not (self.L_min is not None and 0 < self.L_min < self.L_max):
            raise ValueError(f"need 0 < L_min < L_max, got {self.L_min}, {self.L_max}")
        if self.S < 2:
            raise ValueError(f"S must be >= 2, got {self.S}")
        if not self.sigma0 > 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.radius_update_uses not in ("distance", "learning_rate"):
            raise ValueError(f"unknown radius_update_uses {self.radius_update_uses!r}")
        if self.initial_frame not in ("identity", "random"):
            raise ValueError(f"unknown initial_frame {self.initial_frame!r}")
        if self.T_max is None and self.budget is None:
            raise ValueError("need at least one of T_max, budget")

    def stencil_size(self, d: int) -> int:
        effective = self.M - 1 if (self.skip_zero_node and self.M % 2 == 1) else self.M
        return effective * d


@dataclass
class OptimizerState:
    x: np.ndarray
    sigma: float
    frame: Frame
    t: int
    evals: int
    f_current: float
    f_best: float
    x_best: np.ndarray
    last_reset_t: int
    rng: np.random.Generator
    last_step: float = 0.0


class LineSearchResult(NamedTuple):
    j: int | None  # winning candidate index; None when the incumbent wins
    step_distance: float
    lam: float  # learning rate: step_distance / ||g||
    x_new: np.ndarray
    f_new: float
    evals_used: int


def line_search(F, x, g, L_max, L_min, S, f_x=None) -> LineSearchResult:
    """Exhaustive log-spaced line search along -g.

    Candidates are x - L_max * rho^j * g/||g||, j = 0..S-1, with
    rho = (L_min/L_max)^(1/(S-1)). The incumbent x competes: a candidate
    must strictly improve on f(x) to win, so the result never worsens.
    Ties between candidates go to the smaller j (the longer step).
    """
    x = np.asarray(x, float)
    g = np.asarray(g, float)
    gnorm = float(np.linalg.norm(g))
    if gnorm <= DEGENERATE_NORM:
        raise ValueError(f"degenerate gradient: ||g|| = {gnorm:.3e}")

    evals_used = 0
    if f_x is None:
        f_x = F(x)
        evals_used += 1

    rho = (L_min / L_max) ** (1.0 / (S - 1))
    steps = L_max * rho ** np.arange(S)
    ghat = g / gnorm
    candidates = x[None, :] - steps[:, None] * ghat[None, :]
    fvals = np.asarray(F(candidates), float)
    evals_used += S

    j = int(np.argmin(fvals))  # first minimum: smallest j wins ties
    if fvals[j] < f_x:
        step = float(steps[j])
        return LineSearchResult(j, step, step / gnorm, candidates[j], float(fvals[j]),
                                evals_used)
    return LineSearchResult(None, 0.0, 0.0, x, float(f_x), evals_used)


def sigma_update(sigma_prev: float, step: float) -> float:
    """Next smoothing radius: the mean of the previous radius and the step."""
    if not sigma_prev > 0:
        raise ValueError(f"sigma_prev must be positive, got {sigma_prev}")
    return 0.5 * (sigma_prev + step)


def random_rotation(d: int, rng: np.random.Generator) -> Frame:
    """Haar-distributed random orthonormal frame."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return Frame(haar_rotation(d, rng))


def _explore(state: OptimizerState, cfg: AdaDgsConfig) -> tuple[Frame, float, int]:
    frame = random_rotation(state.x.shape[0], state.rng)
    return frame, cfg.sigma0, state.t


def adadgs_step(F, state: OptimizerState, cfg: AdaDgsConfig) -> OptimizerState:
    """Advance the optimizer by one iteration (gradient + line search)."""
    rule = gauss_hermite_rule(cfg.M)
    grad = dgs_gradient(F, state.x, state.frame, state.sigma, rule,
                        skip_zero_node=cfg.skip_zero_node)
    evals = state.evals + grad.evals_used

    gnorm = float(np.linalg.norm(grad.vector))
    if gnorm <= DEGENERATE_NORM:
        # no usable direction: re-randomize the frame and reset the radius
        # (subject to the same minimum interval as the gamma trigger)
        if state.t - state.last_reset_t >= cfg.reset_interval:
            frame, sigma, last_reset = _explore(state, cfg)
        else:
            frame, sigma, last_reset = state.frame, state.sigma, state.last_reset_t
        return dataclasses.replace(
            state, frame=frame, sigma=sigma, t=state.t + 1, evals=evals,
            last_reset_t=last_reset, last_step=0.0,
        )

    ls = line_search(F, state.x, grad.vector, cfg.L_max, cfg.L_min, cfg.S,
                     f_x=state.f_current)
    evals += ls.evals_used

    step = ls.step_distance if cfg.radius_update_uses == "distance" else ls.lam
    sigma = sigma_update(state.sigma, step)
    frame = state.frame
    last_reset = state.last_reset_t

    rel_change = abs(ls.f_new - state.f_current) / max(abs(state.f_current), 1e-12)
    if rel_change < cfg.gamma and state.t - state.last_reset_t >= cfg.reset_interval:
        frame, sigma, last_reset = _explore(state, cfg)

    if ls.f_new < state.f_best:
        f_best, x_best = ls.f_new, ls.x_new
    else:
        f_best, x_best = state.f_best, state.x_best

    return dataclasses.replace(
        state, x=ls.x_new, sigma=sigma, frame=frame, t=state.t + 1, evals=evals,
        f_current=ls.f_new, f_best=f_best, x_best=x_best,
        last_reset_t=last_reset, last_step=ls.step_distance,
    )


def adadgs_minimize(F, x0, cfg: AdaDgsConfig) -> tuple[np.ndarray, float, Trace]:
    """Run the adaptive DGS loop until the iteration or evaluation cap.

    The trace holds the initial state plus one row per completed
    iteration; an iteration is only started if its full evaluation cost
    (stencil + line search) fits in the remaining budget.
    """
    x0 = np.asarray(x0, float)
    if not np.all(np.isfinite(x0)):
        raise ValueError("non-finite initial point")
    cfg = cfg.resolved(F)
    d = x0.shape[0]
    rng = np.random.default_rng(cfg.seed)
    frame = Frame.identity(d) if cfg.initial_frame == "identity" else \
        random_rotation(d, rng)

    f0 = float(F(x0))
    state = OptimizerState(
        x=x0, sigma=cfg.sigma0, frame=frame, t=0, evals=1, f_current=f0,
        f_best=f0, x_best=x0, last_reset_t=_NEVER_RESET, rng=rng,
    )
    trace = Trace()
    trace.append(0, state.evals, f0, f0, state.sigma, 0.0)

    step_cost = cfg.stencil_size(d) + cfg.S
    while True:
        if cfg.T_max is not None and state.t >= cfg.T_max:
            break
        if cfg.budget is not None and state.evals + step_cost > cfg.budget:
            break
        state = adadgs_step(F, state, cfg)
        trace.append(state.t, state.evals, state.f_current, state.f_best,
                     state.sigma, state.last_step)
    return state.x_best, state.f_best, trace
