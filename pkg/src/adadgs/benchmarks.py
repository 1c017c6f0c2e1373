"""Benchmark suite: 12 rotated/shifted test functions and objective wrappers.

Each base function is defined on all of R^d; the stated domains are the
initial search regions only. A benchmark instance evaluates
F_base(R(x - x_opt) + z_star) where z_star is the base function's
minimizer, so the global optimum sits at x_opt regardless of rotation.
"""

from __future__ import annotations

import select
import shlex
import subprocess
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import EvaluationError


class Objective:
    """A counted black-box loss function with an initial search domain.

    Accepts a single point of shape (d,) or a batch of shape (n, d); the
    evaluation counter increments by the number of points evaluated.
    """

    def __init__(
        self,
        fn: Callable[[np.ndarray], np.ndarray],
        dim: int,
        bounds: tuple[np.ndarray, np.ndarray],
        label: str = "",
    ):
        self.fn = fn
        self.dim = int(dim)
        lower, upper = bounds
        self.lower = np.broadcast_to(np.asarray(lower, float), (self.dim,)).copy()
        self.upper = np.broadcast_to(np.asarray(upper, float), (self.dim,)).copy()
        self.label = label
        self._count = 0

    def __call__(self, x):
        x = np.asarray(x, float)
        if x.ndim == 1:
            if x.shape[0] != self.dim:
                raise ValueError(f"expected dim {self.dim}, got {x.shape[0]}")
            self._count += 1
            return float(self.fn(x[None, :])[0])
        if x.ndim != 2 or x.shape[1] != self.dim:
            raise ValueError(f"expected shape (n, {self.dim}), got {x.shape}")
        self._count += x.shape[0]
        return np.asarray(self.fn(x), float)

    @property
    def evals(self) -> int:
        return self._count

    @property
    def domain_width(self) -> float:
        return float(np.max(self.upper - self.lower))

    @property
    def domain_diagonal(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))


# ---------------------------------------------------------------------------
# Base functions (batched: Z of shape (n, d) -> values of shape (n,))
# ---------------------------------------------------------------------------


def _ackley(Z):
    d = Z.shape[1]
    a, b, c = 20.0, 0.2, 2.0 * np.pi
    r = np.sqrt(np.sum(Z**2, axis=1) / d)
    return -a * np.exp(-b * r) - np.exp(np.mean(np.cos(c * Z), axis=1)) + a + np.e


def _alpine(Z):
    return np.sum(np.abs(Z * np.sin(Z) + 0.1 * Z), axis=1)


def _ellipsoidal(Z):
    d = Z.shape[1]
    expo = 6.0 * np.arange(d) / (d - 1) if d > 1 else np.zeros(1)
    return np.sum(10.0**expo * Z**2, axis=1)


def _quintic(Z):
    p = Z**5 - 3 * Z**4 + 4 * Z**3 + 2 * Z**2 - 10 * Z - 4
    return np.sum(np.abs(p), axis=1)


def _rastrigin(Z):
    d = Z.shape[1]
    return 10.0 * d + np.sum(Z**2 - 10.0 * np.cos(2.0 * np.pi * Z), axis=1)


def _rosenbrock(Z):
    return np.sum(100.0 * (Z[:, 1:] - Z[:, :-1] ** 2) ** 2 + (Z[:, :-1] - 1.0) ** 2, axis=1)


def _schaffer_f7(Z):
    d = Z.shape[1]
    s = np.sqrt(Z[:, :-1] ** 2 + Z[:, 1:] ** 2)
    rs = np.sqrt(s)
    inner = np.sum(rs + rs * np.sin(50.0 * s**0.2) ** 2, axis=1)
    return inner**2 / (d - 1)


def _sharp_ridge(Z):
    return Z[:, 0] ** 2 + 100.0 * np.sqrt(np.sum(Z[:, 1:] ** 2, axis=1))


def _salomon(Z):
    r = np.sqrt(np.sum(Z**2, axis=1))
    return 1.0 - np.cos(2.0 * np.pi * r) + 0.1 * r


def _styblinski_tang(Z):
    return 0.5 * np.sum(Z**4 - 16.0 * Z**2 + 5.0 * Z, axis=1)


def _trigonometric(Z):
    W = Z - 0.9
    return 1.0 + np.sum(
        8.0 * np.sin(7.0 * W**2) ** 2 + 6.0 * np.sin(14.0 * W**2) ** 2 + W**2, axis=1
    )


def _wavy(Z):
    return 1.0 - np.mean(np.cos(10.0 * Z) * np.exp(-(Z**2) / 2.0), axis=1)


_STYBLINSKI_Z = -2.903534
_STYBLINSKI_F1D = 0.5 * (
    _STYBLINSKI_Z**4 - 16.0 * _STYBLINSKI_Z**2 + 5.0 * _STYBLINSKI_Z
)  # = -39.16599...


@dataclass(frozen=True)
class BenchmarkInfo:
    fn: Callable[[np.ndarray], np.ndarray]
    lower: float
    upper: float
    z_star: float  # per-coordinate minimizer of the base function
    optimum_per_dim: float  # f(x_opt) = offset + slope * d
    optimum_offset: float = 0.0


BENCHMARKS: dict[str, BenchmarkInfo] = {
    "ackley": BenchmarkInfo(_ackley, -32.768, 32.768, 0.0, 0.0),
    "alpine": BenchmarkInfo(_alpine, -10.0, 10.0, 0.0, 0.0),
    "ellipsoidal": BenchmarkInfo(_ellipsoidal, -2.0, 2.0, 0.0, 0.0),
    "quintic": BenchmarkInfo(_quintic, -10.0, 10.0, -1.0, 0.0),
    "rastrigin": BenchmarkInfo(_rastrigin, -5.12, 5.12, 0.0, 0.0),
    "rosenbrock": BenchmarkInfo(_rosenbrock, -5.0, 10.0, 1.0, 0.0),
    "schaffer_f7": BenchmarkInfo(_schaffer_f7, -100.0, 100.0, 0.0, 0.0),
    "sharp_ridge": BenchmarkInfo(_sharp_ridge, -10.0, 10.0, 0.0, 0.0),
    "salomon": BenchmarkInfo(_salomon, -100.0, 100.0, 0.0, 0.0),
    "styblinski_tang": BenchmarkInfo(
        _styblinski_tang, -5.0, 5.0, _STYBLINSKI_Z, _STYBLINSKI_F1D
    ),
    "trigonometric": BenchmarkInfo(_trigonometric, -500.0, 500.0, 0.9, 0.0, 1.0),
    "wavy": BenchmarkInfo(_wavy, -np.pi, np.pi, 0.0, 0.0),
}


def optimum_value(name: str, d: int) -> float:
    """Global minimum value of a benchmark at dimension d."""
    info = BENCHMARKS[name]
    return info.optimum_offset + info.optimum_per_dim * d


def eval_base(name: str, z) -> float | np.ndarray:
    """Evaluate a base function at z (untransformed coordinates)."""
    if name not in BENCHMARKS:
        raise ValueError(f"unknown benchmark {name!r}")
    z = np.asarray(z, float)
    if z.ndim == 1:
        return float(BENCHMARKS[name].fn(z[None, :])[0])
    return BENCHMARKS[name].fn(z)


class TransformedBenchmark(Objective):
    """A rotated and shifted benchmark with its optimum at x_opt."""

    def __init__(self, name: str, rotation: np.ndarray, x_opt: np.ndarray):
        info = BENCHMARKS[name]
        d = len(x_opt)
        self.name = name
        self.rotation = np.asarray(rotation, float)
        self.x_opt = np.asarray(x_opt, float)
        self.z_star = info.z_star

        def fn(X, _info=info, _R=self.rotation, _xo=self.x_opt, _zs=info.z_star):
            Z = (X - _xo) @ _R.T
            if _zs != 0.0:
                Z = Z + _zs
            return _info.fn(Z)

        super().__init__(fn, d, (info.lower, info.upper), label=name)

    @property
    def optimum(self) -> float:
        return optimum_value(self.name, self.dim)


def make_benchmark(name: str, d: int, seed) -> TransformedBenchmark:
    """Draw a random rotation and optimum location for a named benchmark.

    x_opt is uniform over the central 80% of the initial search domain;
    the rotation is Haar-distributed.
    """
    if name not in BENCHMARKS:
        raise ValueError(f"unknown benchmark {name!r}")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    info = BENCHMARKS[name]
    rng = np.random.default_rng(seed)
    R = haar_rotation(d, rng)
    center = 0.5 * (info.lower + info.upper)
    half = 0.5 * (info.upper - info.lower)
    x_opt = rng.uniform(center - 0.8 * half, center + 0.8 * half, size=d)
    return TransformedBenchmark(name, R, x_opt)


def haar_rotation(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform random orthogonal matrix (QR with sign correction)."""
    A = rng.standard_normal((d, d))
    Q, R = np.linalg.qr(A)
    return Q * np.sign(np.diag(R))


# ---------------------------------------------------------------------------
# External-process objectives
# ---------------------------------------------------------------------------


class SubprocessObjective(Objective):
    """Objective backed by an external process speaking a line protocol.

    Handshake: send "H <d>", expect "OK". Per evaluation: send
    "E <x_1> ... <x_d>", expect one line holding the value, or
    "ERR <message>". Requests are serialized (one in flight).
    """

    def __init__(self, command, dim: int, bounds=None, timeout: float | None = 30.0):
        if isinstance(command, str):
            command = shlex.split(command)
        if bounds is None:
            bounds = (np.full(dim, -np.inf), np.full(dim, np.inf))
        self.timeout = timeout
        self._proc = subprocess.Popen(
            command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )
        self._handshake(dim)
        super().__init__(self._eval_batch, dim, bounds, label=" ".join(command))

    def _handshake(self, dim: int):
        reply = self._roundtrip(f"H {dim}")
        if reply != "OK":
            self.close()
            raise EvaluationError(f"handshake failed: expected 'OK', got {reply!r}")

    def _roundtrip(self, line: str) -> str:
        try:
            self._proc.stdin.write(line + "\n")
            self._proc.stdin.flush()
            if self.timeout is not None:
                ready, _, _ = select.select([self._proc.stdout], [], [], self.timeout)
                if not ready:
                    self._proc.kill()
                    raise EvaluationError(
                        f"subprocess timed out after {self.timeout}s"
                    )
            reply = self._proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise EvaluationError(f"subprocess pipe failure: {exc}") from exc
        if reply == "":
            code = self._proc.poll()
            raise EvaluationError(f"subprocess exited (code {code}) without replying")
        return reply.strip()

    def _eval_batch(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(X.shape[0])
        for k, x in enumerate(X):
            request = "E " + " ".join(repr(float(v)) for v in x)
            reply = self._roundtrip(request)
            if reply.startswith("ERR"):
                raise EvaluationError(f"objective reported error: {reply}", index=k)
            try:
                out[k] = float(reply)
            except ValueError:
                raise EvaluationError(f"garbled response {reply!r}", index=k) from None
        return out

    def close(self):
        if self._proc.poll() is None:
            self._proc.stdin.close()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def subprocess_objective(command, d: int, bounds=None, timeout: float | None = 30.0):
    """Spawn a line-protocol worker process and wrap it as an Objective."""
    return SubprocessObjective(command, d, bounds=bounds, timeout=timeout)
