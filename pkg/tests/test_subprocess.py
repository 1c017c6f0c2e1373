import sys
from pathlib import Path

import numpy as np
import pytest

from adadgs.benchmarks import subprocess_objective
from adadgs.errors import EvaluationError
from adadgs.optimizer import AdaDgsConfig, adadgs_minimize

HELPER = Path(__file__).parent / "helpers" / "echo_sphere.py"


def spawn(mode="ok", d=2, timeout=10.0):
    return subprocess_objective([sys.executable, str(HELPER), mode], d,
                                bounds=(-10.0, 10.0), timeout=timeout)


def test_echo_sphere_value():
    with spawn() as F:
        assert F(np.array([3.0, 4.0])) == 25.0
        assert F.evals == 1


def test_batch_and_roundtrip_precision():
    with spawn(d=3) as F:
        X = np.array([[0.1, 0.2, 0.3], [1e-17, 2.0, -3.5]])
        got = F(X)
        np.testing.assert_array_equal(got, np.sum(X**2, axis=1))
        assert F.evals == 2


def test_garbled_response():
    with spawn("garbled") as F:
        with pytest.raises(EvaluationError, match="garbled"):
            F(np.array([1.0, 2.0]))


def test_err_response():
    with spawn("err") as F:
        with pytest.raises(EvaluationError, match="simulated failure"):
            F(np.array([1.0, 2.0]))


def test_bad_handshake_fails_before_optimization():
    with pytest.raises(EvaluationError, match="handshake"):
        spawn("bad-handshake")


def test_dimension_mismatch_reported():
    with spawn(d=3) as F:
        F.dim = 4  # force a protocol-level mismatch
        with pytest.raises(EvaluationError, match="expected 3 coordinates"):
            F(np.zeros(4))


def test_timeout():
    with spawn("hang", timeout=0.5) as F:
        with pytest.raises(EvaluationError, match="timed out"):
            F(np.array([1.0, 2.0]))


def test_optimizer_aborts_cleanly_on_protocol_error():
    with spawn("garbled") as F:
        with pytest.raises(EvaluationError):
            adadgs_minimize(F, np.array([1.0, 1.0]), AdaDgsConfig(T_max=5))


def test_optimize_through_subprocess():
    with spawn(d=2) as F:
        x_best, f_best, trace = adadgs_minimize(
            F, np.array([3.0, -4.0]), AdaDgsConfig(T_max=10, gamma=0.0, seed=0)
        )
        assert f_best < 1e-2
        assert trace.final.evals == F.evals
