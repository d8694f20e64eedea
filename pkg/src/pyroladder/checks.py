"""Oracle suite comparing the closed-form routes with brute force."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import concurrence_general, concurrence_xstate
from .model import ModelParams
from .oracle import (
    MAX_CLASSICAL_RUNGS,
    MAX_QUANTUM_RUNGS,
    block_reduced_density_matrix,
    classical_log_partition,
    commutator_norms,
    quantum_log_partition,
)
from .rungstate import RungDensityMatrix, rung_density_matrix
from .transfer import log_trace_power

TRACE_POWER_TOL = 1e-12
QUANTUM_TOL = 1e-9
COMMUTATOR_TOL = 1e-12
BLOCK_RDM_TOL = 1e-12
CONCURRENCE_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<22} max residual {self.residual:.3e}  (tol {self.tolerance:.0e})"


def random_params(
    rng: np.random.Generator,
    j_range=(-1.0, 3.0),
    h_range=(-3.0, 3.0),
    t_range=(0.2, 2.0),
) -> ModelParams:
    return ModelParams(
        float(rng.uniform(*j_range)),
        float(rng.uniform(*j_range)),
        float(rng.uniform(*h_range)),
        float(rng.uniform(*t_range)),
    )


def random_xstate(rng: np.random.Generator) -> RungDensityMatrix:
    """Random physical X-form rung matrix (x >= |y|, z, w >= 0)."""
    x = rng.uniform(0.0, 1.0)
    y = rng.uniform(-x, x)
    z, w = rng.uniform(0.0, 1.0, size=2)
    return RungDensityMatrix(float(x), float(y), float(z), float(w))


def relative_error(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


def check_trace_power(n_max: int, draws: int, rng) -> CheckResult:
    worst = 0.0
    for _ in range(draws):
        p = random_params(rng)
        for n in range(2, n_max + 1):
            worst = max(worst, relative_error(log_trace_power(p, n), classical_log_partition(p, n)))
    return CheckResult("trace-power identity", worst, TRACE_POWER_TOL)


def check_quantum_classical(n_max: int, draws: int, rng) -> CheckResult:
    worst = 0.0
    for _ in range(draws):
        p = random_params(rng)
        for n in range(2, min(n_max, MAX_QUANTUM_RUNGS) + 1):
            worst = max(
                worst, relative_error(quantum_log_partition(p, n), classical_log_partition(p, n))
            )
    return CheckResult("quantum vs classical", worst, QUANTUM_TOL)


def check_conservation(rng, n_rungs: int = 3) -> CheckResult:
    return CheckResult(
        "conserved rung spin", max(commutator_norms(random_params(rng), n_rungs)), COMMUTATOR_TOL
    )


def block_rdm_residual(p: ModelParams) -> float:
    closed = rung_density_matrix(p).normalized()
    block = block_reduced_density_matrix(p).normalized()
    return float(np.max(np.abs(closed - block)))


def check_block_rdm(draws: int, rng) -> CheckResult:
    worst = max(block_rdm_residual(random_params(rng)) for _ in range(draws))
    return CheckResult("block RDM closed form", worst, BLOCK_RDM_TOL)


def check_concurrence(draws: int, rng) -> CheckResult:
    worst = 0.0
    for k in range(draws):
        rho = random_xstate(rng) if k % 2 else rung_density_matrix(random_params(rng))
        worst = max(worst, abs(concurrence_general(rho).value - concurrence_xstate(rho)))
    return CheckResult("concurrence R vs X", worst, CONCURRENCE_TOL)


def run_verification(n_rungs: int = 4, draws: int = 20, seed: int = 0) -> list[CheckResult]:
    if not 2 <= n_rungs <= MAX_CLASSICAL_RUNGS:
        raise ValueError(f"--n must be in [2, {MAX_CLASSICAL_RUNGS}], got {n_rungs}")
    if draws < 1:
        raise ValueError(f"--draws must be >= 1, got {draws}")
    rng = np.random.default_rng(seed)
    return [
        check_trace_power(n_rungs, draws, rng),
        check_quantum_classical(n_rungs, draws, rng),
        check_conservation(rng),
        check_block_rdm(max(draws, 50), rng),
        check_concurrence(max(draws, 100), rng),
    ]
