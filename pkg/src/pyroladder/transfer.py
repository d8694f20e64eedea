"""Transfer-matrix route to the thermodynamics of the infinite ladder.

W[a, b] = exp(-beta * bond_energy(a, b)) over the four composite rung states.
The free energy per rung follows from the Perron root of W; the magnetization
from its field derivative, taken exactly with the Hellmann-Feynman identity
d(lambda)/dh = v^T (dW/dh) v.

At low temperature the exponents are shifted by their maximum so that W stays
representable; the shift is carried as ``log_scale`` and folded back into
every logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    RUNG_STATES,
    Z_COMPONENT,
    ModelParams,
    bond_energy_table,
    central_field_derivative,
)

# exp() overflows a double just above 709.78
LOG_SAFE_MAX = 700.0
EIGEN_RESIDUAL_TOL = 1e-12
POLISH_STEPS = 2

_TZ = np.asarray(Z_COMPONENT, dtype=float)
_TZ_PAIR_MEAN = 0.5 * (_TZ[:, None] + _TZ[None, :])


class EigenSolverError(ArithmeticError):
    pass


@dataclass(frozen=True)
class TransferMatrix:
    """W = entries * exp(log_scale), rows/columns in canonical rung order."""

    entries: np.ndarray
    log_scale: float = 0.0
    beta: float = float("nan")

    @property
    def values(self) -> np.ndarray:
        return self.entries * np.exp(self.log_scale)


@dataclass(frozen=True)
class Eigenpair:
    """Perron root of ``TransferMatrix.entries`` and its positive unit vector."""

    value: float
    vector: np.ndarray
    residual: float
    log_scale: float = 0.0

    @property
    def log_value(self) -> float:
        return float(np.log(self.value) + self.log_scale)


def transfer_exponents(params: ModelParams) -> np.ndarray:
    with np.errstate(invalid="ignore", over="ignore"):
        return -params.beta * np.asarray(bond_energy_table(params), dtype=float)


def build_transfer_matrix(params: ModelParams) -> TransferMatrix:
    exponents = transfer_exponents(params)
    if not np.all(np.isfinite(exponents)):
        raise OverflowError(
            f"Boltzmann exponents not representable at T={params.temperature!r}: {exponents}"
        )
    shift = 0.0
    if np.max(np.abs(exponents)) > LOG_SAFE_MAX:
        shift = float(np.max(exponents))
    return TransferMatrix(np.exp(exponents - shift), shift, params.beta)


def dominant_eigenpair(w: TransferMatrix | np.ndarray) -> Eigenpair:
    """Largest eigenvalue and its eigenvector for a symmetric positive matrix.

    A plain power iteration stalls when the second eigenvalue approaches
    -lambda_max, which happens inside the alternating low-temperature phase,
    so the symmetric eigensolver supplies the starting vector.
    """
    if isinstance(w, TransferMatrix):
        matrix, log_scale = w.entries, w.log_scale
    else:
        matrix, log_scale = np.asarray(w, dtype=float), 0.0
    if not np.allclose(matrix, matrix.T, rtol=1e-14, atol=0.0):
        raise ValueError("transfer matrix must be symmetric")
    evals, evecs = np.linalg.eigh(matrix)
    vector = np.abs(evecs[:, -1])
    # Polish with power steps: components far below eps * max come back with
    # full relative accuracy because W v is a sum of positive terms.
    for _ in range(POLISH_STEPS):
        vector = matrix @ vector
        vector /= np.linalg.norm(vector)
    value = float(vector @ matrix @ vector)
    residual = float(np.linalg.norm(matrix @ vector - value * vector))
    if not value > 0 or residual > EIGEN_RESIDUAL_TOL * value:
        raise EigenSolverError(
            f"dominant eigenpair not converged: lambda={value!r}, residual={residual!r}"
        )
    return Eigenpair(value, vector, residual, log_scale)


def _solve(params: ModelParams) -> tuple[TransferMatrix, Eigenpair]:
    w = build_transfer_matrix(params)
    return w, dominant_eigenpair(w)


def log_lambda_max(params: ModelParams) -> float:
    return _solve(params)[1].log_value


def log_partition_per_rung(params: ModelParams) -> float:
    """(1/N) log Z of the infinite ring: 3 beta J_H / 4 + log lambda_max."""
    return 0.75 * params.beta * params.j_heisenberg + log_lambda_max(params)


def dlog_lambda_dfield(params: ModelParams) -> float:
    """Hellmann-Feynman derivative of log lambda_max with respect to h."""
    w, pair = _solve(params)
    dw = w.entries * (params.beta * _TZ_PAIR_MEAN)
    return float(pair.vector @ dw @ pair.vector / pair.value)


def magnetization_tm(params: ModelParams) -> float:
    """Magnetization per spin; the 1/2 turns rung <T^z> into site <S^z>."""
    return 0.5 * dlog_lambda_dfield(params) / params.beta


def susceptibility_tm(params: ModelParams, step: float | None = None) -> float:
    return central_field_derivative(magnetization_tm, params, step)


def rung_probabilities(params: ModelParams) -> np.ndarray:
    """Marginal distribution of one rung of the infinite ring, p(s) = v_s^2."""
    return _solve(params)[1].vector ** 2


def log_trace_power(params: ModelParams, n_rungs: int) -> float:
    """(1/N) log(exp(3 N beta J_H / 4) tr W^N) for a finite ring of N rungs."""
    if n_rungs < 2:
        raise ValueError(f"a periodic ladder needs at least two rungs, got {n_rungs}")
    w = build_transfer_matrix(params)
    product = np.eye(len(RUNG_STATES))
    log_acc = 0.0
    for _ in range(n_rungs):
        product = product @ w.entries
        scale = np.max(product)
        product /= scale
        log_acc += np.log(scale)
    log_tr = log_acc + np.log(np.trace(product)) + n_rungs * w.log_scale
    return 0.75 * params.beta * params.j_heisenberg + float(log_tr) / n_rungs
