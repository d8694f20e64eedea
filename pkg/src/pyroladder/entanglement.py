"""Wootters concurrence of the two spins on a rung."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams
from .rungstate import RungDensityMatrix, rung_density_matrix

PSD_TOL = 1e-12

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    sqrt_eigenvalues: np.ndarray


def _normalized(rho) -> np.ndarray:
    if isinstance(rho, RungDensityMatrix):
        rho = rho.matrix()
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"two-qubit density matrix must be 4x4, got {rho.shape}")
    trace = np.real(np.trace(rho))
    if not trace > 0:
        raise ValueError(f"density matrix trace must be positive, got {trace!r}")
    rho = rho / trace
    if not np.allclose(rho, rho.conj().T, atol=1e-14):
        raise ValueError("density matrix is not Hermitian")
    return 0.5 * (rho + rho.conj().T)


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh(rho)
    if evals[0] < -PSD_TOL:
        raise ValueError(f"non-physical density matrix: eigenvalue {evals[0]!r}")
    return (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T


def concurrence_general(rho) -> ConcurrenceResult:
    """Concurrence from the spectrum of R = rho (YY) rho* (YY).

    The square roots of R's eigenvalues are the singular values of
    sqrt(rho) sqrt(rho~) with rho~ = (YY) rho* (YY); taking them from an SVD
    avoids square roots of round-off-level eigenvalues.
    """
    rho = _normalized(rho)
    root = _psd_sqrt(rho)
    root_flipped = _YY @ root.conj() @ _YY
    sv = np.linalg.svd(root @ root_flipped, compute_uv=False)
    sv = np.sort(sv)[::-1]
    value = max(0.0, float(sv[0] - sv[1] - sv[2] - sv[3]))
    return ConcurrenceResult(value, sv)


def concurrence_xstate(rho: RungDensityMatrix) -> float:
    return 2.0 * max(0.0, abs(rho.y) - np.sqrt(rho.z * rho.w)) / rho.trace_value


def concurrence_at(params: ModelParams) -> float:
    return concurrence_xstate(rung_density_matrix(params))
