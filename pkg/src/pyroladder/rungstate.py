"""Closed-form reduced density matrix of one rung.

In the two-spin basis (uu, ud, du, dd) the rung state has the X form

    [[z, 0, 0, 0],
     [0, x, y, 0],
     [0, y, x, 0],
     [0, 0, 0, w]]

with x, y, z, w explicit sums of Boltzmann factors of a block of two adjacent
rungs.  Every term is assembled in the log domain and the four entries share
one common rescaling, which cancels from all physical quantities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .model import ModelParams, central_field_derivative


@dataclass(frozen=True)
class RungDensityMatrix:
    """Unnormalised X-form rung matrix; true entries are these times exp(log_scale)."""

    x: float
    y: float
    z: float
    w: float
    log_scale: float = 0.0

    @property
    def trace_value(self) -> float:
        return self.z + 2.0 * self.x + self.w

    def matrix(self) -> np.ndarray:
        x, y, z, w = self.x, self.y, self.z, self.w
        return np.array(
            [[z, 0.0, 0.0, 0.0], [0.0, x, y, 0.0], [0.0, y, x, 0.0], [0.0, 0.0, 0.0, w]]
        )

    def normalized(self) -> np.ndarray:
        return self.matrix() / self.trace_value

    def eigenvalues(self) -> np.ndarray:
        """Spectrum of the normalised matrix: z, w, x+y, x-y over the trace."""
        t = self.trace_value
        return np.array([self.z, self.w, self.x + self.y, self.x - self.y]) / t

    @classmethod
    def from_matrix(cls, rho: np.ndarray, log_scale: float = 0.0) -> "RungDensityMatrix":
        rho = np.asarray(rho)
        return cls(
            float(np.real(rho[1, 1])),
            float(np.real(rho[1, 2])),
            float(np.real(rho[0, 0])),
            float(np.real(rho[3, 3])),
            log_scale,
        )


def _log_abs_expm1(u: float) -> float:
    """log|e^u - 1| without overflow for large u."""
    if u > 30.0:
        return u + np.log1p(-np.exp(-u))
    with np.errstate(divide="ignore"):
        return float(np.log(np.abs(np.expm1(u))))


def rung_density_matrix(params: ModelParams) -> RungDensityMatrix:
    b = params.beta
    jh, ji, h = params.j_heisenberg, params.j_ising, params.field

    # common factor of x and y: exp(-b(2J_H + h)/2) / 2 * (four-term field sum)
    log_xy = (
        -0.5 * b * (2 * jh + h)
        - np.log(2.0)
        + logsumexp([0.5 * b * (jh + h), b * h, 0.5 * b * h, 0.0])
    )
    log_x = log_xy + np.logaddexp(0.5 * b * jh, 0.0)
    y_sign = -np.sign(jh)
    log_abs_y = log_xy + _log_abs_expm1(0.5 * b * jh)
    log_z = -b * (jh + ji) + logsumexp(
        [0.5 * b * (jh + 2 * ji + h), b * (ji + 0.5 * h), 2 * b * ji, b * h]
    )
    log_w = -b * (jh + ji + h) + logsumexp(
        [0.5 * b * (jh + 2 * ji + h), b * (2 * ji + h), b * (ji + 0.5 * h), 0.0]
    )

    scale = float(max(log_x, log_abs_y, log_z, log_w))
    return RungDensityMatrix(
        x=float(np.exp(log_x - scale)),
        y=float(y_sign * np.exp(log_abs_y - scale)),
        z=float(np.exp(log_z - scale)),
        w=float(np.exp(log_w - scale)),
        log_scale=scale,
    )


def rung_magnetization(rho: RungDensityMatrix) -> float:
    """tr(rho S^z) / tr(rho) for one site of the rung."""
    return (rho.z - rho.w) / (2.0 * rho.trace_value)


def magnetization_rdm(params: ModelParams) -> float:
    return rung_magnetization(rung_density_matrix(params))


def susceptibility_rdm(params: ModelParams, step: float | None = None) -> float:
    return central_field_derivative(magnetization_rdm, params, step)


def density_matrix_from_rung_probabilities(p: np.ndarray) -> RungDensityMatrix:
    """X-form rung matrix of a mixture of composite states.

    ``p`` holds weights in canonical order (T^z=-1, T^z=0, T^z=+1, singlet).
    The triplet T^z=0 and the singlet share the ud/du block.
    """
    p_down, p_t0, p_up, p_singlet = (float(v) for v in p)
    return RungDensityMatrix(
        x=0.5 * (p_t0 + p_singlet),
        y=0.5 * (p_t0 - p_singlet),
        z=p_up,
        w=p_down,
    )
