"""Exact thermodynamics and rung entanglement of the spin-1/2 Ising-Heisenberg pyrochlore ladder."""

from .entanglement import concurrence_at, concurrence_general, concurrence_xstate
from .model import RUNG_STATES, ModelParams, RungState, bond_energy, hamiltonian_constant
from .rungstate import RungDensityMatrix, magnetization_rdm, rung_density_matrix, susceptibility_rdm
from .transfer import (
    build_transfer_matrix,
    dominant_eigenpair,
    log_partition_per_rung,
    magnetization_tm,
    susceptibility_tm,
)

__all__ = [
    "RUNG_STATES",
    "ModelParams",
    "RungDensityMatrix",
    "RungState",
    "bond_energy",
    "build_transfer_matrix",
    "concurrence_at",
    "concurrence_general",
    "concurrence_xstate",
    "dominant_eigenpair",
    "hamiltonian_constant",
    "log_partition_per_rung",
    "magnetization_rdm",
    "magnetization_tm",
    "rung_density_matrix",
    "susceptibility_rdm",
    "susceptibility_tm",
]
