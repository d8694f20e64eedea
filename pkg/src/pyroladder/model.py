"""Parameters, rung states and the bond energy of the Ising-Heisenberg ladder.

Each rung holds two spin-1/2 sites coupled by an isotropic Heisenberg
exchange; neighbouring rungs interact only through the z-components of their
total rung spin.  Because the total spin T and its projection T^z of every
rung are conserved, the model reduces to a classical chain of four-state
composite spins, and everything downstream is built from ``bond_energy``.

Energies are dimensionless with K_B = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class ModelParams:
    """Couplings, field and temperature of one thermodynamic state point."""

    j_heisenberg: float
    j_ising: float
    field: float
    temperature: float

    def __post_init__(self):
        for name in ("j_heisenberg", "j_ising", "field", "temperature"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
        if self.temperature <= 0:
            raise ValueError(f"temperature must be > 0, got {self.temperature!r}")

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature

    def with_field(self, field: float) -> "ModelParams":
        return ModelParams(self.j_heisenberg, self.j_ising, field, self.temperature)


class RungState(NamedTuple):
    """Composite state |T, T^z> of one rung."""

    total_spin: int
    z_component: int

    @property
    def spin_squared(self) -> int:
        """Eigenvalue T(T+1) of the rung T^2 operator."""
        return self.total_spin * (self.total_spin + 1)


# Canonical order: row/column order of the transfer matrix.
RUNG_STATES: tuple[RungState, ...] = (
    RungState(1, -1),
    RungState(1, 0),
    RungState(1, 1),
    RungState(0, 0),
)

SPIN_SQUARED = tuple(s.spin_squared for s in RUNG_STATES)
Z_COMPONENT = tuple(s.z_component for s in RUNG_STATES)


def bond_energy(left: RungState, right: RungState, params: ModelParams) -> float:
    """Energy of the bond between two consecutive rungs.

    Each rung's Heisenberg and Zeeman energy is split evenly between its two
    bonds, so summing over all bonds of a ring and adding
    :func:`hamiltonian_constant` gives the full Hamiltonian eigenvalue.
    """
    jh, ji, h = params.j_heisenberg, params.j_ising, params.field
    return (
        0.25 * jh * (left.spin_squared + right.spin_squared)
        + ji * left.z_component * right.z_component
        - 0.5 * h * (left.z_component + right.z_component)
    )


def bond_energy_table(params: ModelParams) -> list[list[float]]:
    """All 16 bond energies in the canonical state order."""
    return [[bond_energy(a, b, params) for b in RUNG_STATES] for a in RUNG_STATES]


def hamiltonian_constant(params: ModelParams, n_rungs: int) -> float:
    """State-independent energy offset -3 N J_H / 4 of an N-rung ring."""
    if n_rungs < 2:
        raise ValueError(f"a periodic ladder needs at least two rungs, got {n_rungs}")
    return -0.75 * n_rungs * params.j_heisenberg


def field_step(field: float) -> float:
    """Default central-difference step in h."""
    return 1e-4 * max(1.0, abs(field))


def central_field_derivative(fn, params: ModelParams, step: float | None = None) -> float:
    """(fn(h + dh) - fn(h - dh)) / 2dh at fixed couplings and temperature."""
    dh = field_step(params.field) if step is None else step
    h = params.field
    if not dh > 0 or (h + dh) - h == 0.0 or h - (h - dh) == 0.0:
        raise ValueError(f"field step {dh!r} underflows at h={h!r}")
    up, down = params.with_field(h + dh), params.with_field(h - dh)
    return (fn(up) - fn(down)) / ((h + dh) - (h - dh))
