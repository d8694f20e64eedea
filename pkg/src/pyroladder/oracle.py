"""Brute-force ground truths for small rings.

Nothing here touches the transfer matrix or the closed-form rung matrix:

* ``classical_log_partition`` sums Boltzmann weights over every composite
  configuration of an N-rung ring.
* ``quantum_log_partition`` builds the 4^N-dimensional spin Hamiltonian from
  Pauli products and diagonalises it.
* ``block_reduced_density_matrix`` traces a two-rung block down to one rung in
  the ordinary two-spin basis.
* ``ground_state_phase_boundaries`` finds the T = 0 critical fields.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.special import logsumexp

from .model import RUNG_STATES, ModelParams, bond_energy, bond_energy_table
from .rungstate import RungDensityMatrix

MAX_CLASSICAL_RUNGS = 12
MAX_QUANTUM_RUNGS = 5


def _check_rungs(n_rungs: int, cap: int) -> None:
    if not 2 <= n_rungs <= cap:
        raise ValueError(f"n_rungs must be in [2, {cap}], got {n_rungs}")


def configuration_energies(params: ModelParams, n_rungs: int) -> np.ndarray:
    """Sum of bond energies for all 4^N periodic rung configurations.

    Axis i of the returned array indexes the state of rung i.
    """
    _check_rungs(n_rungs, MAX_CLASSICAL_RUNGS)
    table = np.asarray(bond_energy_table(params))
    energy = np.zeros((4,) * n_rungs)
    # accumulate in place: 4^12 doubles is already 134 MB
    for i in range(n_rungs):
        j = (i + 1) % n_rungs
        shape = [1] * n_rungs
        if i < j:
            shape[i], shape[j] = 4, 4
            bond = table.reshape(shape)
        else:
            # wrap-around bond (N-1, 0): axes appear as (0, N-1)
            shape[j], shape[i] = 4, 4
            bond = table.T.reshape(shape)
        np.add(energy, bond, out=energy)
    return energy


def classical_log_partition(params: ModelParams, n_rungs: int) -> float:
    """(1/N) log Z of an N-rung ring by exhaustive enumeration."""
    weights = configuration_energies(params, n_rungs)
    weights *= -params.beta
    # two-pass log-sum-exp, in place
    top = weights.max()
    weights -= top
    np.exp(weights, out=weights)
    log_z = top + np.log(weights.sum())
    return 0.75 * params.beta * params.j_heisenberg + float(log_z) / n_rungs


# ---------------------------------------------------------------- quantum ED

_SX = np.array([[0.0, 0.5], [0.5, 0.0]])
_ISY = np.array([[0.0, 0.5], [-0.5, 0.0]])  # i * S^y, kept real
_SZ = np.array([[0.5, 0.0], [0.0, -0.5]])
_ID2 = np.eye(2)


def site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    return reduce(np.kron, [op if k == site else _ID2 for k in range(n_sites)])


def _upper(i: int) -> int:
    return 2 * i


def _lower(i: int) -> int:
    return 2 * i + 1


def rung_operators(n_rungs: int, rung: int) -> tuple[np.ndarray, np.ndarray]:
    """Full-space matrices of T_i^2 and T_i^z for rung ``rung``."""
    n = 2 * n_rungs
    a, b = _upper(rung), _lower(rung)
    tz = site_operator(_SZ, a, n) + site_operator(_SZ, b, n)
    tx = site_operator(_SX, a, n) + site_operator(_SX, b, n)
    ity = site_operator(_ISY, a, n) + site_operator(_ISY, b, n)
    # (i T^y)^2 = -(T^y)^2
    t2 = tx @ tx - ity @ ity + tz @ tz
    return t2, tz


def quantum_hamiltonian(params: ModelParams, n_rungs: int) -> np.ndarray:
    """Dense Hamiltonian of the N-rung ring in the 2N-spin product basis.

    Sites are ordered (1, 1', 2, 2', ...); the Ising term couples T_i^z and
    T_{i+1}^z, i.e. every spin of one rung to every spin of the next.
    """
    _check_rungs(n_rungs, MAX_QUANTUM_RUNGS)
    n = 2 * n_rungs
    jh, ji, h = params.j_heisenberg, params.j_ising, params.field
    sz = [site_operator(_SZ, k, n) for k in range(n)]
    sx = [site_operator(_SX, k, n) for k in range(n)]
    isy = [site_operator(_ISY, k, n) for k in range(n)]
    ham = np.zeros((2**n, 2**n))
    for i in range(n_rungs):
        a, b = _upper(i), _lower(i)
        ham += jh * (sx[a] @ sx[b] - isy[a] @ isy[b] + sz[a] @ sz[b])
        nxt = (i + 1) % n_rungs
        c, d = _upper(nxt), _lower(nxt)
        ham += ji * (sz[a] + sz[b]) @ (sz[c] + sz[d])
        ham -= h * (sz[a] + sz[b])
    if not np.allclose(ham, ham.T, rtol=0.0, atol=1e-13):
        raise ArithmeticError("spin Hamiltonian is not Hermitian")
    return ham


def quantum_spectrum(params: ModelParams, n_rungs: int) -> np.ndarray:
    return np.linalg.eigvalsh(quantum_hamiltonian(params, n_rungs))


def quantum_log_partition(params: ModelParams, n_rungs: int) -> float:
    energies = quantum_spectrum(params, n_rungs)
    return float(logsumexp(-params.beta * energies)) / n_rungs


def commutator_norms(params: ModelParams, n_rungs: int) -> tuple[float, float]:
    """Largest entry of [H, T_i^2] and of [H, T_i^z] over all rungs i."""
    ham = quantum_hamiltonian(params, n_rungs)
    worst_t2 = worst_tz = 0.0
    for i in range(n_rungs):
        t2, tz = rung_operators(n_rungs, i)
        worst_t2 = max(worst_t2, float(np.max(np.abs(ham @ t2 - t2 @ ham))))
        worst_tz = max(worst_tz, float(np.max(np.abs(ham @ tz - tz @ ham))))
    return worst_t2, worst_tz


# ------------------------------------------------------- two-rung block RDM

_S = 1.0 / np.sqrt(2.0)
# columns: composite states (1,-1), (1,0), (1,1), (0,0) in basis uu, ud, du, dd
COMPOSITE_TO_SPIN = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, _S, 0.0, _S],
        [0.0, _S, 0.0, -_S],
        [1.0, 0.0, 0.0, 0.0],
    ]
)


def block_density_matrix(params: ModelParams) -> tuple[np.ndarray, float]:
    """exp(-beta H_block) of two adjacent rungs in the 16-dim spin basis.

    Returned as (matrix, log_scale) with the true matrix equal to
    matrix * exp(log_scale).
    """
    exponents = np.array(
        [-params.beta * bond_energy(a, b, params) for a in RUNG_STATES for b in RUNG_STATES]
    )
    scale = float(exponents.max())
    diag = np.diag(np.exp(exponents - scale))
    u = np.kron(COMPOSITE_TO_SPIN, COMPOSITE_TO_SPIN)
    return u @ diag @ u.T, scale


def block_reduced_density_matrix(params: ModelParams) -> RungDensityMatrix:
    """Rung 1 of the two-rung block, rung 2 traced out."""
    block, scale = block_density_matrix(params)
    rho = np.trace(block.reshape(4, 4, 4, 4), axis1=1, axis2=3)
    return RungDensityMatrix.from_matrix(rho, scale)


# --------------------------------------------------------- T = 0 structure


@dataclass(frozen=True)
class GroundPhase:
    h_start: float
    h_end: float
    pattern: tuple[int, int]
    magnetization: float


@dataclass(frozen=True)
class PhaseBoundaries:
    h_c1: float
    h_c2: float
    phases: tuple[GroundPhase, ...]

    @property
    def degenerate(self) -> bool:
        return np.isclose(self.h_c1, self.h_c2, rtol=0.0, atol=1e-9)


def _pattern_line(a: int, b: int, jh: float, ji: float) -> tuple[float, float]:
    """Energy per rung of the period-2 pattern (a, b) as intercept + slope*h."""
    e0 = bond_energy(RUNG_STATES[a], RUNG_STATES[b], ModelParams(jh, ji, 0.0, 1.0))
    e1 = bond_energy(RUNG_STATES[a], RUNG_STATES[b], ModelParams(jh, ji, 1.0, 1.0))
    return e0, e1 - e0


def ground_state_phases(j_heisenberg: float, j_ising: float, h_max: float = np.inf):
    """Lower envelope, for h >= 0, of period-<=2 pattern energies per rung.

    A uniform pattern (a, a) and an alternating one (a, b) both cost
    bond_energy(a, b) per rung, so the candidates are the ten unordered pairs.
    """
    lines = {
        (a, b): _pattern_line(a, b, j_heisenberg, j_ising)
        for a, b in itertools.combinations_with_replacement(range(4), 2)
    }

    def best(h):
        # ties broken towards lower magnetization (steeper slope loses at equal energy)
        return min(lines, key=lambda k: (lines[k][0] + lines[k][1] * h, -lines[k][1]))

    phases = []
    h = 0.0
    current = best(h)
    while True:
        c0, c1 = lines[current]
        crossings = []
        for key, (e0, e1) in lines.items():
            if e1 < c1 - 1e-15:
                hx = (c0 - e0) / (e1 - c1)
                if hx >= h - 1e-12:
                    crossings.append((max(hx, h), e1, key))
        if not crossings:
            phases.append((h, np.inf, current))
            break
        # earliest crossing; among simultaneous ones the lowest-slope line wins beyond it
        hx = min(c[0] for c in crossings)
        nxt = min((c for c in crossings if c[0] - hx <= 1e-12), key=lambda c: c[1])[2]
        phases.append((h, hx, current))
        h, current = hx, nxt

    out = []
    for start, end, (a, b) in phases:
        tz = (RUNG_STATES[a].z_component + RUNG_STATES[b].z_component) / 4.0
        out.append(GroundPhase(start, min(end, h_max), (a, b), tz))
    return tuple(out)


def ground_state_phase_boundaries(j_heisenberg: float, j_ising: float) -> PhaseBoundaries:
    """Critical fields between the m = 0, 1/4 and 1/2 ground states.

    Zero-width phases at a degenerate point collapse the two fields onto one
    value; ``PhaseBoundaries.degenerate`` flags it.
    """
    if not (j_heisenberg > 0 and j_ising > 0):
        raise ValueError("phase boundaries need antiferromagnetic couplings J_H > 0, J_I > 0")
    phases = ground_state_phases(j_heisenberg, j_ising)
    edges = [p.h_end for p in phases[:-1]]
    mags = [p.magnetization for p in phases]
    if mags[0] != 0.0 or mags[-1] != 0.5:
        raise ArithmeticError(f"unexpected ground-state sequence: {mags}")
    if len(edges) == 1:
        # mid phase squeezed out: all three patterns cross at one field
        return PhaseBoundaries(edges[0], edges[0], phases)
    if len(edges) != 2 or mags[1] != 0.25:
        raise ArithmeticError(f"unexpected ground-state sequence: {mags} at {edges}")
    return PhaseBoundaries(edges[0], edges[1], phases)


def enumerated_ground_energy(params: ModelParams, n_rungs: int) -> float:
    """Minimum energy per rung over all configurations (H_i sum only)."""
    return float(configuration_energies(params, n_rungs).min()) / n_rungs
