"""Total and per-pattern observables of Rabi-model eigenstates.

Pattern energy:  E⁽ⁿ⁾ = λ_n ‖A_n ψ‖², summing to ⟨ψ|H|ψ⟩.

Photon and spin-flip components are attributed through the exact
inverse transforms of the pattern decomposition,

    a  = Σ_n u_{n,3} A_n      and      σz = Σ_n u_{n,2} A_n,

so that photon component n = u_{n,3}·⟨ψ|a†A_n|ψ⟩ sums to ⟨a†a⟩ and
spin-flip component n = u_{n,2}·⟨ψ|(-iσy)A_n|ψ⟩ sums to ⟨σx⟩ (using
(-iσy)·σz = σx). The attribution is linear and exact under summation;
individual components are not sign-constrained.

Expectations are quadratic forms over the already-built dense matrices:
uniform and correct by construction rather than specialized formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .operators import OperatorMatrix, Primitives
from .patterns import PatternBasis


@dataclass(frozen=True)
class StateObservables:
    """Energy, photon number and spin flip of one state, with pattern splits."""

    energy: float
    pattern_energies: np.ndarray
    photon_total: float
    photon_by_pattern: np.ndarray
    sigma_x_total: float
    sigma_x_by_pattern: np.ndarray

    def __post_init__(self):
        for name in ("pattern_energies", "photon_by_pattern", "sigma_x_by_pattern"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class WavefunctionSlice:
    """Up-spin branch of an eigenstate and its pattern components.

    amplitudes[m] = ψ(↑, m); pattern_components[n-1, m] is the up-spin
    restriction of w_n = λ_n A_nᵀ A_n ψ, emitted unnormalized together
    with the energy (consumers divide by E only when |E| > 1e-8). The
    pattern components satisfy Σ_n w_n = E·ψ componentwise.
    """

    g_value: float
    level: int
    amplitudes: np.ndarray
    pattern_components: np.ndarray
    energy: float

    def __post_init__(self):
        for name in ("amplitudes", "pattern_components"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def pattern_energies(
    state: np.ndarray,
    basis: PatternBasis,
    pattern_ops: Sequence[OperatorMatrix],
) -> np.ndarray:
    """E⁽ⁿ⁾ = λ_n ‖A_n ψ‖² for n = 1..3; sums to ⟨ψ|H|ψ⟩."""
    out = np.zeros(3)
    for n in range(3):
        v = pattern_ops[n].entries @ state
        out[n] = basis.eigenvalues[n] * float(v @ v)
    return out


def photon_decomposition(
    state: np.ndarray,
    basis: PatternBasis,
    pattern_ops: Sequence[OperatorMatrix],
    primitives: Primitives,
) -> tuple[float, np.ndarray]:
    """(⟨a†a⟩, per-pattern components u_{n,3}·⟨ψ|a†A_n|ψ⟩)."""
    total = float(state @ (primitives.number.entries @ state))
    a_state = primitives.a.entries @ state
    comps = np.zeros(3)
    for n in range(3):
        comps[n] = basis.eigenvectors[n, 2] * float(a_state @ (pattern_ops[n].entries @ state))
    return total, comps


def sigma_x_decomposition(
    state: np.ndarray,
    basis: PatternBasis,
    pattern_ops: Sequence[OperatorMatrix],
    primitives: Primitives,
) -> tuple[float, np.ndarray]:
    """(⟨σx⟩, per-pattern components u_{n,2}·⟨ψ|(-iσy)A_n|ψ⟩)."""
    total = float(state @ (primitives.sigma_x.entries @ state))
    # ⟨ψ|(-iσy)A_n|ψ⟩ = (iσy ψ)·(A_n ψ) since (-iσy) = (iσy)ᵀ.
    y_state = primitives.i_sigma_y.entries @ state
    comps = np.zeros(3)
    for n in range(3):
        comps[n] = basis.eigenvectors[n, 1] * float(y_state @ (pattern_ops[n].entries @ state))
    return total, comps


def compute_observables(
    state: np.ndarray,
    energy: float,
    basis: PatternBasis,
    pattern_ops: Sequence[OperatorMatrix],
    primitives: Primitives,
) -> StateObservables:
    """Bundle all observables of one eigenstate."""
    e_pat = pattern_energies(state, basis, pattern_ops)
    photon_total, photon_pat = photon_decomposition(state, basis, pattern_ops, primitives)
    sx_total, sx_pat = sigma_x_decomposition(state, basis, pattern_ops, primitives)
    return StateObservables(
        energy=float(energy),
        pattern_energies=e_pat,
        photon_total=photon_total,
        photon_by_pattern=photon_pat,
        sigma_x_total=sx_total,
        sigma_x_by_pattern=sx_pat,
    )


def wavefunction_slice(
    state: np.ndarray,
    energy: float,
    basis: PatternBasis,
    pattern_ops: Sequence[OperatorMatrix],
    level: int,
    g: float,
) -> WavefunctionSlice:
    """Up-spin amplitudes and unnormalized pattern components w_n of a state."""
    n_ph = len(state) // 2
    comps = np.zeros((3, n_ph))
    for n in range(3):
        op = pattern_ops[n].entries
        w_n = basis.eigenvalues[n] * (op.T @ (op @ state))
        comps[n] = w_n[:n_ph]
    return WavefunctionSlice(
        g_value=float(g),
        level=int(level),
        amplitudes=state[:n_ph].copy(),
        pattern_components=comps,
        energy=float(energy),
    )
