"""Dense real-symmetric eigensolver and parity blocking.

The full solve delegates to LAPACK (scipy.linalg.eigh, tridiagonal
reduction + RRR subset driver, internal iteration caps per LAPACK).
Returned eigenvectors carry a deterministic sign (largest-|component|
entry positive) so repeated runs are bit-identical.

Parity blocking exploits Π = σx·(-1)^{a†a}, an exact symmetry of the
Rabi Hamiltonian: in the σx product basis |±, m⟩ = (|↑,m⟩ ± |↓,m⟩)/√2
the states {|+, m even⟩, |-, m odd⟩} span the Π=+1 sector and the
complement spans Π=-1, giving two (N+1)-dimensional blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import EigensolverError
from .operators import OperatorMatrix, Primitives, build_hamiltonian_direct
from .patterns import ModelParams

# Residual contract: max_i ||H ψ_i - E_i ψ_i|| < RESIDUAL_SCALE * max(1, |E_0|).
RESIDUAL_SCALE = 1e-9


@dataclass(frozen=True)
class EigenSolution:
    """Lowest-k eigenpairs of a symmetric operator, ascending energies.

    states holds the eigenvectors as columns, states[:, i] <-> energies[i].
    """

    energies: np.ndarray
    states: np.ndarray
    residual_norm: float

    def __post_init__(self):
        energies = np.array(self.energies, dtype=float)
        states = np.array(self.states, dtype=float)
        energies.setflags(write=False)
        states.setflags(write=False)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "states", states)

    @property
    def k(self) -> int:
        return len(self.energies)


def _fix_signs(states: np.ndarray) -> np.ndarray:
    out = states.copy()
    for i in range(out.shape[1]):
        j = int(np.argmax(np.abs(out[:, i])))
        if out[j, i] < 0:
            out[:, i] = -out[:, i]
    return out


def _finish(h_entries: np.ndarray, energies: np.ndarray, states: np.ndarray) -> EigenSolution:
    states = _fix_signs(states)
    residual = h_entries @ states - states * energies[None, :]
    residual_norm = float(np.max(np.linalg.norm(residual, axis=0)))
    bound = RESIDUAL_SCALE * max(1.0, abs(float(energies[0])))
    if residual_norm >= bound:
        raise EigensolverError(
            f"residual {residual_norm:.3e} exceeds contract {bound:.3e}"
        )
    return EigenSolution(energies=energies, states=states, residual_norm=residual_norm)


def eigensolve(h: OperatorMatrix, k: int) -> EigenSolution:
    """Lowest k eigenpairs of a symmetric OperatorMatrix.

    Raises EigensolverError when LAPACK fails to converge or the
    residual contract is violated; ValueError on asymmetric input or a
    k outside 1..dim.
    """
    entries = np.asarray(h.entries)
    if not np.array_equal(entries, entries.T):
        raise ValueError(f"operator {h.label!r} is not symmetric")
    if not 1 <= k <= h.dim:
        raise ValueError(f"k must be in 1..{h.dim}, got {k}")
    try:
        energies, states = scipy.linalg.eigh(entries, subset_by_index=(0, k - 1))
    except scipy.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed to converge: {exc}") from exc
    return _finish(entries, energies, states)


@dataclass(frozen=True)
class ParityBlocks:
    """H restricted to the two parity sectors of Π = σx·(-1)^{a†a}.

    vectors_pos/neg hold the parity-adapted basis as columns of the full
    space; labels are (sx, m) pairs with sx = ±1 the σx eigenvalue.
    Each block has dimension N+1.
    """

    block_pos: np.ndarray
    block_neg: np.ndarray
    vectors_pos: np.ndarray
    vectors_neg: np.ndarray
    labels_pos: tuple[tuple[int, int], ...]
    labels_neg: tuple[tuple[int, int], ...]


def parity_operator(primitives: Primitives) -> OperatorMatrix:
    """The parity matrix Π = σx·(-1)^{a†a}."""
    n_ph = primitives.n_max + 1
    signs = np.diag([(-1.0) ** m for m in range(n_ph)])
    entries = np.kron(np.array([[0.0, 1.0], [1.0, 0.0]]), signs)
    return OperatorMatrix(dim=primitives.dim, entries=entries, label="parity")


def parity_blocks(params: ModelParams, primitives: Primitives) -> ParityBlocks:
    """Split H(params) into its two exact parity blocks."""
    h = build_hamiltonian_direct(params, primitives).entries
    n_ph = params.n_max + 1
    inv_sqrt2 = 1.0 / np.sqrt(2.0)

    def adapted_vector(sx: int, m: int) -> np.ndarray:
        vec = np.zeros(2 * n_ph)
        vec[m] = inv_sqrt2                  # up component
        vec[n_ph + m] = sx * inv_sqrt2      # down component
        return vec

    labels_pos = []
    labels_neg = []
    for m in range(n_ph):
        for sx in (1, -1):
            if sx * (-1) ** m == 1:
                labels_pos.append((sx, m))
            else:
                labels_neg.append((sx, m))
    vectors_pos = np.column_stack([adapted_vector(sx, m) for sx, m in labels_pos])
    vectors_neg = np.column_stack([adapted_vector(sx, m) for sx, m in labels_neg])
    block_pos = vectors_pos.T @ h @ vectors_pos
    block_neg = vectors_neg.T @ h @ vectors_neg
    return ParityBlocks(
        block_pos=block_pos,
        block_neg=block_neg,
        vectors_pos=vectors_pos,
        vectors_neg=vectors_neg,
        labels_pos=tuple(labels_pos),
        labels_neg=tuple(labels_neg),
    )


def eigensolve_parity(params: ModelParams, primitives: Primitives, k: int) -> EigenSolution:
    """Lowest k eigenpairs via the two parity blocks; contract as eigensolve."""
    if not 1 <= k <= 2 * (params.n_max + 1):
        raise ValueError(f"k must be in 1..{2 * (params.n_max + 1)}, got {k}")
    blocks = parity_blocks(params, primitives)
    try:
        w_pos, v_pos = scipy.linalg.eigh(blocks.block_pos)
        w_neg, v_neg = scipy.linalg.eigh(blocks.block_neg)
    except scipy.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed to converge: {exc}") from exc
    energies = np.concatenate([w_pos, w_neg])
    order = np.argsort(energies, kind="stable")[:k]
    n_pos = len(w_pos)
    columns = []
    for idx in order:
        if idx < n_pos:
            columns.append(blocks.vectors_pos @ v_pos[:, idx])
        else:
            columns.append(blocks.vectors_neg @ v_neg[:, idx - n_pos])
    states = np.column_stack(columns)
    h = build_hamiltonian_direct(params, primitives).entries
    return _finish(h, energies[order], states)
