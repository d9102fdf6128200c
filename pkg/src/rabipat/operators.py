"""Dense operator matrices on the truncated |σz, m⟩ product basis.

Basis ordering is spin-major: flat index = spin_offset*(N+1) + m with
spin up -> offset 0 and down -> offset 1, photon number m = 0..N. All
operators are real: iσy (not σy) is the spin primitive, which makes the
Hamiltonian real symmetric and keeps every construction in real
arithmetic. In the (up, down) ordering

    iσy = [[0, 1], [-1, 0]]   (up -> -down, down -> up)
    σz  = diag(+1, -1)
    σx  = [[0, 1], [1, 0]]

and the photon ladder obeys a|m⟩ = √m |m-1⟩ with the truncation simply
dropping states above N (no leakage correction; a†a is truncation-exact
because the would-be leakage row is cut on both factors).

Matrices are dense; at the working scale (dim = 2(N+1) ≈ 600 max) dense
storage is simplest and fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from .patterns import ModelParams, PatternBasis

UP = 0
DOWN = 1


def flat_index(spin: int, photon: int, n_max: int) -> int:
    """Flat basis index of |spin, m⟩; spin UP=0 block first."""
    if spin not in (UP, DOWN):
        raise ValueError(f"spin must be UP(0) or DOWN(1), got {spin}")
    if not 0 <= photon <= n_max:
        raise ValueError(f"photon index {photon} outside 0..{n_max}")
    return spin * (n_max + 1) + photon


def split_index(flat: int, n_max: int) -> tuple[int, int]:
    """Inverse of flat_index: flat -> (spin, photon)."""
    dim = 2 * (n_max + 1)
    if not 0 <= flat < dim:
        raise ValueError(f"flat index {flat} outside 0..{dim - 1}")
    return divmod(flat, n_max + 1)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense real matrix over the truncated |σz, m⟩ basis."""

    dim: int
    entries: np.ndarray
    label: str

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.shape != (self.dim, self.dim):
            raise ValueError(
                f"entries shape {entries.shape} does not match dim {self.dim}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class Primitives:
    """The primitive operator set at a fixed truncation."""

    n_max: int
    a: OperatorMatrix
    a_dag: OperatorMatrix
    i_sigma_y: OperatorMatrix
    sigma_z: OperatorMatrix
    sigma_x: OperatorMatrix
    number: OperatorMatrix

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)


def build_primitives(n_max: int) -> Primitives:
    """Construct a, a†, iσy, σz, σx and a†a at truncation n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    n_ph = n_max + 1
    ladder = np.zeros((n_ph, n_ph))
    for m in range(1, n_ph):
        ladder[m - 1, m] = np.sqrt(m)
    eye2 = np.eye(2)
    eye_ph = np.eye(n_ph)
    dim = 2 * n_ph

    a = np.kron(eye2, ladder)
    a_dag = a.T.copy()
    i_sigma_y = np.kron(np.array([[0.0, 1.0], [-1.0, 0.0]]), eye_ph)
    sigma_z = np.kron(np.diag([1.0, -1.0]), eye_ph)
    sigma_x = np.kron(np.array([[0.0, 1.0], [1.0, 0.0]]), eye_ph)
    number = a_dag @ a  # exactly diagonal: the ladder's only band is the superdiagonal

    def wrap(label: str, entries: np.ndarray) -> OperatorMatrix:
        return OperatorMatrix(dim=dim, entries=entries, label=label)

    return Primitives(
        n_max=n_max,
        a=wrap("a", a),
        a_dag=wrap("a_dag", a_dag),
        i_sigma_y=wrap("i_sigma_y", i_sigma_y),
        sigma_z=wrap("sigma_z", sigma_z),
        sigma_x=wrap("sigma_x", sigma_x),
        number=wrap("number", number),
    )


def build_pattern_operator(
    basis: PatternBasis, n: int, primitives: Primitives
) -> OperatorMatrix:
    """Pattern operator n (1..3): u_{n,1}·iσy + u_{n,2}·σz + u_{n,3}·a."""
    if n not in (1, 2, 3):
        raise ValueError(f"pattern index must be 1, 2 or 3, got {n}")
    u = basis.eigenvectors[n - 1]
    entries = (
        u[0] * primitives.i_sigma_y.entries
        + u[1] * primitives.sigma_z.entries
        + u[2] * primitives.a.entries
    )
    return OperatorMatrix(dim=primitives.dim, entries=entries, label=f"pattern_{n}")


def build_pattern_operators(
    basis: PatternBasis, primitives: Primitives
) -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """All three pattern operators for a basis."""
    return tuple(build_pattern_operator(basis, n, primitives) for n in (1, 2, 3))


def build_hamiltonian_direct(params: ModelParams, primitives: Primitives) -> OperatorMatrix:
    """H = a†a + (Δ/2)σx + g(a+a†)σz, assembled term by term.

    Every term is exactly symmetric (number is diagonal, σx is a
    symmetric kron, and (a+a†)σz is spin-block-diagonal scaling), so the
    sum is symmetric with zero tolerance.
    """
    if primitives.n_max != params.n_max:
        raise ValueError(
            f"primitives built at n_max={primitives.n_max}, params want {params.n_max}"
        )
    displacement = primitives.a.entries + primitives.a_dag.entries
    entries = (
        primitives.number.entries
        + (params.delta / 2.0) * primitives.sigma_x.entries
        + params.g * (displacement @ primitives.sigma_z.entries)
    )
    return OperatorMatrix(dim=primitives.dim, entries=entries, label="hamiltonian")


def build_hamiltonian_patterns(basis: PatternBasis, primitives: Primitives) -> OperatorMatrix:
    """H = Σ_n λ_n A_nᵀ A_n from the pattern decomposition.

    Entrywise equal to build_hamiltonian_direct up to float rounding
    (< 1e-12): the identity Σ_n λ_n u_n u_nᵀ = M is exact even under
    truncation because a†a truncates consistently.
    """
    entries = np.zeros((primitives.dim, primitives.dim))
    for n in (1, 2, 3):
        op = build_pattern_operator(basis, n, primitives).entries
        entries += basis.eigenvalues[n - 1] * (op.T @ op)
    return OperatorMatrix(dim=primitives.dim, entries=entries, label="hamiltonian_patterns")


def dump_operator_csv(op: OperatorMatrix, stream: IO[str]) -> None:
    """Debug dump as CSV rows (row, col, value) in lexicographic order."""
    stream.write("row,col,value\n")
    for i in range(op.dim):
        for j in range(op.dim):
            stream.write(f"{i},{j},{op.entries[i, j]:.17g}\n")
