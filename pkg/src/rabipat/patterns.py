"""Operator-space coupling matrix of the quantum Rabi model and its patterns.

The Rabi Hamiltonian H = a†a + (Δ/2)σx + g(a+a†)σz (units of ħω) can be
written as a quadratic form O† M O over the operator triple
O = (iσy, σz, a), with the real symmetric 3x3 coupling matrix

    M(Δ, g) = [[0,   Δ/4, 0],
               [Δ/4, 0,   g],
               [0,   g,   1]].

Diagonalizing M yields three eigenvalues with orthonormal row vectors;
each (eigenvalue, row) pair defines one "pattern" whose operator is the
corresponding linear combination of iσy, σz and a. This module owns the
3x3 side: building M, diagonalizing it with stable pattern labels, sign
continuity along coupling sweeps, and analytic eigen-derivatives in g.

Labeling convention: the row dominated by the photon component (largest
|third component|) is pattern 2; the remaining two are patterns 1 and 3
in ascending eigenvalue order. At g = 0 this gives the anchors
λ1 = -Δ/4, λ2 = 1, λ3 = +Δ/4. Along a sweep, labels and signs follow
continuity via align_signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ContinuityError, DegenerateSpectrumError

# Eigenvalue gaps below DEGENERACY_TOL mark a basis as degenerate; gaps
# below DERIVATIVE_GAP_TOL make the perturbative derivative sums unsafe.
DEGENERACY_TOL = 1e-10
DERIVATIVE_GAP_TOL = 1e-8

# Minimum |overlap| for an unambiguous identity assignment between
# adjacent sweep points.
OVERLAP_TOL = 0.5


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ModelParams:
    """Physical and numerical configuration, energies in units of ħω.

    delta    : dimensionless two-level splitting Δ >= 0
    g        : dimensionless coupling strength >= 0
    n_max    : Fock truncation N (photon states 0..N), >= 1
    k_levels : number of low-lying eigenstates requested,
               1 <= k_levels <= 2(n_max+1)
    """

    delta: float
    g: float
    n_max: int
    k_levels: int

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if self.g < 0:
            raise ValueError(f"g must be >= 0, got {self.g}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if not 1 <= self.k_levels <= 2 * (self.n_max + 1):
            raise ValueError(
                f"k_levels must be in [1, {2 * (self.n_max + 1)}], got {self.k_levels}"
            )

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)


@dataclass(frozen=True)
class CouplingMatrix:
    """3x3 real symmetric coupling matrix over (iσy, σz, a)."""

    entries: np.ndarray
    g_value: float

    def __post_init__(self):
        object.__setattr__(self, "entries", _readonly(self.entries))


@dataclass(frozen=True)
class PatternBasis:
    """Eigen-decomposition of a CouplingMatrix with pattern labels.

    eigenvalues  : (3,) pattern eigenvalues, index 0..2 = patterns 1..3
    eigenvectors : (3,3) orthonormal rows; row n is the coefficient
                   vector of pattern n+1 over (iσy, σz, a)
    g_value      : coupling the source matrix was built at
    degenerate   : True when two eigenvalues are closer than 1e-10;
                   derivative operations refuse such points
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    g_value: float
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _readonly(self.eigenvalues))
        object.__setattr__(self, "eigenvectors", _readonly(self.eigenvectors))


@dataclass(frozen=True)
class PatternDerivatives:
    """Analytic eigen-derivatives of a PatternBasis with respect to g."""

    dlambda: np.ndarray      # (3,) first derivatives of the eigenvalues
    d2lambda: np.ndarray     # (3,) second derivatives of the eigenvalues
    dvectors: np.ndarray     # (3,3) rows are d(u_n)/dg

    def __post_init__(self):
        object.__setattr__(self, "dlambda", _readonly(self.dlambda))
        object.__setattr__(self, "d2lambda", _readonly(self.d2lambda))
        object.__setattr__(self, "dvectors", _readonly(self.dvectors))


def coupling_matrix(params: ModelParams, g: float) -> CouplingMatrix:
    """Build M(Δ, g) for params.delta at the given coupling."""
    if g < 0:
        raise ValueError(f"g must be >= 0, got {g}")
    q = params.delta / 4.0
    entries = np.array([[0.0, q, 0.0], [q, 0.0, g], [0.0, g, 1.0]])
    return CouplingMatrix(entries=entries, g_value=float(g))


def _canonical_signs(rows: np.ndarray) -> np.ndarray:
    """Flip rows so the largest-magnitude component (first on ties) is positive."""
    out = rows.copy()
    for i in range(out.shape[0]):
        j = int(np.argmax(np.abs(out[i])))
        if out[i, j] < 0:
            out[i] = -out[i]
    return out + 0.0  # clears IEEE -0.0 introduced by row flips


def diagonalize_pattern(m: CouplingMatrix) -> PatternBasis:
    """Spectral decomposition of the coupling matrix with pattern labels.

    The photon-dominant eigenvector (largest |component along a|) is
    labeled pattern 2; the remaining two are patterns 1 and 3 in
    ascending eigenvalue order. Row signs follow the canonical rule
    (largest-magnitude component positive). For Δ = 50 the labels
    coincide with plain ascending order.
    """
    entries = np.asarray(m.entries)
    if not np.allclose(entries, entries.T, rtol=0.0, atol=0.0):
        raise ValueError("coupling matrix must be symmetric")
    w, v = np.linalg.eigh(entries)
    photon = int(np.argmax(np.abs(v[2, :])))
    rest = [i for i in range(3) if i != photon]
    order = [rest[0], photon, rest[1]]
    lam = w[order]
    rows = _canonical_signs(v[:, order].T)
    gap = float(np.min(np.diff(np.sort(w))))
    return PatternBasis(
        eigenvalues=lam,
        eigenvectors=rows,
        g_value=m.g_value,
        degenerate=gap < DEGENERACY_TOL,
    )


def _best_row_assignment(prev_rows: np.ndarray, cur_rows: np.ndarray) -> tuple[int, ...]:
    """Permutation p maximizing sum_n |prev_n . cur_p(n)|; raises when ambiguous."""
    overlaps = np.abs(prev_rows @ cur_rows.T)
    best_perm = None
    best_score = -1.0
    for perm in itertools.permutations(range(3)):
        score = sum(overlaps[i, perm[i]] for i in range(3))
        if score > best_score:
            best_score = score
            best_perm = perm
    matched = min(overlaps[i, best_perm[i]] for i in range(3))
    if matched < OVERLAP_TOL:
        raise ContinuityError(
            f"pattern identity ambiguous between adjacent points "
            f"(min matched |overlap| = {matched:.3f} < {OVERLAP_TOL}); use a finer grid"
        )
    return best_perm


def align_signs(prev: PatternBasis, cur: PatternBasis) -> PatternBasis:
    """Carry pattern labels and row signs from prev to cur by continuity.

    Labels are reassigned by maximal |row overlap| with prev, then each
    row is negated if its overlap with the matching prev row is
    negative. prev and cur must come from adjacent points of a sweep
    grid; an ambiguous overlap pattern raises ContinuityError.
    """
    perm = _best_row_assignment(prev.eigenvectors, cur.eigenvectors)
    lam = cur.eigenvalues[list(perm)]
    rows = cur.eigenvectors[list(perm)].copy()
    for i in range(3):
        if float(prev.eigenvectors[i] @ rows[i]) < 0:
            rows[i] = -rows[i]
    rows += 0.0  # clears IEEE -0.0 introduced by row flips
    return PatternBasis(
        eigenvalues=lam,
        eigenvectors=rows,
        g_value=cur.g_value,
        degenerate=cur.degenerate,
    )


def critical_coupling(delta: float) -> float:
    """Critical coupling g_c(Δ) = sqrt(1 + sqrt(1 + Δ²/16)) rescaling sweeps."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    return float(np.sqrt(1.0 + np.sqrt(1.0 + delta * delta / 16.0)))


# dM/dg: only the σz-a coupling entries depend on g.
_DM_DG = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])


def pattern_derivatives(m: CouplingMatrix, basis: PatternBasis) -> PatternDerivatives:
    """First/second eigenvalue and first eigenvector derivatives in g.

    Standard non-degenerate perturbation formulas with M' = dM/dg:

        dλn/dg   = un·M'·un
        dun/dg   = Σ_{m≠n} (um·M'·un)/(λn-λm) um
        d²λn/dg² = 2 Σ_{m≠n} (um·M'·un)²/(λn-λm)

    Refuses eigenvalue gaps at or below 1e-8 (DegenerateSpectrumError):
    no regularization is attempted near crossings.
    """
    lam = basis.eigenvalues
    u = basis.eigenvectors
    gaps = np.abs(lam[:, None] - lam[None, :])[np.triu_indices(3, k=1)]
    if float(np.min(gaps)) <= DERIVATIVE_GAP_TOL:
        raise DegenerateSpectrumError(
            f"eigenvalue gap {np.min(gaps):.3e} <= {DERIVATIVE_GAP_TOL} at g = {m.g_value}; "
            "derivatives refused at (near-)degenerate points"
        )
    coup = u @ _DM_DG @ u.T          # coup[m, n] = um · M' · un
    dlam = np.diag(coup).copy()
    d2lam = np.zeros(3)
    dvec = np.zeros((3, 3))
    for n in range(3):
        for k in range(3):
            if k == n:
                continue
            ratio = coup[k, n] / (lam[n] - lam[k])
            d2lam[n] += 2.0 * coup[k, n] * ratio
            dvec[n] += ratio * u[k]
    return PatternDerivatives(dlambda=dlam, d2lambda=d2lam, dvectors=dvec)
