"""Coupling-strength sweeps with identity tracking and derivative series.

The grid is uniform in g/g_c (the x-axis of every downstream plot).
Per-point work (Hamiltonian build, eigensolve, observables) is
embarrassingly parallel; pattern-basis sign alignment and eigenstate
matching across adjacent points are sequential post-passes, so serial
and threaded runs produce identical records. Energy second derivatives
use the plain central stencil on the sweep grid; a finer fresh-solve
mode backs the Hellmann-Feynman cross-check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ContinuityError, TransitionWindowError
from .observables import StateObservables, compute_observables
from .operators import (
    OperatorMatrix,
    Primitives,
    build_hamiltonian_direct,
    build_pattern_operators,
    build_primitives,
)
from .patterns import (
    ModelParams,
    PatternBasis,
    PatternDerivatives,
    align_signs,
    coupling_matrix,
    critical_coupling,
    diagonalize_pattern,
    pattern_derivatives,
)
from .spectral import EigenSolution, eigensolve, eigensolve_parity

# Minimum |overlap| for matching an eigenstate to its predecessor.
STATE_OVERLAP_TOL = 0.5

# Energy window treated as one degenerate cluster during tracking: inside
# a cluster the eigensolver's rotation is arbitrary, so weak overlaps are
# an artifact, not an identity loss (superradiant doublets sit at
# gap/|E| ~ 1e-15, far below this).
CLUSTER_RTOL = 1e-9


@dataclass(frozen=True)
class SweepConfig:
    """Sweep definition; bounds are in rescaled units g/g_c."""

    delta: float = 50.0
    n_max: int = 200
    k_levels: int = 4
    g_over_gc_min: float = 0.0
    g_over_gc_max: float = 1.5
    n_points: int = 61
    fd_enabled: bool = True
    parity: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.n_points < 3:
            raise ValueError(f"n_points must be >= 3, got {self.n_points}")
        if not 0 <= self.g_over_gc_min < self.g_over_gc_max:
            raise ValueError(
                f"need 0 <= g_over_gc_min < g_over_gc_max, got "
                f"[{self.g_over_gc_min}, {self.g_over_gc_max}]"
            )
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        # delegate the physical invariants
        ModelParams(self.delta, 0.0, self.n_max, self.k_levels)


@dataclass(frozen=True)
class SweepRecord:
    """Everything computed at one grid point.

    d2_energies holds the central-stencil second derivative of each
    level's energy in g; endpoints are NaN (not extrapolated).
    """

    g: float
    g_over_gc: float
    basis: PatternBasis
    derivatives: PatternDerivatives
    energies: np.ndarray
    observables: tuple[StateObservables, ...]
    d2_energies: np.ndarray

    def __post_init__(self):
        for name in ("energies", "d2_energies"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def second_derivative_series(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Central-stencil d²y/dx² on the interior of a uniform grid.

    Returns len(xs)-2 values for xs[1:-1]; endpoints are omitted.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 3:
        raise ValueError(f"need at least 3 grid points, got {len(xs)}")
    if xs.shape != ys.shape:
        raise ValueError("xs and ys must have the same length")
    steps = np.diff(xs)
    h = steps[0]
    if h <= 0 or not np.allclose(steps, h, rtol=1e-9, atol=0.0):
        raise ValueError("grid must be uniform and increasing")
    return (ys[2:] - 2.0 * ys[1:-1] + ys[:-2]) / (h * h)


def _match_states(
    prev_states: np.ndarray,
    cur_states: np.ndarray,
    cur_energies: np.ndarray,
    g: float,
) -> np.ndarray:
    """Permutation of the first k cur columns maximizing |overlap| with prev.

    cur may carry one extra state beyond k: a weak overlap is accepted
    when the matched state sits in a degenerate energy cluster (the
    solver's rotation within the cluster is arbitrary there); otherwise
    it is a genuine identity loss and raises ContinuityError.
    """
    k = prev_states.shape[1]
    overlaps = np.abs(prev_states.T @ cur_states[:, :k])
    rows, cols = linear_sum_assignment(-overlaps)
    perm = np.empty(k, dtype=int)
    perm[rows] = cols
    for i in range(k):
        matched = overlaps[i, perm[i]]
        if matched >= STATE_OVERLAP_TOL:
            continue
        energy = cur_energies[perm[i]]
        tol = CLUSTER_RTOL * max(1.0, abs(energy))
        clustered = any(
            j != perm[i] and abs(cur_energies[j] - energy) <= tol
            for j in range(len(cur_energies))
        )
        if not clustered:
            raise ContinuityError(
                f"eigenstate identity ambiguous at g = {g} "
                f"(level {i}: matched |overlap| = {matched:.3f} < {STATE_OVERLAP_TOL}); "
                "use a finer grid"
            )
    return perm


def _aligned_bases(
    params: ModelParams, gs: np.ndarray
) -> tuple[list[PatternBasis], list[PatternDerivatives]]:
    bases: list[PatternBasis] = []
    derivs: list[PatternDerivatives] = []
    prev: PatternBasis | None = None
    for g in gs:
        m = coupling_matrix(params, g)
        basis = diagonalize_pattern(m)
        if prev is not None:
            basis = align_signs(prev, basis)
        bases.append(basis)
        derivs.append(pattern_derivatives(m, basis))
        prev = basis
    return bases, derivs


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """One record per grid point, identity-tracked and derivative-filled."""
    gc = critical_coupling(config.delta)
    ratios = np.linspace(config.g_over_gc_min, config.g_over_gc_max, config.n_points)
    gs = ratios * gc
    k = config.k_levels
    params0 = ModelParams(config.delta, 0.0, config.n_max, k)
    primitives = build_primitives_cached(config.n_max)
    bases, derivs = _aligned_bases(params0, gs)
    # one spare state beyond k lets the tracker recognize degenerate
    # clusters at the window edge
    k_solve = min(k + 1, params0.dim)
    # g-independent Hamiltonian parts; base + g*coupling is bitwise equal
    # to build_hamiltonian_direct thanks to left-to-right summation there
    h_base = (
        primitives.number.entries
        + (config.delta / 2.0) * primitives.sigma_x.entries
    )
    h_coupling = (
        primitives.a.entries + primitives.a_dag.entries
    ) @ primitives.sigma_z.entries

    def point_job(i: int) -> tuple[EigenSolution, list[StateObservables]]:
        if config.parity:
            params = replace(params0, g=float(gs[i]))
            solution = eigensolve_parity(params, primitives, k_solve)
        else:
            h = OperatorMatrix(
                dim=primitives.dim,
                entries=h_base + gs[i] * h_coupling,
                label="hamiltonian",
            )
            solution = eigensolve(h, k_solve)
        ops = build_pattern_operators(bases[i], primitives)
        obs = [
            compute_observables(
                solution.states[:, j], solution.energies[j], bases[i], ops, primitives
            )
            for j in range(k)
        ]
        return solution, obs

    indices = range(config.n_points)
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(point_job, indices))
    else:
        results = [point_job(i) for i in indices]

    # Sequential identity tracking: match each point's states to the
    # previous (already-tracked) point by maximal |overlap|.
    energies = [results[0][0].energies[:k].copy()]
    observables = [list(results[0][1])]
    prev_states = results[0][0].states[:, :k]
    for i in range(1, config.n_points):
        solution, obs = results[i]
        perm = _match_states(prev_states, solution.states, solution.energies, float(gs[i]))
        energies.append(solution.energies[perm])
        observables.append([obs[j] for j in perm])
        prev_states = solution.states[:, perm]

    d2 = np.full((config.n_points, config.k_levels), np.nan)
    if config.fd_enabled:
        energy_curves = np.array(energies)  # (n_points, k)
        for level in range(config.k_levels):
            d2[1:-1, level] = second_derivative_series(gs, energy_curves[:, level])

    return [
        SweepRecord(
            g=float(gs[i]),
            g_over_gc=float(ratios[i]),
            basis=bases[i],
            derivatives=derivs[i],
            energies=energies[i],
            observables=tuple(observables[i]),
            d2_energies=d2[i],
        )
        for i in range(config.n_points)
    ]


# Primitive sets are immutable; reuse the most recent one across sweep
# helpers (fresh-solve derivative mode hits many g at equal n_max).
_PRIMS_CACHE: dict[int, Primitives] = {}


def build_primitives_cached(n_max: int) -> Primitives:
    prims = _PRIMS_CACHE.get(n_max)
    if prims is None:
        prims = build_primitives(n_max)
        _PRIMS_CACHE.clear()
        _PRIMS_CACHE[n_max] = prims
    return prims


def locate_transition(records: list[SweepRecord]) -> float:
    """Grid g with the most negative d²E_0/dg² (transition locator).

    Raises TransitionWindowError when the minimum sits on an edge of the
    interior derivative series (sweep window too narrow to bracket it).
    """
    interior = records[1:-1]
    if not interior or np.isnan([r.d2_energies[0] for r in interior]).any():
        raise ValueError("locate_transition needs a sweep with fd_enabled")
    series = np.array([r.d2_energies[0] for r in interior])
    idx = int(np.argmin(series))
    if idx == 0 or idx == len(series) - 1:
        raise TransitionWindowError(
            f"curvature minimum at the window edge (g = {interior[idx].g}); widen the sweep"
        )
    return interior[idx].g


def gap_series(records: list[SweepRecord]) -> np.ndarray:
    """(g, E_1 - E_0) per record, from sorted energies so the gap is >= 0."""
    if records and len(records[0].energies) < 2:
        raise ValueError("gap_series needs k_levels >= 2")
    out = np.empty((len(records), 2))
    for i, rec in enumerate(records):
        low = np.sort(rec.energies)[:2]
        out[i] = (rec.g, low[1] - low[0])
    return out


def ground_energy(delta: float, n_max: int, g: float) -> float:
    """Fresh ground-state energy solve at one coupling."""
    params = ModelParams(delta, g, n_max, 1)
    primitives = build_primitives_cached(n_max)
    h = build_hamiltonian_direct(params, primitives)
    return float(eigensolve(h, 1).energies[0])


def hellmann_feynman_pair(
    delta: float, n_max: int, g: float, h_step: float = 1e-3
) -> tuple[float, float]:
    """(central FD slope of E_0 in g, ⟨ψ_0|(a+a†)σz|ψ_0⟩) at one coupling.

    The finite difference uses fresh solves at g ± h_step (not the sweep
    grid); the expectation is the analytic slope by the Hellmann-Feynman
    relation since ∂H/∂g = (a+a†)σz.
    """
    primitives = build_primitives_cached(n_max)
    params = ModelParams(delta, g, n_max, 1)
    h = build_hamiltonian_direct(params, primitives)
    solution = eigensolve(h, 1)
    state = solution.states[:, 0]
    slope_matrix = (
        primitives.a.entries + primitives.a_dag.entries
    ) @ primitives.sigma_z.entries
    expectation = float(state @ (slope_matrix @ state))
    e_plus = ground_energy(delta, n_max, g + h_step)
    if g >= h_step:
        e_minus = ground_energy(delta, n_max, g - h_step)
        fd = (e_plus - e_minus) / (2.0 * h_step)
    else:
        # central stencil would need g < 0; fall back to forward difference
        fd = (e_plus - float(solution.energies[0])) / h_step
    return fd, expectation
