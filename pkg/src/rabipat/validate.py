"""Self-validation suite behind the `rabipat validate` command.

Each check is an exact identity, an analytic limit or an independent
cross-check; all tolerances are fixed here, none are tuned per run.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .observables import compute_observables
from .operators import (
    build_hamiltonian_direct,
    build_hamiltonian_patterns,
    build_pattern_operators,
)
from .patterns import (
    ModelParams,
    align_signs,
    coupling_matrix,
    critical_coupling,
    diagonalize_pattern,
    pattern_derivatives,
)
from .sweep import (
    SweepConfig,
    build_primitives_cached,
    gap_series,
    ground_energy,
    hellmann_feynman_pair,
    run_sweep,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_dual_build(rng: np.random.Generator, inject_delta_mismatch: float = 0.0) -> CheckResult:
    """H from the pattern sum equals H from the direct build, entrywise."""
    tol = 1e-12
    worst = 0.0
    for _ in range(20):
        delta = float(rng.uniform(0.0, 60.0))
        g = float(rng.uniform(0.0, 6.0))
        n_max = int(rng.choice([1, 5, 50]))
        params = ModelParams(delta, g, n_max, 1)
        prims = build_primitives_cached(n_max)
        direct = build_hamiltonian_direct(params, prims)
        basis = diagonalize_pattern(
            coupling_matrix(replace(params, delta=delta + inject_delta_mismatch), g)
        )
        patterned = build_hamiltonian_patterns(basis, prims)
        worst = max(worst, float(np.max(np.abs(patterned.entries - direct.entries))))
    return CheckResult(
        "dual-build-identity", worst < tol, f"max |H_pattern - H_direct| = {worst:.3e} (tol {tol:g})"
    )


def check_g0_analytics(n_max: int) -> CheckResult:
    """Decoupled-limit values at Δ=50, g=0."""
    config = SweepConfig(delta=50.0, n_max=n_max, k_levels=4, n_points=3,
                         g_over_gc_min=0.0, g_over_gc_max=0.1)
    records = run_sweep(config)
    rec = records[0]
    obs0 = rec.observables[0]
    problems = []
    expected = np.array([-25.0, -24.0, -23.0, -22.0])
    if np.max(np.abs(rec.energies - expected)) > 1e-9:
        problems.append(f"energies {rec.energies}")
    if np.max(np.abs(obs0.pattern_energies - np.array([-25.0, 0.0, 0.0]))) > 1e-9:
        problems.append(f"pattern energies {obs0.pattern_energies}")
    if abs(obs0.photon_total) > 1e-12:
        problems.append(f"photon {obs0.photon_total}")
    if abs(obs0.sigma_x_total + 1.0) > 1e-12:
        problems.append(f"sigma_x {obs0.sigma_x_total}")
    gap = gap_series(records)[0, 1]
    if abs(gap - 1.0) > 1e-10:
        problems.append(f"gap {gap}")
    detail = "; ".join(problems) if problems else "all decoupled-limit values reproduced"
    return CheckResult("g0-analytics", not problems, detail)


def check_pattern_derivative_fd(rng: np.random.Generator) -> CheckResult:
    """Analytic 3x3 eigen-derivatives vs central differences (h=1e-4)."""
    tol = 1e-6
    h = 1e-4
    eps = float(np.finfo(float).eps)
    worst = 0.0
    count = 0
    while count < 20:
        delta = float(rng.uniform(1.0, 60.0))
        g = float(rng.uniform(0.1, 6.0))
        params = ModelParams(delta, g, 1, 1)
        basis = diagonalize_pattern(coupling_matrix(params, g))
        lam = np.sort(basis.eigenvalues)
        if np.min(np.diff(lam)) < 0.1:
            continue
        count += 1
        derivs = pattern_derivatives(coupling_matrix(params, g), basis)
        up = align_signs(basis, diagonalize_pattern(coupling_matrix(params, g + h)))
        dn = align_signs(basis, diagonalize_pattern(coupling_matrix(params, g - h)))
        fd1 = (up.eigenvalues - dn.eigenvalues) / (2 * h)
        fd2 = (up.eigenvalues - 2 * basis.eigenvalues + dn.eigenvalues) / (h * h)
        fdu = (up.eigenvectors - dn.eigenvectors) / (2 * h)
        worst = max(worst, float(np.max(np.abs(fd1 - derivs.dlambda))))
        worst = max(worst, float(np.max(np.abs(fdu - derivs.dvectors))))
        # the second-difference stencil amplifies eigenvalue roundoff by
        # ~4/h^2; subtract that floor from the comparison budget
        floor = 8.0 * eps * float(np.max(np.abs(lam))) / (h * h)
        err2 = float(np.max(np.abs(fd2 - derivs.d2lambda)))
        worst = max(worst, max(err2 - floor, 0.0))
    return CheckResult(
        "pattern-derivative-fd", worst < tol, f"max |analytic - fd| = {worst:.3e} (tol {tol:g})"
    )


def check_sweep_sum_rules(n_max: int) -> CheckResult:
    """Pattern sums equal totals for energy, photon and spin flip, per record."""
    tol = 1e-9
    config = SweepConfig(delta=50.0, n_max=n_max, k_levels=4, n_points=61)
    records = run_sweep(config)
    worst = 0.0
    for rec in records:
        for obs in rec.observables:
            worst = max(worst, abs(float(np.sum(obs.pattern_energies)) - obs.energy))
            worst = max(worst, abs(float(np.sum(obs.photon_by_pattern)) - obs.photon_total))
            worst = max(worst, abs(float(np.sum(obs.sigma_x_by_pattern)) - obs.sigma_x_total))
    return CheckResult(
        "sweep-sum-rules", worst < tol,
        f"61-point sweep, 4 levels: max sum-rule violation = {worst:.3e} (tol {tol:g})"
    )


def check_hellmann_feynman(n_max: int) -> CheckResult:
    """FD slope of E_0(g) vs ⟨(a+a†)σz⟩ away from the degenerate regime."""
    tol = 1e-5
    gc = critical_coupling(50.0)
    worst = 0.0
    for ratio in np.linspace(0.1, 0.9, 10):
        fd, expectation = hellmann_feynman_pair(50.0, n_max, float(ratio * gc))
        worst = max(worst, abs(fd - expectation))
    return CheckResult(
        "hellmann-feynman", worst < tol, f"max |fd - expectation| = {worst:.3e} (tol {tol:g})"
    )


def check_truncation_convergence(n_max: int, n_max_check: int) -> CheckResult:
    """E_0 stability under a larger Fock cutoff at g/g_c = 1.5."""
    tol = 1e-8
    g = 1.5 * critical_coupling(50.0)
    e_base = ground_energy(50.0, n_max, g)
    e_check = ground_energy(50.0, n_max_check, g)
    diff = abs(e_base - e_check)
    return CheckResult(
        "truncation-convergence", diff < tol,
        f"|E0(N={n_max}) - E0(N={n_max_check})| = {diff:.3e} at g/gc=1.5 (tol {tol:g})"
    )


def run_validation(
    n_max: int = 200,
    n_max_check: int = 300,
    inject_delta_mismatch: float = 0.0,
    seed: int = 20230517,
) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_dual_build(rng, inject_delta_mismatch),
        check_g0_analytics(n_max),
        check_pattern_derivative_fd(rng),
        check_sweep_sum_rules(n_max),
        check_hellmann_feynman(n_max),
        check_truncation_convergence(n_max, n_max_check),
    ]
