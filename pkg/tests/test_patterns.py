import numpy as np
import pytest
from mpmath import mp

from oracles import match_values, pattern_eigenvalues_mp
from rabipat import (
    ContinuityError,
    DegenerateSpectrumError,
    ModelParams,
    PatternBasis,
    align_signs,
    coupling_matrix,
    critical_coupling,
    diagonalize_pattern,
    pattern_derivatives,
)

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def params(delta, g=0.0, n_max=10, k=4):
    return ModelParams(delta, g, n_max, k)


class TestCouplingMatrix:
    def test_delta50_g0(self):
        m = coupling_matrix(params(50.0), 0.0)
        expected = [[0.0, 12.5, 0.0], [12.5, 0.0, 0.0], [0.0, 0.0, 1.0]]
        assert np.array_equal(m.entries, expected)

    def test_delta0_g0(self):
        m = coupling_matrix(params(0.0), 0.0)
        expected = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
        assert np.array_equal(m.entries, expected)

    def test_delta50_g2(self):
        m = coupling_matrix(params(50.0), 2.0)
        expected = [[0.0, 12.5, 0.0], [12.5, 0.0, 2.0], [0.0, 2.0, 1.0]]
        assert np.array_equal(m.entries, expected)

    def test_rejects_negative_g(self):
        with pytest.raises(ValueError):
            coupling_matrix(params(50.0), -0.1)


class TestModelParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(delta=-1.0, g=0.0, n_max=10, k_levels=1),
            dict(delta=1.0, g=-0.5, n_max=10, k_levels=1),
            dict(delta=1.0, g=0.0, n_max=0, k_levels=1),
            dict(delta=1.0, g=0.0, n_max=10, k_levels=0),
            dict(delta=1.0, g=0.0, n_max=10, k_levels=23),
        ],
    )
    def test_invariants_rejected(self, kwargs):
        with pytest.raises(ValueError):
            ModelParams(**kwargs)

    def test_dim(self):
        assert ModelParams(1.0, 0.0, 200, 4).dim == 402


class TestDiagonalize:
    def test_delta50_g0_labels_and_rows(self):
        basis = diagonalize_pattern(coupling_matrix(params(50.0), 0.0))
        assert basis.eigenvalues == pytest.approx([-12.5, 1.0, 12.5], abs=1e-12)
        expected_rows = np.array(
            [
                [INV_SQRT2, -INV_SQRT2, 0.0],
                [0.0, 0.0, 1.0],
                [INV_SQRT2, INV_SQRT2, 0.0],
            ]
        )
        assert np.max(np.abs(basis.eigenvectors - expected_rows)) < 1e-12
        assert not basis.degenerate

    def test_small_delta_keeps_photon_label(self):
        # ascending order would call +Δ/4 the middle eigenvalue for Δ < 4;
        # the photon-dominant row must stay pattern 2 regardless
        basis = diagonalize_pattern(coupling_matrix(params(2.0), 0.0))
        assert basis.eigenvalues == pytest.approx([-0.5, 1.0, 0.5], abs=1e-12)
        assert abs(basis.eigenvectors[1, 2]) == pytest.approx(1.0, abs=1e-12)

    def test_spectral_identity_random(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            delta = float(rng.uniform(0.0, 80.0))
            g = float(rng.uniform(0.0, 8.0))
            m = coupling_matrix(params(delta), g)
            basis = diagonalize_pattern(m)
            lam, u = basis.eigenvalues, basis.eigenvectors
            rebuilt = u.T @ np.diag(lam) @ u
            assert np.max(np.abs(rebuilt - m.entries)) < 1e-12
            assert np.max(np.abs(u @ u.T - np.eye(3))) < 1e-12
            assert np.sum(lam) == pytest.approx(1.0, abs=1e-12)

    def test_characteristic_cubic_residual_delta50_g2(self):
        m = coupling_matrix(params(50.0), 2.0)
        basis = diagonalize_pattern(m)
        e = m.entries
        # coefficients assembled independently: trace, principal minors, det
        trace = e[0, 0] + e[1, 1] + e[2, 2]
        minors = (
            e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0]
            + e[0, 0] * e[2, 2] - e[0, 2] * e[2, 0]
            + e[1, 1] * e[2, 2] - e[1, 2] * e[2, 1]
        )
        det = (
            e[0, 0] * (e[1, 1] * e[2, 2] - e[1, 2] * e[2, 1])
            - e[0, 1] * (e[1, 0] * e[2, 2] - e[1, 2] * e[2, 0])
            + e[0, 2] * (e[1, 0] * e[2, 1] - e[1, 1] * e[2, 0])
        )
        for lam in basis.eigenvalues:
            residual = lam**3 - trace * lam**2 + minors * lam - det
            assert abs(residual) < 1e-10

    def test_degenerate_flagged(self):
        basis = diagonalize_pattern(coupling_matrix(params(0.0), 0.0))
        assert basis.degenerate

    def test_rejects_asymmetric(self):
        bad = coupling_matrix(params(50.0), 1.0)
        entries = bad.entries.copy()
        entries[0, 1] += 1e-3
        with pytest.raises(ValueError):
            diagonalize_pattern(type(bad)(entries=entries, g_value=1.0))


class TestAlignSigns:
    def test_identity(self):
        basis = diagonalize_pattern(coupling_matrix(params(50.0), 1.0))
        aligned = align_signs(basis, basis)
        assert np.array_equal(aligned.eigenvectors, basis.eigenvectors)
        assert np.array_equal(aligned.eigenvalues, basis.eigenvalues)

    def test_restores_flipped_row(self):
        basis = diagonalize_pattern(coupling_matrix(params(50.0), 1.0))
        rows = basis.eigenvectors.copy()
        rows[1] = -rows[1]
        flipped = PatternBasis(eigenvalues=basis.eigenvalues, eigenvectors=rows, g_value=1.0)
        aligned = align_signs(basis, flipped)
        assert np.max(np.abs(aligned.eigenvectors - basis.eigenvectors)) == 0.0

    def test_relabels_permuted_rows(self):
        basis = diagonalize_pattern(coupling_matrix(params(50.0), 1.0))
        perm = [2, 0, 1]
        shuffled = PatternBasis(
            eigenvalues=basis.eigenvalues[perm],
            eigenvectors=basis.eigenvectors[perm],
            g_value=1.0,
        )
        aligned = align_signs(basis, shuffled)
        assert np.array_equal(aligned.eigenvalues, basis.eigenvalues)
        assert np.array_equal(aligned.eigenvectors, basis.eigenvectors)

    def test_ambiguous_overlap_raises(self):
        basis = diagonalize_pattern(coupling_matrix(params(50.0), 1.0))
        # a genuine orthonormal basis always overlaps one row above 1/sqrt(3);
        # a synthetic non-orthonormal one exercises the coarse-grid guard
        rows = np.full((3, 3), 0.3)
        fake = PatternBasis(eigenvalues=basis.eigenvalues, eigenvectors=rows, g_value=1.0)
        with pytest.raises(ContinuityError):
            align_signs(basis, fake)

    def test_sweep_continuity_201_points(self):
        gc = critical_coupling(50.0)
        p = params(50.0)
        prev = None
        max_jump = 0.0
        for ratio in np.linspace(0.0, 1.5, 201):
            basis = diagonalize_pattern(coupling_matrix(p, ratio * gc))
            if prev is not None:
                basis = align_signs(prev, basis)
                max_jump = max(
                    max_jump, float(np.max(np.abs(basis.eigenvectors - prev.eigenvectors)))
                )
            prev = basis
        assert max_jump < 0.1


class TestCriticalCoupling:
    def test_delta0(self):
        assert critical_coupling(0.0) == pytest.approx(np.sqrt(2.0), abs=1e-15)

    def test_delta50_vs_high_precision(self):
        mp.dps = 50
        exact = float(mp.sqrt(1 + mp.sqrt(1 + mp.mpf(50) ** 2 / 16)))
        assert critical_coupling(50.0) == pytest.approx(exact, abs=1e-14)
        assert critical_coupling(50.0) == pytest.approx(3.6796652298795407, abs=1e-12)

    def test_large_delta_asymptote(self):
        delta = 1e8
        ratio = critical_coupling(delta) / np.sqrt(delta / 4.0)
        assert ratio == pytest.approx(1.0, abs=1e-3)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            critical_coupling(-1.0)


class TestPatternDerivatives:
    def test_g0_photon_slope_vanishes(self):
        m = coupling_matrix(params(50.0), 0.0)
        derivs = pattern_derivatives(m, diagonalize_pattern(m))
        assert abs(derivs.dlambda[1]) < 1e-14

    def test_g0_second_derivative_hand_value(self):
        # perturbation sum by hand: 2[(1/2)/(1-(-12.5)) + (1/2)/(1-12.5)]
        hand = 2.0 * (0.5 / 13.5 - 0.5 / 11.5)
        m = coupling_matrix(params(50.0), 0.0)
        derivs = pattern_derivatives(m, diagonalize_pattern(m))
        assert derivs.d2lambda[1] == pytest.approx(hand, abs=1e-12)
        assert derivs.d2lambda[1] == pytest.approx(-0.012882447665056362, abs=1e-12)

    def test_g0_second_derivative_vs_high_precision_fd(self):
        h = 1e-4
        m = coupling_matrix(params(50.0), 0.0)
        basis = diagonalize_pattern(m)
        derivs = pattern_derivatives(m, basis)
        up = match_values(basis.eigenvalues, pattern_eigenvalues_mp(50.0, h))
        dn = match_values(basis.eigenvalues, pattern_eigenvalues_mp(50.0, -h))
        # M(Δ, -g) and M(Δ, g) are sign-conjugate, so the eigenvalues at -h
        # equal those at +h; the stencil still applies
        mid = match_values(basis.eigenvalues, pattern_eigenvalues_mp(50.0, 0.0))
        fd2 = [float((u - 2 * c + d) / (h * h)) for u, c, d in zip(up, mid, dn)]
        assert fd2[1] == pytest.approx(derivs.d2lambda[1], abs=1e-6)

    def test_random_points_match_fd(self):
        rng = np.random.default_rng(7)
        h = 1e-4
        checked = 0
        while checked < 20:
            delta = float(rng.uniform(1.0, 60.0))
            g = float(rng.uniform(0.1, 6.0))
            m = coupling_matrix(params(delta), g)
            basis = diagonalize_pattern(m)
            if float(np.min(np.diff(np.sort(basis.eigenvalues)))) < 0.1:
                continue
            checked += 1
            derivs = pattern_derivatives(m, basis)
            # first derivatives: plain float central differences
            up = align_signs(basis, diagonalize_pattern(coupling_matrix(params(delta), g + h)))
            dn = align_signs(basis, diagonalize_pattern(coupling_matrix(params(delta), g - h)))
            fd1 = (up.eigenvalues - dn.eigenvalues) / (2 * h)
            fdu = (up.eigenvectors - dn.eigenvectors) / (2 * h)
            assert np.max(np.abs(fd1 - derivs.dlambda)) < 1e-6
            assert np.max(np.abs(fdu - derivs.dvectors)) < 1e-6
            # second derivative: 50-digit eigenvalues remove the stencil's
            # float roundoff (~4 eps |lambda| / h^2, comparable to 1e-6)
            up_mp = match_values(basis.eigenvalues, pattern_eigenvalues_mp(delta, g + h))
            mid_mp = match_values(basis.eigenvalues, pattern_eigenvalues_mp(delta, g))
            dn_mp = match_values(basis.eigenvalues, pattern_eigenvalues_mp(delta, g - h))
            fd2 = np.array(
                [float((u - 2 * c + d) / (h * h)) for u, c, d in zip(up_mp, mid_mp, dn_mp)]
            )
            assert np.max(np.abs(fd2 - derivs.d2lambda)) < 1e-6

    def test_refuses_degenerate(self):
        m = coupling_matrix(params(0.0), 0.0)
        basis = diagonalize_pattern(m)
        with pytest.raises(DegenerateSpectrumError):
            pattern_derivatives(m, basis)
