import numpy as np
import pytest

SWEEP_HEADER = (
    "g,g_over_gc,level,energy,e_pat1,e_pat2,e_pat3,photon,photon_pat1,"
    "photon_pat2,photon_pat3,sigmax,sigmax_pat1,sigmax_pat2,sigmax_pat3,d2e"
)
PATTERNS_HEADER = (
    "g,g_over_gc,lambda1,lambda2,lambda3,u11,u12,u13,u21,u22,u23,"
    "u31,u32,u33,dlam1,dlam2,dlam3,d2lam1,d2lam2,d2lam3"
)
WAVEFUNCTION_HEADER = "g_over_gc,level,m,psi_up,w1_up,w2_up,w3_up,energy"


def _fmt(x):
    return f"{x:.17g}"


@pytest.fixture
def sweep_csv(tmp_path):
    """Two levels over an 11-point grid with self-consistent sums."""
    path = tmp_path / "sweep.csv"
    lines = [SWEEP_HEADER]
    gs = np.linspace(0.0, 5.0, 11)
    for i, g in enumerate(gs):
        for level in (0, 1):
            e_pat = (-25.0 - 0.1 * g * g, 0.3 * g, 0.2 * g + level)
            photon_pat = (0.01 * g, 0.8 * g, 0.02 * g)
            sx_pat = (-0.9, 0.005 * g, -0.05)
            d2e = "nan" if i in (0, len(gs) - 1) else _fmt(-0.2 * g)
            cells = [
                _fmt(g), _fmt(g / 3.68), str(level), _fmt(sum(e_pat)),
                *map(_fmt, e_pat), _fmt(sum(photon_pat)), *map(_fmt, photon_pat),
                _fmt(sum(sx_pat)), *map(_fmt, sx_pat), d2e,
            ]
            lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def patterns_csv(tmp_path):
    path = tmp_path / "patterns.csv"
    lines = [PATTERNS_HEADER]
    for g in np.linspace(0.0, 5.0, 11):
        row = [g, g / 3.68, -12.5 - 0.05 * g, 1.0 - 0.02 * g, 12.5 + 0.07 * g]
        row += [0.7, -0.7, 0.05 * g, 0.0, 0.1 * g, 0.99, 0.7, 0.7, 0.08 * g]
        row += [-0.1 * g, -0.01 * g, 0.11 * g, -0.1, -0.013, 0.113]
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def wavefunction_csv(tmp_path):
    path = tmp_path / "wavefunction.csv"
    lines = [WAVEFUNCTION_HEADER]
    for ratio in (0.5, 1.0, 1.5):
        for level in (0, 1):
            energy = -25.0 - ratio
            for m in range(12):
                psi = np.exp(-((m - 3 * ratio) ** 2) / 4.0)
                w = (0.2 * psi * energy, 0.6 * psi * energy, 0.2 * psi * energy)
                lines.append(
                    ",".join(
                        [_fmt(ratio), str(level), str(m), _fmt(psi), *map(_fmt, w), _fmt(energy)]
                    )
                )
    path.write_text("\n".join(lines) + "\n")
    return path
