import pytest

from rabipat import SweepConfig, run_sweep


@pytest.fixture(scope="session")
def sweep61():
    """The default sweep: Δ=50, N=200, 4 levels, 61 points over 0..1.5 g_c."""
    return run_sweep(SweepConfig(delta=50.0, n_max=200, k_levels=4, n_points=61))
