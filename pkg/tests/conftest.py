import pytest

from qaskey import families as fam

ACCEPT_SEED = 20260810
N_MAX = 10          # identity checks run n = 1..10
BUILD_N = 11        # polynomials to degree 12, eigenvalues to index 12


@pytest.fixture(scope="session")
def grids():
    """20 admissible seeded parameter points per family, built once."""
    out = {}
    for family in fam.CLI_FAMILIES:
        specs = fam.sample_specs(family, 20, seed=ACCEPT_SEED, n_max=BUILD_N)
        out[family] = [fam.build_family(s, BUILD_N) for s in specs]
    return out
