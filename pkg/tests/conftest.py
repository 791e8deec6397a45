from pathlib import Path

import pytest

import sbbd

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def x22() -> sbbd.DesignMatrix:
    """The 9-block SBBD(3,3,9) golden design, read from its fixture CSV."""
    text = (FIXTURES / "design_3_3_9.csv").read_text()
    return sbbd.matrix_from_csv(text, 3, 3)


@pytest.fixture(scope="session")
def rl4() -> sbbd.BlockDesign:
    """The 4-block (r=3, lambda=2) design on 3 points (not a BIBD)."""
    return sbbd.verify_rl_design(3, [{1, 2}, {2, 3}, {1, 3}, {1, 2, 3}])


@pytest.fixture(scope="session")
def composed_b4(rl4) -> sbbd.ComposedDesign:
    """SBBD(4,3,12) from the 4-block design and OD_1(4,4)."""
    return sbbd.compose(rl4, sbbd.construct_od1(4))


@pytest.fixture(scope="session")
def fano_composed() -> sbbd.ComposedDesign:
    """Regular SBBD(7,7,42) from the 7-point symmetric BIBD and OD_1(7,7)."""
    return sbbd.compose(sbbd.catalog_by_id("fano"), sbbd.construct_od1(7))


@pytest.fixture(scope="session")
def single_edge_blocks() -> sbbd.DesignMatrix:
    """SBBD*(2,2,4): one single-edge block per edge of K_{2,2}.

    Satisfies the counting conditions with Lambda = (1,0,0,0) but fails
    spanning, so it exercises every SBBD*-only code path.
    """
    import numpy as np

    return sbbd.DesignMatrix(2, 2, np.eye(4, dtype=int))
