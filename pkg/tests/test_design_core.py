import numpy as np
import pytest

import sbbd
from sbbd import (
    DesignMatrix,
    DimensionError,
    FormatError,
    SBBlock,
    blocks_from_json,
    blocks_to_json,
    blocks_to_matrix,
    edge_column,
    matrix_from_csv,
    matrix_to_blocks,
    matrix_to_csv,
    submatrix_partition,
)


def test_column_indexing_law_exhaustive():
    # edge (i, j) owns column (i-1)*v2 + j, checked for every v1, v2 <= 6
    for v1 in range(1, 7):
        for v2 in range(1, 7):
            cols = set()
            for i in range(1, v1 + 1):
                for j in range(1, v2 + 1):
                    col = edge_column(i, j, v2)
                    assert col == (i - 1) * v2 + j
                    cols.add(col)
            assert cols == set(range(1, v1 * v2 + 1))


def test_single_block_all_edges_is_all_ones_row():
    edges = frozenset((i, j) for i in range(1, 3) for j in range(1, 4))
    x = blocks_to_matrix([SBBlock(2, 3, edges)])
    assert x.matrix.shape == (1, 6)
    assert (x.matrix == 1).all()


def test_single_edge_block_hits_column_one():
    x = blocks_to_matrix([SBBlock(2, 3, frozenset({(1, 1)}))])
    expected = np.zeros(6, dtype=int)
    expected[0] = 1
    assert (x.matrix[0] == expected).all()


def test_fixture_blocks_have_six_edges(x22):
    blocks = matrix_to_blocks(x22)
    assert len(blocks) == 9
    assert all(len(b.edges) == 6 for b in blocks)
    assert blocks_to_matrix(blocks).matrix.tolist() == x22.matrix.tolist()


def test_zero_row_decodes_to_empty_block():
    x = DesignMatrix(2, 2, np.zeros((1, 4), dtype=int))
    (block,) = matrix_to_blocks(x)
    assert block.edges == frozenset()


def test_random_roundtrip_matrix_blocks_matrix():
    rng = np.random.default_rng(20240)
    for _ in range(20):
        m = rng.integers(0, 2, size=(5, 6))
        x = DesignMatrix(2, 3, m)
        back = blocks_to_matrix(matrix_to_blocks(x))
        assert np.array_equal(back.matrix, x.matrix)
        assert (back.v1, back.v2) == (2, 3)


def test_roundtrip_blocks_matrix_blocks():
    rng = np.random.default_rng(7)
    all_edges = [(i, j) for i in range(1, 4) for j in range(1, 4)]
    blocks = []
    for _ in range(6):
        take = rng.integers(0, 2, size=9).astype(bool)
        blocks.append(SBBlock(3, 3, frozenset(e for e, t in zip(all_edges, take) if t)))
    assert matrix_to_blocks(blocks_to_matrix(blocks)) == blocks


def test_partition_panels_and_identity(x22):
    panels = submatrix_partition(x22)
    assert len(panels) == 3
    assert all(p.shape == (9, 3) for p in panels)
    assert np.array_equal(np.hstack(panels), x22.matrix)


def test_partition_v1_equals_one():
    x = DesignMatrix(1, 4, np.array([[1, 0, 1, 1]]))
    (panel,) = submatrix_partition(x)
    assert np.array_equal(panel, x.matrix)


def test_mismatched_blocks_rejected():
    with pytest.raises(DimensionError):
        blocks_to_matrix(
            [SBBlock(2, 2, frozenset({(1, 1)})), SBBlock(2, 3, frozenset({(1, 1)}))]
        )
    with pytest.raises(DimensionError):
        blocks_to_matrix([])


def test_edge_out_of_range_rejected():
    with pytest.raises(DimensionError):
        SBBlock(2, 2, frozenset({(3, 1)}))


def test_non_binary_matrix_rejected():
    with pytest.raises(FormatError):
        DesignMatrix(2, 2, np.array([[0, 1, 2, 0]]))


def test_matrix_is_read_only(x22):
    with pytest.raises(ValueError):
        x22.matrix[0, 0] = 1


def test_csv_roundtrip(x22):
    text = matrix_to_csv(x22)
    assert text.splitlines()[0] == "0,1,1,1,1,0,1,1,0"
    back = matrix_from_csv(text, 3, 3)
    assert np.array_equal(back.matrix, x22.matrix)


def test_csv_rejects_ragged_and_nonint():
    with pytest.raises(FormatError):
        matrix_from_csv("0,1\n0", 1, 2)
    with pytest.raises(FormatError):
        matrix_from_csv("0,x", 1, 2)


def test_block_json_roundtrip(x22):
    blocks = matrix_to_blocks(x22)
    text = blocks_to_json(blocks)
    back = blocks_from_json(text)
    assert back == blocks
    assert blocks_to_matrix(back).matrix.tolist() == x22.matrix.tolist()


def test_parameters_coefficients():
    p = sbbd.SbbdParameters(3, 3, 9, mu=6, lambda12=3, lambda21=4, lambda22=4)
    assert (p.a, p.b, p.c, p.d) == (3, 3, 0, 4)
    assert p.lam == (6, 3, 4, 4)
