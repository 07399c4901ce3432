"""Field arithmetic layer: exact values first, then randomized cross-checks
against the determinant-based oracle in naive.py."""

import random

import pytest

from matroidlab import gf
from matroidlab.gf import GFMatrix

from .naive import naive_rank, random_matrix


def test_reduce_balanced_entries():
    m = gf.reduce([[-1]], 3)
    assert m.rows == ((2,),)
    m5 = gf.reduce([[-1, -2, 7]], 5)
    assert m5.rows == ((4, 3, 2),)


def test_signed_rows_roundtrip():
    m = gf.reduce([[0, 1, 2], [2, 1, 0]], 3)
    assert m.signed_rows() == ((0, 1, -1), (-1, 1, 0))
    m5 = gf.reduce([[0, 1, 2, 3, 4]], 5)
    assert m5.signed_rows() == ((0, 1, 2, -2, -1),)


def test_field_guard():
    with pytest.raises(ValueError):
        GFMatrix(7, [[1]])
    with pytest.raises(ValueError):
        GFMatrix(2, [[1]])


def test_empty_shapes():
    e = GFMatrix(3, [], ncols=4)
    assert e.nrows == 0 and e.ncols == 4
    assert e.rank() == 0
    tall = GFMatrix(3, [[], []], ncols=None)
    assert tall.nrows == 2 and tall.ncols == 0
    assert tall.rank() == 0


def test_identity_rank_and_pivots():
    for p in (3, 5):
        I4 = GFMatrix.identity(p, 4)
        assert I4.rank() == 4
        assert I4.pivot_columns() == (0, 1, 2, 3)
        r, piv = I4.rref()
        assert r == I4 and piv == (0, 1, 2, 3)


def test_known_rank_with_pivots():
    # 4x9 block matrix whose first pivot block sits in columns 0,1,2,5
    m = gf.reduce(
        [
            [0, 0, 0, 0, 0, 1, 1, 1, 1],
            [1, 0, 0, 1, 1, 0, 0, 0, 1],
            [0, 1, 0, -1, 0, 0, -1, 0, 1],
            [0, 0, 1, 0, -1, 0, 0, -1, 1],
        ],
        3,
    )
    assert m.rank() == 4
    assert m.pivot_columns() == (0, 1, 2, 5)
    assert naive_rank(m) == 4


def test_rref_is_idempotent_and_rank_drops():
    m = gf.reduce([[1, 2, 0], [2, 2, 0], [0, 0, 0]], 3)
    r, piv = m.rref()
    assert piv == (0, 1)
    assert m.rank() == 2
    r2, piv2 = r.rref()
    assert r2 == r and piv2 == piv


def test_column_ops():
    m = gf.reduce([[1, 2], [0, 1]], 3)
    assert m.scale_col(1, 2).columns == ((1, 0), (1, 2))
    with pytest.raises(ValueError):
        m.scale_col(0, 0)
    assert m.column(1) == (2, 1)
    assert m.take_cols([1, 0]).columns == ((2, 1), (1, 0))
    assert m.delete_cols([0]).ncols == 1
    assert m.permute_cols([1, 0]) == m.take_cols([1, 0])


def test_row_ops():
    m = gf.reduce([[1, 0], [1, 1], [0, 2]], 3)
    assert m.take_rows([2, 0]).rows == ((0, 2), (1, 0))
    assert m.delete_rows([1]).nrows == 2
    assert m.add_row_to(0, 1, coeff=2).rows[1] == (0, 1)
    bumped = m.append_rows([[2, 2]])
    assert bumped.nrows == 4 and bumped.rows[3] == (2, 2)
    with pytest.raises(ValueError):
        m.add_row_to(0, 0)


def test_stacking():
    a = gf.reduce([[1], [0]], 3)
    b = gf.reduce([[2], [1]], 3)
    assert gf.hstack(a, b).rows == ((1, 2), (0, 1))
    assert gf.vstack(a.transpose(), b.transpose()).rows == ((1, 0), (2, 1))
    with pytest.raises(ValueError):
        gf.hstack(a, gf.reduce([[1]], 5))


def test_from_columns_and_transpose():
    m = GFMatrix.from_columns(3, [(1, 0), (2, 1), (0, 2)])
    assert m.rows == ((1, 2, 0), (0, 1, 2))
    assert m.transpose().transpose() == m
    empty = GFMatrix.from_columns(3, [], nrows=2)
    assert empty.nrows == 2 and empty.ncols == 0


def test_support_and_weight():
    assert gf.support((0, 2, 0, 1)) == frozenset({1, 3})
    assert gf.weight((0, 2, 0, 1)) == 2
    assert gf.weight(()) == 0


def test_text_roundtrip(tmp_path):
    m = gf.reduce([[0, 1, 2], [2, 2, 0]], 3)
    text = gf.to_text(m)
    assert gf.from_text(text) == m
    path = tmp_path / "m.gfm"
    gf.write_file(m, str(path))
    assert gf.read_file(str(path)) == m


def test_text_parser_tolerates_comments_and_signed_entries():
    text = "# generated\nfield 3\nrows 1\n# body next\ncols 3\n-1 4 0\n"
    assert gf.from_text(text).rows == ((2, 1, 0),)
    with pytest.raises(ValueError):
        gf.from_text("field 3\nrows 2\ncols 1\n1\n")


def test_rank_matches_naive_randomized():
    rng = random.Random(90210)
    for _ in range(60):
        p = rng.choice((3, 5))
        m = random_matrix(rng, p, rng.randint(1, 4), rng.randint(1, 5))
        assert m.rank() == naive_rank(m)


def test_rank_invariant_under_row_and_column_moves():
    rng = random.Random(777)
    for _ in range(40):
        p = rng.choice((3, 5))
        m = random_matrix(rng, p, 4, 6)
        r = m.rank()
        i, j = rng.sample(range(4), 2)
        assert m.add_row_to(i, j, rng.randrange(1, p)).rank() == r
        assert m.scale_col(rng.randrange(6), rng.randrange(1, p)).rank() == r
        order = list(range(6))
        rng.shuffle(order)
        assert m.permute_cols(order).rank() == r
        assert m.transpose().rank() == r
