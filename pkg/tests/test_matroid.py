"""Matroid layer: minors, duality, simplification, isomorphism, embedding,
minor search.  Structure checks run against the brute-force oracles."""

import itertools
import random

import pytest

from matroidlab import gf
from matroidlab.gf import GFMatrix
from matroidlab.matroid import (
    LinearMatroid,
    MinorWitness,
    find_embedding,
    find_isomorphism,
    has_minor,
    has_u24_minor,
    is_isomorphic,
    is_restriction_of,
    vector_matroid,
    verify_bijection,
    verify_embedding,
    verify_witness,
)

from .naive import (
    naive_has_minor,
    naive_is_isomorphic,
    random_matrix,
)


def m_of(rows, p=3, labels=None):
    return LinearMatroid(gf.reduce(rows, p), labels)


def mk4():
    # [I3 | D3]: graphic, rank 3 on 6 elements
    return m_of([[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]])


def u24():
    return m_of([[1, 0, 1, 1], [0, 1, 1, -1]])


def test_labels_default_and_validation():
    m = mk4()
    assert m.labels == (0, 1, 2, 3, 4, 5)
    assert m.rank() == 3 and m.size == 6
    with pytest.raises(ValueError):
        LinearMatroid(GFMatrix.identity(3, 2), [7])
    with pytest.raises(ValueError):
        LinearMatroid(GFMatrix.identity(3, 2), [7, 7])
    with pytest.raises(KeyError):
        m.rank({99})


def test_subset_rank():
    m = mk4()
    assert m.rank(set()) == 0
    assert m.rank({0, 1}) == 2
    # triangle: e0-e1 style columns 3,4,5 pairwise dependent as a triple
    assert m.rank({3, 4, 5}) == 2
    assert m.is_independent({0, 1, 2})
    assert not m.is_independent({3, 4, 5})


def test_delete_restrict():
    m = mk4()
    d = m.delete({3, 5})
    assert d.labels == (0, 1, 2, 4)
    assert d.rank() == 3
    r = m.restrict({0, 4})
    assert r.labels == (0, 4) and r.rank() == 2


def test_contract_basics():
    m = mk4()
    assert m.contract(set()).labels == m.labels
    c = m.contract({0})
    assert c.rank() == 2 and c.labels == (1, 2, 3, 4, 5)
    # columns 3,4 were e0-e1, e0-e2; contracting element 0 makes them parallel
    # to the remaining identity columns
    assert c.rank({3}) == 1
    # contracting a loop equals deleting it
    loopy = m_of([[1, 0], [0, 0]])
    assert loopy.contract({1}).rank() == loopy.delete({1}).rank() == 1


def test_contract_rank_formula():
    m = mk4()
    for k in range(3):
        for t in itertools.combinations(m.labels, k):
            assert m.contract(t).rank() == m.rank() - m.rank(t)


def test_loops_parallel_simplify():
    rows = [[1, 0, 2, 0, 1], [0, 0, 0, 0, 1], [2, 0, 1, 0, 0]]
    m = m_of(rows)  # col1 and col3 are loops; col2 = 2*col0
    assert m.loops() == (1, 3)
    assert m.parallel_classes() == ((0, 2), (4,))
    s = m.simplify()
    assert s.labels == (0, 4)
    assert s.rank() == m.rank()
    assert s.simplify().labels == s.labels
    assert s.is_simple() and not m.is_simple()


def test_dual_shapes_and_involution():
    m = mk4()
    d = m.dual()
    assert d.labels == m.labels
    assert d.rank() == m.size - m.rank()
    dd = d.dual()
    iso = find_isomorphism(m, dd)
    assert iso is not None and verify_bijection(m, dd, iso)
    # free matroid dualizes to all-loops
    free = LinearMatroid(GFMatrix.identity(3, 3))
    assert free.dual().rank() == 0 and free.dual().size == 3
    assert free.dual().dual().rank() == 3


def test_dual_standard_form():
    # [I2 | D] should dualize to [-D^T | I]
    m = m_of([[1, 0, 1, 2], [0, 1, 1, 1]])
    d = m.dual()
    assert d.matrix.rows == ((2, 2, 1, 0), (1, 2, 0, 1))


def test_iso_reflexive_and_field_change():
    m = mk4()
    iso = find_isomorphism(m, m)
    assert iso == {x: x for x in m.labels}
    m5 = m_of([[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]], p=5)
    assert is_isomorphic(m, m5)
    assert not is_isomorphic(m, u24())


def test_iso_detects_distinct_matroids():
    # M(K4) vs U{3,6}: same size and rank, different structure
    u36 = m_of([[1, 0, 0, 1, 1, 1], [0, 1, 0, 1, 2, 1], [0, 0, 1, 1, 1, 2]])
    assert u36.rank({3, 4, 5}) == 3
    assert not is_isomorphic(mk4(), u36)


def test_iso_matches_naive_on_random_pairs():
    rng = random.Random(4242)
    hits = 0
    for _ in range(40):
        a = random_matrix(rng, 3, 3, rng.randint(4, 6))
        b = random_matrix(rng, 3, 3, a.ncols)
        ma, mb = LinearMatroid(a), LinearMatroid(b)
        got = is_isomorphic(ma, mb)
        assert got == naive_is_isomorphic(ma, mb)
        hits += got
    # permuted/scaled copies must always come back isomorphic
    for _ in range(15):
        a = random_matrix(rng, 3, 4, 6)
        order = list(range(6))
        rng.shuffle(order)
        b = a.permute_cols(order)
        for j in range(6):
            b = b.scale_col(j, rng.randrange(1, 3))
        iso = find_isomorphism(LinearMatroid(a), LinearMatroid(b))
        assert iso is not None
        assert verify_bijection(LinearMatroid(a), LinearMatroid(b), iso)


def test_embedding_identity_and_subsets():
    m = mk4()
    emb = find_embedding(m, m)
    assert emb is not None and verify_embedding(m, m, emb)
    tri = m.restrict({3, 4, 5})
    emb = find_embedding(tri, m)
    assert emb is not None and verify_embedding(tri, m, emb)
    # U24 has a 4-point line; M(K4) does not
    assert not is_restriction_of(u24(), mk4())


def test_embedding_respects_rank_not_just_size():
    # rank-2 uniform into rank-3 uniform-ish: image must stay rank 2
    line3 = m_of([[1, 0, 1], [0, 1, 1]])
    m = mk4()
    emb = find_embedding(line3, m)
    assert emb is not None
    assert m.rank(set(emb.values())) == 2


def test_minor_witness_trivial_and_verify():
    m = mk4()
    w = has_minor(m, m)
    assert w == MinorWitness((), (), tuple((x, x) for x in m.labels))
    assert verify_witness(m, m, w)


def test_minor_search_with_and_without_hint():
    m = mk4()
    tri = m_of([[1, 1, 0], [0, 1, 1]])  # M(K3)
    w = has_minor(m, tri)
    assert w is not None and verify_witness(m, tri, w)
    w2 = has_minor(m, tri, hint={0})
    assert w2 is not None and verify_witness(m, tri, w2)
    assert w2.contracted == (0,)
    assert has_minor(mk4(), u24()) is None


def test_minor_rejects_nonsimple_target():
    with pytest.raises(ValueError):
        has_minor(mk4(), m_of([[1, 2], [0, 0]]))


def test_minor_matches_naive_on_random_instances():
    rng = random.Random(1331)
    targets = [u24(), m_of([[1, 0, 1], [0, 1, 1]])]
    for _ in range(30):
        m = LinearMatroid(random_matrix(rng, 3, rng.randint(2, 4), rng.randint(4, 7)))
        for n in targets:
            got = has_minor(m, n)
            want = naive_has_minor(m, n)
            assert (got is not None) == want
            if got is not None:
                assert verify_witness(m, n, got)


def test_has_u24_minor():
    assert not has_u24_minor(mk4())
    assert has_u24_minor(u24())
    # 4-point line plus a spanning element in rank 3
    m = m_of([[1, 0, 1, 1, 0], [0, 1, 1, -1, 0], [0, 0, 0, 0, 1]])
    assert has_u24_minor(m)


def test_minor_commutation_randomized():
    rng = random.Random(2718)
    for _ in range(25):
        m = LinearMatroid(random_matrix(rng, 3, 4, 7))
        labels = list(m.labels)
        rng.shuffle(labels)
        t, d = set(labels[:2]), set(labels[2:4])
        a = m.delete(d).contract(t)
        b = m.contract(t).delete(d)
        assert a.labels == b.labels
        for k in range(min(4, a.size) + 1):
            for sub in itertools.combinations(a.labels, k):
                assert a.rank(sub) == b.rank(sub)
