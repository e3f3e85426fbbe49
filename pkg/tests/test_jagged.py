import pytest
from hypothesis import given, settings, strategies as st

from kjagged.jagged import (
    RestrictionParams, check_exclusion_duality, contains_excluded_subvector,
    count_A, count_B, count_tables, enumerate_jagged, is_jagged, is_k_restricted,
    iter_jagged_by_weight, trailing_01_pairs, trailing_ones, verify_lemma4,
)

from oracles import brute_jagged

GOLDEN_6_7 = sorted([(4, 1, 0, 1, 0, 1), (3, 2, 0, 1, 0, 1), (2, 3, 0, 1, 0, 1),
                     (3, 1, 1, 1, 0, 1), (2, 2, 1, 1, 0, 1), (2, 1, 2, 1, 0, 1),
                     (2, 1, 1, 1, 1, 1), (1, 2, 1, 1, 1, 1), (1, 2, 1, 2, 0, 1)])
GOLDEN_6_7_K5 = sorted([(3, 2, 0, 1, 0, 1), (2, 3, 0, 1, 0, 1), (2, 2, 1, 1, 0, 1),
                        (2, 1, 2, 1, 0, 1), (1, 2, 1, 2, 0, 1)])


def test_params():
    r = RestrictionParams(5)
    assert (r.kappa, r.eps) == (3, 1)
    r = RestrictionParams(6)
    assert (r.kappa, r.eps) == (3, 0)
    with pytest.raises(ValueError):
        RestrictionParams(2)


def test_is_jagged_examples():
    assert is_jagged((4, 1, 0, 1, 0, 1))
    assert is_jagged(())
    assert not is_jagged((1, 0))
    assert not is_jagged((0, 1, 2))
    with pytest.raises(ValueError):
        is_jagged((1, -1, 1))


def test_is_k_restricted_examples():
    assert is_k_restricted((2, 1, 2, 1, 0, 1), 5)
    assert not is_k_restricted((4, 1, 0, 1, 0, 1), 5)
    assert not is_k_restricted((1, 2, 1, 1, 1, 0, 1), 5)
    for p in [(4, 1, 0, 1, 0, 1), (3, 1, 1, 1, 0, 1), (2, 1, 1, 1, 1, 1)]:
        assert not is_k_restricted(p, 5)


def test_trailing_statistics():
    assert trailing_01_pairs((1,)) == 0
    assert trailing_01_pairs((3, 2, 0, 1, 0, 1)) == 2
    assert trailing_01_pairs((2, 1, 2, 1, 0, 1)) == 1
    assert trailing_ones(()) == 0
    assert trailing_ones((2, 2, 1, 2, 1, 1, 1, 1)) == 4
    assert trailing_ones((2, 1, 2, 1, 0, 1)) == 1


def test_golden_lists():
    assert enumerate_jagged(6, 7) == GOLDEN_6_7
    assert enumerate_jagged(6, 7, 5) == GOLDEN_6_7_K5
    assert enumerate_jagged(0, 0) == [()]
    assert enumerate_jagged(3, 0) == []


@pytest.mark.parametrize("m,n", [(m, n) for m in range(0, 7) for n in range(0, 9)])
def test_enumeration_matches_definition(m, n):
    assert enumerate_jagged(m, n) == brute_jagged(m, n)
    for K in (3, 4, 5):
        assert enumerate_jagged(m, n, K) == brute_jagged(m, n, K)


@pytest.mark.parametrize("n", range(0, 11))
def test_tail_structure(n):
    # after the first zero the suffix is exactly 0,1,0,1,...,0,1
    for p in iter_jagged_by_weight(n):
        if 0 in p:
            k = p.index(0)
            tail = p[k:]
            assert tail == (0, 1) * (len(tail) // 2)
            assert trailing_01_pairs(p) == len(tail) // 2
            assert p[:k].count(0) == 0
        else:
            assert trailing_01_pairs(p) == 0


def test_count_boundaries():
    for K in (3, 4, 5, 6):
        r = RestrictionParams(K)
        for i in range(1, r.kappa + 1):
            assert count_A(r, i, 0, 0) == 1
        for j in range(1, K + 1):
            assert count_B(r, j, 0, 0) == 1
        assert count_A(r, 0, 4, 6) == 0
        assert count_B(r, 0, 4, 6) == 0
        assert count_A(r, 1, -1, 3) == 0
        assert count_B(r, 1, 2, -1) == 0
    with pytest.raises(ValueError):
        count_A(5, 4, 1, 1)
    with pytest.raises(ValueError):
        count_B(5, 7, 1, 1)


def test_count_examples():
    assert count_A(5, 3, 6, 7) == 5
    assert count_B(5, 1, 6, 7) == 0


def test_B_index_K_plus_one_adds_nothing():
    t = count_tables(5, 10, 14)
    assert t.B[6] == t.B[5]


@pytest.mark.parametrize("K", [3, 4, 5, 6])
def test_monotone_filtration(K):
    r = RestrictionParams(K)
    t = count_tables(r, 9, 12)
    for m in range(10):
        for n in range(13):
            a = [t.a(i, m, n) for i in range(r.kappa + 1)]
            b = [t.b(j, m, n) for j in range(K + 1)]
            assert a == sorted(a) and b == sorted(b)
            assert a[-1] == sum(1 for p in enumerate_jagged(m, n, r))


def test_tables_agree_with_direct_counts():
    t = count_tables(4, 7, 9)
    for m in range(8):
        for n in range(10):
            assert t.a(2, m, n) == count_A(4, 2, m, n)
            assert t.b(3, m, n) == count_B(4, 3, m, n)


def test_excluded_subvectors():
    assert contains_excluded_subvector((1, 1, 1, 1, 1), 5)
    assert not contains_excluded_subvector((2, 1, 2, 1, 0, 1), 5)
    assert not contains_excluded_subvector((1, 1), 5)


@given(st.lists(st.integers(0, 4), min_size=0, max_size=9), st.integers(3, 6), st.integers(0, 5))
@settings(max_examples=300, deadline=None)
def test_restriction_duality_and_shift(parts, K, c):
    p = tuple(parts)
    if not p or not is_jagged(p):
        return
    ok = is_k_restricted(p, K)
    assert ok == (not contains_excluded_subvector(p, K))
    assert ok == is_k_restricted(tuple(x + c for x in p), K)


@pytest.mark.parametrize("K", [4, 5])
def test_lemma4_spec_grids(K):
    assert verify_lemma4(K, 10, 14).passed


def test_lemma4_degenerate_grid():
    rep = verify_lemma4(3, 0, 0)
    assert rep.passed


def test_exclusion_duality_report():
    rep = check_exclusion_duality(4, 8)
    assert rep.passed and rep.checked > 0
