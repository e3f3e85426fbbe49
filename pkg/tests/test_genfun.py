import pytest

from kjagged.genfun import (
    andrews_F, check_corollary8, check_corollary8_proof_identities, check_F_recurrence,
    check_lemma5, check_sum_forms, check_theorem1, check_theorem11, corollary10_check,
    corollary9_check, gf_A, gf_A_factored, gf_B, partial_sum_vectors, product_theorem11,
    specialize_A_z1, staircase_transform, sum_side_z1, theorem11_remark_products,
    unrestricted_jagged_gf,
)
from kjagged.jagged import count_A, count_B, RestrictionParams
from kjagged.series import BivariateSeries, TruncationError, subst_z_shift

from oracles import count_partitions_with, distance_condition


def test_F_boundaries():
    for k in (2, 3):
        for i in range(1, k + 1):
            f = andrews_F(k, i, 6, 10)
            assert f[0, 0] == 1
            assert sum(f.row(0)) == 1
        assert andrews_F(k, 0, 6, 10) == BivariateSeries.zero(6, 10)
        assert andrews_F(k, 1, 6, 10) == subst_z_shift(andrews_F(k, k, 6, 10), 1)
    with pytest.raises(ValueError):
        andrews_F(2, 3, 4, 4)


def test_F22_counts_difference_two_partitions():
    f = andrews_F(2, 2, 6, 20)
    ok = distance_condition(1, 2)
    for m in range(7):
        for n in range(21):
            assert f[m, n] == count_partitions_with(n, m, ok), (m, n)


@pytest.mark.parametrize("k", [2, 4])
def test_F_recurrence(k):
    assert check_F_recurrence(k, 8, 16).passed


def test_partial_sum_vectors_are_nonincreasing_and_bounded():
    vecs = list(partial_sum_vectors(3, 10))
    assert len(vecs) == len(set(vecs))
    for v in vecs:
        assert all(v[j] >= v[j + 1] for j in range(len(v) - 1))
        assert sum(x * x for x in v) <= 10


def test_gf_A_examples():
    assert gf_A(5, 3, 8, 10)[0, 0] == 1
    assert gf_A(5, 3, 8, 10)[6, 7] == 5
    with pytest.raises(ValueError):
        gf_A(5, 4, 4, 4)


@pytest.mark.parametrize("K", [3, 4, 5])
def test_gf_matches_enumeration(K):
    r = RestrictionParams(K)
    z_max, q_max = 8, 12
    for i in range(1, r.kappa + 1):
        f = gf_A(r, i, z_max, q_max)
        for m in range(z_max + 1):
            for n in range(q_max + 1):
                assert f[m, n] == count_A(r, i, m, n), ("A", i, m, n)
    for j in range(1, K + 1):
        g = gf_B(r, j, z_max, q_max)
        assert g[0, 0] == 1
        for m in range(z_max + 1):
            for n in range(q_max + 1):
                assert g[m, n] == count_B(r, j, m, n), ("B", j, m, n)


@pytest.mark.parametrize("K", [3, 4, 5, 6])
def test_B1_is_top_A_shifted(K):
    r = RestrictionParams(K)
    assert gf_B(r, 1, 8, 16) == subst_z_shift(gf_A(r, r.kappa, 8, 16), 1)


@pytest.mark.parametrize("K", [4, 5, 7])
def test_lemma5(K):
    assert check_lemma5(K, 8, 16).passed


@pytest.mark.parametrize("K", [3, 6])
def test_theorem1_and_sum_forms(K):
    assert check_theorem1(K, 6, 10).passed
    assert check_sum_forms(K, 6, 12).passed


@pytest.mark.parametrize("K, z_max, q_max", [(4, 8, 16), (5, 8, 16), (6, 8, 16)])
def test_mode_bound_soundness(K, z_max, q_max):
    # enlarging the truncation (and hence the mode enumeration bound) leaves
    # every coefficient inside the original range unchanged
    r = RestrictionParams(K)
    for i in range(1, r.kappa + 1):
        small = gf_A(r, i, z_max, q_max)
        big = gf_A(r, i, z_max + 2, q_max + 2).truncate(z_max, q_max)
        assert small.coeffs == big.coeffs


def test_factored_form():
    for i in (1, 2):
        assert gf_A_factored(4, i, 8, 16) == gf_A(4, i, 8, 16)
    f = gf_A_factored(6, 3, 8, 16)
    assert list(f.row(0)) == [1] + [0] * 16
    with pytest.raises(ValueError):
        gf_A_factored(5, 1, 4, 4)
    assert check_corollary8(6, 8, 16).passed
    assert check_corollary8_proof_identities(2, 8, 16).passed


def test_staircase_of_unrestricted_jagged_counts_gap_partitions():
    z_max, q_max = 6, 16
    f = staircase_transform(unrestricted_jagged_gf(z_max, q_max))
    ok = distance_condition(2, 2)
    for m in range(z_max + 1):
        for n in range(q_max + 1):
            assert f[m, n] == count_partitions_with(n, m, ok), (m, n)


def test_corollary9_rows_and_check():
    rep = corollary9_check(8, 20)
    assert rep.passed
    f = andrews_F(3, 3, 8, 20)
    assert f[0, 0] == 1
    assert all(f[1, n] == 1 for n in range(1, 21))
    with pytest.raises(ValueError):
        corollary9_check(8, 20, kappa_proxy=3)


def test_corollary10_rows_and_check():
    assert corollary10_check(8, 20).passed
    f = staircase_transform(gf_A(3, 2, 8, 20))
    assert all(f[2, n] == n // 2 for n in range(2, 21))
    ok = distance_condition(2, 3)
    for m in range(5):
        for n in range(16):
            assert f[m, n] == count_partitions_with(n, m, ok)


def test_specialize_matches_enumeration_and_product():
    q_max = 12
    s = specialize_A_z1(5, 3, q_max)
    for n in range(q_max + 1):
        assert s[n] == sum(count_A(5, 3, m, n) for m in range(2 * n + 1))
    assert specialize_A_z1(4, 2, 20) == product_theorem11(4, 2, 20)
    with pytest.raises(TruncationError):
        specialize_A_z1(4, 2, 20, z_max=20)


@pytest.mark.parametrize("K", [3, 4, 5, 6])
def test_theorem11(K):
    assert check_theorem11(K, 24).passed


def test_new_identity_branch_and_remark_products():
    # K odd with i = kappa uses the second product shape
    for kappa in (2, 3, 4):
        K = 2 * kappa - 1
        for i in range(1, kappa + 1):
            p = product_theorem11(K, i, 24)
            assert specialize_A_z1(K, i, 24) == p
            assert sum_side_z1(K, i, 24) == p
            assert theorem11_remark_products(kappa, i, 24) == p
