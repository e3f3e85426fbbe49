"""Acceptance criteria, one check each at the full stated grid.

Run ``pytest -s tests/test_acceptance.py`` (or execute this file) to see one
PASS/FAIL line per criterion.
"""
import time

import pytest

from kjagged.genfun import (
    andrews_F, check_corollary8, check_corollary8_proof_identities, check_F_recurrence,
    check_lemma5, corollary10_check, corollary9_check, double_sum, gf_A, gf_A_factored,
    gf_B, product_theorem11, specialize_A_z1, staircase_transform, theorem11_remark_products,
    unrestricted_jagged_gf,
)
from kjagged.jagged import (
    RestrictionParams, check_exclusion_duality, count_A, count_tables, enumerate_jagged,
    is_k_restricted, iter_jagged_by_weight, verify_lemma4,
)
from kjagged.overpart import check_bijection, count_corollary12
from kjagged.series import (
    BivariateSeries, TruncationError, mul, pochhammer_neg_inf, subst_z_shift,
)

from oracles import count_partitions_with, distance_condition, overpartition_count

LIST_6_7 = sorted([(4, 1, 0, 1, 0, 1), (3, 2, 0, 1, 0, 1), (2, 3, 0, 1, 0, 1),
                   (3, 1, 1, 1, 0, 1), (2, 2, 1, 1, 0, 1), (2, 1, 2, 1, 0, 1),
                   (2, 1, 1, 1, 1, 1), (1, 2, 1, 1, 1, 1), (1, 2, 1, 2, 0, 1)])
LIST_6_7_K5 = sorted([(3, 2, 0, 1, 0, 1), (2, 3, 0, 1, 0, 1), (2, 2, 1, 1, 0, 1),
                      (2, 1, 2, 1, 0, 1), (1, 2, 1, 2, 0, 1)])


def timed(limit):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            return ok and dt < limit, f"{detail}; {dt:.2f}s (limit {limit}s)"
        run.__doc__ = fn.__doc__
        return run
    return wrap


def first_failure(reports):
    bad = [r for r in reports if not r.passed]
    if bad:
        return False, bad[0].line()
    return True, f"{len(reports)} reports, {sum(r.checked for r in reports)} comparisons"


def grid_compare(series, fn, m_max, n_max):
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            if series[m, n] != fn(m, n):
                return (m, n, series[m, n], fn(m, n))
    return None


@timed(1.0)
def c1():
    """unrestricted length-6 weight-7 list"""
    got = enumerate_jagged(6, 7)
    return got == LIST_6_7, f"{len(got)} partitions"


@timed(1.0)
def c2():
    """K=5 length-6 weight-7 list and the three stated exclusions"""
    got = enumerate_jagged(6, 7, 5)
    rejected = [not is_k_restricted(p, 5)
                for p in [(4, 1, 0, 1, 0, 1), (3, 1, 1, 1, 0, 1), (2, 1, 1, 1, 1, 1)]]
    return got == LIST_6_7_K5 and all(rejected), f"{len(got)} partitions, exclusions {rejected}"


@timed(300.0)
def c3():
    """generating-function coefficients equal brute-force counts, K=3..7, m<=12, n<=20"""
    m_max, n_max = 12, 20
    cells = 0
    for K in range(3, 8):
        r = RestrictionParams(K)
        t = count_tables(r, m_max, n_max)
        for i in range(1, r.kappa + 1):
            bad = grid_compare(gf_A(r, i, m_max, n_max), lambda m, n: t.a(i, m, n), m_max, n_max)
            if bad:
                return False, f"A K={K} i={i} (m, n, gf, count)={bad}"
            cells += (m_max + 1) * (n_max + 1)
        for j in range(1, K + 1):
            bad = grid_compare(gf_B(r, j, m_max, n_max), lambda m, n: t.b(j, m, n), m_max, n_max)
            if bad:
                return False, f"B K={K} j={j} (m, n, gf, count)={bad}"
            cells += (m_max + 1) * (n_max + 1)
    return True, f"{cells} coefficients"


def c4():
    """recurrences on brute-force counts, K=3..7, m<=12, n<=18"""
    return first_failure([verify_lemma4(K, 12, 18) for K in range(3, 8)])


def c5():
    """q-difference relations on the closed-form series, K=3..7, z<=12, q<=24"""
    return first_failure([check_lemma5(K, 12, 24) for K in range(3, 8)])


def c6():
    """even-K factorization, K=4,6,8, z<=12, q<=30, plus f(z)=(1+zq)f(zq)"""
    z_max, q_max = 12, 30
    reports = [check_corollary8(K, z_max, q_max) for K in (4, 6, 8)]
    reports += [check_corollary8_proof_identities(k, z_max, q_max) for k in (2, 3, 4)]
    ok, detail = first_failure(reports)
    for K in (4, 6, 8):
        for i in range(1, K // 2 + 1):
            if gf_A_factored(K, i, z_max, q_max) != gf_A(K, i, z_max, q_max):
                return False, f"factored != direct at K={K} i={i}"
    f = pochhammer_neg_inf(1, z_max, q_max)
    one_plus_zq = BivariateSeries.from_terms({(0, 0): 1, (1, 1): 1}, z_max, q_max)
    if f != mul(one_plus_zq, subst_z_shift(f, 1)):
        return False, "functional equation fails"
    return ok, detail


def c7():
    """z=1 sums equal products to q^40, K=3..8, all i; remark products for odd K"""
    q_max = 40
    count = 0
    for K in range(3, 9):
        r = RestrictionParams(K)
        for i in range(1, r.kappa + 1):
            s = specialize_A_z1(r, i, q_max)
            p = product_theorem11(r, i, q_max)
            if s != p:
                return False, f"K={K} i={i}"
            if r.eps and theorem11_remark_products(r.kappa, i, q_max) != p:
                return False, f"remark product K={K} i={i}"
            count += 1
    try:
        specialize_A_z1(5, 3, q_max, z_max=2 * q_max - 1)
        return False, "inadequate z range was accepted"
    except TruncationError:
        pass
    return True, f"{count} (K, i) pairs; inadequate z range rejected"


def c8():
    """three expressions for lam_j >= lam_{j+2}+2 agree with brute force, z<=10, q<=30"""
    z_max, q_max = 10, 30
    rep = corollary9_check(z_max, q_max)
    if not rep.passed:
        return False, rep.line()
    eq30 = double_sum(lambda a, b: (a + b) ** 2 + b * b, z_max, q_max)
    stair = staircase_transform(unrestricted_jagged_gf(z_max, q_max))
    if not (eq30 == andrews_F(3, 3, z_max, q_max) == stair):
        return False, "expressions disagree"
    ok = distance_condition(2, 2)
    bad = grid_compare(eq30, lambda m, n: count_partitions_with(n, m, ok), z_max, q_max)
    return bad is None, f"brute-force mismatch {bad}" if bad else "all cells agree"


def c9():
    """double sum, staircased A_{3,4} and brute force for lam_j >= lam_{j+2}+3, z<=10, q<=30"""
    z_max, q_max = 10, 30
    rep = corollary10_check(z_max, q_max)
    if not rep.passed:
        return False, rep.line()
    eq33 = double_sum(lambda a, b: a * a + 3 * a * b + 3 * b * b - b, z_max, q_max)
    if eq33 != staircase_transform(gf_A(3, 2, z_max, q_max)):
        return False, "double sum != staircased A"
    ok = distance_condition(2, 3)
    bad = grid_compare(eq33, lambda m, n: count_partitions_with(n, m, ok), z_max, q_max)
    return bad is None, f"brute-force mismatch {bad}" if bad else "all cells agree"


def c10():
    """bijection round trips and cardinalities, weight <= 12"""
    rep = check_bijection(12)
    if not rep.passed:
        return False, rep.line()
    for n in range(13):
        if sum(1 for _ in iter_jagged_by_weight(n)) != overpartition_count(n):
            return False, f"cardinality mismatch at weight {n}"
    return True, f"{rep.checked} comparisons"


def c11():
    """congruence counts equal summed A counts, K=3,4,5, n<=15"""
    cells = 0
    for K in (3, 4, 5):
        r = RestrictionParams(K)
        for i in range(1, r.kappa + 1):
            for n in range(16):
                lhs = count_corollary12(r, i, n)
                rhs = sum(count_A(r, i, m, n) for m in range(2 * n + 1))
                if lhs != rhs:
                    return False, f"K={K} i={i} n={n}: {lhs} != {rhs}"
                cells += 1
    return True, f"{cells} (K, i, n) triples"


def c12():
    """restriction <=> no excluded subvector, weight <= 12, K=3..6; shift by c<=3"""
    return first_failure([check_exclusion_duality(K, 12, max_shift=3) for K in range(3, 7)])


def c13():
    """F recurrence and boundaries, k=2,3,4, z<=10, q<=25"""
    return first_failure([check_F_recurrence(k, 10, 25) for k in (2, 3, 4)])


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13]


def report_line(number, fn):
    ok, detail = fn()
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {number:2}: {fn.__doc__} ({detail})"


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    ok, line = report_line(number, CRITERIA[number - 1])
    print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report_line(k, fn) for k, fn in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
