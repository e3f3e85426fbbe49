"""Generating functions for restricted jagged partitions and the identities they satisfy.

Every builder returns an exact truncated series.  Multiple sums run over
mode vectors; instead of the modes m_j we enumerate the partial sums
N_1 >= N_2 >= ... >= 0 (m_j = N_j - N_{j+1}), which makes the pruning on
the q-exponent a plain bound on sums of squares.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterator

from .jagged import RestrictionParams, as_params, count_tables, recurrence_instances
from .partitions import count_gap_partitions
from .report import Checker, IdentityReport, merge
from .series import (
    BivariateSeries,
    PowerSeries,
    TruncationError,
    euler_factor_product,
    inverse_pochhammer_product,
    invert_unit,
    invert_unit_bivariate,
    mul,
    pochhammer_finite,
    pochhammer_neg_inf,
    q_product,
    scale_z_exponent,
    specialize_z1,
    staircase,
    subst_z_shift,
)

# z-exponent never exceeds twice the q-exponent in any series built here
Z_PER_Q = 2


def partial_sum_vectors(length: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing (N_1, ..., N_length) >= 0 with sum of squares <= budget."""
    vec: list[int] = []

    def rec(cap: int, left: int) -> Iterator[tuple[int, ...]]:
        if len(vec) == length:
            yield tuple(vec)
            return
        x = 0
        while x <= cap and x * x <= left:
            vec.append(x)
            yield from rec(x, left - x * x)
            vec.pop()
            x += 1

    yield from rec(budget, budget)


def modes_from_partial_sums(Ns: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(Ns[j] - (Ns[j + 1] if j + 1 < len(Ns) else 0) for j in range(len(Ns)))


def L_index(Ns: tuple[int, ...], i: int) -> int:
    """L_i = N_i + ... + N_last (1-based); zero past the end."""
    return sum(Ns[i - 1:]) if i >= 1 else sum(Ns)


class _Accumulator:
    def __init__(self, z_max: int, q_max: int):
        self.z_max, self.q_max = z_max, q_max
        self.table = [[0] * (q_max + 1) for _ in range(z_max + 1)]

    def add(self, a: int, e: int, series: PowerSeries, sign: int = 1):
        """table[a] += sign * q^e * series."""
        if a > self.z_max or e > self.q_max:
            return
        row = self.table[a]
        for k in range(self.q_max + 1 - e):
            c = series.coeffs[k]
            if c:
                row[e + k] += sign * c

    def result(self) -> BivariateSeries:
        return BivariateSeries.from_rows(self.table, self.z_max, self.q_max)


def _denominator(modes, q_max: int) -> PowerSeries:
    return inverse_pochhammer_product(tuple(sorted(m for m in modes if m)), q_max)


# --- the F_{k,i} multiple sum ------------------------------------------

@lru_cache(maxsize=256)
def andrews_F(k: int, i: int, z_max: int, q_max: int) -> BivariateSeries:
    """F_{k,i}(z; q) = sum z^N q^(N_1^2 + ... + N_{k-1}^2 + L_i) / (q)_{m_1} ... (q)_{m_{k-1}}.

    ``i`` in {-1, 0} gives the zero series.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not -1 <= i <= k:
        raise ValueError(f"i must lie in [-1, {k}], got {i}")
    if i <= 0:
        return BivariateSeries.zero(z_max, q_max)
    acc = _Accumulator(z_max, q_max)
    for Ns in partial_sum_vectors(k - 1, q_max):
        N = sum(Ns)
        e = sum(x * x for x in Ns) + L_index(Ns, i)
        if N > z_max or e > q_max:
            continue
        acc.add(N, e, _denominator(modes_from_partial_sums(Ns), q_max))
    return acc.result()


def check_F_recurrence(k: int, z_max: int, q_max: int) -> IdentityReport:
    """F_{k,i}(z) - F_{k,i-1}(z) = (zq)^(i-1) F_{k,k-i+1}(zq) for 1 <= i <= k, plus boundaries."""
    chk = Checker("F_recurrence", {"k": k}, {"z_max": z_max, "q_max": q_max})
    F = lambda i: andrews_F(k, i, z_max, q_max)
    for i in range(1, k + 1):
        rhs = subst_z_shift(F(k - i + 1), 1).shift(i - 1, i - 1)
        if not chk.equal(f"i={i}", F(i) - F(i - 1), rhs):
            return chk.report()
    zero = BivariateSeries.zero(z_max, q_max)
    chk.equal("F_{k,0} = 0", F(0), zero)
    chk.equal("F_{k,-1} = 0", F(-1), zero)
    chk.equal("F_{k,1}(z) = F_{k,k}(zq)", F(1), subst_z_shift(F(k), 1))
    for i in range(1, k + 1):
        f = F(i)
        chk.scalar(f"F_{{k,{i}}}(0;q) = 1", sum(f.row(0).coeffs), 1)
        chk.scalar(f"F_{{k,{i}}}(z;0) = 1", sum(f.coeffs[a][0] for a in range(z_max + 1)), 1)
    return chk.report()


# --- restricted jagged partitions ----------------------------------------

def _theorem7_terms(r: RestrictionParams, i: int, extra_N: bool, z_max: int,
                    q_max: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int, int]]:
    """Yield (Ns, modes, z-exponent 2N, q-exponent) for the sum without its m_0 prefactor."""
    for Ns in partial_sum_vectors(r.kappa - 1, q_max):
        N = sum(Ns)
        e = sum(x * x for x in Ns) + L_index(Ns, i) + (N if extra_N else 0)
        if 2 * N <= z_max and e <= q_max:
            yield Ns, modes_from_partial_sums(Ns), 2 * N, e


def _developed_sum(r: RestrictionParams, i: int, extra_N: bool, z_max: int,
                   q_max: int) -> BivariateSeries:
    """The multiple sum with the (-z q^(1 + eps m_{kappa-1}))_inf prefactor expanded over m_0."""
    acc = _Accumulator(z_max, q_max)
    for Ns, modes, a, e in _theorem7_terms(r, i, extra_N, z_max, q_max):
        last = modes[-1] if modes else 0
        m0 = 0
        while True:
            e0 = e + m0 * (m0 + 1) // 2 + r.eps * m0 * last
            if e0 > q_max or a + m0 > z_max:
                break
            acc.add(a + m0, e0, _denominator((m0,) + modes, q_max))
            m0 += 1
    return acc.result()


@lru_cache(maxsize=512)
def gf_A(r: RestrictionParams | int, i: int, z_max: int, q_max: int) -> BivariateSeries:
    """Generating function of A_{K,2i}(m, n) as sum z^m q^n, via the fully developed sum."""
    r = as_params(r)
    if not 0 <= i <= r.kappa:
        raise ValueError(f"i must lie in [0, {r.kappa}] for K={r.K}, got {i}")
    if i == 0:
        return BivariateSeries.zero(z_max, q_max)
    return _developed_sum(r, i, False, z_max, q_max)


def gf_A_with_product_prefactor(r: RestrictionParams | int, i: int, z_max: int,
                                q_max: int) -> BivariateSeries:
    """Same series as gf_A, keeping (-z q^c; q)_inf as a product per mode vector."""
    r = as_params(r)
    if not 1 <= i <= r.kappa:
        raise ValueError(f"i must lie in [1, {r.kappa}] for K={r.K}, got {i}")
    total = BivariateSeries.zero(z_max, q_max)
    for Ns, modes, a, e in _theorem7_terms(r, i, False, z_max, q_max):
        last = modes[-1] if modes else 0
        pref = pochhammer_neg_inf(1 + r.eps * last, z_max, q_max)
        rest = BivariateSeries.from_power_series(_denominator(modes, q_max), z_max)
        total = total + mul(pref, rest).shift(a, e)
    return total


@lru_cache(maxsize=512)
def gf_B(r: RestrictionParams | int, j: int, z_max: int, q_max: int) -> BivariateSeries:
    """Generating function of B_{K,j}(m, n).

    Even j = 2i comes from the multiple sum with the extra q^N; odd j = 2i - 1
    from B_{K,2i}(z) - (zq)^(2i-1) A_{K,K-2i+2-eps}(zq).  ``j = K + 1`` is
    allowed and equals ``j = K``.
    """
    r = as_params(r)
    if not 0 <= j <= r.K + 1:
        raise ValueError(f"j must lie in [0, {r.K + 1}] for K={r.K}, got {j}")
    if j == 0:
        return BivariateSeries.zero(z_max, q_max)
    if j % 2 == 0:
        return _developed_sum(r, j // 2, True, z_max, q_max)
    i = (j + 1) // 2
    even = _developed_sum(r, i, True, z_max, q_max)
    half = r.kappa - i + 1 - r.eps
    correction = subst_z_shift(gf_A(r, half, z_max, q_max), 1).shift(j, j)
    return even - correction


def check_q_difference(r: RestrictionParams, A: Callable[[int], BivariateSeries],
                       B: Callable[[int], BivariateSeries], name: str, z_max: int,
                       q_max: int) -> IdentityReport:
    """The three q-difference relations for any pair of A/B providers.

    A takes a half-index (A_{K,2i} -> i), B takes j.
    """
    chk = Checker(name, {"K": r.K}, {"z_max": z_max, "q_max": q_max})
    get = {"A": A, "B": B}
    for rel, i, plus, minus, rhs, (dm, dn, sub_m) in recurrence_instances(r):
        target = get[rhs[0]](rhs[1])
        if sub_m:
            # counts at (m - dm, n - m) <-> (zq)^dm F(zq)
            target = subst_z_shift(target, 1).shift(dm, dm)
        else:
            # counts at (m - 2(i-1), n - (i-1)) <-> (z^2 q)^(i-1) F(z)
            target = target.shift(dm, dn)
        lhs = get[plus[0]](plus[1]) - get[minus[0]](minus[1])
        if not chk.equal(f"({rel})' i={i}", lhs, target):
            break
    return chk.report()


def check_theorem1(r: RestrictionParams | int, z_max: int, q_max: int) -> IdentityReport:
    """Coefficients of every A and B series against brute-force counts on the grid."""
    r = as_params(r)
    t = count_tables(r, z_max, q_max)
    chk = Checker("theorem1", {"K": r.K}, {"z_max": z_max, "q_max": q_max})
    brute_A = lambda i: BivariateSeries.from_rows(t.A[i], z_max, q_max)
    brute_B = lambda j: BivariateSeries.from_rows(t.B[j], z_max, q_max)
    for i in range(1, r.kappa + 1):
        if not chk.equal(f"A i={i}", gf_A(r, i, z_max, q_max), brute_A(i)):
            return chk.report()
    for j in range(1, r.K + 1):
        if not chk.equal(f"B j={j}", gf_B(r, j, z_max, q_max), brute_B(j)):
            return chk.report()
    return chk.report()


def check_lemma5(r: RestrictionParams | int, z_max: int, q_max: int) -> IdentityReport:
    """q-difference relations on the closed-form A and B series."""
    r = as_params(r)
    return check_q_difference(
        r, lambda i: gf_A(r, i, z_max, q_max), lambda j: gf_B(r, j, z_max, q_max),
        "lemma5", z_max, q_max)


def check_sum_forms(r: RestrictionParams | int, z_max: int, q_max: int) -> IdentityReport:
    """Fully developed sum agrees with the product-prefactor form for every i."""
    r = as_params(r)
    chk = Checker("sum_forms", {"K": r.K}, {"z_max": z_max, "q_max": q_max})
    for i in range(1, r.kappa + 1):
        if not chk.equal(f"i={i}", gf_A(r, i, z_max, q_max),
                         gf_A_with_product_prefactor(r, i, z_max, q_max)):
            break
    return chk.report()


# --- even K factorisation ------------------------------------------------

def gf_A_factored(r: RestrictionParams | int, i: int, z_max: int, q_max: int) -> BivariateSeries:
    """(-zq)_inf F_{kappa,i}(z^2; q), valid for even K."""
    r = as_params(r)
    if r.eps != 0:
        raise ValueError(f"the factorised form needs even K, got K={r.K}")
    if not 0 <= i <= r.kappa:
        raise ValueError(f"i must lie in [0, {r.kappa}], got {i}")
    F = scale_z_exponent(andrews_F(r.kappa, i, z_max, q_max), 2)
    return mul(pochhammer_neg_inf(1, z_max, q_max), F)


def check_corollary8(r: RestrictionParams | int, z_max: int, q_max: int) -> IdentityReport:
    r = as_params(r)
    chk = Checker("corollary8", {"K": r.K}, {"z_max": z_max, "q_max": q_max})
    for i in range(1, r.kappa + 1):
        if not chk.equal(f"i={i}", gf_A_factored(r, i, z_max, q_max), gf_A(r, i, z_max, q_max)):
            break
    return chk.report()


def check_corollary8_proof_identities(kappa: int, z_max: int, q_max: int) -> IdentityReport:
    """f = (-zq)_inf solves f(z) = (1 + zq) f(zq), and f F_{kappa,i}(z^2) solves the relations."""
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    r = RestrictionParams(2 * kappa)
    f = pochhammer_neg_inf(1, z_max, q_max)
    f_zq = subst_z_shift(f, 1)
    one_plus_zq = BivariateSeries.from_terms({(0, 0): 1, (1, 1): 1}, z_max, q_max)

    def F(i: int, t: int) -> BivariateSeries:
        # F_{kappa,i}(z^2 q^t); L_{kappa+1} = 0 makes index kappa+1 equal to kappa
        return scale_z_exponent(subst_z_shift(andrews_F(kappa, min(i, kappa), z_max, q_max), t), 2)

    def A(i: int) -> BivariateSeries:
        return mul(f, F(i, 0))

    def B(j: int) -> BivariateSeries:
        i = (j + 1) // 2
        even = mul(f, F(i, 1))
        if j % 2 == 0:
            return even
        return even - mul(f_zq, F(kappa - i + 1, 2)).shift(2 * i - 1, 2 * i - 1)

    fe = Checker("functional_equation", {"kappa": kappa}, {"z_max": z_max, "q_max": q_max})
    fe.equal("f(z) = (1+zq) f(zq)", f, mul(one_plus_zq, f_zq))
    reports = [fe.report(), check_q_difference(r, A, B, "corollary8_relations", z_max, q_max)]
    return merge("corollary8_proof", {"kappa": kappa}, {"z_max": z_max, "q_max": q_max}, reports)


# --- staircase applications ----------------------------------------------

def staircase_transform(f: BivariateSeries) -> BivariateSeries:
    """z^a -> z^a q^(a(a-1)/2): jagged partitions to ordinary partitions."""
    return staircase(f)


def double_sum(exponent: Callable[[int, int], int], z_max: int, q_max: int) -> BivariateSeries:
    """sum over m0, m1 of z^(m0 + 2 m1) q^exponent(m0, m1) / ((q)_m0 (q)_m1)."""
    acc = _Accumulator(z_max, q_max)
    for m1 in range(z_max // 2 + 1):
        for m0 in range(z_max - 2 * m1 + 1):
            e = exponent(m0, m1)
            if e <= q_max:
                acc.add(m0 + 2 * m1, e, _denominator((m0, m1), q_max))
    return acc.result()


def unrestricted_jagged_gf(z_max: int, q_max: int) -> BivariateSeries:
    """(-zq)_inf / (z^2 q; q)_inf."""
    den = pochhammer_finite(1, 2, 1, q_max, z_max, q_max)
    return mul(pochhammer_neg_inf(1, z_max, q_max), invert_unit_bivariate(den))


def corollary9_check(z_max: int, q_max: int, kappa_proxy: int | None = None) -> IdentityReport:
    """Partitions with lam_j >= lam_{j+2} + 2, four ways."""
    if kappa_proxy is None:
        kappa_proxy = (z_max + 1) // 2 + 1
    if 2 * kappa_proxy - 1 <= z_max:
        raise ValueError(
            f"kappa_proxy={kappa_proxy} too small: need 2*kappa - 1 > z_max={z_max}")
    chk = Checker("corollary9", {"kappa_proxy": kappa_proxy}, {"z_max": z_max, "q_max": q_max})
    eq30 = double_sum(lambda a, b: (a + b) ** 2 + b * b, z_max, q_max)
    jagged = gf_A(2 * kappa_proxy, kappa_proxy, z_max, q_max)
    brute = BivariateSeries.from_rows(count_gap_partitions(2, 2, z_max, q_max), z_max, q_max)
    chk.equal("double sum = F_{3,3}", eq30, andrews_F(3, 3, z_max, q_max))
    chk.equal("double sum = staircased jagged", eq30, staircase(jagged))
    chk.equal("staircased jagged = brute force", staircase(jagged), brute)
    chk.equal("jagged = (-zq)_inf/(z^2q)_inf", jagged, unrestricted_jagged_gf(z_max, q_max))
    return chk.report()


def corollary10_check(z_max: int, q_max: int) -> IdentityReport:
    """Partitions with lam_j >= lam_{j+2} + 3, three ways."""
    chk = Checker("corollary10", {}, {"z_max": z_max, "q_max": q_max})
    # m0^2 + 3 m1 (m0 + m1 - 1/3) cleared of the fraction
    eq33 = double_sum(lambda a, b: a * a + 3 * a * b + 3 * b * b - b, z_max, q_max)
    brute = BivariateSeries.from_rows(count_gap_partitions(2, 3, z_max, q_max), z_max, q_max)
    chk.equal("double sum = staircased A_{3,4}", eq33, staircase(gf_A(3, 2, z_max, q_max)))
    chk.equal("double sum = brute force", eq33, brute)
    return chk.report()


# --- z = 1 and product forms ---------------------------------------------

def sum_side_z1(r: RestrictionParams | int, i: int, q_max: int) -> PowerSeries:
    """A_{K,2i}(1; q) as (-q)_inf times a sum whose last denominator is (q^(1+eps); q^(1+eps))."""
    r = as_params(r)
    if not 1 <= i <= r.kappa:
        raise ValueError(f"i must lie in [1, {r.kappa}], got {i}")
    step = 1 + r.eps
    total = [0] * (q_max + 1)
    for Ns in partial_sum_vectors(r.kappa - 1, q_max):
        e = sum(x * x for x in Ns) + L_index(Ns, i)
        if e > q_max:
            continue
        modes = modes_from_partial_sums(Ns)
        den = _denominator(modes[:-1], q_max) * euler_factor_product(
            range(step, step * modes[-1] + 1, step), q_max, power=-1)
        for k in range(q_max + 1 - e):
            total[e + k] += den.coeffs[k]
    return q_product(1, 1, 1, q_max) * PowerSeries(tuple(total), q_max)


def specialize_A_z1(r: RestrictionParams | int, i: int, q_max: int,
                    z_max: int | None = None) -> PowerSeries:
    """gf_A at z = 1; raises TruncationError if ``z_max`` cannot cover q^q_max."""
    if z_max is None:
        z_max = Z_PER_Q * q_max
    return specialize_z1(gf_A(r, i, z_max, q_max), Z_PER_Q)


def product_theorem11(r: RestrictionParams | int, i: int, q_max: int) -> PowerSeries:
    """Product side for A_{K,2i}(1; q)."""
    r = as_params(r)
    if not 1 <= i <= r.kappa:
        raise ValueError(f"i must lie in [1, {r.kappa}] for K={r.K}, got {i}")
    minus_q = q_product(1, 1, 1, q_max)
    if 2 * i < r.K + 1:
        M = r.K + 1
        banned = {0, i % M, (M - i) % M}
        return minus_q * euler_factor_product(
            (n for n in range(1, q_max + 1) if n % M not in banned), q_max, power=-1)
    # eps = 1, i = kappa
    kept = [n for n in range(1, q_max + 1) if n % r.kappa]
    plus = [1] + [0] * q_max
    for n in kept:
        for b in range(q_max, n - 1, -1):
            plus[b] += plus[b - n]
    return PowerSeries(tuple(plus), q_max) * euler_factor_product(kept, q_max, power=-1)


def theorem11_remark_products(kappa: int, i: int, q_max: int) -> PowerSeries:
    """Product forms for K = 2 kappa - 1 written with (q^a; q^b)_inf symbols."""
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    if not 1 <= i <= kappa:
        raise ValueError(f"i must lie in [1, {kappa}], got {i}")
    base = q_product(1, 1, 1, q_max) * invert_unit(q_product(1, 1, -1, q_max))
    if i < kappa:
        theta = (q_product(i, 2 * kappa, -1, q_max) * q_product(2 * kappa - i, 2 * kappa, -1, q_max)
                 * q_product(2 * kappa, 2 * kappa, -1, q_max))
        return base * theta
    return base * q_product(kappa, kappa, -1, q_max) * invert_unit(q_product(kappa, kappa, 1, q_max))


def check_theorem11(r: RestrictionParams | int, q_max: int) -> IdentityReport:
    """Sum side at z = 1 (two evaluations) against the product side, every i."""
    r = as_params(r)
    chk = Checker("theorem11", {"K": r.K}, {"q_max": q_max, "z_max": Z_PER_Q * q_max})
    for i in range(1, r.kappa + 1):
        s = specialize_A_z1(r, i, q_max)
        p = product_theorem11(r, i, q_max)
        if not chk.equal(f"i={i} sum = product", s, p):
            break
        if not chk.equal(f"i={i} rewritten sum", sum_side_z1(r, i, q_max), s):
            break
        if r.eps == 1 and not chk.equal(
                f"i={i} remark product", theorem11_remark_products(r.kappa, i, q_max), p):
            break
    return chk.report()


__all__ = [
    "TruncationError", "andrews_F", "check_F_recurrence", "gf_A", "gf_B",
    "gf_A_with_product_prefactor", "check_theorem1", "check_lemma5", "check_sum_forms", "gf_A_factored",
    "check_corollary8", "check_corollary8_proof_identities", "staircase_transform",
    "double_sum", "unrestricted_jagged_gf", "corollary9_check", "corollary10_check",
    "sum_side_z1", "specialize_A_z1", "product_theorem11", "theorem11_remark_products",
    "check_theorem11", "partial_sum_vectors",
]
