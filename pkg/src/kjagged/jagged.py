"""Jagged partitions, K-restrictions and the boundary-indexed counts A and B."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .report import Checker, IdentityReport

Parts = tuple[int, ...]


@dataclass(frozen=True)
class RestrictionParams:
    """K together with its decomposition K = 2*kappa - eps."""
    K: int
    kappa: int = field(init=False)
    eps: int = field(init=False)

    def __post_init__(self):
        if self.K < 3:
            raise ValueError(f"K must be at least 3, got {self.K}")
        object.__setattr__(self, "kappa", (self.K + 1) // 2)
        object.__setattr__(self, "eps", self.K % 2)


def as_params(r: RestrictionParams | int) -> RestrictionParams:
    return r if isinstance(r, RestrictionParams) else RestrictionParams(r)


def is_jagged(p: Sequence[int]) -> bool:
    """Check n_j >= n_{j+1} - 1, n_j >= n_{j+2} and a positive last entry."""
    if any(x < 0 for x in p):
        raise ValueError(f"entries must be non-negative: {tuple(p)}")
    m = len(p)
    if m == 0:
        return True
    if p[-1] < 1:
        return False
    for j in range(m - 1):
        if p[j] < p[j + 1] - 1:
            return False
        if j + 2 < m and p[j] < p[j + 2]:
            return False
    return True


def _window_ok(p: Sequence[int], s: int, K: int) -> bool:
    first, last = p[s], p[s + K - 1]
    if first >= last + 1:
        return True
    return first == p[s + 1] - 1 == p[s + K - 2] + 1 == last


def is_k_restricted(p: Sequence[int], r: RestrictionParams | int) -> bool:
    """Every window of K consecutive parts satisfies the K-restriction."""
    K = as_params(r).K
    return all(_window_ok(p, s, K) for s in range(len(p) - K + 1))


def trailing_01_pairs(p: Sequence[int]) -> int:
    t, m = 0, len(p)
    while m - 2 * t >= 2 and p[m - 2 * t - 2] == 0 and p[m - 2 * t - 1] == 1:
        t += 1
    return t


def trailing_ones(p: Sequence[int]) -> int:
    t = 0
    for x in reversed(p):
        if x != 1:
            break
        t += 1
    return t


def _jagged_dfs(m: int, n: int, K: int | None) -> Iterator[Parts]:
    # Suffixes of length r weigh at least ceil(r/2) (the ...0101 tail).
    parts: list[int] = []

    def rec(remaining: int) -> Iterator[Parts]:
        j = len(parts)
        left = m - j
        if left == 0:
            if remaining == 0:
                yield tuple(parts)
            return
        hi = remaining - (left - 1 + 1) // 2
        if j >= 1:
            hi = min(hi, parts[-1] + 1)
        if j >= 2:
            hi = min(hi, parts[-2])
        lo = 1 if left == 1 else 0
        for x in range(hi, lo - 1, -1):
            parts.append(x)
            if K is None or j + 1 < K or _window_ok(parts, j + 1 - K, K):
                yield from rec(remaining - x)
            parts.pop()

    if m == 0:
        if n == 0:
            yield ()
        return
    yield from rec(n)


@lru_cache(maxsize=4096)
def _enumerate_cached(m: int, n: int, K: int | None) -> tuple[Parts, ...]:
    return tuple(sorted(_jagged_dfs(m, n, K)))


def enumerate_jagged(m: int, n: int, r: RestrictionParams | int | None = None) -> list[Parts]:
    """All jagged partitions of length m and weight n, lexicographically sorted.

    With ``r`` given only the K-restricted ones are returned.
    """
    if m < 0 or n < 0:
        return []
    K = None if r is None else as_params(r).K
    return list(_enumerate_cached(m, n, K))


def iter_jagged_by_weight(n: int) -> Iterator[Parts]:
    """All jagged partitions of weight n, any length (length is at most 2n)."""
    for m in range(0, 2 * n + 1):
        yield from _enumerate_cached(m, n, None)


def _ones_if_zero_free(p: Sequence[int]) -> float:
    return float("inf") if 0 in p else trailing_ones(p)


def _count(r: RestrictionParams | int, m: int, n: int, stat, bound: int) -> int:
    if m < 0 or n < 0 or bound < 0:
        return 0
    return sum(1 for p in enumerate_jagged(m, n, r) if stat(p) <= bound)


def count_A(r: RestrictionParams | int, i: int, m: int, n: int) -> int:
    """K-restricted jagged partitions of (m, n) with at most i-1 trailing 01 pairs."""
    r = as_params(r)
    if not 0 <= i <= r.kappa:
        raise ValueError(f"A index i must lie in [0, {r.kappa}] for K={r.K}, got {i}")
    return _count(r, m, n, trailing_01_pairs, i - 1)


def count_B(r: RestrictionParams | int, j: int, m: int, n: int) -> int:
    """Zero-free K-restricted jagged partitions of (m, n) with at most j-1 trailing ones.

    Partitions containing a 0 (those ending in the ...0101 tail) are not
    counted: the recurrences strip (1^m) from B-partitions, which only stays
    non-negative without zeros, and the generating function B agrees only
    with this reading.

    ``j = K + 1`` is accepted: no K-restricted partition ends in K ones, so it
    counts the same set as ``j = K``.  The recurrences reference it at their edges.
    """
    r = as_params(r)
    if not 0 <= j <= r.K + 1:
        raise ValueError(f"B index j must lie in [0, {r.K + 1}] for K={r.K}, got {j}")
    return _count(r, m, n, _ones_if_zero_free, j - 1)


@dataclass(frozen=True)
class CountTables:
    """All A and B counts for one K on a rectangular (m, n) grid.

    Built from a single enumeration pass; ``A[i][m][n]`` and ``B[j][m][n]``.
    """
    K: int
    m_max: int
    n_max: int
    A: tuple
    B: tuple

    def a(self, i: int, m: int, n: int) -> int:
        if m < 0 or n < 0:
            return 0
        return self.A[i][m][n]

    def b(self, j: int, m: int, n: int) -> int:
        if m < 0 or n < 0:
            return 0
        return self.B[j][m][n]


def count_tables(r: RestrictionParams | int, m_max: int, n_max: int) -> CountTables:
    r = as_params(r)
    A = [[[0] * (n_max + 1) for _ in range(m_max + 1)] for _ in range(r.kappa + 1)]
    B = [[[0] * (n_max + 1) for _ in range(m_max + 1)] for _ in range(r.K + 2)]
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            pairs = Counter()
            ones = Counter()
            for p in enumerate_jagged(m, n, r):
                pairs[trailing_01_pairs(p)] += 1
                if 0 not in p:
                    ones[trailing_ones(p)] += 1
            for i in range(1, r.kappa + 1):
                A[i][m][n] = sum(c for t, c in pairs.items() if t <= i - 1)
            for j in range(1, r.K + 2):
                B[j][m][n] = sum(c for t, c in ones.items() if t <= j - 1)
    freeze = lambda t: tuple(tuple(tuple(row) for row in grid) for grid in t)
    return CountTables(r.K, m_max, n_max, freeze(A), freeze(B))


def excluded_patterns(K: int, p: int) -> list[Parts]:
    """The K-length subvectors whose presence violates the K-restriction, for base value p."""
    out = []
    for ell in range(K // 2 + 1):
        flat = K - 2 * ell
        if p >= 1 or ell == 0:
            out.append((p,) * flat + (p - 1, p) * ell)
        out.append((p, p + 1) * ell + (p,) * flat)
    return out


def contains_excluded_subvector(p: Sequence[int], r: RestrictionParams | int) -> bool:
    K = as_params(r).K
    for s in range(len(p) - K + 1):
        window = tuple(p[s:s + K])
        # the base value is the first entry, or the second when the window opens on p-1
        for base in {window[0], window[0] + 1}:
            if window in excluded_patterns(K, base):
                return True
    return False


def recurrence_instances(r: RestrictionParams):
    """The in-range instances of the three A/B recurrences for one K.

    Yields ``(relation, i, plus, minus, rhs, shift)`` meaning
    ``plus - minus = rhs`` evaluated at ``(m - shift.dm, ...)``.  Series and
    tables are addressed as ``("A", half_index)`` (A_{K,2i} -> i) or
    ``("B", j)``.  ``shift`` is ``(dm, dn, weight_drops_by_m)``.
    """
    K, kappa, eps = r.K, r.kappa, r.eps
    for i in range(1, kappa + 1):
        # A_{2i} - A_{2i-2} = B_{K-2i+2}(m-2i+2, n-i+1)
        yield "i", i, ("A", i), ("A", i - 1), ("B", K - 2 * i + 2), (2 * i - 2, i - 1, False)
    for i in range(0, K // 2 + 1):
        # B_{2i+1} - B_{2i} = A_{K-2i+eps}(m-2i, n-m)
        if 2 * i + 1 <= K + 1:
            yield "ii", i, ("B", 2 * i + 1), ("B", 2 * i), ("A", kappa - i), (2 * i, 0, True)
    for i in range(1, K // 2 + 2):
        # B_{2i} - B_{2i-1} = A_{K-2i+2-eps}(m-2i+1, n-m)
        half = kappa - i + 1 - eps
        if 2 * i <= K + 1 and half >= 0:
            yield "iii", i, ("B", 2 * i), ("B", 2 * i - 1), ("A", half), (2 * i - 1, 0, True)


def verify_lemma4(r: RestrictionParams | int, m_max: int, n_max: int) -> IdentityReport:
    """Check the three A/B recurrences on brute-force counts over the (m, n) grid."""
    r = as_params(r)
    t = count_tables(r, m_max, n_max)
    chk = Checker("lemma4", {"K": r.K}, {"m_max": m_max, "n_max": n_max})

    def get(kind, idx, m, n):
        return t.a(idx, m, n) if kind == "A" else t.b(idx, m, n)

    for rel, i, plus, minus, rhs, (dm, dn, sub_m) in recurrence_instances(r):
        for m in range(m_max + 1):
            for n in range(n_max + 1):
                lhs = get(*plus, m, n) - get(*minus, m, n)
                val = get(*rhs, m - dm, n - m if sub_m else n - dn)
                if not chk.scalar(f"({rel}) i={i}", lhs, val, m=m, n=n):
                    return chk.report()
    return chk.report()


def check_exclusion_duality(r: RestrictionParams | int, max_weight: int,
                            max_shift: int = 3) -> IdentityReport:
    """Restriction <=> no excluded subvector, and the restriction survives adding (c^m)."""
    r = as_params(r)
    chk = Checker("exclusion_duality", {"K": r.K, "max_shift": max_shift},
                  {"max_weight": max_weight})
    for n in range(max_weight + 1):
        for p in iter_jagged_by_weight(n):
            ok = is_k_restricted(p, r)
            if not chk.scalar("restricted == not excluded", ok,
                              not contains_excluded_subvector(p, r), parts=list(p)):
                return chk.report()
            for c in range(1, max_shift + 1):
                shifted = tuple(x + c for x in p)
                if not chk.scalar(f"shift by {c}", ok, is_k_restricted(shifted, r),
                                  parts=list(p)):
                    return chk.report()
    return chk.report()
