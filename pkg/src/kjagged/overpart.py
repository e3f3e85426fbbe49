"""Overpartitions, their bijection with jagged partitions, and congruence-restricted counts."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .jagged import Parts, RestrictionParams, as_params, is_jagged
from .partitions import partitions
from .report import Checker, IdentityReport


class BijectionError(RuntimeError):
    """The jagged/overpartition correspondence failed on some input."""


@dataclass(frozen=True, order=True)
class Overpartition:
    alpha: Parts  # overlined parts, strictly decreasing
    beta: Parts   # plain parts, weakly decreasing

    def __post_init__(self):
        if any(x < 1 for x in self.alpha) or any(x < 1 for x in self.beta):
            raise ValueError(f"parts must be positive: {self}")
        if any(a <= b for a, b in zip(self.alpha, self.alpha[1:])):
            raise ValueError(f"overlined parts must be strictly decreasing: {self.alpha}")
        if any(a < b for a, b in zip(self.beta, self.beta[1:])):
            raise ValueError(f"plain parts must be weakly decreasing: {self.beta}")

    @classmethod
    def of(cls, alpha, beta) -> Overpartition:
        return cls(tuple(sorted(alpha, reverse=True)), tuple(sorted(beta, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "beta": list(self.beta)}


def jagged_to_overpartition(p: Sequence[int]) -> Overpartition:
    """Greedy left-to-right: (n, n+1) -> 2n+1 and (n, n) -> 2n go to beta, the rest to alpha."""
    if not is_jagged(p):
        raise ValueError(f"not a jagged partition: {tuple(p)}")
    alpha: list[int] = []
    beta: list[int] = []
    j = 0
    while j < len(p):
        if j + 1 < len(p) and p[j + 1] in (p[j], p[j] + 1):
            beta.append(p[j] + p[j + 1])
            j += 2
        else:
            alpha.append(p[j])
            j += 1
    if 0 in alpha or len(set(alpha)) != len(alpha):
        raise BijectionError(f"{tuple(p)} leaves unpaired parts {alpha}")
    return Overpartition.of(alpha, beta)


def _interleavings(pieces: Counter, length: int) -> Iterator[Parts]:
    """Distinct concatenations of the pieces that are jagged, built with prefix pruning."""
    seq: list[int] = []

    def prefix_ok(start: int) -> bool:
        for j in range(max(start - 2, 0), len(seq) - 1):
            if seq[j] < seq[j + 1] - 1 or (j + 2 < len(seq) and seq[j] < seq[j + 2]):
                return False
        return True

    def rec() -> Iterator[Parts]:
        if len(seq) == length:
            if not seq or seq[-1] >= 1:
                yield tuple(seq)
            return
        for piece in sorted(pieces):
            if not pieces[piece]:
                continue
            start = len(seq)
            seq.extend(piece)
            pieces[piece] -= 1
            if prefix_ok(start):
                yield from rec()
            pieces[piece] += 1
            del seq[start:]

    yield from rec()


def overpartition_to_jagged(o: Overpartition) -> Parts:
    """Split beta parts into (n, n) / (n, n+1) blocks and place them with alpha.

    Several arrangements can be jagged (alpha = {2, 1} gives both (2, 1) and
    (1, 2)), but exactly one must decompose back into the same blocks and
    singletons.  Zero or several such arrangements raise BijectionError.
    """
    pieces: Counter = Counter()
    for b in o.beta:
        pieces[(b // 2, b // 2 + b % 2)] += 1
    for a in o.alpha:
        pieces[(a,)] += 1
    length = 2 * len(o.beta) + len(o.alpha)
    found = sorted({p for p in _interleavings(pieces, length) if jagged_to_overpartition(p) == o})
    if len(found) != 1:
        raise BijectionError(f"{o} has {len(found)} consistent arrangements: {found[:4]}")
    return found[0]


def distinct_partitions(n: int, max_part: int | None = None) -> Iterator[Parts]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in distinct_partitions(n - first, first - 1):
            yield (first,) + rest


def enumerate_overpartitions(n: int) -> list[Overpartition]:
    """All overpartitions of weight n, sorted."""
    if n < 0:
        return []
    out = []
    for a in range(n + 1):
        betas = list(partitions(n - a))
        for alpha in distinct_partitions(a):
            out.extend(Overpartition(alpha, beta) for beta in betas)
    return sorted(out)


def count_corollary12(r: RestrictionParams | int, i: int, n: int) -> int:
    """Overpartitions of n obeying the congruence conditions attached to (K, i)."""
    r = as_params(r)
    if not 1 <= i <= r.kappa:
        raise ValueError(f"i must lie in [1, {r.kappa}] for K={r.K}, got {i}")
    if 2 * i < r.K + 1:
        M = r.K + 1
        banned = {0, i % M, (M - i) % M}
        ok = lambda o: all(b % M not in banned for b in o.beta)
    else:
        ok = lambda o: all(x % r.kappa for x in o.alpha + o.beta)
    return sum(1 for o in enumerate_overpartitions(n) if ok(o))


def check_bijection(max_weight: int) -> IdentityReport:
    """Both round trips, weight preservation, and counts against (-q)_inf/(q)_inf."""
    from .jagged import iter_jagged_by_weight
    from .series import invert_unit, q_product

    chk = Checker("bijection", {}, {"max_weight": max_weight})
    gf = q_product(1, 1, 1, max_weight) * invert_unit(q_product(1, 1, -1, max_weight))
    for n in range(max_weight + 1):
        jag = list(iter_jagged_by_weight(n))
        over = enumerate_overpartitions(n)
        if not (chk.scalar("jagged count", len(jag), gf[n], n=n)
                and chk.scalar("overpartition count", len(over), gf[n], n=n)):
            break
        for p in jag:
            o = jagged_to_overpartition(p)
            if not (chk.scalar("weight", o.weight, n, parts=list(p))
                    and chk.scalar("round trip", overpartition_to_jagged(o), p, parts=list(p))):
                return chk.report()
        for o in over:
            back = overpartition_to_jagged(o)
            if not chk.scalar("reverse round trip", jagged_to_overpartition(back), o,
                              overpartition=o.to_json()):
                return chk.report()
    return chk.report()


def check_corollary12(r: RestrictionParams | int, n_max: int) -> IdentityReport:
    from .jagged import count_tables

    r = as_params(r)
    chk = Checker("corollary12", {"K": r.K}, {"n_max": n_max})
    t = count_tables(r, 2 * n_max, n_max)
    for i in range(1, r.kappa + 1):
        for n in range(n_max + 1):
            jagged_total = sum(t.a(i, m, n) for m in range(2 * n_max + 1))
            if not chk.scalar(f"i={i}", count_corollary12(r, i, n), jagged_total, n=n):
                return chk.report()
    return chk.report()
