"""Brute-force ordinary partition counts used as oracles for the staircase identities."""
from __future__ import annotations

from typing import Iterator


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, largest first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def gap_at_distance(lam: tuple[int, ...], distance: int, gap: int) -> bool:
    """lam_j >= lam_{j+distance} + gap for all j."""
    return all(lam[j] >= lam[j + distance] + gap for j in range(len(lam) - distance))


def count_gap_partitions(distance: int, gap: int, z_max: int, q_max: int) -> list[list[int]]:
    """``table[m][n]``: partitions of n into m parts with lam_j >= lam_{j+distance} + gap."""
    table = [[0] * (q_max + 1) for _ in range(z_max + 1)]
    for n in range(q_max + 1):
        for lam in partitions(n):
            if len(lam) <= z_max and gap_at_distance(lam, distance, gap):
                table[len(lam)][n] += 1
    return table
