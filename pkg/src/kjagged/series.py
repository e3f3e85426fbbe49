"""Truncated formal power series in q and in (z, q) with exact integer coefficients.

A series carries its truncation orders; every coefficient at or below them is
exact.  Operands with different truncations combine at the componentwise
minimum, and equality only looks at the shared range.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class TruncationError(ValueError):
    """Raised when a requested result cannot be exact at the given truncation."""


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: tuple[int, ...]
    q_max: int

    def __post_init__(self):
        if self.q_max < 0:
            raise ValueError(f"q_max must be non-negative, got {self.q_max}")
        if len(self.coeffs) != self.q_max + 1:
            raise ValueError(
                f"expected {self.q_max + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_list(cls, coeffs: Sequence[int], q_max: int | None = None) -> PowerSeries:
        """Build from a coefficient list, padding with zeros or truncating to ``q_max``."""
        if q_max is None:
            q_max = len(coeffs) - 1
        c = [int(x) for x in coeffs[:q_max + 1]]
        c += [0] * (q_max + 1 - len(c))
        return cls(tuple(c), q_max)

    @classmethod
    def zero(cls, q_max: int) -> PowerSeries:
        return cls((0,) * (q_max + 1), q_max)

    @classmethod
    def one(cls, q_max: int) -> PowerSeries:
        return cls.monomial(1, 0, q_max)

    @classmethod
    def monomial(cls, c: int, b: int, q_max: int) -> PowerSeries:
        coeffs = [0] * (q_max + 1)
        if 0 <= b <= q_max:
            coeffs[b] = c
        return cls(tuple(coeffs), q_max)

    def __getitem__(self, b: int) -> int:
        if b < 0:
            return 0
        if b > self.q_max:
            raise IndexError(f"q^{b} is beyond truncation order {self.q_max}")
        return self.coeffs[b]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.q_max + 1

    def truncate(self, q_max: int) -> PowerSeries:
        if q_max > self.q_max:
            raise TruncationError(f"cannot extend q_max {self.q_max} to {q_max}")
        return PowerSeries(self.coeffs[:q_max + 1], q_max)

    def __add__(self, other: PowerSeries | int) -> PowerSeries:
        if isinstance(other, int):
            other = PowerSeries.monomial(other, 0, self.q_max)
        n = min(self.q_max, other.q_max)
        return PowerSeries(tuple(self.coeffs[b] + other.coeffs[b] for b in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries(tuple(-c for c in self.coeffs), self.q_max)

    def __sub__(self, other: PowerSeries | int) -> PowerSeries:
        return self + (-other)

    def __rsub__(self, other: int) -> PowerSeries:
        return (-self) + other

    def __mul__(self, other: PowerSeries | int) -> PowerSeries:
        if isinstance(other, int):
            return PowerSeries(tuple(other * c for c in self.coeffs), self.q_max)
        n = min(self.q_max, other.q_max)
        return PowerSeries(tuple(_convolve(self.coeffs, other.coeffs, n)), n)

    __rmul__ = __mul__

    def shift(self, b: int) -> PowerSeries:
        """Multiply by q^b (b >= 0)."""
        if b < 0:
            raise ValueError("shift must be non-negative")
        coeffs = (0,) * min(b, self.q_max + 1) + self.coeffs[:max(self.q_max + 1 - b, 0)]
        return PowerSeries(coeffs, self.q_max)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = PowerSeries.monomial(other, 0, self.q_max)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.q_max, other.q_max)
        return self.coeffs[:n + 1] == other.coeffs[:n + 1]

    __hash__ = None  # equality is only defined on the overlap

    def __repr__(self) -> str:
        terms = [f"{c}*q^{b}" for b, c in enumerate(self.coeffs) if c]
        return f"PowerSeries({' + '.join(terms) or '0'} + O(q^{self.q_max + 1}))"

    def to_json(self) -> dict:
        return {"q_max": self.q_max, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> PowerSeries:
        return cls(tuple(int(c) for c in obj["coeffs"]), int(obj["q_max"]))


@dataclass(frozen=True, eq=False)
class BivariateSeries:
    """Dense table ``coeffs[a][b]`` = coefficient of z^a q^b.

    ``dropped`` records that some operation pushed nonzero mass past the
    truncation orders.  Coefficients inside the declared range stay exact
    either way; the flag is informational and ignored by ``==``.
    """
    coeffs: tuple[tuple[int, ...], ...]
    z_max: int
    q_max: int
    dropped: bool = field(default=False)

    def __post_init__(self):
        if self.z_max < 0 or self.q_max < 0:
            raise ValueError("truncation orders must be non-negative")
        if len(self.coeffs) != self.z_max + 1 or any(
                len(row) != self.q_max + 1 for row in self.coeffs):
            raise ValueError(
                f"coefficient table must be {self.z_max + 1} x {self.q_max + 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], z_max: int, q_max: int,
                  dropped: bool = False) -> BivariateSeries:
        table = [[0] * (q_max + 1) for _ in range(z_max + 1)]
        for a, row in enumerate(rows):
            if a > z_max:
                break
            for b, c in enumerate(row):
                if b > q_max:
                    break
                table[a][b] = int(c)
        return cls(_freeze(table), z_max, q_max, dropped)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], int], z_max: int,
                   q_max: int) -> BivariateSeries:
        table = [[0] * (q_max + 1) for _ in range(z_max + 1)]
        for (a, b), c in terms.items():
            if 0 <= a <= z_max and 0 <= b <= q_max:
                table[a][b] += c
        return cls(_freeze(table), z_max, q_max)

    @classmethod
    def zero(cls, z_max: int, q_max: int) -> BivariateSeries:
        row = (0,) * (q_max + 1)
        return cls((row,) * (z_max + 1), z_max, q_max)

    @classmethod
    def one(cls, z_max: int, q_max: int) -> BivariateSeries:
        return cls.monomial(1, 0, 0, z_max, q_max)

    @classmethod
    def monomial(cls, c: int, a: int, b: int, z_max: int, q_max: int) -> BivariateSeries:
        """``c * z^a * q^b`` truncated."""
        return cls.from_terms({(a, b): c}, z_max, q_max)

    @classmethod
    def from_power_series(cls, f: PowerSeries, z_max: int) -> BivariateSeries:
        """Embed a series in q alone as the z^0 row."""
        rows = [f.coeffs] + [(0,) * (f.q_max + 1)] * z_max
        return cls(tuple(rows), z_max, f.q_max)

    def __getitem__(self, key: tuple[int, int]) -> int:
        a, b = key
        if a < 0 or b < 0:
            return 0
        if a > self.z_max or b > self.q_max:
            raise IndexError(f"z^{a} q^{b} is beyond truncation ({self.z_max}, {self.q_max})")
        return self.coeffs[a][b]

    def row(self, a: int) -> PowerSeries:
        """Coefficient of z^a as a series in q."""
        return PowerSeries(self.coeffs[a], self.q_max)

    def terms(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(a, b, c)`` for every nonzero coefficient."""
        for a, row in enumerate(self.coeffs):
            for b, c in enumerate(row):
                if c:
                    yield a, b, c

    def truncate(self, z_max: int, q_max: int) -> BivariateSeries:
        if z_max > self.z_max or q_max > self.q_max:
            raise TruncationError(
                f"cannot extend ({self.z_max}, {self.q_max}) to ({z_max}, {q_max})")
        return BivariateSeries(tuple(row[:q_max + 1] for row in self.coeffs[:z_max + 1]),
                               z_max, q_max, self.dropped)

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        return add(self, other)

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        return add(self, -other)

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(tuple(tuple(-c for c in row) for row in self.coeffs),
                               self.z_max, self.q_max, self.dropped)

    def __mul__(self, other: BivariateSeries | int) -> BivariateSeries:
        if isinstance(other, int):
            return BivariateSeries(tuple(tuple(other * c for c in row) for row in self.coeffs),
                                   self.z_max, self.q_max, self.dropped)
        return mul(self, other)

    __rmul__ = __mul__

    def shift(self, a: int, b: int) -> BivariateSeries:
        """Multiply by z^a q^b."""
        if a < 0 or b < 0:
            raise ValueError("shift exponents must be non-negative")
        table = [[0] * (self.q_max + 1) for _ in range(self.z_max + 1)]
        for a0 in range(self.z_max + 1 - a):
            src = self.coeffs[a0]
            dst = table[a0 + a]
            for b0 in range(self.q_max + 1 - b):
                dst[b0 + b] = src[b0]
        return BivariateSeries(_freeze(table), self.z_max, self.q_max, self.dropped)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return first_difference(self, other) is None

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"{c}*z^{a}*q^{b}" for a, b, c in self.terms()]
        shown = " + ".join(terms[:12]) + (" + ..." if len(terms) > 12 else "")
        return f"BivariateSeries({shown or '0'}; z<={self.z_max}, q<={self.q_max})"

    def to_json(self) -> dict:
        return {
            "z_max": self.z_max,
            "q_max": self.q_max,
            "coeffs": [[str(c) for c in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> BivariateSeries:
        return cls(tuple(tuple(int(c) for c in row) for row in obj["coeffs"]),
                   int(obj["z_max"]), int(obj["q_max"]))


def _freeze(table: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in table)


def _convolve(f: Sequence[int], g: Sequence[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i in range(n + 1):
        fi = f[i]
        if not fi:
            continue
        for j in range(n + 1 - i):
            gj = g[j]
            if gj:
                out[i + j] += fi * gj
    return out


def first_difference(f: BivariateSeries, g: BivariateSeries):
    """Smallest ``(a, b, f_ab, g_ab)`` (ordered by q, then z) where f and g differ.

    Only the shared truncation range is compared; ``None`` means equal there.
    """
    z_max, q_max = min(f.z_max, g.z_max), min(f.q_max, g.q_max)
    for b in range(q_max + 1):
        for a in range(z_max + 1):
            x, y = f.coeffs[a][b], g.coeffs[a][b]
            if x != y:
                return a, b, x, y
    return None


def add(f: BivariateSeries, g: BivariateSeries) -> BivariateSeries:
    z_max, q_max = min(f.z_max, g.z_max), min(f.q_max, g.q_max)
    rows = tuple(
        tuple(f.coeffs[a][b] + g.coeffs[a][b] for b in range(q_max + 1))
        for a in range(z_max + 1))
    return BivariateSeries(rows, z_max, q_max, f.dropped or g.dropped)


def mul(f: BivariateSeries, g: BivariateSeries) -> BivariateSeries:
    """Cauchy product truncated to the common orders."""
    z_max, q_max = min(f.z_max, g.z_max), min(f.q_max, g.q_max)
    table = [[0] * (q_max + 1) for _ in range(z_max + 1)]
    g_rows = [(c, g.coeffs[c]) for c in range(z_max + 1) if any(g.coeffs[c][:q_max + 1])]
    for a in range(z_max + 1):
        fa = f.coeffs[a]
        if not any(fa[:q_max + 1]):
            continue
        for c, gc in g_rows:
            if a + c > z_max:
                break
            dst = table[a + c]
            for i, x in enumerate(_convolve(fa, gc, q_max)):
                if x:
                    dst[i] += x
    return BivariateSeries(_freeze(table), z_max, q_max, f.dropped or g.dropped)


def pochhammer_finite(sign: int, s: int, t: int, n: int, z_max: int,
                      q_max: int) -> BivariateSeries:
    """``(x; q)_n`` with ``x = sign * z^s * q^t``, i.e. the product of (1 - x q^i), i < n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    result = BivariateSeries.one(z_max, q_max)
    for i in range(n):
        factor = BivariateSeries.from_terms({(0, 0): 1, (s, t + i): -sign}, z_max, q_max)
        result = mul(result, factor)
    return result


def pochhammer_neg_inf(c: int, z_max: int, q_max: int) -> BivariateSeries:
    """``(-z q^c; q)_inf`` truncated; only factors with offset <= q_max matter."""
    if c < 1:
        raise ValueError(f"offset must be >= 1 for a convergent product, got {c}")
    table = [[0] * (q_max + 1) for _ in range(z_max + 1)]
    table[0][0] = 1
    # multiply in (1 + z q^e) one factor at a time, in place from the top row down
    for e in range(c, q_max + 1):
        for a in range(z_max, 0, -1):
            src, dst = table[a - 1], table[a]
            for b in range(q_max, e - 1, -1):
                if src[b - e]:
                    dst[b] += src[b - e]
    return BivariateSeries(_freeze(table), z_max, q_max)


def invert_unit(f: PowerSeries) -> PowerSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if f.coeffs[0] != 1:
        raise ValueError(f"constant term must be 1, got {f.coeffs[0]}")
    n = f.q_max
    g = [0] * (n + 1)
    g[0] = 1
    for k in range(1, n + 1):
        g[k] = -sum(f.coeffs[j] * g[k - j] for j in range(1, k + 1) if f.coeffs[j])
    return PowerSeries(tuple(g), n)


def invert_unit_bivariate(f: BivariateSeries) -> BivariateSeries:
    """Inverse of a bivariate series whose constant term is 1."""
    if f.coeffs[0][0] != 1:
        raise ValueError(f"constant term must be 1, got {f.coeffs[0][0]}")
    z_max, q_max = f.z_max, f.q_max
    support = [(a, b, c) for a, b, c in f.terms() if (a, b) != (0, 0)]
    g = [[0] * (q_max + 1) for _ in range(z_max + 1)]
    g[0][0] = 1
    for a in range(z_max + 1):
        for b in range(q_max + 1):
            if a == 0 and b == 0:
                continue
            acc = 0
            for sa, sb, c in support:
                if sa <= a and sb <= b:
                    acc += c * g[a - sa][b - sb]
            g[a][b] = -acc
    return BivariateSeries(_freeze(g), z_max, q_max)


def subst_z_shift(f: BivariateSeries, t: int) -> BivariateSeries:
    """Substitute z -> z q^t: z^a q^b becomes z^a q^(b + t a)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    table = [[0] * (f.q_max + 1) for _ in range(f.z_max + 1)]
    dropped = f.dropped
    for a, row in enumerate(f.coeffs):
        off = t * a
        dst = table[a]
        for b, c in enumerate(row):
            if not c:
                continue
            if b + off <= f.q_max:
                dst[b + off] = c
            else:
                dropped = True
    return BivariateSeries(_freeze(table), f.z_max, f.q_max, dropped)


def scale_z_exponent(f: BivariateSeries, k: int) -> BivariateSeries:
    """Substitute z -> z^k, keeping the input's z_max."""
    if k < 1:
        raise ValueError("k must be >= 1")
    table = [[0] * (f.q_max + 1) for _ in range(f.z_max + 1)]
    dropped = f.dropped
    for a, row in enumerate(f.coeffs):
        if k * a <= f.z_max:
            table[k * a] = list(row)
        elif any(row):
            dropped = True
    return BivariateSeries(_freeze(table), f.z_max, f.q_max, dropped)


def staircase(f: BivariateSeries) -> BivariateSeries:
    """Replace z^a by z^a q^(a(a-1)/2)."""
    table = [[0] * (f.q_max + 1) for _ in range(f.z_max + 1)]
    dropped = f.dropped
    for a, row in enumerate(f.coeffs):
        off = a * (a - 1) // 2
        dst = table[a]
        for b, c in enumerate(row):
            if not c:
                continue
            if b + off <= f.q_max:
                dst[b + off] = c
            else:
                dropped = True
    return BivariateSeries(_freeze(table), f.z_max, f.q_max, dropped)


def specialize_z1(f: BivariateSeries, z_per_q: int) -> PowerSeries:
    """Set z = 1.

    The caller vouches that every monomial z^a q^b of the untruncated series
    has ``a <= z_per_q * b`` (constant term aside).  Under that bound the sum
    over a is complete for each q-order exactly when ``z_max >= z_per_q * q_max``;
    otherwise TruncationError is raised rather than returning a short count.
    """
    if z_per_q < 0:
        raise ValueError("z_per_q must be non-negative")
    if f.z_max < z_per_q * f.q_max:
        raise TruncationError(
            f"z_max={f.z_max} cannot hold the z-support up to q^{f.q_max} "
            f"(needs z_max >= {z_per_q * f.q_max})")
    return PowerSeries(
        tuple(sum(f.coeffs[a][b] for a in range(f.z_max + 1)) for b in range(f.q_max + 1)),
        f.q_max)


# --- univariate products -------------------------------------------------

def q_product(start: int, step: int, sign: int, q_max: int,
              count: int | None = None) -> PowerSeries:
    """Product of (1 + sign * q^(start + step*j)) for j = 0 .. count-1 (all j if None).

    ``sign=-1`` gives ``(q^start; q^step)_count``; ``sign=+1`` gives
    ``(-q^start; q^step)_count``.  Infinite products need ``start, step >= 1``.
    """
    if step < 1 or start < 0:
        raise ValueError("need start >= 0 and step >= 1")
    if count is None and start < 1:
        raise ValueError("infinite product needs a positive start")
    coeffs = [0] * (q_max + 1)
    coeffs[0] = 1
    j = 0
    while count is None or j < count:
        e = start + step * j
        if e > q_max:
            break
        if e == 0:
            coeffs = [(1 + sign) * c for c in coeffs]
        else:
            for b in range(q_max, e - 1, -1):
                coeffs[b] += sign * coeffs[b - e]
        j += 1
    return PowerSeries(tuple(coeffs), q_max)


def euler_factor_product(exponents: Iterable[int], q_max: int, power: int = 1) -> PowerSeries:
    """Product of (1 - q^n)^power over the given positive exponents, power = +1 or -1."""
    if power == 1:
        coeffs = [0] * (q_max + 1)
        coeffs[0] = 1
        for e in exponents:
            if e < 1:
                raise ValueError("exponents must be positive")
            for b in range(q_max, e - 1, -1):
                coeffs[b] -= coeffs[b - e]
        return PowerSeries(tuple(coeffs), q_max)
    if power == -1:
        coeffs = [0] * (q_max + 1)
        coeffs[0] = 1
        for e in exponents:
            if e < 1:
                raise ValueError("exponents must be positive")
            # 1/(1 - q^e): running sum with stride e
            for b in range(e, q_max + 1):
                coeffs[b] += coeffs[b - e]
        return PowerSeries(tuple(coeffs), q_max)
    raise ValueError("power must be +1 or -1")


@lru_cache(maxsize=None)
def inverse_q_pochhammer(m: int, q_max: int) -> PowerSeries:
    """``1/(q;q)_m``."""
    return euler_factor_product(range(1, min(m, q_max) + 1), q_max, power=-1)


@lru_cache(maxsize=None)
def inverse_pochhammer_product(ms: tuple[int, ...], q_max: int) -> PowerSeries:
    """``1/((q)_{m_1} ... (q)_{m_r})`` for a sorted tuple of mode counts."""
    exps: list[int] = []
    for m in ms:
        exps.extend(range(1, min(m, q_max) + 1))
    return euler_factor_product(exps, q_max, power=-1)
