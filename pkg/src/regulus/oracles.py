"""Brute-force combinatorial ground truth, independent of the series engine.

Every table here is computed by direct dynamic programming over exact
Python integers; no modular shortcuts, no shared code with the q-series
expansion path.  Intended scale is N up to ~10^4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "OracleTable",
    "count_partitions",
    "count_lregular",
    "count_distinct",
    "count_tuple",
    "ped_count",
    "is_triangular",
    "repr_x2_2y2",
    "repr_x2_2y2_unit_form",
    "nu_p",
]


@dataclass(frozen=True)
class OracleTable:
    """Counting-function values indexed 0..nmax."""

    kind: str
    params: tuple
    values: tuple

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def _unbounded_parts_dp(parts, nmax: int) -> list[int]:
    # classic coin-counting DP: ascending inner loop allows repetition
    c = [0] * (nmax + 1)
    c[0] = 1
    for part in parts:
        for n in range(part, nmax + 1):
            c[n] += c[n - part]
    return c


def count_partitions(nmax: int) -> OracleTable:
    """p(n): all parts allowed, unbounded multiplicity."""
    values = _unbounded_parts_dp(range(1, nmax + 1), nmax)
    return OracleTable("Partition", (), tuple(values))


def count_lregular(ell: int, nmax: int) -> OracleTable:
    """b_ell(n): partitions with no part divisible by ell."""
    if ell < 2:
        raise DomainError(f"regularity index must be >= 2, got {ell}")
    parts = [i for i in range(1, nmax + 1) if i % ell != 0]
    values = _unbounded_parts_dp(parts, nmax)
    return OracleTable("LRegular", (ell,), tuple(values))


def count_distinct(nmax: int) -> OracleTable:
    """Partitions into distinct parts (each part used at most once)."""
    c = [0] * (nmax + 1)
    c[0] = 1
    for part in range(1, nmax + 1):
        for n in range(nmax, part - 1, -1):
            c[n] += c[n - part]
    return OracleTable("Distinct", (), tuple(c))


def count_tuple(ell: int, k: int, nmax: int) -> OracleTable:
    """T_{ell,k}(n): ordered k-tuples of ell-regular partitions, sizes summing to n."""
    if k < 1:
        raise DomainError(f"tuple length must be >= 1, got {k}")
    base = count_lregular(ell, nmax).values
    acc = list(base)
    for _ in range(k - 1):
        nxt = [0] * (nmax + 1)
        for i, ai in enumerate(acc):
            if ai == 0:
                continue
            for j in range(nmax + 1 - i):
                if base[j]:
                    nxt[i + j] += ai * base[j]
        acc = nxt
    return OracleTable("TupleLRegular", (ell, k), tuple(acc))


def ped_count(nmax: int) -> OracleTable:
    """ped(n): odd parts unrestricted, even parts distinct."""
    c = [0] * (nmax + 1)
    c[0] = 1
    for part in range(1, nmax + 1, 2):
        for n in range(part, nmax + 1):
            c[n] += c[n - part]
    for part in range(2, nmax + 1, 2):
        for n in range(nmax, part - 1, -1):
            c[n] += c[n - part]
    return OracleTable("Ped", (), tuple(c))


def is_triangular(n: int) -> tuple[bool, int | None]:
    """Whether n = m(m+1)/2; returns the witness m when it exists."""
    if n < 0:
        raise DomainError(f"expected n >= 0, got {n}")
    s = math.isqrt(8 * n + 1)
    if s * s != 8 * n + 1:
        return False, None
    return True, (s - 1) // 2


def repr_x2_2y2(n: int) -> bool:
    """Whether n = x^2 + 2y^2 for some integers x, y (full enumeration)."""
    if n < 0:
        raise DomainError(f"expected n >= 0, got {n}")
    y = 0
    while 2 * y * y <= n:
        rem = n - 2 * y * y
        x = math.isqrt(rem)
        if x * x == rem:
            return True
        y += 1
    return False


def repr_x2_2y2_unit_form(n: int) -> bool:
    """Whether n = x^2 + 2y^2 with x = +-1 mod 6 and y = +-1 mod 6."""
    if n < 0:
        raise DomainError(f"expected n >= 0, got {n}")
    xmax = math.isqrt(n)
    for x in range(1, xmax + 1):
        if x % 6 not in (1, 5):
            continue
        rem = n - x * x
        if rem < 0 or rem % 2:
            continue
        half = rem // 2
        y = math.isqrt(half)
        if y * y == half and y % 6 in (1, 5):
            return True
    return False


def nu_p(p: int, n: int) -> int:
    """Exponent of the largest power of p dividing n."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    if p < 2:
        raise DomainError(f"expected a prime p >= 2, got {p}")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e
