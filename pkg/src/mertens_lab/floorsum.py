"""Constant-quotient block decomposition of [1, x].

floor(x/i) takes at most 2*sqrt(x) distinct values; grouping i by that value
turns sums like sum_i M(floor(x/i)) f(i) into O(sqrt(x)) block visits, each
paid with one prefix-sum difference of f.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .sieves import PrefixSums


@dataclass(frozen=True)
class QuotientBlock:
    """Maximal run [i_lo, i_hi] on which floor(x/i) equals `value`."""

    value: int
    i_lo: int
    i_hi: int

    @property
    def width(self) -> int:
        return self.i_hi - self.i_lo + 1


def iter_blocks(x: int) -> Iterator[tuple[int, int, int]]:
    """Yield (value, i_lo, i_hi) tuples; values strictly decrease."""
    if x < 1:
        raise ValueError("x must be >= 1")
    i = 1
    while i <= x:
        v = x // i
        hi = x // v
        yield v, i, hi
        i = hi + 1


def blocks(x: int) -> list[QuotientBlock]:
    """All constant-quotient blocks of [1, x].

    The blocks partition [1, x] and there are at most 2*floor(sqrt(x)) of them.
    """
    out = [QuotientBlock(v, lo, hi) for v, lo, hi in iter_blocks(x)]
    assert len(out) <= 2 * isqrt(x)
    return out


def weighted_msum(x: int, weights: PrefixSums, m_source) -> int:
    """Exact sum over i = 1..x of M(floor(x/i)) * f(i) in O(sqrt(x)) blocks.

    `weights` holds exact prefix sums of f; `m_source` is anything with an
    `m_of(v)` lookup (a MertensQuotientTable) or a dense M array indexed by
    value. Exact integer or Fraction arithmetic throughout.
    """
    if weights.limit < x:
        raise ValueError(
            f"prefix range too short: weights cover {weights.limit}, need {x}"
        )
    if not weights.exact:
        raise ValueError("weighted_msum needs exact prefix sums; use msum_float")
    lookup = _m_lookup(m_source)
    total = 0
    for v, lo, hi in iter_blocks(x):
        total += lookup(v) * (weights.at(hi) - weights.at(lo - 1))
    return total


def msum_float(x: int, weights: PrefixSums, m_source) -> float:
    """Float counterpart of weighted_msum for log-valued weight functions."""
    if weights.limit < x:
        raise ValueError(
            f"prefix range too short: weights cover {weights.limit}, need {x}"
        )
    lookup = _m_lookup(m_source)
    total = 0.0
    carry = 0.0
    for v, lo, hi in iter_blocks(x):
        term = lookup(v) * (weights.at(hi) - weights.at(lo - 1))
        y = term - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _m_lookup(m_source):
    if hasattr(m_source, "m_of"):
        return lambda v: m_source.m_of(v)
    return lambda v: int(m_source[v])
