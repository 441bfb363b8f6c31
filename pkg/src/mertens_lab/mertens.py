"""Mertens function M(x) = sum of mu over [1, x], sieved and sublinear.

Small ranges come straight from a segmented mu sieve.  Large x uses the
classic quotient-lattice recursion obtained by inverting
sum_{i=1}^{v} M(floor(v/i)) = 1:

    M(v) = 1 - sum_{d=2}^{v} M(floor(v/d))

evaluated only at the distinct quotients v = floor(x/k).  Quotients below a
threshold B come from the sieved table; the O(x/B) values above it are filled
in descending k order, so every lattice point a computation needs is already
present.  With B ~ x^(2/3) the total work is ~x/sqrt(B) block steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .capacity import check_budget
from .sieves import mobius_range

SEGMENT = 1 << 22  # mu sieve block size; keeps window temporaries cache-friendly


def mertens_sieved(n: int, memory_gb: float | None = None) -> np.ndarray:
    """M(0..n) as an int32 array (M[0] = 0), via segmented mu prefix sums."""
    if n < 1:
        raise ValueError("n must be >= 1")
    check_budget(4 * (n + 1) + 24 * min(n, SEGMENT), f"Mertens table to {n}", memory_gb)
    out = np.empty(n + 1, dtype=np.int32)
    out[0] = 0
    running = 0
    lo = 1
    while lo <= n:
        hi = min(lo + SEGMENT - 1, n)
        mu = mobius_range(lo, hi)
        seg = np.cumsum(mu, dtype=np.int32)
        seg += running
        out[lo : hi + 1] = seg
        running = int(seg[-1])
        lo = hi + 1
    return out


@dataclass
class MertensQuotientTable:
    """M at every distinct quotient floor(x/i), immutable once built.

    `small[v]` is M(v) for v <= threshold; `large[k]` is M(floor(x/k)) for
    the quotients above the threshold, keyed by the dense index k (so a
    lattice descent from floor(x/k) lands on index k*d directly).
    """

    x: int
    threshold: int
    small: np.ndarray
    large: np.ndarray

    def m_of(self, v: int) -> int:
        """M(v) for any v that is <= threshold or a quotient of x."""
        if v < 0:
            raise ValueError("v must be >= 0")
        if v <= self.threshold:
            return int(self.small[v])
        k = self.x // v
        if self.x // k != v:
            raise ValueError(f"{v} is not a quotient point of {self.x}")
        return int(self.large[k])

    def m_at_index(self, i: int) -> int:
        """M(floor(x/i)) for 1 <= i <= x."""
        if not 1 <= i <= self.x:
            raise ValueError("index out of range")
        v = self.x // i
        if v <= self.threshold:
            return int(self.small[v])
        return int(self.large[i])

    @property
    def mertens_x(self) -> int:
        """M(x) itself."""
        return self.m_of(self.x)

    def quotient_values(self) -> list[int]:
        """All distinct floor(x/i) in increasing order."""
        vals = []
        i = 1
        while i <= self.x:
            v = self.x // i
            vals.append(v)
            i = self.x // v + 1
        vals.reverse()
        return vals


def default_threshold(x: int) -> int:
    """Sieve/recursion crossover ~x^(2/3), never below sqrt(x)."""
    b = int(round(x ** (2.0 / 3.0)))
    return max(isqrt(x) + 1, b, 1)


def mertens_quotients(
    x: int, threshold: int | None = None, memory_gb: float | None = None
) -> MertensQuotientTable:
    """Exact M at every distinct floor(x/i), in O(x/sqrt(B) + B) work."""
    if x < 1:
        raise ValueError("x must be >= 1")
    b = min(x, threshold if threshold is not None else default_threshold(x))
    b = max(b, isqrt(x) + 1) if x > 1 else 1
    b = min(b, x)
    small = mertens_sieved(b, memory_gb)
    k_max = x // b if b < x else 0
    large = np.zeros(k_max + 1, dtype=np.int64)
    for k in range(k_max, 0, -1):
        v = x // k
        if v <= b:
            large[k] = small[v]
            continue
        large[k] = _lattice_value(v, k, b, small, large)
    return MertensQuotientTable(x=x, threshold=b, small=small, large=large)


def _lattice_value(v: int, k: int, b: int, small: np.ndarray, large: np.ndarray) -> int:
    """M(v) for v = x//k via M(v) = 1 - sum_{d=2}^{v} M(floor(v/d)).

    Terms with d <= sqrt(v) are direct lookups (small table or lattice index
    k*d); the tail is grouped by the quotient t = floor(v/d), whose count is
    floor(v/t) - max(floor(v/(t+1)), sqrt(v)).
    """
    s = isqrt(v)
    total = 1
    if s >= 2:
        ds = np.arange(2, s + 1, dtype=np.int64)
        qs = v // ds
        small_mask = qs <= b
        if small_mask.any():
            total -= int(small[qs[small_mask]].astype(np.int64).sum())
        if not small_mask.all():
            total -= int(large[k * ds[~small_mask]].sum())
    t_max = v // (s + 1)
    if t_max >= 1:
        ts = np.arange(1, t_max + 1, dtype=np.int64)
        counts = v // ts - np.maximum(v // (ts + 1), s)
        total -= int(np.dot(counts, small[ts].astype(np.int64)))
    return total


def mertens_at(x: int, threshold: int | None = None, memory_gb: float | None = None) -> int:
    """M(x) as an exact integer."""
    if x < 1:
        raise ValueError("x must be >= 1")
    return mertens_quotients(x, threshold, memory_gb).mertens_x
