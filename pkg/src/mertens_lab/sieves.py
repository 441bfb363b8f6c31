"""Sieve tables for the arithmetic functions used across the identity checks.

One vectorized window pass over [lo, hi] produces every multiplicative
function at once from the primes up to sqrt(hi):

  * each prime power p^e <= hi touches its multiples through strided slices,
  * a running cofactor array `rem` divides out all small-prime parts, so the
    single prime factor > sqrt(hi) (if any) is read off at the end.

`build_sieve(N)` is the monolithic window [1, N]; `sieve_range(lo, hi)`
rebuilds any sub-window with identical entries, which is what the segmented
Mobius sweep in the Mertens recursion relies on.

Per-entry footprint of a full SieveTable (bytes): mu 1, liouville 1, omega 1,
sigma0 4, phi 8, spf 8, mangoldt_base 8, big_factor 8 -> 39 B plus one int64
scratch array during construction (~47 B peak per entry).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable

import numpy as np

from .capacity import CapacityError, check_budget

_INT64_SAFE = 1 << 62

_ALL_FIELDS = frozenset(
    {"mu", "phi", "spf", "liouville", "omega", "sigma0", "mangoldt_base"}
)


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (empty for n < 2)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.nonzero(is_prime)[0].astype(np.int64)


def _first_offset(lo: int, step: int) -> int:
    """Offset of the first multiple of `step` at or above `lo`."""
    return (-lo) % step


def _window_pass(lo: int, hi: int, want: Iterable[str]) -> dict[str, np.ndarray]:
    """Compute the requested arrays for n = lo..hi (index 0 = lo)."""
    want = set(want)
    unknown = want - _ALL_FIELDS
    if unknown:
        raise ValueError(f"unknown sieve fields: {sorted(unknown)}")
    if lo < 1 or hi < lo:
        raise ValueError(f"bad window [{lo}, {hi}]")
    width = hi - lo + 1
    small_primes = primes_upto(isqrt(hi))
    n_vals = np.arange(lo, hi + 1, dtype=np.int64)
    rem = n_vals.copy()

    out: dict[str, np.ndarray] = {}
    if "mu" in want:
        out["mu"] = np.ones(width, dtype=np.int8)
    if "phi" in want:
        out["phi"] = n_vals.copy()
    if "spf" in want:
        out["spf"] = np.zeros(width, dtype=np.int64)
    if "omega" in want:
        out["omega"] = np.zeros(width, dtype=np.int8)
    if "liouville" in want:
        big_omega = np.zeros(width, dtype=np.int8)
    if "sigma0" in want:
        out["sigma0"] = np.ones(width, dtype=np.int32)
    if "mangoldt_base" in want:
        out["mangoldt_base"] = np.zeros(width, dtype=np.int64)

    for p in small_primes.tolist():
        off = _first_offset(lo, p)
        sl = slice(off, width, p)
        if "mu" in want:
            out["mu"][sl] = -out["mu"][sl]
        if "phi" in want:
            out["phi"][sl] -= out["phi"][sl] // p
        if "omega" in want:
            out["omega"][sl] += 1
        if "sigma0" in want:
            out["sigma0"][sl] *= 2
        if "spf" in want:
            tgt = out["spf"][sl]
            tgt[tgt == 0] = p
        if "liouville" in want:
            big_omega[sl] += 1
        if "mangoldt_base" in want and lo <= p:
            out["mangoldt_base"][p - lo] = p
        rem[sl] //= p

        e = 2
        q = p * p
        while q <= hi:
            off_q = _first_offset(lo, q)
            sl_q = slice(off_q, width, q)
            if "mu" in want and e == 2:
                out["mu"][sl_q] = 0
            if "sigma0" in want:
                out["sigma0"][sl_q] = out["sigma0"][sl_q] // e * (e + 1)
            if "liouville" in want:
                big_omega[sl_q] += 1
            rem[sl_q] //= p
            if "mangoldt_base" in want and lo <= q:
                out["mangoldt_base"][q - lo] = p
            e += 1
            q *= p

    big = rem > 1  # entries with one prime factor > sqrt(hi)
    if "mu" in want:
        out["mu"][big] = -out["mu"][big]
    if "phi" in want:
        b = out["phi"][big]
        out["phi"][big] = b // rem[big] * (rem[big] - 1)
    if "omega" in want:
        out["omega"][big] += 1
    if "sigma0" in want:
        out["sigma0"][big] *= 2
    if "liouville" in want:
        big_omega[big] += 1
        out["liouville"] = np.where(big_omega % 2 == 0, 1, -1).astype(np.int8)
    if "spf" in want:
        unset = (out["spf"] == 0) & (n_vals >= 2)
        out["spf"][unset] = n_vals[unset]
        if lo == 1:
            out["spf"][0] = 1
    if "mangoldt_base" in want:
        prime_here = big & (rem == n_vals)
        out["mangoldt_base"][prime_here] = n_vals[prime_here]
    if lo == 1 and "phi" in want:
        out["phi"][0] = 1

    out["big_factor"] = np.where(big, rem, 1)
    return out


@dataclass
class SieveWindow:
    """Arithmetic-function values over a contiguous range [lo, hi]."""

    lo: int
    hi: int
    arrays: dict[str, np.ndarray]

    def column(self, name: str) -> np.ndarray:
        return self.arrays[name]


def sieve_range(lo: int, hi: int, want: Iterable[str] = _ALL_FIELDS) -> SieveWindow:
    """Rebuild the sieve arrays over [lo, hi] only (entrywise same as monolithic)."""
    return SieveWindow(lo, hi, _window_pass(lo, hi, want))


def mobius_range(lo: int, hi: int) -> np.ndarray:
    """mu(lo..hi) as int8 (index 0 = lo); the cheap path for segmented sweeps."""
    return _window_pass(lo, hi, {"mu"})["mu"]


@dataclass
class SieveTable:
    """Immutable per-n tables of the arithmetic functions on [1, N].

    All arrays are indexed by n directly (index 0 is unused padding) and are
    frozen after construction; concurrent readers need no locking.
    """

    limit: int
    mu: np.ndarray
    phi: np.ndarray
    spf: np.ndarray
    liouville: np.ndarray
    omega: np.ndarray
    sigma0: np.ndarray
    mangoldt_base: np.ndarray
    big_factor: np.ndarray
    primes: np.ndarray
    _sigma_cache: dict = field(default_factory=dict, repr=False)

    def _freeze(self) -> None:
        for arr in (self.mu, self.phi, self.spf, self.liouville, self.omega,
                    self.sigma0, self.mangoldt_base, self.big_factor, self.primes):
            arr.setflags(write=False)

    def sigma_k(self, k: int) -> np.ndarray:
        """Divisor power sums sigma_k(n) for n = 1..N (k >= 1, exact).

        Values stay in int64 while 4*N^k fits; otherwise a Python-int object
        array is used so nothing silently wraps.
        """
        if k < 1:
            raise ValueError("sigma_k needs k >= 1")
        key = ("sigma", k)
        if key not in self._sigma_cache:
            self._sigma_cache[key] = self._build_sigma_k(k)
        return self._sigma_cache[key]

    def _build_sigma_k(self, k: int) -> np.ndarray:
        n = self.limit
        exact_small = 4 * (n + 1) ** k < _INT64_SAFE
        dtype = np.int64 if exact_small else object
        sig = np.ones(n + 1, dtype=dtype)
        sig[0] = 0
        for p in primes_upto(isqrt(n)).tolist():
            pk = p**k
            sig[p::p] *= 1 + pk
            e = 2
            q = p * p
            s_prev = 1 + pk
            while q <= n:
                s_cur = s_prev + pk**e
                sig[q::q] = sig[q::q] // s_prev * s_cur
                s_prev = s_cur
                e += 1
                q *= p
        big = self.big_factor > 1
        if exact_small:
            sig[big] *= 1 + self.big_factor[big] ** k
        else:
            bf = self.big_factor[big].astype(object)
            sig[big] *= 1 + bf**k
        sig.setflags(write=False)
        return sig

    def sigma0_of_square(self) -> np.ndarray:
        """sigma0(n^2) for n = 1..N: product of (2e+1) over prime exponents e."""
        key = ("sigma0sq",)
        if key not in self._sigma_cache:
            n = self.limit
            d2 = np.ones(n + 1, dtype=np.int64)
            d2[0] = 0
            for p in primes_upto(isqrt(n)).tolist():
                d2[p::p] *= 3
                e = 2
                q = p * p
                while q <= n:
                    d2[q::q] = d2[q::q] // (2 * e - 1) * (2 * e + 1)
                    e += 1
                    q *= p
            d2[self.big_factor > 1] *= 3
            d2.setflags(write=False)
            self._sigma_cache[key] = d2
        return self._sigma_cache[key]


def build_sieve(n: int, memory_gb: float | None = None) -> SieveTable:
    """Build every per-n table over [1, N] in one vectorized pass.

    Peak footprint is ~47 bytes per entry (see module docstring); the call
    refuses to start if that exceeds the memory ceiling.
    """
    if n < 1:
        raise ValueError("sieve limit must be >= 1")
    check_budget(48 * (n + 1), f"sieve table to {n}", memory_gb)
    cols = _window_pass(1, n, _ALL_FIELDS)
    pad = {name: np.concatenate([np.zeros(1, dtype=arr.dtype), arr])
           for name, arr in cols.items()}
    pad["mu"][0] = 0
    spf = pad["spf"]
    idx = np.arange(n + 1, dtype=np.int64)
    primes = idx[2:][np.equal(spf[2:], idx[2:])]
    table = SieveTable(
        limit=n,
        mu=pad["mu"],
        phi=pad["phi"],
        spf=spf,
        liouville=pad["liouville"],
        omega=pad["omega"],
        sigma0=pad["sigma0"],
        mangoldt_base=pad["mangoldt_base"],
        big_factor=pad["big_factor"],
        primes=primes,
    )
    table._freeze()
    return table


def jordan_table(table: SieveTable, k: int) -> np.ndarray:
    """J_k(n) for n = 1..N, satisfying sum_{d|n} J_k(d) = n^k.

    k in {1, 2, 3} stays in int64 at desk scale; larger values fall back to
    exact Python ints (object dtype) rather than overflowing.
    """
    if k < 1:
        raise ValueError("jordan_table needs k >= 1")
    n = table.limit
    exact_small = 2 * (n + 1) ** k < _INT64_SAFE
    if exact_small:
        jk = np.arange(0, n + 1, dtype=np.int64) ** k
    else:
        jk = np.array([0] + [m**k for m in range(1, n + 1)], dtype=object)
    for p in primes_upto(isqrt(n)).tolist():
        pk = p**k
        jk[p::p] = jk[p::p] // pk * (pk - 1)
    big = table.big_factor > 1
    bf = table.big_factor[big]
    if not exact_small:
        bf = bf.astype(object)
    jk[big] = jk[big] // bf**k * (bf**k - 1)
    jk.setflags(write=False)
    return jk


def kahan_cumsum(terms: np.ndarray) -> np.ndarray:
    """Compensated running sums of float terms (index i = sum of terms[:i+1])."""
    out = np.empty(len(terms), dtype=np.float64)
    total = 0.0
    carry = 0.0
    for i, v in enumerate(terms.tolist()):
        y = v - carry
        t = total + y
        carry = (t - total) - y
        total = t
        out[i] = total
    return out


@dataclass
class PrefixSums:
    """Running sums of one arithmetic function over [1, N].

    `values[n]` is the sum of the function over 1..n (`values[0] = 0`).
    Integer/rational functions are exact (int64, or Python ints / Fractions
    when int64 could overflow); log-valued functions use compensated floats.
    """

    fn: str
    limit: int
    values: np.ndarray | list
    exact: bool

    def at(self, n: int):
        if not 0 <= n <= self.limit:
            raise ValueError(f"prefix range too short: need {n}, have {self.limit}")
        v = self.values[n]
        if isinstance(v, np.integer):
            return int(v)
        if isinstance(v, np.floating):
            return float(v)
        return v

    def range_sum(self, lo: int, hi: int):
        """Sum of the function over lo..hi (inclusive)."""
        if hi < lo:
            return 0
        return self.at(hi) - self.at(lo - 1)


def _exact_cumsum(point: np.ndarray, bound: int) -> np.ndarray | list:
    """Cumulative sums that cannot overflow; int64 when provably safe."""
    if point.dtype != object and bound < _INT64_SAFE:
        return np.concatenate([[0], np.cumsum(point, dtype=np.int64)])
    acc = 0
    out = [0]
    for v in point.tolist():
        acc += int(v)
        out.append(acc)
    return out


def prefix(table: SieveTable, fn: str) -> PrefixSums:
    """Prefix sums for a named function over the table's range.

    Integer ids: one, phi, mu, lambda, mu_squared, two_omega, sigma0,
    sigma0_of_square, sigma0_squared, square_indicator, pow{1,2,3},
    sigma{1,2,3}, jordan{1,2,3}.
    Float ids (compensated accumulation): log, mangoldt, mu_log,
    log_sigma0_half.
    Rational ids (exact Fractions): n_over_phi, mu2_over_phi.
    """
    n = table.limit
    ns = np.arange(1, n + 1, dtype=np.int64)
    if fn == "one":
        point = np.ones(n, dtype=np.int64)
    elif fn == "phi":
        point = table.phi[1:]
    elif fn == "mu":
        point = table.mu[1:].astype(np.int64)
    elif fn == "lambda":
        point = table.liouville[1:].astype(np.int64)
    elif fn == "mu_squared":
        point = (table.mu[1:].astype(np.int64)) ** 2
    elif fn == "two_omega":
        point = np.int64(1) << table.omega[1:].astype(np.int64)
    elif fn == "sigma0":
        point = table.sigma0[1:].astype(np.int64)
    elif fn == "sigma0_of_square":
        point = table.sigma0_of_square()[1:]
    elif fn == "sigma0_squared":
        point = table.sigma0[1:].astype(np.int64) ** 2
    elif fn == "square_indicator":
        point = np.zeros(n, dtype=np.int64)
        point[np.arange(1, isqrt(n) + 1) ** 2 - 1] = 1
    elif fn.startswith("pow"):
        k = _parse_k(fn, "pow")
        if 2 * (n + 1) ** k < _INT64_SAFE:
            point = ns**k
        else:
            point = np.array([m**k for m in range(1, n + 1)], dtype=object)
    elif fn.startswith("sigma") and fn not in ("sigma0",):
        k = _parse_k(fn, "sigma")
        point = table.sigma_k(k)[1:]
    elif fn.startswith("jordan"):
        k = _parse_k(fn, "jordan")
        point = jordan_table(table, k)[1:]
    elif fn == "log":
        vals = kahan_cumsum(np.log(ns.astype(np.float64)))
        return PrefixSums(fn, n, np.concatenate([[0.0], vals]), False)
    elif fn == "mangoldt":
        lam = np.zeros(n, dtype=np.float64)
        nz = table.mangoldt_base[1:] > 0
        lam[nz] = np.log(table.mangoldt_base[1:][nz].astype(np.float64))
        return PrefixSums(fn, n, np.concatenate([[0.0], kahan_cumsum(lam)]), False)
    elif fn == "mu_log":
        terms = table.mu[1:].astype(np.float64) * np.log(ns.astype(np.float64))
        return PrefixSums(fn, n, np.concatenate([[0.0], kahan_cumsum(terms)]), False)
    elif fn == "log_sigma0_half":
        terms = np.log(ns.astype(np.float64)) * table.sigma0[1:].astype(np.float64) / 2.0
        return PrefixSums(fn, n, np.concatenate([[0.0], kahan_cumsum(terms)]), False)
    elif fn == "n_over_phi":
        acc = Fraction(0)
        out = [Fraction(0)]
        for m in range(1, n + 1):
            acc += Fraction(m, int(table.phi[m]))
            out.append(acc)
        return PrefixSums(fn, n, out, True)
    elif fn == "mu2_over_phi":
        acc = Fraction(0)
        out = [Fraction(0)]
        for m in range(1, n + 1):
            if table.mu[m] != 0:
                acc += Fraction(1, int(table.phi[m]))
            out.append(acc)
        return PrefixSums(fn, n, out, True)
    else:
        raise ValueError(f"unknown function id: {fn!r}")

    if point.dtype == object:
        bound = _INT64_SAFE
    else:
        peak = int(np.abs(point).max(initial=0))
        bound = 2 * peak * n
    return PrefixSums(fn, n, _exact_cumsum(point, bound), True)


def _parse_k(fn: str, stem: str) -> int:
    try:
        k = int(fn[len(stem):])
    except ValueError:
        raise ValueError(f"unknown function id: {fn!r}") from None
    if not 1 <= k <= 3:
        raise ValueError(f"unsupported k for {stem}: {k} (supported: 1..3)")
    return k


def dump_csv(table: SieveTable, path: str) -> None:
    """Write `n,mu,phi,lambda,omega,sigma0` rows for n = 1..N."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("n,mu,phi,lambda,omega,sigma0\n")
        for m in range(1, table.limit + 1):
            fh.write(
                f"{m},{table.mu[m]},{table.phi[m]},{table.liouville[m]},"
                f"{table.omega[m]},{table.sigma0[m]}\n"
            )
