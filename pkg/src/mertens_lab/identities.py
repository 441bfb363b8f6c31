"""Verification of the quotient-weighted divisor-sum identities.

Every identity here is an instance of one mechanism: if g = 1 * f (Dirichlet
convolution, g(n) = sum_{d|n} f(d)), then

    sum_{i=1}^{x} M(floor(x/i)) g(i)  =  sum_{n=1}^{x} f(n),

because grouping the left side over d and applying
sum_m M(floor(x/(dm))) = 1 collapses each column to f(d).  The checks:

    id    g(i)                 f(n), right-hand side
    T1    i                    phi(n)            -> A(x)
    T2    log(i)*sigma0(i)/2   log(n)            -> log(x!)
    T3    i^k                  J_k(n)            -> B_k(x)
    T4    sigma_k(i)           n^k
    T5    [i is a square]      lambda(n)         -> L(x)
    T6    Lambda(i)            -mu(n) log(n)     -> -H(x)
    T7    2^omega(i)           mu(n)^2           -> squarefree count
    T8    sigma0(i^2)          2^omega(n)
    T9    sigma0(i)^2          sigma0(n^2)
    T10   i/phi(i)             mu(n)^2/phi(n)
    PSI   log(i)               Lambda(n)         -> psi(x)
    LEHMAN  1                  [n = 1]           -> 1

Integer and rational identities are checked exactly.  The log-valued ones
(T2, T6, PSI) additionally have exact product forms obtained by
exponentiating: prod i^{M(floor(x/i))} = lcm(1..x), the doubled
prod i^{M*sigma0(i)} = (x!)^2, and the prime-power product equal to
prod n^{-mu(n)}; those are big-integer equalities with no tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .conjecture import q_sum
from .floorsum import iter_blocks, msum_float, weighted_msum
from .mertens import mertens_sieved
from .sieves import PrefixSums, SieveTable, build_sieve, prefix

FLOAT_RTOL = 1e-9
EXACT_PRODUCT_CAP = 300

# zeta values embedded to 15 significant digits for the ratio targets
ZETA = {
    2: math.pi**2 / 6.0,
    3: 1.20205690315959,
    4: 1.08232323371114,
}

# 9869604401/1e9 < pi^2: certifies A >= (3/pi^2) x^2 from integer data
_PI_SQ_LOWER = (9_869_604_401, 10**9)


@dataclass
class IdentityReport:
    """One identity at one x: both sides, comparison mode, margin, verdict."""

    id: str
    x: int
    mode: str  # "exact_int" | "exact_rational" | "float" | "ratio"
    lhs: object
    rhs: object
    margin: float
    passed: bool

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            if isinstance(v, (np.integer,)):
                return int(v)
            if isinstance(v, (np.floating,)):
                return float(v)
            return v

        return {
            "id": self.id,
            "x": self.x,
            "mode": self.mode,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "margin": self.margin,
            "pass": self.passed,
        }


def _exact_report(rid: str, x: int, lhs, rhs, mode: str) -> IdentityReport:
    passed = lhs == rhs
    if passed:
        margin = 0.0
    else:
        try:
            margin = abs(float(lhs - rhs))
        except OverflowError:
            margin = math.inf
    return IdentityReport(rid, x, mode, lhs, rhs, margin, passed)


def _float_report(rid: str, x: int, lhs: float, rhs: float) -> IdentityReport:
    margin = abs(lhs - rhs)
    passed = margin <= FLOAT_RTOL * max(1.0, abs(rhs))
    return IdentityReport(rid, x, "float", lhs, rhs, margin, passed)


class IdentityWorkspace:
    """Shared sieve, Mertens table, and prefix-sum cache for a batch of x.

    Built once per limit; every verify_* call is then O(sqrt(x)) block work
    plus whatever big-integer products the exact modes need.
    """

    def __init__(self, limit: int, memory_gb: float | None = None):
        if limit < 1:
            raise ValueError("limit must be >= 1")
        self.limit = limit
        self.table: SieveTable = build_sieve(limit, memory_gb)
        self.m = mertens_sieved(limit, memory_gb)
        self._prefix: dict[str, PrefixSums] = {}
        self._fact: list[int] = [1, 1]
        self._lcm: list[int] = [1, 1]
        self._h_num: list[int] = [1, 1]  # prod over n<=x, mu(n)=-1, of n
        self._h_den: list[int] = [1, 1]  # prod over n<=x, mu(n)=+1 (n>1), of n

    def prefix(self, fn: str) -> PrefixSums:
        if fn not in self._prefix:
            self._prefix[fn] = prefix(self.table, fn)
        return self._prefix[fn]

    def m_of(self, v: int) -> int:
        return int(self.m[v])

    def factorial(self, n: int) -> int:
        while len(self._fact) <= n:
            self._fact.append(self._fact[-1] * len(self._fact))
        return self._fact[n]

    def lcm_upto(self, n: int) -> int:
        while len(self._lcm) <= n:
            self._lcm.append(math.lcm(self._lcm[-1], len(self._lcm)))
        return self._lcm[n]

    def h_product(self, n: int) -> tuple[int, int]:
        """(num, den) with num/den = prod_{m<=n} m^{-mu(m)} (exact)."""
        while len(self._h_num) <= n:
            m = len(self._h_num)
            num, den = self._h_num[-1], self._h_den[-1]
            mu = int(self.table.mu[m])
            if mu == 1:
                den *= m
            elif mu == -1:
                num *= m
            self._h_num.append(num)
            self._h_den.append(den)
        return self._h_num[n], self._h_den[n]


def verify_lehman(ws: IdentityWorkspace, x: int, n: int = 1) -> IdentityReport:
    """Check sum_{i>=1} M(floor(x/(i*n))) = 1 exactly.

    Since floor(x/(i*n)) = floor(floor(x/n)/i) and terms with i*n > x vanish,
    the sum telescopes over the quotient blocks of y = floor(x/n).
    """
    if not 1 <= n <= x:
        raise ValueError("need 1 <= n <= x")
    y = x // n
    total = 0
    for v, lo, hi in iter_blocks(y):
        total += (hi - lo + 1) * ws.m_of(v)
    rid = "LEHMAN" if n == 1 else f"LEHMAN_GEN(n={n})"
    return _exact_report(rid, x, total, 1, "exact_int")


def lehman_sums_upto(ws: IdentityWorkspace, xmax: int) -> np.ndarray:
    """sum_{i<=y} M(floor(y/i)) for every y <= xmax (all should equal 1)."""
    out = np.zeros(xmax + 1, dtype=np.int64)
    for y in range(1, xmax + 1):
        total = 0
        for v, lo, hi in iter_blocks(y):
            total += (hi - lo + 1) * ws.m_of(v)
        out[y] = total
    return out


def _square_restricted_msum(ws: IdentityWorkspace, x: int) -> int:
    return sum(ws.m_of(x // (s * s)) for s in range(1, isqrt(x) + 1))


_EXACT_THEOREMS = {
    "T1": ("pow1", "phi"),
    "T7": ("two_omega", "mu_squared"),
    "T8": ("sigma0_of_square", "two_omega"),
    "T9": ("sigma0_squared", "sigma0_of_square"),
}


def verify_theorem(
    ws: IdentityWorkspace, tid: str, x: int, k: int | None = None, mode: str = "default"
) -> IdentityReport:
    """Check one of the ten identities at x.

    T1, T3, T4, T5, T7..T9 are exact integers; T10 exact rationals; T2 and
    PSI are float (mode="exact" switches to their big-integer product forms);
    T6 defaults to the exact rational product, mode="float" compares the
    Lambda-weighted sum against -H(x).
    """
    if not 1 <= x <= ws.limit:
        raise ValueError(f"x={x} outside workspace limit {ws.limit}")
    if tid in _EXACT_THEOREMS:
        w_fn, r_fn = _EXACT_THEOREMS[tid]
        lhs = weighted_msum(x, ws.prefix(w_fn), ws.m)
        rhs = ws.prefix(r_fn).at(x)
        return _exact_report(tid, x, lhs, rhs, "exact_int")
    if tid == "T3":
        kk = _need_k(k)
        lhs = weighted_msum(x, ws.prefix(f"pow{kk}"), ws.m)
        rhs = ws.prefix(f"jordan{kk}").at(x)
        return _exact_report(f"T3(k={kk})", x, lhs, rhs, "exact_int")
    if tid == "T4":
        kk = _need_k(k)
        lhs = weighted_msum(x, ws.prefix(f"sigma{kk}"), ws.m)
        rhs = ws.prefix(f"pow{kk}").at(x)
        return _exact_report(f"T4(k={kk})", x, lhs, rhs, "exact_int")
    if tid == "T5":
        lhs = _square_restricted_msum(ws, x)
        rhs = ws.prefix("lambda").at(x)
        return _exact_report(tid, x, lhs, rhs, "exact_int")
    if tid == "T6":
        if mode == "float":
            lhs = msum_float(x, ws.prefix("mangoldt"), ws.m)
            rhs = -ws.prefix("mu_log").at(x)
            return _float_report(tid, x, lhs, rhs)
        return _verify_t6_exact(ws, x)
    if tid == "T10":
        lhs = weighted_msum(x, ws.prefix("n_over_phi"), ws.m)
        rhs = ws.prefix("mu2_over_phi").at(x)
        return _exact_report(tid, x, lhs, rhs, "exact_rational")
    if tid == "T2":
        if mode == "exact":
            return verify_t2_exact(ws, x)
        lhs = msum_float(x, ws.prefix("log_sigma0_half"), ws.m)
        rhs = ws.prefix("log").at(x)
        return _float_report(tid, x, lhs, rhs)
    if tid == "PSI":
        if mode == "exact":
            return verify_psi_exact(ws, x)
        lhs = msum_float(x, ws.prefix("log"), ws.m)
        rhs = ws.prefix("mangoldt").at(x)
        return _float_report(tid, x, lhs, rhs)
    raise ValueError(f"unknown identity id: {tid!r}")


def _need_k(k: int | None) -> int:
    if k is None or not 1 <= k <= 3:
        raise ValueError(f"unsupported k: {k} (supported: 1, 2, 3)")
    return k


def _verify_t6_exact(ws: IdentityWorkspace, x: int) -> IdentityReport:
    """prod over prime powers p^e <= x of p^{M(floor(x/p^e))} = prod n^{-mu(n)}."""
    lnum, lden = 1, 1
    base = ws.table.mangoldt_base
    for q in range(2, x + 1):
        p = int(base[q])
        if p == 0:
            continue
        e = ws.m_of(x // q)
        if e > 0:
            lnum *= p**e
        elif e < 0:
            lden *= p**-e
    rnum, rden = ws.h_product(x)
    lhs = Fraction(lnum, lden)
    rhs = Fraction(rnum, rden)
    passed = lnum * rden == rnum * lden
    return IdentityReport("T6", x, "exact_rational", lhs, rhs,
                          0.0 if passed else math.inf, passed)


def verify_psi_exact(ws: IdentityWorkspace, x: int, cap: int = EXACT_PRODUCT_CAP) -> IdentityReport:
    """prod_{i<=x} i^{M(floor(x/i))} = lcm(1..x), in exact big integers."""
    if x > cap:
        raise ValueError(f"exact product mode capped at {cap}, got x={x}")
    num, den = 1, 1
    for v, lo, hi in iter_blocks(x):
        mv = ws.m_of(v)
        if mv == 0:
            continue
        block = ws.factorial(hi) // ws.factorial(lo - 1)
        if mv > 0:
            num *= block**mv
        else:
            den *= block**-mv
    target = ws.lcm_upto(x)
    passed = num == target * den
    lhs = Fraction(num, den)
    return IdentityReport("PSI_EXACT", x, "exact_rational", lhs, target,
                          0.0 if passed else math.inf, passed)


def verify_t2_exact(ws: IdentityWorkspace, x: int, cap: int = EXACT_PRODUCT_CAP) -> IdentityReport:
    """Doubled product form: prod_{i<=x} i^{M(floor(x/i))*sigma0(i)} = (x!)^2.

    Doubling clears the half-integral exponent that appears exactly at the
    perfect squares.
    """
    if x > cap:
        raise ValueError(f"exact product mode capped at {cap}, got x={x}")
    num, den = 1, 1
    sigma0 = ws.table.sigma0
    for i in range(2, x + 1):
        e = ws.m_of(x // i) * int(sigma0[i])
        if e > 0:
            num *= i**e
        elif e < 0:
            den *= i**-e
    target = ws.factorial(x) ** 2
    passed = num == target * den
    lhs = Fraction(num, den)
    return IdentityReport("T2_EXACT", x, "exact_rational", lhs, target,
                          0.0 if passed else math.inf, passed)


def verify_schwarz(ws: IdentityWorkspace, x: int) -> IdentityReport:
    """Exact integer Cauchy-Schwarz bound: Q(x)*x(x+1)(2x+1) >= 6*A(x)^2."""
    q = q_sum(x, ws.m)
    a = ws.prefix("phi").at(x)
    lhs = q * x * (x + 1) * (2 * x + 1)
    rhs = 6 * a * a
    passed = lhs >= rhs
    margin = float(lhs - rhs)
    return IdentityReport("SCHWARZ", x, "exact_int", lhs, rhs, margin, passed)


def schwarz_route_certificate(ws: IdentityWorkspace, x: int) -> dict:
    """Exact-integer certificate chain behind the finite-x lower bound.

    Cauchy-Schwarz gives Q(x)*x(x+1)(2x+1) >= 6*A(x)^2.  If additionally
    A(x) >= (3/pi^2) x^2 (certified with a rational lower bound on pi^2),
    then sqrt(Q(x)/x) exceeds (3*sqrt(3)/pi^2) / sqrt((1+1/x)(1+1/(2x))).
    Both certificate steps are pure integer comparisons.
    """
    q = q_sum(x, ws.m)
    a = ws.prefix("phi").at(x)
    schwarz_ok = q * x * (x + 1) * (2 * x + 1) >= 6 * a * a
    num, den = _PI_SQ_LOWER
    walfisz_ok = a * num >= 3 * den * x * x
    bound = (3.0 * math.sqrt(3.0) / math.pi**2) / math.sqrt(
        (1.0 + 1.0 / x) * (1.0 + 1.0 / (2.0 * x))
    )
    measured = math.sqrt(q / x)
    return {
        "x": x,
        "q": q,
        "a": a,
        "schwarz_exact_ok": schwarz_ok,
        "walfisz_floor_ok": walfisz_ok,
        "sqrt_q_over_sqrt_x": measured,
        "finite_x_bound": bound,
        "bound_ok": schwarz_ok and walfisz_ok and measured > bound,
    }


def asymptotic_ratios(
    ws: IdentityWorkspace, x: int, ks=(1, 2, 3), band: float = 0.01
) -> list[IdentityReport]:
    """Convergence checks at x: A/x^2, B_k/x^(k+1), squarefree density, and
    the finite-x Cauchy-Schwarz floor for sqrt(Q(x)/x)."""
    if x > ws.limit:
        raise ValueError(f"x={x} outside workspace limit {ws.limit}")
    reports = []

    a_ratio = ws.prefix("phi").at(x) / x**2
    reports.append(_ratio_report("WALFISZ_RATIO", x, a_ratio, 3.0 / math.pi**2, band))

    for k in ks:
        kk = _need_k(k)
        b_ratio = ws.prefix(f"jordan{kk}").at(x) / x ** (kk + 1)
        target = 1.0 / ((kk + 1) * ZETA[kk + 1])
        reports.append(_ratio_report(f"JORDAN_RATIO(k={kk})", x, b_ratio, target, band))

    sf_ratio = ws.prefix("mu_squared").at(x) / x
    reports.append(_ratio_report("SQUAREFREE_RATIO", x, sf_ratio, 6.0 / math.pi**2, band))

    cert = schwarz_route_certificate(ws, x)
    reports.append(
        IdentityReport(
            "SCHWARZ_LIMIT",
            x,
            "ratio",
            cert["sqrt_q_over_sqrt_x"],
            cert["finite_x_bound"],
            cert["sqrt_q_over_sqrt_x"] - cert["finite_x_bound"],
            cert["bound_ok"],
        )
    )
    return reports


def _ratio_report(rid: str, x: int, measured: float, target: float, band: float) -> IdentityReport:
    rel = abs(measured / target - 1.0)
    return IdentityReport(rid, x, "ratio", float(measured), float(target), rel, rel <= band)


def identity_suite(
    xmax: int,
    exact_cap: int = EXACT_PRODUCT_CAP,
    ks=(1, 2, 3),
    ws: IdentityWorkspace | None = None,
) -> list[IdentityReport]:
    """Run every per-x identity for 1 <= x <= xmax.

    Exact modes: T1, T3/T4 over ks, T5..T10, LEHMAN; floats: T2, PSI; plus
    the exact product forms of T2/PSI for x <= exact_cap.  Reports come back
    sorted by (id, x) so aggregation order never depends on evaluation order.
    """
    if ws is None:
        ws = IdentityWorkspace(xmax)
    reports: list[IdentityReport] = []
    for x in range(1, xmax + 1):
        reports.append(verify_lehman(ws, x))
        reports.append(verify_theorem(ws, "T1", x))
        reports.append(verify_theorem(ws, "T2", x))
        for k in ks:
            reports.append(verify_theorem(ws, "T3", x, k=k))
            reports.append(verify_theorem(ws, "T4", x, k=k))
        for tid in ("T5", "T6", "T7", "T8", "T9", "T10"):
            reports.append(verify_theorem(ws, tid, x))
        reports.append(verify_theorem(ws, "PSI", x))
        if x <= exact_cap:
            reports.append(verify_psi_exact(ws, x, cap=exact_cap))
            reports.append(verify_t2_exact(ws, x, cap=exact_cap))
    reports.sort(key=lambda r: (r.id, r.x))
    return reports
