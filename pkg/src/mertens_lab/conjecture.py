"""Range scans for the inequality chain log(x!) > Q(x) > psi(x) (x > 7).

Q(x) = sum_{i<=x} M(floor(x/i))^2 is exact integer arithmetic throughout.
Writing w(v) = M(v)^2 - M(v-1)^2, the quotient structure gives
Q(x) = sum_{v<=x} w(v) * floor(x/v), so a divisor-style sieve produces the
whole Q table for a scan in O(X log X) element updates.

log(x!) and psi(x) are compensated float accumulations.  A strict float
comparison only counts as a pass when its margin clears a guard band; any
margin inside the band is re-decided with 128-bit arithmetic so rounding
noise can never settle a verdict.  The derived bound sqrt(log x!) > |M(x)|
(claimed for x > 1) is checked independently at every scanned x.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .capacity import CapacityError, check_budget
from .floorsum import iter_blocks
from .mertens import mertens_sieved
from .sieves import kahan_cumsum, primes_upto

DEFAULT_SCAN_CEILING = 5_000_000
GUARD_REL = 1e-9  # float margins below guard*scale go to exact re-evaluation
CHUNK = 1 << 16


def q_sum(x: int, m_source) -> int:
    """Q(x) = sum_{i=1..x} M(floor(x/i))^2, exact, via quotient blocks."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if hasattr(m_source, "m_of"):
        lookup = m_source.m_of
    else:
        lookup = lambda v: int(m_source[v])
    total = 0
    for v, lo, hi in iter_blocks(x):
        mv = lookup(v)
        total += (hi - lo + 1) * mv * mv
    return total


def log_factorial(x: int) -> float:
    """log(x!) as a compensated sum of log(i) over i <= x."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if x == 1:
        return 0.0
    return float(math.fsum(np.log(np.arange(2, x + 1, dtype=np.float64))))


def stirling_main(x: int) -> float:
    """Leading Stirling term x*log(x) - x (log(x!) exceeds it by O(log x))."""
    return x * math.log(x) - x


@dataclass
class ScanTables:
    """Shared immutable per-x tables backing a scan range [1, limit]."""

    limit: int
    m: np.ndarray        # int32, M(0..limit)
    q: np.ndarray        # int64, Q(0..limit)
    psi: np.ndarray      # float64, psi(0..limit), compensated
    logfact: np.ndarray  # float64, log(x!) for 0..limit, compensated


def build_scan_tables(limit: int, memory_gb: float | None = None) -> ScanTables:
    """Build M, Q, psi, log(x!) tables up to `limit` for range scans."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    check_budget(40 * (limit + 1), f"scan tables to {limit}", memory_gb)
    m = mertens_sieved(limit, memory_gb)

    msq = m.astype(np.int64) ** 2
    w = msq[1:] - msq[:-1]  # w[v-1] = M(v)^2 - M(v-1)^2
    qdiff = np.zeros(limit + 1, dtype=np.int64)
    for v in range(1, limit + 1):
        wv = w[v - 1]
        if wv:
            qdiff[v::v] += wv
    q = np.cumsum(qdiff)

    psi = np.zeros(limit + 1, dtype=np.float64)
    pos, terms = _mangoldt_events(limit)
    if len(pos):
        sums = kahan_cumsum(terms)
        counts = np.diff(np.append(pos, limit + 1))
        psi[pos[0]:] = np.repeat(sums, counts)

    logfact = np.zeros(limit + 1, dtype=np.float64)
    logfact[1:] = kahan_cumsum(np.log(np.arange(1, limit + 1, dtype=np.float64)))

    for arr in (m, q, psi, logfact):
        arr.setflags(write=False)
    return ScanTables(limit=limit, m=m, q=q, psi=psi, logfact=logfact)


def _mangoldt_events(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted prime-power positions <= limit with their log-p terms."""
    primes = primes_upto(limit)
    pos = [primes]
    vals = [np.log(primes.astype(np.float64))]
    for p in primes[primes <= math.isqrt(limit)].tolist():
        lp = math.log(p)
        q = p * p
        while q <= limit:
            pos.append(np.array([q], dtype=np.int64))
            vals.append(np.array([lp]))
            q *= p
    pos = np.concatenate(pos)
    vals = np.concatenate(vals)
    order = np.argsort(pos, kind="stable")
    return pos[order], vals[order]


@dataclass
class ConjectureReport:
    """Outcome of one inequality scan over [lo, hi]."""

    lo: int
    hi: int
    checked: int
    violations: list = field(default_factory=list)
    out_of_claim: list = field(default_factory=list)
    min_margin_upper: float | None = None
    min_margin_lower: float | None = None
    min_margin_sqrt_bound: float | None = None
    refined: int = 0  # margins re-decided exactly (guard band hits)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "range": [self.lo, self.hi],
            "checked": self.checked,
            "violations": self.violations,
            "out_of_claim": self.out_of_claim,
            "min_margin_upper": self.min_margin_upper,
            "min_margin_lower": self.min_margin_lower,
            "min_margin_sqrt_bound": self.min_margin_sqrt_bound,
            "refined": self.refined,
        }


def _merge_min(current: float | None, candidate: float) -> float:
    return candidate if current is None else min(current, candidate)


def scan_conjecture1(
    lo: int,
    hi: int,
    tables: ScanTables | None = None,
    ceiling: int = DEFAULT_SCAN_CEILING,
    threads: int = 1,
    guard: float = GUARD_REL,
    memory_gb: float | None = None,
) -> ConjectureReport:
    """Check log(x!) > Q(x) > psi(x) for every x in [lo, hi].

    x <= 7 is outside the claim and recorded separately, never as a
    violation.  The sqrt(log x!) > |M(x)| margin is tracked alongside so the
    report carries all three minima.
    """
    tables = _require_tables(lo, hi, tables, ceiling, memory_gb)
    report = ConjectureReport(lo=lo, hi=hi, checked=0)

    def work(a: int, b: int) -> dict:
        xs = np.arange(a, b + 1, dtype=np.int64)
        lf = tables.logfact[a : b + 1]
        qv = tables.q[a : b + 1].astype(np.float64)
        ps = tables.psi[a : b + 1]
        mabs = np.abs(tables.m[a : b + 1].astype(np.float64))
        upper = lf - qv
        lower = qv - ps
        sqrtb = np.sqrt(lf) - mabs
        out = {
            "oob": xs[xs <= 7].tolist(),
            "candidates_upper": [],
            "candidates_lower": [],
            "min_upper": None,
            "min_lower": None,
            "min_sqrt": None,
        }
        claim = xs > 7
        if claim.any():
            band_u = guard * np.maximum(1.0, np.maximum(np.abs(lf), np.abs(qv)))
            band_l = guard * np.maximum(1.0, np.maximum(np.abs(qv), np.abs(ps)))
            weak_u = claim & (upper <= band_u)
            weak_l = claim & (lower <= band_l)
            out["candidates_upper"] = xs[weak_u].tolist()
            out["candidates_lower"] = xs[weak_l].tolist()
            out["min_upper"] = float(upper[claim].min())
            out["min_lower"] = float(lower[claim].min())
        sq_claim = xs > 1
        if sq_claim.any():
            out["min_sqrt"] = float(sqrtb[sq_claim].min())
        return out

    for part in _run_chunks(lo, hi, work, threads):
        for x in part["oob"]:
            report.out_of_claim.append(_boundary_record(x, tables))
        for x in part["candidates_upper"]:
            report.refined += 1
            if not _exact_greater_logfact_q(x, tables):
                report.violations.append(
                    {"x": x, "side": "upper", "lhs": tables.logfact[x], "rhs": int(tables.q[x])}
                )
        for x in part["candidates_lower"]:
            report.refined += 1
            if not _exact_greater_q_psi(x, tables):
                report.violations.append(
                    {"x": x, "side": "lower", "lhs": int(tables.q[x]), "rhs": tables.psi[x]}
                )
        if part["min_upper"] is not None:
            report.min_margin_upper = _merge_min(report.min_margin_upper, part["min_upper"])
        if part["min_lower"] is not None:
            report.min_margin_lower = _merge_min(report.min_margin_lower, part["min_lower"])
        if part["min_sqrt"] is not None:
            report.min_margin_sqrt_bound = _merge_min(
                report.min_margin_sqrt_bound, part["min_sqrt"]
            )
    report.checked = hi - lo + 1
    report.violations.sort(key=lambda rec: (rec["x"], rec["side"]))
    return report


def scan_m_bound(
    lo: int,
    hi: int,
    tables: ScanTables | None = None,
    ceiling: int = DEFAULT_SCAN_CEILING,
    threads: int = 1,
    guard: float = GUARD_REL,
    memory_gb: float | None = None,
) -> ConjectureReport:
    """Check sqrt(log(x!)) > |M(x)| for every x in [lo, hi] (claimed x > 1)."""
    tables = _require_tables(lo, hi, tables, ceiling, memory_gb)
    report = ConjectureReport(lo=lo, hi=hi, checked=hi - lo + 1)

    def work(a: int, b: int) -> dict:
        xs = np.arange(a, b + 1, dtype=np.int64)
        lf = tables.logfact[a : b + 1]
        mabs = np.abs(tables.m[a : b + 1].astype(np.float64))
        margin = np.sqrt(lf) - mabs
        claim = xs > 1
        out = {"oob": xs[~claim].tolist(), "cand": [], "min_sqrt": None}
        if claim.any():
            band = guard * np.maximum(1.0, np.sqrt(np.abs(lf)))
            weak = claim & (margin <= band)
            out["cand"] = xs[weak].tolist()
            out["min_sqrt"] = float(margin[claim].min())
        return out

    for part in _run_chunks(lo, hi, work, threads):
        for x in part["oob"]:
            report.out_of_claim.append(
                {"x": x, "note": "outside claim range (needs x > 1)"}
            )
        for x in part["cand"]:
            report.refined += 1
            if not _exact_sqrt_bound(x, tables):
                report.violations.append(
                    {"x": x, "side": "sqrt", "lhs": math.sqrt(tables.logfact[x]),
                     "rhs": int(abs(tables.m[x]))}
                )
        if part["min_sqrt"] is not None:
            report.min_margin_sqrt_bound = _merge_min(
                report.min_margin_sqrt_bound, part["min_sqrt"]
            )
    report.violations.sort(key=lambda rec: (rec["x"], rec["side"]))
    return report


def _require_tables(lo, hi, tables, ceiling, memory_gb) -> ScanTables:
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if tables is None:
        if hi > ceiling:
            raise CapacityError(
                f"scan to {hi} exceeds the ceiling {ceiling}; raise it explicitly"
            )
        tables = build_scan_tables(hi, memory_gb)
    if tables.limit < hi:
        raise ValueError(f"tables cover {tables.limit}, scan needs {hi}")
    return tables


def _run_chunks(lo: int, hi: int, work, threads: int):
    """Apply `work` to CHUNK-sized slices, merging results in range order."""
    spans = [(a, min(a + CHUNK - 1, hi)) for a in range(lo, hi + 1, CHUNK)]
    if threads <= 1 or len(spans) == 1:
        for a, b in spans:
            yield work(a, b)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(work, a, b) for a, b in spans]
        for fut in futures:
            yield fut.result()


def _boundary_record(x: int, tables: ScanTables) -> dict:
    lf = float(tables.logfact[x])
    qv = int(tables.q[x])
    ps = float(tables.psi[x])
    holds = lf > qv > ps
    return {
        "x": x,
        "note": "outside claim range (needs x > 7)",
        "log_factorial": lf,
        "q": qv,
        "psi": ps,
        "chain_holds_anyway": bool(holds),
    }


# ---------------------------------------------------------------------------
# exact re-evaluation for margins inside the guard band

def _mp():
    import mpmath

    mpmath.mp.prec = 128
    return mpmath


def _exact_greater_logfact_q(x: int, tables: ScanTables) -> bool:
    mp = _mp()
    return mp.loggamma(x + 1) > int(tables.q[x])


def _exact_greater_q_psi(x: int, tables: ScanTables) -> bool:
    mp = _mp()
    psi = mp.mpf(0)
    for p in primes_upto(x).tolist():
        q = p
        lp = mp.log(p)
        while q <= x:
            psi += lp
            q *= p
    return int(tables.q[x]) > psi


def _exact_sqrt_bound(x: int, tables: ScanTables) -> bool:
    mp = _mp()
    return mp.sqrt(mp.loggamma(x + 1)) > abs(int(tables.m[x]))


def spot_check(tables: ScanTables, count: int, seed: int) -> list[dict]:
    """Cross-check `count` random x: table Q vs block Q, table psi vs fsum.

    Seeded so CLI runs are reproducible.
    """
    import random

    rng = random.Random(seed)
    rows = []
    pos, terms = _mangoldt_events(tables.limit)
    for _ in range(count):
        x = rng.randint(1, tables.limit)
        q_direct = q_sum(x, tables.m)
        upto = np.searchsorted(pos, x, side="right")
        psi_direct = float(math.fsum(terms[:upto].tolist()))
        rows.append(
            {
                "x": x,
                "q_ok": q_direct == int(tables.q[x]),
                "psi_ok": abs(psi_direct - float(tables.psi[x]))
                <= 1e-9 * max(1.0, psi_direct),
            }
        )
    return rows


def series_rows(tables: ScanTables, lo: int, hi: int):
    """(x, log(x!), Q(x), psi(x)) rows for CSV emission."""
    for x in range(lo, hi + 1):
        yield x, float(tables.logfact[x]), int(tables.q[x]), float(tables.psi[x])
