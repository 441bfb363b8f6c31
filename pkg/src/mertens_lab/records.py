"""Champion (record) scans and the derived figure datasets.

Two champion notions:

  J_RECORDS  j(x) = sum over divisors d|x of M(x/d)^2; a champion is an x
             whose j strictly exceeds every earlier value.  Found by
             exhaustive scan only -- maxima cluster at products of small
             primes but there is no generator to trust.
  HCN        sigma0 records (highly composite numbers).  Directly scanned
             within the sieve budget; beyond it, candidates are generated
             from nonincreasing prime-exponent patterns (every sigma0 record
             has that shape) and filtered by the same strict-record rule.

For a champion l the series also carries M(l), j(l), Q(l) and sigma0(l) as
the figure columns need them.  Values beyond the sieve range come from one
quotient-lattice table per champion (divisors of l are quotients of l, so a
single table covers them all).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, log, sqrt

import numpy as np

from .capacity import check_budget
from .conjecture import ScanTables, build_scan_tables, q_sum
from .mertens import mertens_quotients, mertens_sieved
from .sieves import build_sieve, primes_upto

J_SCAN_DEFAULT_LIMIT = 10_000_000
HCN_GENERATION_PRIMES = 15
LOG_ZERO_SQUARE = -1.0  # figure convention: log(M^2) plotted as -1 when M = 0


@dataclass(frozen=True)
class RecordPoint:
    index: int            # 1-based champion index
    l: int                # argument where the record occurs
    m: int                # record value: j(l) for J_RECORDS, sigma0(l) for HCN
    m_at_l: int | None    # M(l)
    sigma0_at_l: int | None
    j_at_l: int | None
    q_at_l: int | None    # Q(l) = sum M(floor(l/i))^2


@dataclass
class RecordSeries:
    kind: str             # "J_RECORDS" | "HCN"
    limit: int
    points: list[RecordPoint]

    def arguments(self) -> list[int]:
        return [p.l for p in self.points]

    def values(self) -> list[int]:
        return [p.m for p in self.points]


def divisors_of(x: int, spf: np.ndarray | None = None) -> list[int]:
    """Sorted divisors of x, via spf table when available, else trial division."""
    factors: list[tuple[int, int]] = []
    if spf is not None and x < len(spf):
        n = x
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    else:
        n = x
        d = 2
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                factors.append((d, e))
            d += 1 if d == 2 else 2
        if n > 1:
            factors.append((n, 1))
    divs = [1]
    for p, e in factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def j_of(x: int, m_source, spf: np.ndarray | None = None) -> int:
    """j(x) = sum over d | x of M(x/d)^2, exact."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if hasattr(m_source, "m_of"):
        lookup = m_source.m_of
    else:
        lookup = lambda v: int(m_source[v])
    total = 0
    for d in divisors_of(x, spf):
        mv = lookup(x // d)
        total += mv * mv
    return total


def j_table(limit: int, m: np.ndarray, memory_gb: float | None = None) -> np.ndarray:
    """j(x) for all x <= limit by a divisor-style sieve over M(d)^2."""
    check_budget(8 * (limit + 1), f"j table to {limit}", memory_gb)
    msq = m[: limit + 1].astype(np.int64) ** 2
    out = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        v = msq[d]
        if v:
            out[d::d] += v
    return out


def _champion_indices(values: np.ndarray) -> np.ndarray:
    """Positions (>=1) whose value strictly exceeds every earlier value."""
    run = np.maximum.accumulate(values)
    idx = np.nonzero(values[1:] > run[:-1])[0] + 1
    first = np.array([1], dtype=idx.dtype)  # x = 1 always opens the list
    return np.concatenate([first, idx[idx > 1]])


def scan_records(
    kind: str,
    limit: int,
    generate: bool = False,
    with_stats: bool = True,
    memory_gb: float | None = None,
) -> RecordSeries:
    """Complete, ordered champion list up to `limit`.

    `generate=True` (HCN only) switches to exponent-pattern candidate
    generation, which reaches far beyond a feasible direct scan; the direct
    scan remains the oracle on overlapping ranges.  `with_stats=False` skips
    the M/j/Q columns (cheap list-only scan).
    """
    kind = kind.upper()
    if kind == "J_RECORDS":
        if generate:
            raise ValueError("j records have no candidate generator; scan only")
        m = mertens_sieved(limit, memory_gb)
        jt = j_table(limit, m, memory_gb)
        idx = _champion_indices(jt)
        table = build_sieve(limit, memory_gb) if with_stats else None
        points = []
        for rank, l in enumerate(idx.tolist(), start=1):
            points.append(
                RecordPoint(
                    index=rank,
                    l=l,
                    m=int(jt[l]),
                    m_at_l=int(m[l]) if with_stats else None,
                    sigma0_at_l=int(table.sigma0[l]) if with_stats else None,
                    j_at_l=int(jt[l]),
                    q_at_l=q_sum(l, m) if with_stats else None,
                )
            )
        return RecordSeries(kind=kind, limit=limit, points=points)

    if kind != "HCN":
        raise ValueError(f"unknown record kind: {kind!r}")

    if generate:
        champions = _hcn_by_generation(limit)
    else:
        table = build_sieve(limit, memory_gb)
        sig = table.sigma0.astype(np.int64)
        idx = _champion_indices(sig)
        champions = [(int(l), int(sig[l])) for l in idx.tolist()]

    points = []
    if with_stats:
        sieve_cap = min(limit, 2_000_000)
        m_small = mertens_sieved(max(sieve_cap, 1), memory_gb)
    for rank, (l, s0) in enumerate(champions, start=1):
        if not with_stats:
            points.append(RecordPoint(rank, l, s0, None, None, None, None))
            continue
        if l <= len(m_small) - 1:
            m_src = m_small
            m_at = int(m_small[l])
        else:
            m_src = mertens_quotients(l, memory_gb=memory_gb)
            m_at = m_src.mertens_x
        points.append(
            RecordPoint(
                index=rank,
                l=l,
                m=s0,
                m_at_l=m_at,
                sigma0_at_l=s0,
                j_at_l=j_of(l, m_src),
                q_at_l=q_sum(l, m_src),
            )
        )
    return RecordSeries(kind="HCN", limit=limit, points=points)


def _hcn_by_generation(limit: int) -> list[tuple[int, int]]:
    """sigma0 records <= limit from nonincreasing exponent patterns.

    Every sigma0 record factors as 2^e1 * 3^e2 * ... with e1 >= e2 >= ...
    over consecutive primes, so enumerating those patterns (first 15 primes)
    yields a superset of the records; the strict-record filter then keeps
    exactly the champion list.
    """
    primes = primes_upto(50)[:HCN_GENERATION_PRIMES].tolist()
    candidates: list[tuple[int, int]] = []

    def extend(i: int, value: int, sigma0: int, max_exp: int) -> None:
        candidates.append((value, sigma0))
        if i >= len(primes):
            return
        p = primes[i]
        v = value
        for e in range(1, max_exp + 1):
            if v > limit // p:
                return
            v *= p
            extend(i + 1, v, sigma0 * (e + 1), e)

    extend(0, 1, 1, 64)
    candidates.sort()
    champions = []
    best = 0
    for value, s0 in candidates:
        if s0 > best:
            champions.append((value, s0))
            best = s0
    return champions


def brute_force_champions(values) -> list[tuple[int, int]]:
    """Reference champion scan over values[1:]; the test oracle."""
    best = None
    out = []
    for x in range(1, len(values)):
        v = int(values[x])
        if best is None or v > best:
            out.append((x, v))
            best = v
    return out


# ---------------------------------------------------------------------------
# figure datasets

FIGURE_KINDS = {
    2: "J_RECORDS", 4: "J_RECORDS", 5: "J_RECORDS",
    6: "HCN", 7: "HCN", 8: "HCN", 9: "HCN", 10: "HCN",
}


def _log_m_squared(m_at_l: int) -> float:
    if m_at_l == 0:
        return LOG_ZERO_SQUARE
    return log(float(m_at_l) ** 2)


def figure_series(series: RecordSeries, figure: int) -> tuple[list[str], list[list]]:
    """Header and rows for one record-based figure dataset (figs 2, 4..10).

    Rows needing log(l) or log(log(l)) in a denominator start at l >= 2.
    When M(l) = 0 the log(M(l)^2) column is emitted as -1.
    """
    if figure not in FIGURE_KINDS:
        raise ValueError(f"record series back figures 2 and 4..10, got {figure}")
    if series.kind != FIGURE_KINDS[figure]:
        raise ValueError(
            f"figure {figure} needs {FIGURE_KINDS[figure]} data, got {series.kind}"
        )
    rows = []
    if figure == 2:
        header = ["i", "l", "m", "l_over_log_m", "m_over_l", "inv_log"]
        for p in series.points:
            if p.l < 2:
                continue
            rows.append([p.index, p.l, p.m, p.l / (log(p.l) * p.m), p.m / p.l,
                         1.0 / log(p.l)])
    elif figure == 4:
        header = ["i", "l", "log_l", "log_m", "log_m_sq", "log_m_over_sigma0"]
        for p in series.points:
            rows.append([p.index, p.l, log(p.l), log(p.m),
                         _log_m_squared(p.m_at_l), log(p.m / p.sigma0_at_l)])
    elif figure == 5:
        header = ["i", "l", "abs_m_over_sqrt_l"]
        for p in series.points:
            rows.append([p.index, p.l, abs(p.m_at_l) / sqrt(p.l)])
    elif figure == 6:
        header = ["i", "l", "l_over_log_mprime", "mprime_over_l", "inv_log"]
        for p in series.points:
            if p.l < 2:
                continue
            rows.append([p.index, p.l, p.l / (log(p.l) * p.j_at_l),
                         p.j_at_l / p.l, 1.0 / log(p.l)])
    elif figure == 7:
        header = ["i", "l", "log_l_plus_loglog", "log_l", "log_mprime", "log_m_sq"]
        for p in series.points:
            if p.l < 2:
                continue
            rows.append([p.index, p.l, log(p.l) + log(log(p.l)), log(p.l),
                         log(p.j_at_l), _log_m_squared(p.m_at_l)])
    elif figure == 8:
        header = ["i", "l", "gap"]
        for p in series.points:
            if p.l < 2:
                continue
            rows.append([p.index, p.l, log(p.l) + log(log(p.l)) - log(p.j_at_l)])
    elif figure == 9:
        header = ["i", "l", "log_l_plus_half_loglog", "log_q", "log_l"]
        for p in series.points:
            if p.l < 2:
                continue
            rows.append([p.index, p.l, log(p.l) + 0.5 * log(log(p.l)),
                         log(p.q_at_l), log(p.l)])
    else:  # figure 10
        header = ["i", "l", "gap"]
        for p in series.points:
            if p.l < 2:
                continue
            rows.append([p.index, p.l,
                         log(p.l) + 0.5 * log(log(p.l)) - log(p.q_at_l)])
    return header, rows


def fmtfloat(v) -> str:
    """CSV float format: 9 significant digits."""
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmtfloat(v) for v in row) + "\n")


def write_figure_csvs(
    outdir,
    fig1_xmax: int = 1000,
    fig3_xmax: int = 10_000,
    j_limit: int = 10_000,
    hcn_limit: int = 1_000_000,
    generate_hcn: bool = False,
    tables: ScanTables | None = None,
    memory_gb: float | None = None,
) -> dict[int, str]:
    """Emit fig1.csv .. fig10.csv into `outdir`; returns {figure: path}.

    Desk-scale prefixes of the record series by default; the limits are the
    long-run knobs.
    """
    import os

    os.makedirs(outdir, exist_ok=True)
    paths: dict[int, str] = {}
    span = max(fig1_xmax, fig3_xmax)
    if tables is None:
        tables = build_scan_tables(span, memory_gb)
    if tables.limit < span:
        raise ValueError(f"tables cover {tables.limit}, figures need {span}")

    p1 = os.path.join(outdir, "fig1.csv")
    rows1 = (
        [x, float(tables.logfact[x]), int(tables.q[x]), float(tables.psi[x])]
        for x in range(1, fig1_xmax + 1)
    )
    write_csv(p1, ["x", "log_factorial", "q_sum", "psi"], rows1)
    paths[1] = p1

    jt = j_table(fig3_xmax, tables.m, memory_gb)
    p3 = os.path.join(outdir, "fig3.csv")
    rows3 = (
        [x, int(jt[x]), int(tables.q[x])] for x in range(1, fig3_xmax + 1)
    )
    write_csv(p3, ["x", "j", "q"], rows3)
    paths[3] = p3

    j_series = scan_records("J_RECORDS", j_limit, memory_gb=memory_gb)
    for fig in (2, 4, 5):
        header, rows = figure_series(j_series, fig)
        p = os.path.join(outdir, f"fig{fig}.csv")
        write_csv(p, header, rows)
        paths[fig] = p

    hcn_series = scan_records("HCN", hcn_limit, generate=generate_hcn,
                              memory_gb=memory_gb)
    for fig in (6, 7, 8, 9, 10):
        header, rows = figure_series(hcn_series, fig)
        p = os.path.join(outdir, f"fig{fig}.csv")
        write_csv(p, header, rows)
        paths[fig] = p
    return paths
