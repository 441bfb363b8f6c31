"""Command-line entry point wiring every module together.

Exit codes: 0 all checks passed; 1 at least one identity/inequality
violation (still fully reported); 2 usage or capacity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .capacity import CapacityError
from . import conjecture as conj
from . import identities as ident
from . import matrices as mat
from . import records as rec
from . import sieves
from .mertens import mertens_at, mertens_quotients, mertens_sieved


@dataclass
class RunConfig:
    """Resolved invocation: subcommand plus every knob the modules take."""

    command: str
    seed: int = 0
    threads: int = 1
    memory_gb: float | None = None
    bounds: dict = field(default_factory=dict)
    ks: tuple = (1, 2, 3)
    exact_cap: int = ident.EXACT_PRODUCT_CAP
    outputs: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mertens-lab",
        description="Mertens function computation, divisor-sum identity "
        "verification, inequality scans, and record scans.",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for spot-check sampling")
    p.add_argument("--threads", type=int, default=1, help="worker threads for scans")
    p.add_argument("--memory-gb", type=float, default=None,
                   help="memory ceiling (default 8, or MERTENS_LAB_MEM_GB)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", help="build arithmetic-function tables")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--csv", type=str, default=None,
                   help="dump n,mu,phi,lambda,omega,sigma0 rows")

    s = sub.add_parser("mertens", help="compute M(x)")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--threshold", type=int, default=None,
                   help="sieve/recursion crossover (default ~x^(2/3))")
    s.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="identity and inequality verification")
    vsub = v.add_subparsers(dest="verify_what", required=True)

    s = vsub.add_parser("identities", help="check the divisor-sum identity suite")
    s.add_argument("--xmax", type=int, default=2000)
    s.add_argument("--exact-cap", type=int, default=ident.EXACT_PRODUCT_CAP)
    s.add_argument("--k", type=str, default="1,2,3")
    s.add_argument("--json", type=str, default=None, help="write reports to file")
    s.add_argument("--ratios-x", type=int, default=None,
                   help="also run convergence-ratio checks at this x")
    s.add_argument("--ratio-band", type=float, default=0.01)
    s.add_argument("--lehman-xmax", type=int, default=None,
                   help="also check the generalized unit sum for all x,n pairs")

    s = vsub.add_parser("conjecture", help="scan the inequality chain")
    s.add_argument("--from", dest="from_x", type=int, default=2)
    s.add_argument("--to", dest="to_x", type=int, default=500_000)
    s.add_argument("--ceiling", type=int, default=conj.DEFAULT_SCAN_CEILING)
    s.add_argument("--report", type=str, default=None)
    s.add_argument("--keep-series", type=str, default=None,
                   help="write x,log_factorial,q_sum,psi rows for the range")

    sc = sub.add_parser("scan", help="champion (record) scans")
    ssub = sc.add_subparsers(dest="scan_what", required=True)

    s = ssub.add_parser("j-records", help="records of the divisor-restricted square sum")
    s.add_argument("--limit", type=int, default=rec.J_SCAN_DEFAULT_LIMIT)
    s.add_argument("--out", type=str, required=True)

    s = ssub.add_parser("hcn", help="divisor-count records (highly composite numbers)")
    s.add_argument("--limit", type=int, default=1_000_000)
    s.add_argument("--generate", action="store_true",
                   help="exponent-pattern generation instead of direct scan")
    s.add_argument("--out", type=str, required=True)

    s = sub.add_parser("redheffer", help="divisibility matrices and determinants")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--kind", type=str, default="REDHEFFER",
                   choices=["REDHEFFER", "R_PRIME", "T", "U"])
    s.add_argument("--check-det", action="store_true")
    s.add_argument("--dump", type=str, default=None, help="write the matrix as CSV")

    s = sub.add_parser("figures", help="emit fig1.csv .. fig10.csv datasets")
    s.add_argument("--outdir", type=str, required=True)
    s.add_argument("--fig1-xmax", type=int, default=1000)
    s.add_argument("--fig3-xmax", type=int, default=10_000)
    s.add_argument("--j-limit", type=int, default=10_000)
    s.add_argument("--hcn-limit", type=int, default=1_000_000)
    s.add_argument("--generate-hcn", action="store_true")

    sub.add_parser("bench", help="time the core kernels")
    return p


def run(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "sieve":
        return _cmd_sieve(args)
    if cmd == "mertens":
        return _cmd_mertens(args)
    if cmd == "verify" and args.verify_what == "identities":
        return _cmd_identities(args)
    if cmd == "verify" and args.verify_what == "conjecture":
        return _cmd_conjecture(args)
    if cmd == "scan":
        return _cmd_scan(args)
    if cmd == "redheffer":
        return _cmd_redheffer(args)
    if cmd == "figures":
        return _cmd_figures(args)
    if cmd == "bench":
        return _cmd_bench(args)
    raise ValueError(f"unknown command {cmd!r}")


def _cmd_sieve(args) -> int:
    t0 = time.perf_counter()
    table = sieves.build_sieve(args.n, args.memory_gb)
    dt = time.perf_counter() - t0
    squarefree = int((table.mu[1:] != 0).sum())
    print(f"sieve to {args.n}: {len(table.primes)} primes, "
          f"{squarefree} squarefree, {dt:.3f} s")
    if args.csv:
        sieves.dump_csv(table, args.csv)
        print(f"wrote {args.csv}")
    return 0


def _cmd_mertens(args) -> int:
    t0 = time.perf_counter()
    m = mertens_at(args.x, args.threshold, args.memory_gb)
    dt = time.perf_counter() - t0
    if args.json:
        print(json.dumps({"x": args.x, "M": m, "seconds": round(dt, 6)}))
    else:
        print(f"M({args.x}) = {m}")
        print(f"elapsed: {dt:.3f} s")
    return 0


def _parse_ks(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ValueError(f"bad k list: {text!r}")
    if not ks or any(not 1 <= k <= 3 for k in ks):
        raise ValueError(f"unsupported k list: {text!r} (supported: 1,2,3)")
    return ks


def _cmd_identities(args) -> int:
    import numpy as np

    ks = _parse_ks(args.k)
    t0 = time.perf_counter()
    limit = max(args.xmax, args.ratios_x or 1, args.lehman_xmax or 1)
    ws = ident.IdentityWorkspace(limit, args.memory_gb)
    reports = ident.identity_suite(args.xmax, args.exact_cap, ks, ws=ws)
    if args.ratios_x:
        reports.extend(ident.asymptotic_ratios(ws, args.ratios_x, ks, args.ratio_band))
    lehman_fail = 0
    if args.lehman_xmax:
        sums = ident.lehman_sums_upto(ws, args.lehman_xmax)
        for x in range(1, args.lehman_xmax + 1):
            ys = x // np.arange(1, x + 1)
            lehman_fail += int((sums[ys] != 1).sum())
    dt = time.perf_counter() - t0
    failures = [r for r in reports if not r.passed]
    for r in failures:
        print(f"FAIL {r.id} x={r.x}: lhs={r.lhs} rhs={r.rhs} margin={r.margin:.3g}")
    print(f"identities: {len(reports)} checks, {len(failures)} failures "
          f"(xmax={args.xmax}, exact cap {args.exact_cap}), {dt:.2f} s")
    if args.lehman_xmax:
        print(f"generalized unit sums to {args.lehman_xmax}: "
              f"{lehman_fail} failures")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in reports], fh, sort_keys=True, indent=1)
        print(f"wrote {args.json}")
    return 1 if failures or lehman_fail else 0


def _cmd_conjecture(args) -> int:
    if args.from_x < 1 or args.to_x < args.from_x:
        raise ValueError("need 1 <= from <= to")
    t0 = time.perf_counter()
    if args.to_x > args.ceiling:
        raise CapacityError(
            f"scan to {args.to_x} exceeds ceiling {args.ceiling} (use --ceiling)"
        )
    tables = conj.build_scan_tables(args.to_x, args.memory_gb)
    chain = conj.scan_conjecture1(args.from_x, args.to_x, tables,
                                  threads=args.threads)
    mb = conj.scan_m_bound(max(args.from_x, 2), args.to_x, tables,
                           threads=args.threads)
    checks = conj.spot_check(tables, count=16, seed=args.seed)
    spot_bad = [c for c in checks if not (c["q_ok"] and c["psi_ok"])]
    dt = time.perf_counter() - t0
    print(f"chain scan [{args.from_x}, {args.to_x}]: "
          f"{len(chain.violations)} violations, "
          f"{len(chain.out_of_claim)} out-of-claim, "
          f"min margins upper={chain.min_margin_upper:.6g} "
          f"lower={chain.min_margin_lower:.6g}")
    print(f"sqrt bound scan: {len(mb.violations)} violations, "
          f"min margin {mb.min_margin_sqrt_bound:.6g}")
    print(f"spot checks: {len(checks) - len(spot_bad)}/{len(checks)} ok; {dt:.2f} s")
    if args.keep_series:
        rec.write_csv(args.keep_series,
                      ["x", "log_factorial", "q_sum", "psi"],
                      conj.series_rows(tables, args.from_x, args.to_x))
        print(f"wrote {args.keep_series}")
    if args.report:
        out = chain.to_dict()
        out["m_bound"] = mb.to_dict()
        out["spot_checks"] = checks
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(out, fh, sort_keys=True, indent=1)
        print(f"wrote {args.report}")
    return 1 if chain.violations or mb.violations or spot_bad else 0


def _cmd_scan(args) -> int:
    t0 = time.perf_counter()
    if args.scan_what == "j-records":
        series = rec.scan_records("J_RECORDS", args.limit,
                                  memory_gb=args.memory_gb)
        header = ["i", "l", "j", "m_at_l", "sigma0", "q"]
        rows = [[p.index, p.l, p.j_at_l, p.m_at_l, p.sigma0_at_l, p.q_at_l]
                for p in series.points]
    else:
        series = rec.scan_records("HCN", args.limit, generate=args.generate,
                                  memory_gb=args.memory_gb)
        header = ["i", "l", "sigma0", "j", "m_at_l", "q"]
        rows = [[p.index, p.l, p.sigma0_at_l, p.j_at_l, p.m_at_l, p.q_at_l]
                for p in series.points]
    rec.write_csv(args.out, header, rows)
    dt = time.perf_counter() - t0
    print(f"{args.scan_what}: {len(series.points)} champions up to {args.limit}, "
          f"{dt:.2f} s -> {args.out}")
    return 0


def _cmd_redheffer(args) -> int:
    matrix = mat.build_matrix(args.kind, args.x, memory_gb=args.memory_gb)
    status = 0
    if args.check_det:
        det = mat.determinant_exact(matrix)
        if args.kind == "REDHEFFER":
            m = int(mertens_sieved(args.x)[args.x])
            word = "match" if det == m else "MISMATCH"
            print(f"det = {det}, M({args.x}) = {m}, {word}")
            status = 0 if det == m else 1
        else:
            print(f"det = {det}")
    if args.kind in ("T", "U"):
        report = mat.sum_identity_check(matrix)
        print(f"{report.id}: total={report.lhs} expected={report.rhs} "
              f"pass={report.passed}")
        status = status or (0 if report.passed else 1)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            for row in matrix.entries:
                fh.write(",".join(str(v) for v in row) + "\n")
        print(f"wrote {args.dump}")
    return status


def _cmd_figures(args) -> int:
    t0 = time.perf_counter()
    paths = rec.write_figure_csvs(
        args.outdir,
        fig1_xmax=args.fig1_xmax,
        fig3_xmax=args.fig3_xmax,
        j_limit=args.j_limit,
        hcn_limit=args.hcn_limit,
        generate_hcn=args.generate_hcn,
        memory_gb=args.memory_gb,
    )
    dt = time.perf_counter() - t0
    for fig in sorted(paths):
        print(f"fig{fig}: {paths[fig]}")
    print(f"figures: {len(paths)} datasets, {dt:.2f} s")
    return 0


def _cmd_bench(args) -> int:
    rows = []

    t0 = time.perf_counter()
    sieves.build_sieve(10**6, args.memory_gb)
    rows.append(("sieve 1e6", time.perf_counter() - t0))

    t0 = time.perf_counter()
    mertens_sieved(10**6, args.memory_gb)
    rows.append(("mertens sieve 1e6", time.perf_counter() - t0))

    t0 = time.perf_counter()
    mq = mertens_quotients(10**9, memory_gb=args.memory_gb)
    rows.append(("mertens lattice 1e9", time.perf_counter() - t0))
    del mq

    t0 = time.perf_counter()
    tables = conj.build_scan_tables(10**5, args.memory_gb)
    rows.append(("scan tables 1e5", time.perf_counter() - t0))
    del tables

    t0 = time.perf_counter()
    m = mat.build_matrix("REDHEFFER", 50)
    mat.determinant_exact(m)
    rows.append(("redheffer det 50", time.perf_counter() - t0))

    t0 = time.perf_counter()
    ident.identity_suite(200, exact_cap=100)
    rows.append(("identity suite 200", time.perf_counter() - t0))

    width = max(len(name) for name, _ in rows)
    for name, dt in rows:
        print(f"{name:<{width}}  {dt:8.3f} s")
    return 0
