"""Champion scans against brute-force oracles; figure dataset invariants."""

import math

import numpy as np
import pytest

from mertens_lab.mertens import mertens_sieved
from mertens_lab.records import (
    RecordPoint,
    RecordSeries,
    brute_force_champions,
    divisors_of,
    figure_series,
    j_of,
    j_table,
    scan_records,
    write_figure_csvs,
)
from mertens_lab.sieves import build_sieve


@pytest.fixture(scope="module")
def m10k():
    return mertens_sieved(10**4)


def test_divisors_of():
    assert divisors_of(12) == [1, 2, 3, 4, 6, 12]
    assert divisors_of(1) == [1]
    t = build_sieve(5000)
    for n in (1, 7, 360, 4999):
        naive = [d for d in range(1, n + 1) if n % d == 0]
        assert divisors_of(n) == naive
        assert divisors_of(n, t.spf) == naive


def test_j_of_examples(m10k):
    assert j_of(12, m10k) == 8
    assert j_of(1, m10k) == 1
    assert j_of(4, m10k) == 2


def test_j_table_matches_pointwise(m10k):
    jt = j_table(2000, m10k)
    for x in range(1, 2001):
        assert int(jt[x]) == j_of(x, m10k), x


def test_j_records_limit_1(m10k):
    series = scan_records("J_RECORDS", 1)
    assert [(p.l, p.m) for p in series.points] == [(1, 1)]


def test_j_records_match_brute_force_1e4(m10k):
    series = scan_records("J_RECORDS", 10**4)
    jt = j_table(10**4, m10k)
    brute = brute_force_champions(jt)
    assert [(p.l, p.m) for p in series.points] == brute


def test_champions_strictly_beat_predecessors(m10k):
    series = scan_records("J_RECORDS", 10**4)
    jt = j_table(10**4, m10k)
    ls = series.arguments()
    ms = series.values()
    assert ls == sorted(ls) and ms == sorted(ms)
    assert len(set(ls)) == len(ls) and len(set(ms)) == len(ms)
    for l, m in zip(ls, ms):
        assert int(jt[:l].max(initial=0)) < m


def test_hcn_prefix_to_130():
    series = scan_records("HCN", 130, with_stats=False)
    assert series.arguments() == [1, 2, 4, 6, 12, 24, 36, 48, 60, 120]


def test_hcn_match_brute_force_1e4():
    t = build_sieve(10**4)
    brute = brute_force_champions(t.sigma0.astype(np.int64))
    series = scan_records("HCN", 10**4, with_stats=False)
    assert [(p.l, p.m) for p in series.points] == brute


def test_hcn_generation_matches_direct_scan():
    direct = scan_records("HCN", 50_000, with_stats=False)
    generated = scan_records("HCN", 50_000, generate=True, with_stats=False)
    assert [(p.l, p.m) for p in direct.points] == \
        [(p.l, p.m) for p in generated.points]


def test_hcn_sigma0_strictly_increasing():
    series = scan_records("HCN", 10**5, with_stats=False)
    vals = series.values()
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_hcn_stats_columns(m10k):
    series = scan_records("HCN", 10**4)
    for p in series.points:
        assert p.sigma0_at_l == p.m
        assert p.m_at_l == int(m10k[p.l])
        assert p.j_at_l == j_of(p.l, m10k)


def test_generation_only_for_hcn():
    with pytest.raises(ValueError, match="no candidate generator"):
        scan_records("J_RECORDS", 100, generate=True)


def test_unknown_kind():
    with pytest.raises(ValueError, match="unknown record kind"):
        scan_records("PERFECT", 100)


def test_fig2_column_identity():
    series = scan_records("J_RECORDS", 2000)
    header, rows = figure_series(series, 2)
    assert header == ["i", "l", "m", "l_over_log_m", "m_over_l", "inv_log"]
    for row in rows:
        assert row[3] * row[4] == pytest.approx(row[5], rel=1e-12)


def test_fig9_chain_beyond_index_4():
    series = scan_records("HCN", 10**5)
    header, rows = figure_series(series, 9)
    assert header == ["i", "l", "log_l_plus_half_loglog", "log_q", "log_l"]
    checked = 0
    for row in rows:
        if row[0] > 4:
            assert row[2] > row[3] > row[4], row
            checked += 1
    assert checked >= 10


def test_log_zero_square_convention():
    # when M(l) = 0 the log(M^2) column is emitted as -1 by convention
    pt = RecordPoint(index=2, l=10, m=4, m_at_l=0, sigma0_at_l=4,
                     j_at_l=4, q_at_l=7)
    series = RecordSeries(kind="J_RECORDS", limit=10,
                          points=[pt])
    _, rows = figure_series(series, 4)
    assert rows[0][4] == -1.0


def test_wrong_kind_for_figure():
    series = scan_records("HCN", 130, with_stats=False)
    with pytest.raises(ValueError, match="needs J_RECORDS"):
        figure_series(series, 2)
    jr = scan_records("J_RECORDS", 100)
    with pytest.raises(ValueError, match="needs HCN"):
        figure_series(jr, 9)
    with pytest.raises(ValueError, match="figures 2 and 4..10"):
        figure_series(jr, 3)


def test_write_figure_csvs_deterministic(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    kw = dict(fig1_xmax=120, fig3_xmax=400, j_limit=500, hcn_limit=2000)
    p1 = write_figure_csvs(out1, **kw)
    p2 = write_figure_csvs(out2, **kw)
    assert sorted(p1) == list(range(1, 11))
    for fig in p1:
        b1 = open(p1[fig], "rb").read()
        b2 = open(p2[fig], "rb").read()
        assert b1 == b2, fig
    fig1 = open(p1[1]).read().splitlines()
    assert fig1[0] == "x,log_factorial,q_sum,psi"
    assert len(fig1) == 121
    fig3 = open(p1[3]).read().splitlines()
    assert fig3[0] == "x,j,q"


def test_fig1_ordering_in_csv(tmp_path):
    paths = write_figure_csvs(tmp_path, fig1_xmax=1000, fig3_xmax=1000,
                              j_limit=200, hcn_limit=500)
    rows = [line.split(",") for line in open(paths[1]).read().splitlines()[1:]]
    for x_s, lf_s, q_s, psi_s in rows:
        x, lf, q, psi = int(x_s), float(lf_s), int(q_s), float(psi_s)
        if x >= 8:
            assert lf > q > psi, x
