"""Divisibility matrices: construction, determinants, sum identities."""

from fractions import Fraction

import pytest

from mertens_lab.matrices import (
    build_matrix,
    determinant_cofactor,
    determinant_exact,
    sum_identity_check,
)
from mertens_lab.mertens import mertens_sieved
from mertens_lab.identities import IdentityWorkspace, verify_theorem

# the x = 12 weighted divisibility matrix, row i scaled by M(floor(12/i))
T12 = [
    [-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, -1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 1],
]


def test_t12_matches_reference_display():
    assert build_matrix("T", 12).entries == T12


def test_t12_first_column():
    col = [row[0] for row in build_matrix("T", 12).entries]
    assert col == [-2, -1, -1, -1, 0, 0, 1, 1, 1, 1, 1, 1]


def test_r_prime_3():
    assert build_matrix("R_PRIME", 3).entries == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]


def test_r_prime_det_is_one():
    for x in (1, 2, 7, 30, 50):
        assert determinant_exact(build_matrix("R_PRIME", x)) == 1


def test_r_prime_row_ones_count():
    m = build_matrix("R_PRIME", 30)
    from mertens_lab.sieves import build_sieve

    t = build_sieve(30)
    for i, row in enumerate(m.entries, start=1):
        assert sum(row) == int(t.sigma0[i])


def test_redheffer_matches_mertens_to_50():
    M = mertens_sieved(50)
    for x in range(1, 51):
        assert determinant_exact(build_matrix("REDHEFFER", x)) == int(M[x]), x


def test_redheffer_2x2_hand_check():
    m = build_matrix("REDHEFFER", 2)
    assert m.entries == [[1, 1], [1, 1]]
    assert determinant_exact(m) == 0


def test_cofactor_oracle_agrees_small():
    for x in range(1, 7):
        m = build_matrix("REDHEFFER", x)
        assert determinant_cofactor(m) == determinant_exact(m)
        t = build_matrix("T", x)
        assert determinant_cofactor(t) == determinant_exact(t)


def test_t_zero_rows_track_zero_multipliers():
    M = mertens_sieved(12)
    t = build_matrix("T", 12)
    for i, row in enumerate(t.entries, start=1):
        is_zero_row = all(v == 0 for v in row)
        assert is_zero_row == (int(M[12 // i]) == 0)
    # rows 5 and 6 are the zero rows at x = 12
    assert all(v == 0 for v in t.entries[4]) and all(v == 0 for v in t.entries[5])


def test_u_total_is_phi_sum():
    u = build_matrix("U", 12)
    assert u.total() == 46
    rep = sum_identity_check(u)
    assert rep.passed and rep.lhs == 46


def test_u_7_totals_agree():
    u = build_matrix("U", 7)
    assert sum(u.row_sums()) == sum(u.col_sums())
    assert sum_identity_check(u).passed


def test_t_sum_check():
    rep = sum_identity_check(build_matrix("T", 1))
    assert rep.passed and rep.lhs == 1
    rep = sum_identity_check(build_matrix("T", 12))
    assert rep.passed and rep.lhs == 12


def test_t_column_sums_are_unit():
    t = build_matrix("T", 40)
    assert all(c == 1 for c in t.col_sums())


def test_u_rational_weight():
    u = build_matrix("U", 12, weight="mu2_over_phi")
    rep = sum_identity_check(u)
    assert rep.passed
    assert rep.mode == "exact_rational"
    assert isinstance(rep.rhs, Fraction)


def test_matrix_total_consistency_with_t1():
    ws = IdentityWorkspace(50)
    for x in (1, 2, 12, 37, 50):
        u = build_matrix("U", x)
        t1 = verify_theorem(ws, "T1", x)
        assert sum(u.row_sums()) == sum(u.col_sums()) == t1.lhs == t1.rhs


def test_dense_cap():
    with pytest.raises(ValueError, match="capped"):
        build_matrix("REDHEFFER", 201)


def test_unknown_kind():
    with pytest.raises(ValueError, match="unknown matrix kind"):
        build_matrix("HILBERT", 5)


def test_sum_check_needs_t_or_u():
    with pytest.raises(ValueError):
        sum_identity_check(build_matrix("R_PRIME", 5))


def test_determinant_fraction_matrix():
    u = build_matrix("U", 6, weight="mu2_over_phi")
    d_bareiss = determinant_exact(u)
    d_cofactor = determinant_cofactor(u)
    assert d_bareiss == d_cofactor
