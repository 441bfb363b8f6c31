"""Dense divisibility matrices and their exact determinant/sum identities.

Kinds (x-by-x, rows/columns 1-indexed by integers):

  R_PRIME   entry (i,j) = 1 iff j | i           (unit lower-triangular)
  REDHEFFER entry (i,j) = 1 iff i | j or j = 1  (det = M(x))
  T         row i of R_PRIME scaled by M(floor(x/i)); equivalently each
            column multiplied elementwise by the vector M(floor(x/1)),
            M(floor(x/2)), ... down the rows
  U         column j of T scaled by phi(j) (or another weight)

Row sums of U are M(floor(x/i)) * i and column sums are phi(j), so both
matrix totals equal A(x) = sum phi.  Column j of T sums to 1 for every j
(the generalized floor-quotient identity), so T's total is x.

Determinants are fraction-free Bareiss over exact scalars; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .identities import IdentityReport, _exact_report
from .mertens import mertens_sieved
from .sieves import build_sieve

DENSE_CAP = 200

KINDS = ("R_PRIME", "REDHEFFER", "T", "U")


@dataclass
class DivisibilityMatrix:
    x: int
    kind: str
    entries: list[list]  # exact ints (Fractions allowed for weighted U)
    weight: str | None = None

    def row_sums(self) -> list:
        return [sum(row) for row in self.entries]

    def col_sums(self) -> list:
        return [sum(row[j] for row in self.entries) for j in range(self.x)]

    def total(self):
        return sum(self.row_sums())


def build_matrix(
    kind: str,
    x: int,
    weight: str = "phi",
    cap: int = DENSE_CAP,
    memory_gb: float | None = None,
) -> DivisibilityMatrix:
    """Construct one dense matrix; x is capped (default 200) on purpose."""
    kind = kind.upper()
    if kind not in KINDS:
        raise ValueError(f"unknown matrix kind: {kind!r}")
    if not 1 <= x <= cap:
        raise ValueError(f"dense matrices capped at x={cap}, got {x}")
    if kind in ("T", "U"):
        m = mertens_sieved(x, memory_gb)
        row_scale = [int(m[x // i]) for i in range(1, x + 1)]
    if kind == "U":
        table = build_sieve(x, memory_gb)
        if weight == "phi":
            col_scale = [int(table.phi[j]) for j in range(1, x + 1)]
        elif weight == "mu2_over_phi":
            col_scale = [
                Fraction(int(table.mu[j]) ** 2, int(table.phi[j]))
                for j in range(1, x + 1)
            ]
        else:
            raise ValueError(f"unknown function id: {weight!r}")

    rows = []
    for i in range(1, x + 1):
        row = []
        for j in range(1, x + 1):
            if kind == "R_PRIME":
                v = 1 if i % j == 0 else 0
            elif kind == "REDHEFFER":
                v = 1 if (j % i == 0 or j == 1) else 0
            elif kind == "T":
                v = row_scale[i - 1] if i % j == 0 else 0
            else:  # U
                v = row_scale[i - 1] * col_scale[j - 1] if i % j == 0 else 0
            row.append(v)
        rows.append(row)
    return DivisibilityMatrix(x=x, kind=kind, entries=rows,
                              weight=weight if kind == "U" else None)


def determinant_exact(matrix: DivisibilityMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each elimination step divides by the previous pivot, which Bareiss'
    recurrence guarantees to be exact, so integer matrices never leave the
    integers; Fraction entries run through the same recurrence with `/`.
    """
    n = matrix.x
    a = [row[:] for row in matrix.entries]
    integral = all(isinstance(v, int) for row in a for v in row)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            if integral:
                for j in range(k + 1, n):
                    row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            else:
                for j in range(k + 1, n):
                    row_i[j] = (pivot * row_i[j] - aik * row_k[j]) / prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def determinant_cofactor(matrix: DivisibilityMatrix):
    """Plain cofactor expansion; the slow oracle for tiny x."""

    def det(rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        total = 0
        for j in range(n):
            if rows[0][j] == 0:
                continue
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = rows[0][j] * det(minor)
            total += term if j % 2 == 0 else -term
        return total

    return det(matrix.entries)


def sum_identity_check(matrix: DivisibilityMatrix) -> IdentityReport:
    """Row/column total consistency for T and U.

    Column j of U sums to w(j) alone (every column of T sums to 1), so U's
    grand total equals sum_{j<=x} w(j) both by rows and by columns; with the
    default phi weight that is A(x).  T's total equals x, and the check also
    verifies each of its column sums is exactly 1.
    """
    if matrix.kind not in ("T", "U"):
        raise ValueError("sum identity applies to T or U matrices")
    total_r = sum(matrix.row_sums())
    cols = matrix.col_sums()
    total_c = sum(cols)
    if matrix.kind == "U":
        table = build_sieve(matrix.x)
        if matrix.weight == "phi":
            target = int(np.sum(table.phi[1 : matrix.x + 1]))
        else:  # mu2_over_phi
            target = sum(
                Fraction(int(table.mu[j]) ** 2, int(table.phi[j]))
                for j in range(1, matrix.x + 1)
            )
        mode = "exact_int" if matrix.weight == "phi" else "exact_rational"
        report = _exact_report("U_SUM", matrix.x, total_r, target, mode)
        report.passed = report.passed and total_c == target
        return report
    report = _exact_report("T_SUM", matrix.x, total_r, matrix.x, "exact_int")
    report.passed = report.passed and total_c == matrix.x and all(c == 1 for c in cols)
    return report
