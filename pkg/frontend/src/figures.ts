/**
 * Per-figure wiring: which CSV feeds it, which columns become curves, and
 * the data invariants that must hold before anything is drawn.  A failed
 * invariant aborts the figure; plots must not mask data bugs.
 */

import { Table, column, columnIndex } from "./csv.js";

export interface Curve {
  column: string;
  label: string;
}

export interface FigureSpec {
  id: number;
  csv: string;
  xColumn: string;
  curves: Curve[];
  yLabel: string;
  logScaleY?: boolean;
  validate: (t: Table, source: string) => void;
}

function fail(source: string, message: string): never {
  throw new Error(`${source}: data invariant failed: ${message}`);
}

function strictlyIncreasing(vals: number[], name: string, source: string): void {
  for (let i = 1; i < vals.length; i++) {
    if (!(vals[i]! > vals[i - 1]!)) {
      fail(source, `${name} not strictly increasing at row ${i + 1}`);
    }
  }
}

/** col1 * col2 must equal col3 pointwise (the plotted quantities are
 *  l/(log(l)*m), m/l and 1/log(l), so their product identity is algebraic).
 *  CSV cells carry 9 significant digits, so the reparsed product can be off
 *  by a few units in the 9th digit; 5e-8 relative still flags real damage. */
function productIdentity(
  t: Table,
  a: string,
  b: string,
  c: string,
  source: string,
): void {
  const ca = column(t, a, source);
  const cb = column(t, b, source);
  const cc = column(t, c, source);
  for (let i = 0; i < ca.length; i++) {
    const lhs = ca[i]! * cb[i]!;
    const rhs = cc[i]!;
    if (Math.abs(lhs - rhs) > 5e-8 * Math.max(Math.abs(lhs), Math.abs(rhs), 1e-12)) {
      fail(source, `${a}*${b} != ${c} at row ${i + 2} (${lhs} vs ${rhs})`);
    }
  }
}

const FIG1: FigureSpec = {
  id: 1,
  csv: "fig1.csv",
  xColumn: "x",
  yLabel: "value",
  curves: [
    { column: "log_factorial", label: "log(x!)" },
    { column: "q_sum", label: "sum of M(floor(x/i))^2" },
    { column: "psi", label: "psi(x)" },
  ],
  validate(t, source) {
    const xs = column(t, "x", source);
    const lf = column(t, "log_factorial", source);
    const q = column(t, "q_sum", source);
    const psi = column(t, "psi", source);
    strictlyIncreasing(xs, "x", source);
    for (let i = 0; i < xs.length; i++) {
      if (xs[i]! >= 8 && !(lf[i]! > q[i]! && q[i]! > psi[i]!)) {
        fail(source, `ordering log(x!) > Q > psi broken at x=${xs[i]}`);
      }
    }
  },
};

const FIG2: FigureSpec = {
  id: 2,
  csv: "fig2.csv",
  xColumn: "i",
  yLabel: "ratio",
  curves: [
    { column: "l_over_log_m", label: "l/(log(l) m)" },
    { column: "m_over_l", label: "m/l" },
    { column: "inv_log", label: "1/log(l)" },
  ],
  validate(t, source) {
    strictlyIncreasing(column(t, "l", source), "l", source);
    strictlyIncreasing(column(t, "m", source), "m", source);
    productIdentity(t, "l_over_log_m", "m_over_l", "inv_log", source);
  },
};

const FIG3: FigureSpec = {
  id: 3,
  csv: "fig3.csv",
  xColumn: "x",
  yLabel: "value",
  curves: [
    { column: "j", label: "divisor-restricted square sum j(x)" },
    { column: "q", label: "sum of M(floor(x/i))^2" },
  ],
  validate(t, source) {
    const j = column(t, "j", source);
    const q = column(t, "q", source);
    strictlyIncreasing(column(t, "x", source), "x", source);
    for (let i = 0; i < j.length; i++) {
      // j sums over the divisor subset of the quotient terms, so j <= q
      if (j[i]! > q[i]!) fail(source, `j > q at row ${i + 2}`);
      if (q[i]! < 1) fail(source, `q < 1 at row ${i + 2}`);
    }
  },
};

const FIG4: FigureSpec = {
  id: 4,
  csv: "fig4.csv",
  xColumn: "i",
  yLabel: "log value",
  curves: [
    { column: "log_l", label: "log(l)" },
    { column: "log_m", label: "log(m)" },
    { column: "log_m_sq", label: "log(M(l)^2)  (-1 when M=0)" },
    { column: "log_m_over_sigma0", label: "log(m/sigma0(l))" },
  ],
  validate(t, source) {
    strictlyIncreasing(column(t, "l", source), "l", source);
    strictlyIncreasing(column(t, "log_m", source), "log_m", source);
    for (const v of column(t, "log_m_sq", source)) {
      if (v < -1) fail(source, "log_m_sq below the -1 zero convention");
    }
  },
};

const FIG5: FigureSpec = {
  id: 5,
  csv: "fig5.csv",
  xColumn: "i",
  yLabel: "|M(l)| / sqrt(l)",
  curves: [{ column: "abs_m_over_sqrt_l", label: "|M(l)|/sqrt(l)" }],
  validate(t, source) {
    strictlyIncreasing(column(t, "l", source), "l", source);
    for (const v of column(t, "abs_m_over_sqrt_l", source)) {
      if (v < 0) fail(source, "negative |M|/sqrt(l)");
    }
  },
};

const FIG6: FigureSpec = {
  id: 6,
  csv: "fig6.csv",
  xColumn: "i",
  yLabel: "ratio",
  curves: [
    { column: "l_over_log_mprime", label: "l/(log(l) m')" },
    { column: "mprime_over_l", label: "m'/l" },
    { column: "inv_log", label: "1/log(l)" },
  ],
  validate(t, source) {
    strictlyIncreasing(column(t, "l", source), "l", source);
    productIdentity(t, "l_over_log_mprime", "mprime_over_l", "inv_log", source);
  },
};

const FIG7: FigureSpec = {
  id: 7,
  csv: "fig7.csv",
  xColumn: "i",
  yLabel: "log value",
  curves: [
    { column: "log_l_plus_loglog", label: "log(l) + log(log(l))" },
    { column: "log_l", label: "log(l)" },
    { column: "log_mprime", label: "log(m')" },
    { column: "log_m_sq", label: "log(M(l)^2)  (-1 when M=0)" },
  ],
  validate(t, source) {
    const ls = column(t, "l", source);
    const top = column(t, "log_l_plus_loglog", source);
    const mid = column(t, "log_l", source);
    strictlyIncreasing(ls, "l", source);
    for (let i = 0; i < ls.length; i++) {
      if (ls[i]! >= 3 && !(top[i]! > mid[i]!)) {
        fail(source, `log(l)+log(log(l)) <= log(l) at l=${ls[i]}`);
      }
    }
  },
};

const FIG8: FigureSpec = {
  id: 8,
  csv: "fig8.csv",
  xColumn: "i",
  yLabel: "gap",
  curves: [{ column: "gap", label: "log(l) + log(log(l)) - log(m')" }],
  validate(t, source) {
    strictlyIncreasing(column(t, "l", source), "l", source);
  },
};

const FIG9: FigureSpec = {
  id: 9,
  csv: "fig9.csv",
  xColumn: "i",
  yLabel: "log value",
  curves: [
    { column: "log_l_plus_half_loglog", label: "log(l) + log(log(l))/2" },
    { column: "log_q", label: "log(sum of M(floor(l/n))^2)" },
    { column: "log_l", label: "log(l)" },
  ],
  validate(t, source) {
    const idx = column(t, "i", source);
    const top = column(t, "log_l_plus_half_loglog", source);
    const mid = column(t, "log_q", source);
    const bot = column(t, "log_l", source);
    strictlyIncreasing(column(t, "l", source), "l", source);
    for (let r = 0; r < idx.length; r++) {
      if (idx[r]! > 4 && !(top[r]! > mid[r]! && mid[r]! > bot[r]!)) {
        fail(source, `chain top > log_q > log_l broken at i=${idx[r]}`);
      }
    }
  },
};

const FIG10: FigureSpec = {
  id: 10,
  csv: "fig10.csv",
  xColumn: "i",
  yLabel: "gap",
  curves: [{ column: "gap", label: "log(l) + log(log(l))/2 - log(q)" }],
  validate(t, source) {
    const idx = column(t, "i", source);
    const gap = column(t, "gap", source);
    strictlyIncreasing(column(t, "l", source), "l", source);
    for (let r = 0; r < idx.length; r++) {
      if (idx[r]! > 4 && !(gap[r]! > 0)) {
        fail(source, `gap <= 0 at i=${idx[r]}`);
      }
    }
  },
};

export const FIGURES: ReadonlyMap<number, FigureSpec> = new Map(
  [FIG1, FIG2, FIG3, FIG4, FIG5, FIG6, FIG7, FIG8, FIG9, FIG10].map((f) => [f.id, f]),
);

/** Ensure every curve column exists before validation/drawing. */
export function checkColumns(spec: FigureSpec, table: Table, source: string): void {
  columnIndex(table, spec.xColumn, source);
  for (const curve of spec.curves) {
    columnIndex(table, curve.column, source);
  }
}
