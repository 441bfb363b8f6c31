/**
 * Strict CSV reading for the figure datasets: comma-separated, one header
 * row, every data cell numeric.  Anything irregular throws with the file
 * and position named, so bad data can never slide into a plot.
 */

export class CsvError extends Error {}

export interface Table {
  header: string[];
  rows: number[][];
}

export function parseCsv(text: string, source: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${source}: empty CSV (no header row)`);
  }
  const header = lines[0]!.split(",").map((h) => h.trim());
  if (header.some((h) => h.length === 0)) {
    throw new CsvError(`${source}: blank column name in header`);
  }
  if (lines.length === 1) {
    throw new CsvError(`${source}: no data rows`);
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i]!.split(",");
    if (parts.length !== header.length) {
      throw new CsvError(
        `${source}:${i + 1}: expected ${header.length} fields, got ${parts.length}`,
      );
    }
    const row = parts.map((p) => {
      const v = Number(p);
      if (!Number.isFinite(v)) {
        throw new CsvError(`${source}:${i + 1}: non-numeric cell ${JSON.stringify(p)}`);
      }
      return v;
    });
    rows.push(row);
  }
  return { header, rows };
}

/** Index of a named column, or a loud error naming what is missing. */
export function columnIndex(table: Table, name: string, source: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      `${source}: missing column '${name}' (header: ${table.header.join(",")})`,
    );
  }
  return idx;
}

export function column(table: Table, name: string, source: string): number[] {
  const idx = columnIndex(table, name, source);
  return table.rows.map((r) => r[idx]!);
}
