/**
 * Read one figure's CSV, run its data invariants, and write the image.
 * Validation failures abort the figure with a nonzero exit upstream; no
 * image file is written for bad data.
 */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { join } from "node:path";

import { parseCsv, column } from "./csv.js";
import { FIGURES, FigureSpec, checkColumns } from "./figures.js";
import { renderSvg, Series } from "./svg.js";
import { renderPng } from "./png.js";

export type Format = "svg" | "png";

export interface RenderResult {
  figure: number;
  outPath: string;
  rows: number;
}

export function renderFigure(
  id: number,
  csvDir: string,
  outDir: string,
  format: Format = "svg",
): RenderResult {
  const spec = FIGURES.get(id);
  if (!spec) {
    throw new Error(`no such figure: ${id} (have 1..10)`);
  }
  const csvPath = join(csvDir, spec.csv);
  const table = parseCsv(readFileSync(csvPath, "utf-8"), spec.csv);
  checkColumns(spec, table, spec.csv);
  spec.validate(table, spec.csv);

  const xs = column(table, spec.xColumn, spec.csv);
  const series: Series[] = spec.curves.map((c) => ({
    label: c.label,
    xs,
    ys: column(table, c.column, spec.csv),
  }));

  mkdirSync(outDir, { recursive: true });
  const outPath = join(outDir, `fig${id}.${format}`);
  if (format === "svg") {
    writeFileSync(outPath, renderSvg(`Figure ${id}`, spec.yLabel, series));
  } else {
    writeFileSync(outPath, renderPng(series));
  }
  return { figure: id, outPath, rows: table.rows.length };
}

export function renderFigures(
  ids: number[],
  csvDir: string,
  outDir: string,
  format: Format = "svg",
): RenderResult[] {
  return ids.map((id) => renderFigure(id, csvDir, outDir, format));
}

export function parseFigureRange(text: string): number[] {
  const out = new Set<number>();
  for (const part of text.split(",")) {
    const m = part.match(/^(\d+)(?:-(\d+))?$/);
    if (!m) throw new Error(`bad figure selection: ${JSON.stringify(part)}`);
    const lo = Number(m[1]);
    const hi = m[2] === undefined ? lo : Number(m[2]);
    if (lo < 1 || hi > 10 || lo > hi) {
      throw new Error(`figure selection out of range 1-10: ${part}`);
    }
    for (let i = lo; i <= hi; i++) out.add(i);
  }
  return [...out].sort((a, b) => a - b);
}
