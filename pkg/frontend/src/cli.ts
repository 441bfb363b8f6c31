#!/usr/bin/env node
/**
 * render_figures <csv-dir> <out-dir> [--figures 1-10] [--format svg|png]
 */

import { pathToFileURL } from "node:url";

import { parseFigureRange, renderFigures, Format } from "./render.js";

function usage(): never {
  console.error(
    "usage: render_figures <csv-dir> <out-dir> [--figures 1-10] [--format svg|png]",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  const positional: string[] = [];
  let figures = "1-10";
  let format: Format = "svg";
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg === "--figures") {
      const v = argv[++i];
      if (!v) usage();
      figures = v;
    } else if (arg === "--format") {
      const v = argv[++i];
      if (v !== "svg" && v !== "png") usage();
      format = v;
    } else if (arg.startsWith("--")) {
      usage();
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) usage();
  const [csvDir, outDir] = positional;

  let ids: number[];
  try {
    ids = parseFigureRange(figures);
  } catch (err) {
    console.error(String(err));
    return 2;
  }
  try {
    const results = renderFigures(ids, csvDir!, outDir!, format);
    for (const r of results) {
      console.log(`fig${r.figure}: ${r.rows} rows -> ${r.outPath}`);
    }
    return 0;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? "").href) {
  process.exit(main(process.argv.slice(2)));
}
