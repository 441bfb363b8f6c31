/**
 * Minimal deterministic SVG line charts: fixed canvas, fixed palette, all
 * numbers printed through one formatter, so identical data yields an
 * identical byte stream.
 */

export interface Series {
  label: string;
  xs: number[];
  ys: number[];
}

export const WIDTH = 960;
export const HEIGHT = 600;
const MARGIN = { left: 70, right: 20, top: 40, bottom: 46 };

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

export function fmt(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`non-finite coordinate ${v}`);
  const s = v.toPrecision(8);
  return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
}

export interface Extent {
  min: number;
  max: number;
}

export function extent(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (min === max) {
    min -= 1;
    max += 1;
  }
  return { min, max };
}

function scale(domain: Extent, rangeLo: number, rangeHi: number) {
  const span = domain.max - domain.min;
  return (v: number) => rangeLo + ((v - domain.min) / span) * (rangeHi - rangeLo);
}

export function ticks(domain: Extent, count: number): number[] {
  const span = domain.max - domain.min;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / (count * step);
  const mult = err >= 7.5 ? 10 : err >= 3 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const out: number[] = [];
  for (let v = Math.ceil(domain.min / s) * s; v <= domain.max + s / 1e6; v += s) {
    out.push(Math.abs(v) < s / 1e6 ? 0 : v);
  }
  return out;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderSvg(title: string, yLabel: string, series: Series[]): string {
  const allX = series.flatMap((s) => s.xs);
  const allY = series.flatMap((s) => s.ys);
  const dx = extent(allX);
  const dy = extent(allY);
  const sx = scale(dx, MARGIN.left, WIDTH - MARGIN.right);
  const sy = scale(dy, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="monospace" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-size="15">${esc(title)}</text>`,
  );

  for (const t of ticks(dx, 8)) {
    const px = fmt(sx(t));
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${HEIGHT - MARGIN.bottom}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${px}" y="${HEIGHT - MARGIN.bottom + 16}" text-anchor="middle">` +
        `${esc(fmt(t))}</text>`,
    );
  }
  for (const t of ticks(dy, 6)) {
    const py = fmt(sy(t));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" y2="${py}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${py}" text-anchor="end" ` +
        `dominant-baseline="middle">${esc(fmt(t))}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${WIDTH - MARGIN.left - MARGIN.right}" ` +
      `height="${HEIGHT - MARGIN.top - MARGIN.bottom}" fill="none" stroke="#333333"/>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.xs.map((x, j) => `${fmt(sx(x))},${fmt(sy(s.ys[j]!))}`).join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
    const ly = MARGIN.top + 16 + i * 16;
    parts.push(
      `<line x1="${WIDTH - 260}" y1="${ly - 4}" x2="${WIDTH - 236}" y2="${ly - 4}" ` +
        `stroke="${color}" stroke-width="3"/>`,
    );
    parts.push(`<text x="${WIDTH - 230}" y="${ly}">${esc(s.label)}</text>`);
  });

  parts.push(
    `<text x="16" y="${HEIGHT / 2}" transform="rotate(-90 16 ${HEIGHT / 2})" ` +
      `text-anchor="middle">${esc(yLabel)}</text>`,
  );
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
