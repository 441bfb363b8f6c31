/**
 * Optional PNG output: a bare RGBA framebuffer with Bresenham polylines,
 * encoded with node's zlib.  No text labels; the SVG is the primary format,
 * PNG exists for consumers that cannot take vector output.
 */

import { deflateSync } from "node:zlib";
import { Series, WIDTH, HEIGHT, PALETTE, extent } from "./svg.js";

const MARGIN = { left: 70, right: 20, top: 40, bottom: 46 };

class Raster {
  data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, r: number, g: number, b: number): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const o = (y * this.width + x) * 4;
    this.data[o] = r;
    this.data[o + 1] = g;
    this.data[o + 2] = b;
    this.data[o + 3] = 255;
  }

  line(x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number]): void {
    let [r, g, b] = rgb;
    let dx = Math.abs(x1 - x0);
    let dy = -Math.abs(y1 - y0);
    const sx = x0 < x1 ? 1 : -1;
    const sy = y0 < y1 ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x0, y0, r, g, b);
      if (x0 === x1 && y0 === y1) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }
}

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const byte of buf) {
    c = CRC_TABLE[(c ^ byte) & 0xff]! ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const head = Buffer.alloc(4);
  head.writeUInt32BE(payload.length);
  const body = Buffer.concat([Buffer.from(type, "ascii"), payload]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body));
  return Buffer.concat([head, body, crc]);
}

export function encodePng(raster: Raster): Buffer {
  const { width, height, data } = raster;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const raw = Buffer.alloc(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 4);
    raw[rowStart] = 0; // filter: none
    raw.set(data.subarray(y * width * 4, (y + 1) * width * 4), rowStart + 1);
  }
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}

export function renderPng(series: Series[]): Buffer {
  const raster = new Raster(WIDTH, HEIGHT);
  const dx = extent(series.flatMap((s) => s.xs));
  const dy = extent(series.flatMap((s) => s.ys));
  const sx = (v: number) =>
    Math.round(
      MARGIN.left + ((v - dx.min) / (dx.max - dx.min)) * (WIDTH - MARGIN.left - MARGIN.right),
    );
  const sy = (v: number) =>
    Math.round(
      HEIGHT - MARGIN.bottom - ((v - dy.min) / (dy.max - dy.min)) * (HEIGHT - MARGIN.top - MARGIN.bottom),
    );

  const frame: [number, number, number] = [51, 51, 51];
  raster.line(MARGIN.left, MARGIN.top, WIDTH - MARGIN.right, MARGIN.top, frame);
  raster.line(MARGIN.left, HEIGHT - MARGIN.bottom, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, frame);
  raster.line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, frame);
  raster.line(WIDTH - MARGIN.right, MARGIN.top, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, frame);

  series.forEach((s, i) => {
    const rgb = hexToRgb(PALETTE[i % PALETTE.length]!);
    for (let j = 1; j < s.xs.length; j++) {
      raster.line(sx(s.xs[j - 1]!), sy(s.ys[j - 1]!), sx(s.xs[j]!), sy(s.ys[j]!), rgb);
    }
  });
  return encodePng(raster);
}
