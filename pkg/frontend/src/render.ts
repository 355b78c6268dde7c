/**
 * Pure CSV-to-SVG figure rendering for effpot harness sweeps.
 *
 * The renderer never recomputes physics: it consumes the harness CSV
 * schema (header row `abscissa, strategy:<name>, ..., reldiff:..., terms:...`)
 * bit-exactly and draws the requested columns against the abscissa.
 * Output is deterministic: fixed styling, fixed number formatting, no
 * timestamps or generator metadata.
 */

import * as fs from "node:fs";

export interface FigureSpec {
  /** path of a harness-produced CSV file */
  input: string;
  /** column names to plot; bare strategy names resolve to strategy:<name> */
  columns: string[];
  title?: string;
  xlabel?: string;
  ylabel?: string;
  /** output image path (.svg) */
  output: string;
}

export interface Table {
  header: string[];
  rows: number[][];
}

export class MissingColumnError extends Error {
  constructor(public readonly column: string, header: string[]) {
    super(`column "${column}" not found in CSV header [${header.join(", ")}]`);
  }
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: no header row");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const rows = lines.slice(1).map((line) => line.split(",").map(Number));
  if (rows.length === 0) {
    throw new Error("empty CSV: header only, no data rows");
  }
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new Error(
        `malformed CSV row: expected ${header.length} cells, got ${row.length}`,
      );
    }
  }
  return { header, rows };
}

/** Resolve a requested column against the header, allowing bare strategy names. */
export function resolveColumn(header: string[], name: string): number {
  let idx = header.indexOf(name);
  if (idx < 0) idx = header.indexOf(`strategy:${name}`);
  if (idx < 0) throw new MissingColumnError(name, header);
  return idx;
}

const WIDTH = 800;
const HEIGHT = 520;
const MARGIN = { left: 86, right: 24, top: 44, bottom: 56 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

function fmt(x: number): string {
  // fixed two-decimal pixel coordinates keep the output byte-stable
  return x.toFixed(2);
}

function niceTicks(lo: number, hi: number, n = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / (n - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const candidates = [1, 2, 2.5, 5, 10].map((c) => c * mag);
  const step = candidates.find((c) => span / c <= n - 1) ?? candidates[4];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = start; t <= hi + 1e-12 * span; t += step) {
    ticks.push(Math.abs(t) < 1e-12 * span ? 0 : t);
  }
  return ticks;
}

function tickLabel(x: number): string {
  if (x === 0) return "0";
  const ax = Math.abs(x);
  if (ax >= 1e4 || ax < 1e-3) return x.toExponential(2);
  return String(parseFloat(x.toPrecision(6)));
}

interface Series {
  name: string;
  points: Array<{ x: number; y: number }>;
}

/** Extract the plotted series; NaN cells break the polyline. */
export function extractSeries(table: Table, columns: string[]): Series[] {
  const xi = resolveColumn(table.header, "abscissa");
  return columns.map((name) => {
    const ci = resolveColumn(table.header, name);
    const points = table.rows
      .map((r) => ({ x: r[xi], y: r[ci] }))
      .filter((p) => Number.isFinite(p.x) && Number.isFinite(p.y));
    return { name, points };
  });
}

export function renderSvg(table: Table, spec: FigureSpec): string {
  const series = extractSeries(table, spec.columns);
  const all = series.flatMap((s) => s.points);
  if (all.length === 0) {
    throw new Error("nothing to plot: all requested cells are non-finite");
  }
  const xs = all.map((p) => p.x);
  const ys = all.map((p) => p.y);
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (xHi === xLo) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  if (yHi === yLo) {
    yLo -= 0.5;
    yHi += 0.5;
  }
  const yPad = 0.05 * (yHi - yLo);
  yLo -= yPad;
  yHi += yPad;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const py = (y: number) => MARGIN.top + (1 - (y - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333" stroke-width="1"/>`,
  );

  for (const t of niceTicks(xLo, xHi)) {
    const x = px(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top + plotH}" x2="${fmt(x)}" y2="${MARGIN.top + plotH + 5}" stroke="#333"/>`,
    );
    parts.push(
      `<text x="${fmt(x)}" y="${MARGIN.top + plotH + 20}" font-family="sans-serif" font-size="12" text-anchor="middle">${tickLabel(t)}</text>`,
    );
  }
  for (const t of niceTicks(yLo, yHi)) {
    const y = py(t);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${fmt(y)}" x2="${MARGIN.left}" y2="${fmt(y)}" stroke="#333"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 9}" y="${fmt(y + 4)}" font-family="sans-serif" font-size="12" text-anchor="end">${tickLabel(t)}</text>`,
    );
  }

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.points.map((p) => `${fmt(px(p.x))},${fmt(py(p.y))}`).join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.8" data-series="${s.name}"/>`,
    );
    const ly = MARGIN.top + 14 + 18 * i;
    const lx = WIDTH - MARGIN.right - 150;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 26}" y2="${ly - 4}" stroke="${color}" stroke-width="1.8"/>`,
    );
    parts.push(
      `<text x="${lx + 32}" y="${ly}" font-family="sans-serif" font-size="13">${s.name}</text>`,
    );
  });

  if (spec.title) {
    parts.push(
      `<text x="${WIDTH / 2}" y="26" font-family="sans-serif" font-size="16" text-anchor="middle">${spec.title}</text>`,
    );
  }
  const xlabel = spec.xlabel ?? "m/T";
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 14}" font-family="sans-serif" font-size="14" text-anchor="middle">${xlabel}</text>`,
  );
  const ylabel = spec.ylabel ?? "V / m^(d+1)";
  parts.push(
    `<text x="20" y="${MARGIN.top + plotH / 2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${ylabel}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Render one figure; errors (missing column, empty CSV) leave no file behind. */
export function render(spec: FigureSpec): void {
  if (!spec.output.endsWith(".svg")) {
    throw new Error(
      `unsupported output format for "${spec.output}": this renderer emits SVG`,
    );
  }
  const text = fs.readFileSync(spec.input, "utf-8");
  const table = parseCsv(text);
  const svg = renderSvg(table, spec);
  fs.writeFileSync(spec.output, svg, "utf-8");
}
