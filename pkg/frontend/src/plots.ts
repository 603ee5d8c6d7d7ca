/**
 * SVG figure rendering. No chart library: every figure is a small, fully
 * deterministic string build, so identical CSV input yields identical SVG.
 *
 * Three figure kinds:
 *   lines_vs_k     performance vs K, one line per (variant, density) series,
 *                  log2 K axis, density graded by opacity
 *   unroll_heatmap UF x K cells, annotated with the best value across the
 *                  remaining knobs
 *   oi_heatmap     K x density cells, annotated with flops/byte computed
 *                  from each row's dimensions
 */

import { BenchRow, sparsityLabel, sparsityValue } from "./schema.js";

export type PlotKind = "lines_vs_k" | "unroll_heatmap" | "oi_heatmap";

export const PLOT_KINDS: readonly PlotKind[] = ["lines_vs_k", "unroll_heatmap", "oi_heatmap"];

export interface PlotSpec {
  kind: PlotKind;
  /** Horizontal reference line, in flops/cycle. Drawn only when the data
   * itself is in flops/cycle. */
  peak?: number | null;
}

/** Thrown when rows cannot feed the requested figure (not a schema issue). */
export class PlotDataError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "PlotDataError";
  }
}

const WIDTH = 760;
const HEIGHT = 460;
const MARGIN = { top: 44, right: 180, bottom: 56, left: 78 };
const PALETTE = [
  "#1f5fa8",
  "#c23d2e",
  "#2e8540",
  "#8047ad",
  "#bf7b16",
  "#11808a",
  "#74525f",
  "#4a6b1d",
  "#9f3a70",
];

const esc = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");

const log2 = (v: number): number => Math.log2(v);

/** Compact engineering notation: 1234567 -> "1.23M". */
export function engineering(v: number): string {
  const units: Array<[number, string]> = [
    [1e12, "T"],
    [1e9, "G"],
    [1e6, "M"],
    [1e3, "k"],
  ];
  for (const [scale, suffix] of units) {
    if (Math.abs(v) >= scale) {
      return `${(v / scale).toPrecision(3)}${suffix}`;
    }
  }
  return v.toPrecision(3);
}

interface Metric {
  pick: (r: BenchRow) => number;
  label: string;
  perCycle: boolean;
  format: (v: number) => string;
}

/** Prefer flops/cycle whenever every row carries it; it is the
 * machine-normalized axis. Otherwise fall back to flops/s. */
function chooseMetric(rows: BenchRow[]): Metric {
  const allCycles = rows.length > 0 && rows.every((r) => r.flopsPerCycle !== null);
  if (allCycles) {
    return {
      pick: (r) => r.flopsPerCycle as number,
      label: "flops/cycle",
      perCycle: true,
      format: (v) => v.toFixed(2),
    };
  }
  return {
    pick: (r) => r.flopsPerSec,
    label: "flops/s",
    perCycle: false,
    format: engineering,
  };
}

function svgOpen(title: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${esc(title)}</text>\n`
  );
}

function emptyFigure(title: string): string {
  return (
    svgOpen(title) +
    `<text x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle" font-size="14" ` +
    `fill="#888">no data rows</text>\n</svg>\n`
  );
}

function axisLabels(xLabel: string, yLabel: string): string {
  const cx = MARGIN.left + (WIDTH - MARGIN.left - MARGIN.right) / 2;
  const cy = MARGIN.top + (HEIGHT - MARGIN.top - MARGIN.bottom) / 2;
  return (
    `<text x="${cx}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">${esc(xLabel)}</text>\n` +
    `<text x="20" y="${cy}" text-anchor="middle" font-size="13" ` +
    `transform="rotate(-90 20 ${cy})">${esc(yLabel)}</text>\n`
  );
}

// ---------------------------------------------------------------------------
// lines_vs_k
// ---------------------------------------------------------------------------

interface Series {
  name: string;
  variant: string;
  density: number;
  points: Array<{ k: number; y: number }>;
}

function buildSeries(rows: BenchRow[], metric: Metric): Series[] {
  const byKey = new Map<string, Series>();
  for (const row of rows) {
    const key = `${row.variant}|${sparsityLabel(row)}`;
    let s = byKey.get(key);
    if (!s) {
      s = {
        name: `${row.variant} s=${sparsityLabel(row)}`,
        variant: row.variant,
        density: sparsityValue(row),
        points: [],
      };
      byKey.set(key, s);
    }
    s.points.push({ k: row.K, y: metric.pick(row) });
  }
  const list = [...byKey.values()];
  for (const s of list) {
    s.points.sort((a, b) => a.k - b.k);
  }
  list.sort((a, b) => a.variant.localeCompare(b.variant) || b.density - a.density);
  return list;
}

export function linesVsK(rows: BenchRow[], peak: number | null = null): string {
  const title = "performance vs K";
  if (rows.length === 0) return emptyFigure(title);
  const metric = chooseMetric(rows);
  const series = buildSeries(rows, metric);

  const ks = [...new Set(rows.map((r) => r.K))].sort((a, b) => a - b);
  const x0 = log2(ks[0] as number);
  const x1 = log2(ks[ks.length - 1] as number);
  const span = x1 - x0 || 1;
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (k: number): number => MARGIN.left + ((log2(k) - x0) / span) * plotW;

  let yMax = Math.max(...rows.map((r) => metric.pick(r)));
  if (peak !== null && metric.perCycle) yMax = Math.max(yMax, peak);
  yMax *= 1.06;
  const sy = (v: number): number => MARGIN.top + plotH - (v / yMax) * plotH;

  let out = svgOpen(title);
  out += `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#444"/>\n`;

  for (const k of ks) {
    const x = sx(k);
    out += `<line x1="${x.toFixed(1)}" y1="${MARGIN.top + plotH}" x2="${x.toFixed(1)}" y2="${MARGIN.top + plotH + 5}" stroke="#444"/>\n`;
    out += `<text x="${x.toFixed(1)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">${k}</text>\n`;
  }
  const yTicks = 5;
  for (let i = 0; i <= yTicks; i++) {
    const v = (yMax * i) / yTicks;
    const y = sy(v);
    out += `<line x1="${MARGIN.left - 5}" y1="${y.toFixed(1)}" x2="${MARGIN.left}" y2="${y.toFixed(1)}" stroke="#444"/>\n`;
    out += `<line x1="${MARGIN.left}" y1="${y.toFixed(1)}" x2="${MARGIN.left + plotW}" y2="${y.toFixed(1)}" stroke="#eee"/>\n`;
    out += `<text x="${MARGIN.left - 9}" y="${(y + 4).toFixed(1)}" text-anchor="end" font-size="11">${metric.format(v)}</text>\n`;
  }

  // opacity grades density inside each variant: sparser lines fade
  const densities = [...new Set(series.map((s) => s.density))].sort((a, b) => b - a);
  const opacityOf = (d: number): number => {
    const rank = densities.indexOf(d);
    return densities.length > 1 ? 1 - (0.6 * rank) / (densities.length - 1) : 1;
  };
  const variants = [...new Set(series.map((s) => s.variant))];

  series.forEach((s) => {
    const color = PALETTE[variants.indexOf(s.variant) % PALETTE.length];
    const opacity = opacityOf(s.density).toFixed(2);
    const pts = s.points.map((p) => `${sx(p.k).toFixed(1)},${sy(p.y).toFixed(1)}`).join(" ");
    out += `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="2" stroke-opacity="${opacity}"/>\n`;
    for (const p of s.points) {
      out += `<circle cx="${sx(p.k).toFixed(1)}" cy="${sy(p.y).toFixed(1)}" r="3" fill="${color}" fill-opacity="${opacity}"/>\n`;
    }
  });

  if (peak !== null && metric.perCycle) {
    const y = sy(peak);
    out += `<line x1="${MARGIN.left}" y1="${y.toFixed(1)}" x2="${MARGIN.left + plotW}" y2="${y.toFixed(1)}" stroke="#222" stroke-dasharray="6 4"/>\n`;
    out += `<text x="${MARGIN.left + plotW - 4}" y="${(y - 5).toFixed(1)}" text-anchor="end" font-size="11">peak ${peak.toFixed(2)}</text>\n`;
  }

  const lx = WIDTH - MARGIN.right + 12;
  series.forEach((s, i) => {
    const color = PALETTE[variants.indexOf(s.variant) % PALETTE.length];
    const y = MARGIN.top + 12 + i * 18;
    out += `<line x1="${lx}" y1="${y - 4}" x2="${lx + 22}" y2="${y - 4}" stroke="${color}" stroke-width="2" stroke-opacity="${opacityOf(s.density).toFixed(2)}"/>\n`;
    out += `<text x="${lx + 28}" y="${y}" font-size="11">${esc(s.name)}</text>\n`;
  });

  out += axisLabels("K (log2 axis)", metric.label);
  return out + "</svg>\n";
}

// ---------------------------------------------------------------------------
// heatmap chrome shared by both heatmap kinds
// ---------------------------------------------------------------------------

interface HeatCell {
  col: number;
  row: number;
  value: number;
  text: string;
}

function heatColor(t: number): string {
  // white -> deep blue; t in [0, 1]
  const mix = (a: number, b: number): number => Math.round(a + (b - a) * t);
  return `rgb(${mix(255, 20)},${mix(255, 70)},${mix(255, 140)})`;
}

function heatmap(
  title: string,
  colLabels: string[],
  rowLabels: string[],
  cells: HeatCell[],
  xLabel: string,
  yLabel: string,
): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right + 120;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const cw = plotW / colLabels.length;
  const ch = plotH / rowLabels.length;
  const values = cells.map((c) => c.value);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const norm = (v: number): number => (hi > lo ? (v - lo) / (hi - lo) : 0.5);

  let out = svgOpen(title);
  for (const cell of cells) {
    const x = MARGIN.left + cell.col * cw;
    const y = MARGIN.top + cell.row * ch;
    const t = norm(cell.value);
    out += `<rect x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${cw.toFixed(1)}" height="${ch.toFixed(1)}" fill="${heatColor(t)}" stroke="white"/>\n`;
    const textColor = t > 0.55 ? "white" : "black";
    out += `<text x="${(x + cw / 2).toFixed(1)}" y="${(y + ch / 2 + 4).toFixed(1)}" text-anchor="middle" font-size="11" fill="${textColor}">${esc(cell.text)}</text>\n`;
  }
  colLabels.forEach((label, i) => {
    const x = MARGIN.left + (i + 0.5) * cw;
    out += `<text x="${x.toFixed(1)}" y="${MARGIN.top + plotH + 16}" text-anchor="middle" font-size="11">${esc(label)}</text>\n`;
  });
  rowLabels.forEach((label, i) => {
    const y = MARGIN.top + (i + 0.5) * ch;
    out += `<text x="${MARGIN.left - 8}" y="${(y + 4).toFixed(1)}" text-anchor="end" font-size="11">${esc(label)}</text>\n`;
  });
  out += axisLabels(xLabel, yLabel);
  return out + "</svg>\n";
}

// ---------------------------------------------------------------------------
// unroll_heatmap
// ---------------------------------------------------------------------------

export function unrollHeatmap(rows: BenchRow[]): string {
  const title = "tuning sweep: best value per (UF, K)";
  if (rows.length === 0) return emptyFigure(title);
  const usable = rows.filter((r) => r.UF !== null);
  if (usable.length === 0) {
    throw new PlotDataError("unroll_heatmap needs rows with a UF value; none found");
  }
  const metric = chooseMetric(usable);
  const ks = [...new Set(usable.map((r) => r.K))].sort((a, b) => a - b);
  const ufs = [...new Set(usable.map((r) => r.UF as number))].sort((a, b) => a - b);

  // collapse every other knob (MR, NR, ...) by taking the best result
  const best = new Map<string, number>();
  for (const r of usable) {
    const key = `${r.UF}|${r.K}`;
    const v = metric.pick(r);
    const prev = best.get(key);
    if (prev === undefined || v > prev) best.set(key, v);
  }

  const cells: HeatCell[] = [];
  ufs.forEach((uf, rowIdx) => {
    ks.forEach((k, colIdx) => {
      const v = best.get(`${uf}|${k}`);
      if (v !== undefined) {
        cells.push({ col: colIdx, row: rowIdx, value: v, text: metric.format(v) });
      }
    });
  });
  return heatmap(
    title,
    ks.map(String),
    ufs.map(String),
    cells,
    "K",
    `UF (cell: max ${metric.label})`,
  );
}

// ---------------------------------------------------------------------------
// oi_heatmap
// ---------------------------------------------------------------------------

/** Flops per byte for the two-array offset/index layout, recomputed from a
 * row's dimensions. Mirrors the producer's cost model: nnz = N*round(s*K),
 * weight bytes = 4*(2*(N+1) + nnz), plus the float32 X, Y, and bias. */
export function operationalIntensity(row: BenchRow): number {
  const nnzPerCol = Math.round((row.sparsityNum * row.K) / row.sparsityDen);
  const nnz = row.N * nnzPerCol;
  const flops = row.M * row.N + row.M * nnz;
  const bytes = 4 * (2 * (row.N + 1) + nnz) + 4 * row.M * row.K + 4 * row.M * row.N + 4 * row.N;
  return flops / bytes;
}

export function oiHeatmap(rows: BenchRow[]): string {
  const title = "operational intensity (flops/byte)";
  if (rows.length === 0) return emptyFigure(title);
  const ks = [...new Set(rows.map((r) => r.K))].sort((a, b) => a - b);
  const labels = new Map<string, number>(); // label -> density, for row order
  for (const r of rows) labels.set(sparsityLabel(r), sparsityValue(r));
  const sLabels = [...labels.entries()].sort((a, b) => b[1] - a[1]).map(([l]) => l);

  const seen = new Map<string, number>();
  for (const r of rows) {
    const key = `${sparsityLabel(r)}|${r.K}`;
    if (!seen.has(key)) seen.set(key, operationalIntensity(r));
  }
  const cells: HeatCell[] = [];
  sLabels.forEach((sl, rowIdx) => {
    ks.forEach((k, colIdx) => {
      const v = seen.get(`${sl}|${k}`);
      if (v !== undefined) {
        cells.push({ col: colIdx, row: rowIdx, value: v, text: v.toFixed(2) });
      }
    });
  });
  return heatmap(title, ks.map(String), sLabels.map((l) => `s=${l}`), cells, "K", "density");
}

// ---------------------------------------------------------------------------

export function renderPlot(kind: PlotKind, rows: BenchRow[], peak: number | null = null): string {
  switch (kind) {
    case "lines_vs_k":
      return linesVsK(rows, peak);
    case "unroll_heatmap":
      return unrollHeatmap(rows);
    case "oi_heatmap":
      return oiHeatmap(rows);
  }
}
