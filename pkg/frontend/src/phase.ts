/**
 * Phase-diagram rendering: empirical success rate over the signal plane.
 *
 * Cells are aggregate rows placed at (coord_x, coord_y) = (user signal,
 * attribute signal) in units of ln n.  Overlaid curves are the finite-n
 * surrogate boundaries of the two guarantee regions; in these coordinates
 * the sum condition is the line x + y = 1 + epsilon, the attribute-signal
 * split is the horizontal line y = 1, and the user-signal requirement is a
 * vertical line at 1 + gap/ln n.
 */

import { createHash } from "node:crypto";
import { readFileSync, writeFileSync } from "node:fs";

import { parseSweepCsv, SchemaError, SweepRow } from "./schema.js";
import { axes, DEFAULT_FRAME, linearScale, rateColor, Svg } from "./svg.js";

const OMEGA_ONE_GAP = 3.0; // matches the harness surrogate for "omega(1)"

export interface PhaseCell {
  coordX: number;
  coordY: number;
  rate: number;
  trials: number;
  n: number;
  m: number;
  algo: string;
  thm1Feasible: boolean;
  thm2Feasible: boolean;
}

export interface CurveSpec {
  name: string;
  points: Array<[number, number]>;
}

export interface PhaseData {
  cells: PhaseCell[];
  curves: CurveSpec[];
  epsilon: number;
  modalN: number;
  csvSha256: string;
}

export interface PhaseResult {
  svg: string;
  data: PhaseData;
}

function modal<T>(values: T[]): T {
  const counts = new Map<T, number>();
  for (const v of values) counts.set(v, (counts.get(v) ?? 0) + 1);
  return [...counts.entries()].sort((a, b) => b[1] - a[1])[0][0];
}

function pickAlgo(aggregates: SweepRow[], algo?: string): SweepRow[] {
  const algos = [...new Set(aggregates.map((r) => r.algo))];
  if (algo !== undefined) {
    const kept = aggregates.filter((r) => r.algo === algo);
    if (kept.length === 0) throw new SchemaError(`no aggregate rows for algo ${algo}; present: ${algos.join(", ")}`);
    return kept;
  }
  if (algos.length > 1) {
    throw new SchemaError(`CSV contains several algorithms (${algos.join(", ")}); pass --algo to choose one`);
  }
  return aggregates;
}

export function renderPhaseDiagram(csvText: string, algo?: string): PhaseResult {
  const table = parseSweepCsv(csvText);
  if (table.aggregates.length === 0) throw new SchemaError("no aggregate rows to plot");
  const rows = pickAlgo(table.aggregates, algo);

  const cells: PhaseCell[] = rows.map((r) => ({
    coordX: r.coordX,
    coordY: r.coordY,
    rate: r.success,
    trials: r.trial,
    n: r.n,
    m: r.m,
    algo: r.algo,
    thm1Feasible: r.thm1Feasible,
    thm2Feasible: r.thm2Feasible,
  }));

  const epsilon = rows[0].epsilon;
  const modalN = modal(rows.map((r) => r.n));
  const logN = Math.log(modalN);

  const xs = cells.map((c) => c.coordX);
  const ys = cells.map((c) => c.coordY);
  const xMax = Math.max(...xs, 1 + epsilon, 1 + OMEGA_ONE_GAP / logN) * 1.15 + 0.1;
  const yMax = Math.max(...ys, 1 + epsilon, 1.2) * 1.15 + 0.1;

  const sample = (f: (t: number) => [number, number], lo: number, hi: number, steps = 64): Array<[number, number]> => {
    const pts: Array<[number, number]> = [];
    for (let i = 0; i <= steps; i++) pts.push(f(lo + ((hi - lo) * i) / steps));
    return pts;
  };

  const curves: CurveSpec[] = [
    // combined-signal requirement: x + y = 1 + epsilon
    { name: "sum_condition", points: sample((t) => [t, 1 + epsilon - t], 0, Math.min(xMax, 1 + epsilon)) },
    // attribute-signal split between the two regimes: y = 1
    { name: "attr_signal_split", points: sample((t) => [t, 1], 0, xMax) },
    // user-signal requirement of the sparse regime: x = 1 + gap/ln n
    { name: "user_signal_floor", points: sample((t) => [1 + OMEGA_ONE_GAP / logN, t], 0, yMax) },
  ];

  const hash = createHash("sha256").update(csvText).digest("hex");
  const frame = DEFAULT_FRAME;
  const svg = new Svg(frame);
  const xScale = linearScale([0, xMax], [frame.margin.left, frame.width - frame.margin.right]);
  const yScale = linearScale([0, yMax], [frame.height - frame.margin.bottom, frame.margin.top]);

  // cell half-extent: half the smallest gap between distinct coordinates
  const gaps = (values: number[]) => {
    const uniq = [...new Set(values)].sort((a, b) => a - b);
    let best = Infinity;
    for (let i = 1; i < uniq.length; i++) best = Math.min(best, uniq[i] - uniq[i - 1]);
    return Number.isFinite(best) ? best : 1;
  };
  const halfW = Math.min(gaps(xs), xMax / 12) / 2;
  const halfH = Math.min(gaps(ys), yMax / 12) / 2;

  for (const cell of cells) {
    const x = xScale(cell.coordX - halfW);
    const y = yScale(cell.coordY + halfH);
    const w = xScale(cell.coordX + halfW) - x;
    const h = yScale(cell.coordY - halfH) - y;
    svg.rect(x, y, w, h, rateColor(cell.rate), 'stroke="#333" stroke-width="0.5"');
  }
  const colors: Record<string, string> = {
    sum_condition: "#d62728",
    attr_signal_split: "#2ca02c",
    user_signal_floor: "#9467bd",
  };
  for (const curve of curves) {
    const pts = curve.points
      .filter(([x, y]) => x >= 0 && y >= 0 && x <= xMax && y <= yMax)
      .map(([x, y]) => [xScale(x), yScale(y)] as [number, number]);
    if (pts.length > 1) svg.polyline(pts, colors[curve.name] ?? "#666", 'stroke-width="1.5" stroke-dasharray="6 3"');
  }
  axes(
    svg,
    xScale,
    yScale,
    "user signal / ln n",
    "attribute signal / ln n",
    `Exact-alignment success rate (${rows[0].algo})`,
    `sweep sha256 ${hash.slice(0, 12)}, ${cells.length} cells, epsilon=${epsilon}`,
  );
  // rate legend
  for (let i = 0; i <= 10; i++) {
    svg.rect(frame.width - frame.margin.right - 110 + i * 10, frame.margin.top - 28, 10, 10, rateColor(i / 10));
  }
  svg.text(frame.width - frame.margin.right - 116, frame.margin.top - 19, "0", 'text-anchor="end"');
  svg.text(frame.width - frame.margin.right + 4, frame.margin.top - 19, "1");

  return {
    svg: svg.render(),
    data: { cells, curves, epsilon, modalN, csvSha256: hash },
  };
}

/** CLI entry: render a CSV file to SVG plus a JSON data export alongside. */
export function writePhaseDiagram(csvPath: string, outPath: string, algo?: string): PhaseData {
  const csvText = readFileSync(csvPath, "utf8");
  const { svg, data } = renderPhaseDiagram(csvText, algo);
  writeFileSync(outPath, svg);
  writeFileSync(outPath + ".data.json", JSON.stringify(data, null, 2));
  return data;
}
