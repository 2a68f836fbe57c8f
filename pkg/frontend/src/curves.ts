/**
 * Success-rate line plots along one parameter axis, with binomial error bars
 * (half-width 1.96 * sqrt(r (1 - r) / T) for rate r over T trials).
 */

import { createHash } from "node:crypto";
import { readFileSync, writeFileSync } from "node:fs";

import { COLUMNS, parseSweepCsv, SchemaError, SweepRow } from "./schema.js";
import { axes, DEFAULT_FRAME, linearScale, Svg } from "./svg.js";

const AXIS_FIELDS: Record<string, (r: SweepRow) => number> = {
  n: (r) => r.n,
  m: (r) => r.m,
  p: (r) => r.p,
  q: (r) => r.q,
  s_u: (r) => r.sU,
  s_a: (r) => r.sA,
  coord_x: (r) => r.coordX,
  coord_y: (r) => r.coordY,
};

export interface CurvePoint {
  x: number;
  rate: number;
  trials: number;
  halfWidth: number;
}

export interface CurveSeries {
  algo: string;
  points: CurvePoint[];
}

export interface CurvesData {
  axis: string;
  series: CurveSeries[];
  csvSha256: string;
}

export interface CurvesResult {
  svg: string;
  data: CurvesData;
}

export function errorBarHalfWidth(rate: number, trials: number): number {
  return 1.96 * Math.sqrt((rate * (1 - rate)) / trials);
}

export function renderSuccessCurves(csvText: string, axis: string): CurvesResult {
  const accessor = AXIS_FIELDS[axis];
  if (!accessor) {
    const known = Object.keys(AXIS_FIELDS).join(", ");
    if ((COLUMNS as readonly string[]).includes(axis)) {
      throw new SchemaError(`column ${axis} is not a sweepable axis; choose one of: ${known}`);
    }
    throw new SchemaError(`unknown axis ${axis}; choose one of: ${known}`);
  }
  const table = parseSweepCsv(csvText);
  if (table.aggregates.length === 0) throw new SchemaError("no aggregate rows to plot");
  const values = new Set(table.aggregates.map(accessor));
  if (values.size < 2) {
    throw new SchemaError(`axis ${axis} is constant (${[...values][0]}) across the aggregate rows`);
  }

  const byAlgo = new Map<string, SweepRow[]>();
  for (const row of table.aggregates) {
    byAlgo.set(row.algo, [...(byAlgo.get(row.algo) ?? []), row]);
  }
  const series: CurveSeries[] = [...byAlgo.entries()].map(([algo, rows]) => ({
    algo,
    points: rows
      .map((r) => ({
        x: accessor(r),
        rate: r.success,
        trials: r.trial,
        halfWidth: errorBarHalfWidth(r.success, r.trial),
      }))
      .sort((a, b) => a.x - b.x),
  }));

  const hash = createHash("sha256").update(csvText).digest("hex");
  const frame = DEFAULT_FRAME;
  const svg = new Svg(frame);
  const xsAll = series.flatMap((s) => s.points.map((p) => p.x));
  const xScale = linearScale(
    [Math.min(...xsAll), Math.max(...xsAll)],
    [frame.margin.left, frame.width - frame.margin.right],
  );
  const yScale = linearScale([0, 1], [frame.height - frame.margin.bottom, frame.margin.top]);

  const palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
  series.forEach((s, index) => {
    const color = palette[index % palette.length];
    svg.polyline(
      s.points.map((p) => [xScale(p.x), yScale(p.rate)] as [number, number]),
      color,
      'stroke-width="1.5"',
    );
    for (const p of s.points) {
      const lo = Math.max(0, p.rate - p.halfWidth);
      const hi = Math.min(1, p.rate + p.halfWidth);
      svg.line(xScale(p.x), yScale(lo), xScale(p.x), yScale(hi), color, 'stroke-width="1"');
      svg.line(xScale(p.x) - 3, yScale(lo), xScale(p.x) + 3, yScale(lo), color);
      svg.line(xScale(p.x) - 3, yScale(hi), xScale(p.x) + 3, yScale(hi), color);
      svg.circle(xScale(p.x), yScale(p.rate), 3, color);
    }
    svg.text(frame.width - frame.margin.right - 4, frame.margin.top + 16 * (index + 1), s.algo, `text-anchor="end" fill="${color}"`);
  });
  axes(
    svg,
    xScale,
    yScale,
    axis,
    "exact-alignment success rate",
    `Success rate vs ${axis}`,
    `sweep sha256 ${hash.slice(0, 12)}, 95% binomial error bars`,
  );

  return { svg: svg.render(), data: { axis, series, csvSha256: hash } };
}

export function writeSuccessCurves(csvPath: string, axis: string, outPath: string): CurvesData {
  const csvText = readFileSync(csvPath, "utf8");
  const { svg, data } = renderSuccessCurves(csvText, axis);
  writeFileSync(outPath, svg);
  writeFileSync(outPath + ".data.json", JSON.stringify(data, null, 2));
  return data;
}
