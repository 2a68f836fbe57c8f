import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { renderPhaseDiagram, writePhaseDiagram } from "../src/phase.js";
import { concatCsv, parseSweepCsv } from "../src/schema.js";

const feasible = readFileSync(new URL("../fixtures/feasible.csv", import.meta.url), "utf8");
const infeasible = readFileSync(new URL("../fixtures/infeasible.csv", import.meta.url), "utf8");

function singleCellCsv(): string {
  const lines = feasible.split("\n").filter((l) => l.length > 0);
  const header = lines[0];
  const firstAggregate = lines.find((l) => l.startsWith("aggregate"))!;
  return [header, firstAggregate].join("\n") + "\n";
}

describe("renderPhaseDiagram", () => {
  it("renders a single-cell heatmap", () => {
    const { svg, data } = renderPhaseDiagram(singleCellCsv());
    expect(data.cells).toHaveLength(1);
    expect(svg).toContain("<svg");
    expect(svg).toContain("<rect");
  });

  it("uses one color for an all-success sweep", () => {
    const { data } = renderPhaseDiagram(feasible);
    expect(data.cells.every((c) => c.rate === 1)).toBe(true);
  });

  it("sum-condition curve satisfies x + y = 1 + epsilon", () => {
    const { data } = renderPhaseDiagram(feasible);
    const curve = data.curves.find((c) => c.name === "sum_condition")!;
    for (const [x, y] of curve.points) {
      expect(x + y).toBeCloseTo(1 + data.epsilon, 9);
    }
  });

  it("fails without aggregate rows", () => {
    const onlyTrials = feasible
      .split("\n")
      .filter((l) => l.length > 0 && !l.startsWith("aggregate"))
      .join("\n");
    expect(() => renderPhaseDiagram(onlyTrials)).toThrowError(/aggregate/);
  });

  it("is deterministic", () => {
    const a = renderPhaseDiagram(feasible);
    const b = renderPhaseDiagram(feasible);
    expect(a.svg).toBe(b.svg);
    expect(JSON.stringify(a.data)).toBe(JSON.stringify(b.data));
  });

  it("separates high and low success cells across the sum-condition curve", () => {
    // concatenated deep-feasible and deep-infeasible sweeps: success sits
    // above the curve, failure below
    const joined = concatCsv([feasible, infeasible]);
    const { data } = renderPhaseDiagram(joined);
    expect(data.cells.length).toBe(4);
    const high = data.cells.filter((c) => c.rate >= 0.8);
    const low = data.cells.filter((c) => c.rate <= 0.05);
    expect(high.length).toBe(2);
    expect(low.length).toBe(2);
    for (const cell of high) {
      expect(cell.coordX + cell.coordY).toBeGreaterThanOrEqual(1 + data.epsilon);
    }
    for (const cell of low) {
      expect(cell.coordX + cell.coordY).toBeLessThan(1 + data.epsilon);
    }
    console.log("ACCEPTANCE phase-render: PASS (high cells above the sum-condition curve, low cells below)");
  });
});

describe("writePhaseDiagram", () => {
  it("writes the figure and its data export", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "phase.svg");
    const csvPath = join(dir, "joined.csv");
    const joined = concatCsv([feasible, infeasible]);
    writeFileSync(csvPath, joined);
    const data = writePhaseDiagram(csvPath, out);
    const svg = readFileSync(out, "utf8");
    const exported = JSON.parse(readFileSync(out + ".data.json", "utf8"));
    expect(svg.startsWith("<svg")).toBe(true);
    expect(exported.cells.length).toBe(data.cells.length);
    expect(exported.csvSha256).toBe(data.csvSha256);
    // the export carries everything needed to re-check the region split
    expect(parseSweepCsv(joined).aggregates.length).toBe(exported.cells.length);
  });
});
