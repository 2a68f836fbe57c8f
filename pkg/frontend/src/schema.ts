/**
 * Sweep-CSV schema: strict parsing of the harness output.
 *
 * The harness emits a fixed 25-column header; anything else is rejected with
 * the offending column named, so silent drift between the two sides is
 * impossible.
 */

export const COLUMNS = [
  "row_type", "n", "m", "p", "q", "s_u", "s_a", "algo", "epsilon", "tau",
  "x", "y", "z", "l", "eta", "seed", "trial", "success", "failure_kind",
  "anchors", "runtime_ms", "thm1_feasible", "thm2_feasible", "coord_x", "coord_y",
] as const;

export class SchemaError extends Error {}

export interface SweepRow {
  rowType: "trial" | "aggregate";
  n: number;
  m: number;
  p: number;
  q: number;
  sU: number;
  sA: number;
  algo: string;
  epsilon: number;
  tau: number;
  x: number | null;
  y: number | null;
  z: number | null;
  l: number | null;
  eta: number | null;
  seed: number;
  trial: number;
  /** success flag for trial rows (0/1), success rate for aggregate rows */
  success: number;
  failureKind: string;
  anchors: number;
  runtimeMs: number;
  thm1Feasible: boolean;
  thm2Feasible: boolean;
  coordX: number;
  coordY: number;
}

export interface SweepTable {
  rows: SweepRow[];
  aggregates: SweepRow[];
  trials: SweepRow[];
}

function num(field: string, value: string): number {
  const parsed = Number(value);
  if (value === "" || Number.isNaN(parsed)) {
    throw new SchemaError(`column ${field}: cannot parse ${JSON.stringify(value)} as a number`);
  }
  return parsed;
}

function optNum(field: string, value: string): number | null {
  return value === "" ? null : num(field, value);
}

function bool(field: string, value: string): boolean {
  if (value === "true") return true;
  if (value === "false") return false;
  throw new SchemaError(`column ${field}: expected true/false, got ${JSON.stringify(value)}`);
}

function successValue(rowType: string, value: string): number {
  if (rowType === "trial") {
    if (value === "true") return 1;
    if (value === "false") return 0;
  }
  return num("success", value);
}

export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) throw new SchemaError("empty CSV");
  const header = lines[0].split(",");
  for (const column of COLUMNS) {
    if (!header.includes(column)) throw new SchemaError(`missing column ${column}`);
  }
  if (header.length !== COLUMNS.length || header.some((h, i) => h !== COLUMNS[i])) {
    throw new SchemaError(`header does not match the sweep schema: ${lines[0]}`);
  }
  const rows: SweepRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== COLUMNS.length) {
      throw new SchemaError(`row has ${cells.length} cells, expected ${COLUMNS.length}: ${line}`);
    }
    const record: Record<string, string> = {};
    COLUMNS.forEach((column, i) => (record[column] = cells[i]));
    if (record.row_type !== "trial" && record.row_type !== "aggregate") {
      throw new SchemaError(`column row_type: unknown value ${JSON.stringify(record.row_type)}`);
    }
    rows.push({
      rowType: record.row_type,
      n: num("n", record.n),
      m: num("m", record.m),
      p: num("p", record.p),
      q: num("q", record.q),
      sU: num("s_u", record.s_u),
      sA: num("s_a", record.s_a),
      algo: record.algo,
      epsilon: num("epsilon", record.epsilon),
      tau: num("tau", record.tau),
      x: optNum("x", record.x),
      y: optNum("y", record.y),
      z: optNum("z", record.z),
      l: optNum("l", record.l),
      eta: optNum("eta", record.eta),
      seed: num("seed", record.seed),
      trial: num("trial", record.trial),
      success: successValue(record.row_type, record.success),
      failureKind: record.failure_kind,
      anchors: num("anchors", record.anchors),
      runtimeMs: num("runtime_ms", record.runtime_ms),
      thm1Feasible: bool("thm1_feasible", record.thm1_feasible),
      thm2Feasible: bool("thm2_feasible", record.thm2_feasible),
      coordX: num("coord_x", record.coord_x),
      coordY: num("coord_y", record.coord_y),
    });
  }
  return {
    rows,
    aggregates: rows.filter((r) => r.rowType === "aggregate"),
    trials: rows.filter((r) => r.rowType === "trial"),
  };
}

/** Join several sweep CSVs, keeping a single header line. */
export function concatCsv(texts: string[]): string {
  if (texts.length === 0) throw new SchemaError("nothing to concatenate");
  const out: string[] = [];
  texts.forEach((text, index) => {
    const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
    if (lines.length === 0) throw new SchemaError(`CSV ${index} is empty`);
    out.push(...(index === 0 ? lines : lines.slice(1)));
  });
  return out.join("\n") + "\n";
}
