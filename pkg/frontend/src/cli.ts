#!/usr/bin/env node
/**
 * plots phase  --csv <sweep.csv> --out <figure.svg> [--algo <name>]
 * plots curves --csv <sweep.csv> --axis <column> --out <figure.svg>
 *
 * Each command also writes `<out>.data.json` with the numbers behind the
 * figure, so results can be checked without parsing SVG.
 */

import { parseArgs } from "node:util";

import { writeSuccessCurves } from "./curves.js";
import { writePhaseDiagram } from "./phase.js";

function usage(): never {
  console.error("usage: plots phase --csv <path> --out <path> [--algo <name>]");
  console.error("       plots curves --csv <path> --axis <column> --out <path>");
  process.exit(2);
}

export function runCli(argv: string[]): void {
  const command = argv[0];
  if (command === "phase") {
    const { values } = parseArgs({
      args: argv.slice(1),
      options: {
        csv: { type: "string" },
        out: { type: "string" },
        algo: { type: "string" },
      },
    });
    if (!values.csv || !values.out) usage();
    const data = writePhaseDiagram(values.csv, values.out, values.algo);
    console.log(`wrote ${values.out} (${data.cells.length} cells) and ${values.out}.data.json`);
  } else if (command === "curves") {
    const { values } = parseArgs({
      args: argv.slice(1),
      options: {
        csv: { type: "string" },
        out: { type: "string" },
        axis: { type: "string" },
      },
    });
    if (!values.csv || !values.out || !values.axis) usage();
    const data = writeSuccessCurves(values.csv, values.axis, values.out);
    console.log(`wrote ${values.out} (${data.series.length} series) and ${values.out}.data.json`);
  } else {
    usage();
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("cli.ts");
if (invokedDirectly) {
  try {
    runCli(process.argv.slice(2));
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  }
}
