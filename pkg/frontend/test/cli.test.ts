import { existsSync, mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { runCli } from "../src/cli.js";

const fixture = (name: string) => fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));

describe("runCli", () => {
  it("phase writes svg and data export", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-cli-"));
    const out = join(dir, "phase.svg");
    runCli(["phase", "--csv", fixture("feasible.csv"), "--out", out]);
    expect(existsSync(out)).toBe(true);
    expect(existsSync(out + ".data.json")).toBe(true);
  });

  it("curves writes svg and data export", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-cli-"));
    const out = join(dir, "curves.svg");
    runCli(["curves", "--csv", fixture("ramp.csv"), "--axis", "m", "--out", out]);
    expect(existsSync(out)).toBe(true);
    expect(existsSync(out + ".data.json")).toBe(true);
  });
});
