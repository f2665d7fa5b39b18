import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { parseRunResult, parseSweepCsv } from "../src/data.js";
import { barChart, heatmap } from "../src/svg.js";

const bellJson = readFileSync(new URL("../fixtures/bell_result.json", import.meta.url), "utf8");
const sweepCsv = readFileSync(new URL("../fixtures/sweep.csv", import.meta.url), "utf8");

function countMatches(svg: string, re: RegExp): number {
  return [...svg.matchAll(re)].length;
}

describe("barChart", () => {
  it("renders one bar per label with heights tracking probability", () => {
    const bars = parseRunResult(bellJson);
    const svg = barChart(bars);
    expect(countMatches(svg, /class="bar"/g)).toBe(4);
    for (const label of [0, 1, 2, 3]) {
      expect(svg).toContain(`data-label="${label}"`);
    }
    const heights = [...svg.matchAll(/class="bar"[^/]*height="([0-9.]+)"/g)].map((m) => Number(m[1]));
    expect(heights[0]).toBeGreaterThan(100);
    expect(heights[1]).toBeLessThan(1);
    expect(Math.abs(heights[0] - heights[3])).toBeLessThan(2);
  });

  it("is deterministic", () => {
    const bars = parseRunResult(bellJson);
    expect(barChart(bars)).toBe(barChart(bars));
  });

  it("rejects empty input", () => {
    expect(() => barChart([])).toThrow(/at least one bar/);
  });
});

describe("heatmap", () => {
  it("hatches exactly the cells above threshold", () => {
    const grid = parseSweepCsv(sweepCsv);
    const svg = heatmap(grid, { threshold: 0.99 });
    const hatched = [...svg.matchAll(/class="hatched" data-tb="([0-9.]+)" data-v="([0-9.]+)"/g)]
      .map((m) => `${m[1]}|${m[2]}`)
      .sort();
    // fixture values above 0.99: (1200,0), (1200,0.2), (2400,0), (2400,0.2)
    expect(hatched).toEqual(["1200|0", "1200|0.2", "2400|0", "2400|0.2"].sort());
    expect(countMatches(svg, /class="cell"/g)).toBe(9);
  });

  it("threshold above one hatches nothing", () => {
    const grid = parseSweepCsv(sweepCsv);
    const svg = heatmap(grid, { threshold: 1.1 });
    expect(countMatches(svg, /class="hatched"/g)).toBe(0);
  });

  it("is deterministic and rejects empty grids", () => {
    const grid = parseSweepCsv(sweepCsv);
    expect(heatmap(grid)).toBe(heatmap(grid));
    expect(() => heatmap({ tBraids: [], vs: [], cells: [] })).toThrow(/non-empty/);
  });
});
