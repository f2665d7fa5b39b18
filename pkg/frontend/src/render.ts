/**
 * CLI: render simulator outputs into SVG figures.
 *
 *   braidsim-render --kind bars    --in results/run_x.json --out fig2b.svg
 *   braidsim-render --kind heatmap --in results/sweep.csv  --out fig3c.svg \
 *                   [--threshold 0.99] [--value fidelity|subspace_prob] [--ket 0]
 *
 * Exit codes: 0 success, 1 malformed input or write failure, 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import process from "node:process";

import { parseRunResult, parseSweepCsv } from "./data.js";
import { barChart, heatmap } from "./svg.js";

interface Args {
  kind: string;
  input: string;
  output: string;
  threshold: number;
  value: "fidelity" | "subspace_prob";
  ket: number;
  title?: string;
}

function usage(): string {
  return "usage: braidsim-render --kind bars|heatmap --in FILE --out FILE " +
    "[--threshold X] [--value fidelity|subspace_prob] [--ket N] [--title T]";
}

export function parseArgs(argv: string[]): Args {
  const args: Partial<Args> = { threshold: 0.99, value: "fidelity", ket: 0 };
  for (let i = 0; i < argv.length; i++) {
    const key = argv[i];
    const next = () => {
      if (i + 1 >= argv.length) {
        throw new Error(`missing value for ${key}`);
      }
      return argv[++i];
    };
    switch (key) {
      case "--kind": args.kind = next(); break;
      case "--in": args.input = next(); break;
      case "--out": args.output = next(); break;
      case "--threshold": args.threshold = Number(next()); break;
      case "--value": {
        const v = next();
        if (v !== "fidelity" && v !== "subspace_prob") {
          throw new Error(`--value must be fidelity or subspace_prob, got ${v}`);
        }
        args.value = v;
        break;
      }
      case "--ket": args.ket = Number(next()); break;
      case "--title": args.title = next(); break;
      default:
        throw new Error(`unknown flag ${key}`);
    }
  }
  if (!args.kind || !args.input || !args.output) {
    throw new Error("missing required flags");
  }
  if (args.kind !== "bars" && args.kind !== "heatmap") {
    throw new Error(`--kind must be bars or heatmap, got ${args.kind}`);
  }
  if (!Number.isFinite(args.threshold)) {
    throw new Error("--threshold must be a number");
  }
  return args as Args;
}

export function renderToString(args: Args, inputText: string): string {
  if (args.kind === "bars") {
    const bars = parseRunResult(inputText, args.ket);
    return barChart(bars, { title: args.title ?? "transition probabilities" });
  }
  const grid = parseSweepCsv(inputText, args.value);
  return heatmap(grid, {
    threshold: args.threshold,
    title: args.title ?? args.value,
    valueLabel: args.value,
  });
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`${(err as Error).message}\n${usage()}`);
    return 2;
  }
  try {
    const text = readFileSync(args.input, "utf8");
    const svg = renderToString(args, text);
    writeFileSync(args.output, svg);
    console.error(`wrote ${args.output}`);
    return 0;
  } catch (err) {
    console.error(`render failed: ${(err as Error).message}`);
    return 1;
  }
}

const isMain = process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
