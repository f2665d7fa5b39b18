/**
 * Input parsing for the figure renderer: RunResult JSON documents written by
 * the simulator (amplitude bar charts) and disorder-sweep CSV tables
 * (fidelity / subspace-probability heatmaps).
 */

export interface BarDatum {
  label: number;
  binary: string;
  probability: number;
}

export interface SweepCell {
  tBraid: number;
  v: number;
  value: number;
}

export interface SweepGrid {
  tBraids: number[];
  vs: number[];
  /** cells[i][j] = value at (tBraids[i], vs[j]); NaN when missing */
  cells: number[][];
}

interface TransitionMatrixDoc {
  bra_labels: number[];
  ket_labels: number[];
  real: number[][];
  imag: number[][];
}

interface RunResultDoc {
  transition_matrix: TransitionMatrixDoc;
  config?: { num_qubits?: number };
}

export function parseRunResult(text: string, ketIndex = 0): BarDatum[] {
  let doc: RunResultDoc;
  try {
    doc = JSON.parse(text) as RunResultDoc;
  } catch (err) {
    throw new Error(`input is not valid RunResult JSON: ${(err as Error).message}`);
  }
  const tm = doc.transition_matrix;
  if (!tm || !Array.isArray(tm.bra_labels) || !Array.isArray(tm.real)) {
    throw new Error("input JSON lacks a transition_matrix document");
  }
  const col = tm.ket_labels.indexOf(ketIndex);
  if (col < 0) {
    throw new Error(`ket label ${ketIndex} not present in the result`);
  }
  const width = Math.max(1, Math.ceil(Math.log2(Math.max(...tm.bra_labels) + 1)));
  return tm.bra_labels.map((label, row) => {
    const re = tm.real[row][col];
    const im = tm.imag[row][col];
    return {
      label,
      binary: label.toString(2).padStart(width, "0"),
      probability: re * re + im * im,
    };
  });
}

export function parseSweepCsv(text: string, column: "fidelity" | "subspace_prob" = "fidelity"): SweepGrid {
  const lines = text.split(/\r?\n/).filter((ln) => ln.trim().length > 0);
  if (lines.length < 2) {
    throw new Error("sweep CSV has no data rows");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const iTb = header.indexOf("t_braid");
  const iV = header.indexOf("v");
  const iVal = header.indexOf(column);
  if (iTb < 0 || iV < 0 || iVal < 0) {
    throw new Error(`sweep CSV must carry t_braid, v and ${column} columns`);
  }
  const cells: SweepCell[] = [];
  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    const cell = {
      tBraid: Number(parts[iTb]),
      v: Number(parts[iV]),
      value: Number(parts[iVal]),
    };
    if (!Number.isFinite(cell.tBraid) || !Number.isFinite(cell.v)) {
      throw new Error(`bad sweep row: ${line}`);
    }
    cells.push(cell);
  }
  const tBraids = [...new Set(cells.map((c) => c.tBraid))].sort((a, b) => a - b);
  const vs = [...new Set(cells.map((c) => c.v))].sort((a, b) => a - b);
  const grid: number[][] = tBraids.map(() => vs.map(() => NaN));
  const counts: number[][] = tBraids.map(() => vs.map(() => 0));
  for (const c of cells) {
    const i = tBraids.indexOf(c.tBraid);
    const j = vs.indexOf(c.v);
    // replicates average; NaN values (failed points) are skipped
    if (Number.isFinite(c.value)) {
      const n = counts[i][j];
      grid[i][j] = n === 0 ? c.value : (grid[i][j] * n + c.value) / (n + 1);
      counts[i][j] = n + 1;
    }
  }
  return { tBraids, vs, cells: grid };
}
