"""Disorder sweep over (T_braid x V) on a seeded 2-qubit random circuit at
the Fig. 3 parameter set; emits the CSV consumed by the heatmap renderer.

    python3 scripts/run_sweep.py [replicates] [jobs]

The full published-shape grid takes hours; trim the grids below for a quick
look.  Every (T_braid, V, replicate) point draws a fresh disorder seed and
recalibrates the T gates through the standard execution path.
"""

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from braidsim.experiments import ExperimentConfig, save_sweep_csv, sweep

T_BRAID_GRID = [400.0, 800.0, 1200.0, 1600.0, 2000.0, 2400.0, 2800.0]
V_GRID = [0.0, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 1.4]

if __name__ == "__main__":
    replicates = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    jobs = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    config = ExperimentConfig.fig3(num_qubits=2, circuit="random", depth=1,
                                   circuit_seed=12, dt=0.5, output_dir="results")

    def progress(done, total, row):
        print(f"[{done}/{total}] t_braid={row[0]} V={row[1]} fid={row[3]:.4f}",
              file=sys.stderr, flush=True)

    rows = sweep(config, T_BRAID_GRID, V_GRID, replicates=replicates, jobs=jobs,
                 progress=progress)
    path = save_sweep_csv(rows, os.path.join("results", f"sweep_{config.digest()}.csv"))
    print(f"wrote {path} ({len(rows)} points)")
