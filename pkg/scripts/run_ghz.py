"""GHZ(N) preparation; N=5 reproduces the Fig. 2(d,e) protocol (hours).

    python3 scripts/run_ghz.py [N] [T_braid]
"""

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from braidsim.experiments import ExperimentConfig, run_ghz

if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    t_braid = float(sys.argv[2]) if len(sys.argv) > 2 else 2400.0
    config = ExperimentConfig(num_qubits=n, t_braid=t_braid, dt=0.5,
                              output_dir="results")
    result = run_ghz(config, n)
    print(f"GHZ({n}): fidelity={result.fidelity:.5f} "
          f"subspace={result.subspace_probability:.5f}")
