"""Bell-state preparation at the published parameter set (Fig. 2b,c shape).

Writes the RunResult JSON under results/ and prints the summary line.
Runtime: tens of minutes.
"""

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from braidsim.experiments import ExperimentConfig, run_bell

if __name__ == "__main__":
    config = ExperimentConfig(num_qubits=2, t_braid=2400.0, dt=0.25,
                              output_dir="results")
    result = run_bell(config)
    print(f"fidelity={result.fidelity:.5f} "
          f"subspace={result.subspace_probability:.5f} "
          f"branches={result.branch_count}")
