"""Ten-qubit long-run preset: 77 gates, 18 projective measurements (M = 9)
at T_braid = 2000, the configuration whose published reference values are
fidelity 0.974 and subspace probability 0.981.

This is a multi-day run on a workstation; the structure (gate and
projection counts) is verified instantly and also covered by the test
suite.  Expect 2^9 = 512 contraction Pfaffians per readout label.
"""

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from braidsim.experiments import ExperimentConfig, run_circuit, ten_qubit_preset
from braidsim.logical import compile_circuit, parse_circuit

if __name__ == "__main__":
    text = ten_qubit_preset()
    circ = compile_circuit(parse_circuit(text), 10)
    print(f"preset: {circ['gate_count']} gates, {circ['projection_count']} "
          f"projections, M={circ['m_blocks']}")
    assert (circ["gate_count"], circ["projection_count"], circ["m_blocks"]) == (77, 18, 9)
    if "--structure-only" in sys.argv:
        sys.exit(0)
    config = ExperimentConfig(num_qubits=10, t_braid=2000.0, dt=0.5,
                              circuit="ten-qubit", output_dir="results")
    result = run_circuit(config, text)
    print(f"fidelity={result.fidelity:.5f} subspace={result.subspace_probability:.5f}")
