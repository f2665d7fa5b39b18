"""Bell on the default N=2 network at Fig. 2 parameters (acceptance dry run)."""
import sys, time
sys.path.insert(0, "src")
import numpy as np
from braidsim.network import build_network, NetworkParams
from braidsim.bdg import ModelParams
from braidsim.logical import (execute_circuit, transition_matrix, parse_circuit,
                              compile_circuit, fidelity_and_subspace_probability)
from braidsim.gatecalc import circuit_unitary

net = build_network(NetworkParams(2))
print("default N=2 net:", net.num_sites, "sites", flush=True)
params = ModelParams()
circ = compile_circuit(parse_circuit("H 0\nCNOT 0 1"), 2)
target = circuit_unitary([("H", 0), ("CNOT", 0, 1)], 2)[:, 0]
t0 = time.time()
rec = execute_circuit(circ, net, params, ket_labels=[0], t_braid=2400.0, dt=0.25)
t = transition_matrix(rec)
fid, sub = fidelity_and_subspace_probability(t, 0, target)
print(f"BELL default: |T|^2 = {np.round(np.abs(t.entries[:,0])**2, 5).ravel()}")
print(f"fid={fid:.5f} sub={sub:.5f} maxw={t.max_column_weight:.6f} ({time.time()-t0:.0f}s)")
np.save("/tmp/bell_default_T.npy", t.entries)
