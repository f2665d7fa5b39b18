"""Many-body simulation of measurement-assisted Majorana braiding.

Kitaev-chain T-junction networks host Majorana zero modes that are moved,
exchanged and hybridized by chemical-potential schedules.  Logical circuits
compile to braid words plus projective parity measurements that switch
between sparse and dense qubit encodings; readout amplitudes are evaluated
with Pfaffian contraction formulas over fermionic Gaussian states.
"""

__version__ = "0.1.0"

from .network import (Network, NetworkParams, build_network, custom_network,
                      bond_pairing_phase, path_between)
from .bdg import (ModelParams, MuProfile, DisorderRealization, BdGMatrix,
                  assemble, sample_disorder, zero_modes, slot_majoranas)
from .pfaffian import pfaffian, pfaffian_householder, PfaffianError
from .gaussian import (ReferenceVacuum, GaussianState, MajoranaOperatorExpr,
                       amplitude, bloch_messiah, ground_state, make_state,
                       evolve_state, transport_state)
from .evolution import Propagator, propagate, propagate_rows, compose, adiabaticity_trace
from .schedule import (Schedule, BraidWord, TGateCalibration, Choreographer,
                       move_wall, exchange, hybridize_hold, calibrate_tgate,
                       parked_mu_profile)
from .logical import (EncodingState, LogicalLabel, ProjectionEvent, TransitionMatrix,
                      basis_state, compile_gate, compile_circuit, parse_circuit,
                      print_circuit, execute_circuit, switch_to_dense, switch_to_sparse,
                      transition_matrix, fidelity_and_subspace_probability)
from .fock import FockState, exact_propagate, exact_amplitude

__all__ = [
    "Network", "NetworkParams", "build_network", "custom_network",
    "bond_pairing_phase", "path_between",
    "ModelParams", "MuProfile", "DisorderRealization", "BdGMatrix",
    "assemble", "sample_disorder", "zero_modes", "slot_majoranas",
    "pfaffian", "pfaffian_householder", "PfaffianError",
    "ReferenceVacuum", "GaussianState", "MajoranaOperatorExpr", "amplitude",
    "bloch_messiah", "ground_state", "make_state", "evolve_state", "transport_state",
    "Propagator", "propagate", "propagate_rows", "compose", "adiabaticity_trace",
    "Schedule", "BraidWord", "TGateCalibration", "Choreographer", "move_wall",
    "exchange", "hybridize_hold", "calibrate_tgate", "parked_mu_profile",
    "EncodingState", "LogicalLabel", "ProjectionEvent", "TransitionMatrix",
    "basis_state", "compile_gate", "compile_circuit", "parse_circuit",
    "print_circuit", "execute_circuit", "switch_to_dense", "switch_to_sparse",
    "transition_matrix", "fidelity_and_subspace_probability",
    "FockState", "exact_propagate", "exact_amplitude",
]
