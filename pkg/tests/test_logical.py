import numpy as np
import pytest

from braidsim.bdg import ModelParams
from braidsim.logical import (CompilationError, EncodingState, EncodingStateError,
                              LogicalLabel, compile_circuit, compile_gate,
                              execute_circuit, fidelity_and_subspace_probability,
                              parse_circuit, print_circuit, stabilizer_pairs,
                              switch_to_dense, switch_to_sparse, transition_matrix,
                              GateOp, TransitionMatrix)
from braidsim.network import build_network, NetworkParams

PARAMS = ModelParams(1.0, 1.0, 0.0, 12.0)


def small_net():
    return build_network(NetworkParams(2, leg_length=2, margin=1, intra_gap=3, inter_gap=3))


def test_logical_label():
    lbl = LogicalLabel((1, 0, 1))
    assert lbl.index == 5
    assert LogicalLabel.from_index(5, 3).bits == (1, 0, 1)
    with pytest.raises(CompilationError):
        LogicalLabel((0, 2))


def test_stabilizer_pairs_convention():
    pairs = stabilizer_pairs(LogicalLabel((1, 0)))
    assert (((2, 3), -1)) in pairs and (((1, 4), -1)) in pairs
    assert (((6, 7), 1)) in pairs and (((5, 8), 1)) in pairs


def test_parse_and_print_roundtrip():
    text = "H 0\nS 1\n# comment\nCNOT 0 1\nT 1"
    gates = parse_circuit(text)
    assert [g.name for g in gates] == ["H", "S", "CNOT", "T"]
    assert parse_circuit(print_circuit(gates)) == gates


def test_parse_errors():
    with pytest.raises(CompilationError):
        parse_circuit("FOO 0")
    with pytest.raises(CompilationError):
        parse_circuit("H 0 1")
    with pytest.raises(CompilationError):
        parse_circuit("CNOT 0")
    with pytest.raises(CompilationError):
        parse_circuit("H x")


def test_compile_gate_plans():
    plan = compile_gate(GateOp("H", (1,)), 2)
    assert plan["kind"] == "braid" and len(plan["moves"]) == 3
    assert all(4 < i <= 8 and 4 < j <= 8 for i, j, _ in plan["moves"])
    plan = compile_gate(GateOp("T", (0,)), 2)
    assert plan == {"kind": "hybridize", "pair": (2, 3)}
    plan = compile_gate(GateOp("CNOT", (0, 1)), 2)
    assert plan["kind"] == "dense-block"
    assert plan["open_pair"] == (4, 5) and plan["close_quad"] == (1, 2, 3, 4)
    assert len(plan["moves"]) == len(__import__("braidsim.constants", fromlist=["CNOT_WORD"]).CNOT_WORD)


def test_compile_gate_errors():
    with pytest.raises(CompilationError):
        compile_gate(GateOp("CNOT", (0, 2)), 3)     # not neighbors
    with pytest.raises(CompilationError):
        compile_gate(GateOp("CNOT", (1, 0)), 2)     # no routing
    with pytest.raises(EncodingStateError):
        compile_gate(GateOp("H", (0,)), 2, EncodingState(2, [(4, 5)]))


def test_compile_circuit_merging_and_counts():
    gates = parse_circuit("CNOT 0 1\nCNOT 0 1\nH 0\nCNOT 0 1\nCNOT 1 2")
    circ = compile_circuit(gates, 3)
    # first two CNOTs share a block; the later two are separate blocks
    assert circ["m_blocks"] == 3
    assert circ["projection_count"] == 6
    assert circ["gate_count"] == 5


def test_encoding_switch_state_machine():
    enc = EncodingState(2)
    assert enc.mode == "sparse"
    event, branches = switch_to_dense(enc, (4, 5))
    assert enc.mode == "dense"
    assert len(enc.active_majoranas) == 2 * 2 + 2
    assert [w for _, w in branches] == [0.5, 0.5]
    with pytest.raises(EncodingStateError):
        switch_to_dense(enc, (4, 5))
    event, branches = switch_to_sparse(enc, (1, 2, 3, 4))
    assert enc.mode == "sparse"
    assert branches == [(None, 1.0)]
    with pytest.raises(EncodingStateError):
        switch_to_sparse(enc, (1, 2, 3, 4))
    enc2 = EncodingState(2, [(4, 5)])
    _, branches = switch_to_sparse(enc2, (1, 2, 3, 4), bra_is_stabilizer_eigenstate=False)
    assert len(branches) == 2


def _round_trip_record(net, kets):
    circuit = {"program": [{"kind": "dense-block", "qubit_pair": (1, 2), "moves": [],
                            "open_pair": (4, 5), "close_quad": (1, 2, 3, 4)}],
               "num_qubits": 2, "gate_count": 0, "projection_count": 2, "m_blocks": 1}
    return execute_circuit(circuit, net, PARAMS, ket_labels=kets, dt=0.25)


def test_round_trip_identity():
    net = small_net()
    rec = _round_trip_record(net, [0, 1, 2, 3])
    t = transition_matrix(rec)
    assert np.abs(t.entries - np.eye(4)).max() < 1e-6
    assert t.branch_count == 2


def test_branch_count_law():
    # M stacked no-op dense blocks cost exactly 2^M Pfaffians per entry
    net = small_net()
    for m in (1, 2, 3):
        program = [{"kind": "dense-block", "qubit_pair": (1, 2), "moves": [],
                    "open_pair": (4, 5), "close_quad": (1, 2, 3, 4)} for _ in range(m)]
        circuit = {"program": program, "num_qubits": 2, "gate_count": 0,
                   "projection_count": 2 * m, "m_blocks": m}
        rec = execute_circuit(circuit, net, PARAMS, ket_labels=[0], dt=0.25)
        t = transition_matrix(rec, bra_labels=[0])
        assert t.branch_count == 2 ** m
        assert t.pfaffian_calls == 2 ** m
        if m == 1:
            assert abs(t.entries[0, 0] - 1.0) < 1e-6
        else:
            # stacking idempotent projections doubles per extra block: the
            # per-round-trip factor 2 assumes distinct blocks
            assert abs(t.entries[0, 0] - 2.0 ** (m - 1)) < 1e-5


def test_full_expansion_matches_collapsed_at_zero_duration():
    net = small_net()
    rec = _round_trip_record(net, [0, 3])
    t1 = transition_matrix(rec)
    t2 = transition_matrix(rec, expand_closing=True)
    assert t2.branch_count == 4
    assert np.abs(t1.entries - t2.entries).max() < 1e-9


def test_transition_matrix_document_roundtrip():
    net = small_net()
    rec = _round_trip_record(net, [0])
    t = transition_matrix(rec)
    doc = t.to_document()
    back = TransitionMatrix.from_document(doc)
    assert np.allclose(back.entries, t.entries)
    assert back.branch_count == t.branch_count


def test_fidelity_and_subspace():
    net = small_net()
    rec = _round_trip_record(net, [0])
    t = transition_matrix(rec)
    target = np.zeros(4, complex)
    target[0] = 1.0
    fid, sub = fidelity_and_subspace_probability(t, 0, target)
    assert fid == pytest.approx(1.0, abs=1e-6)
    assert sub == pytest.approx(1.0, abs=1e-6)
    # orthogonal target
    target2 = np.zeros(4, complex)
    target2[2] = 1.0
    fid2, _ = fidelity_and_subspace_probability(t, 0, target2)
    assert fid2 < 1e-10
    with pytest.raises(CompilationError):
        fidelity_and_subspace_probability(t, 0, 0.5 * target)
