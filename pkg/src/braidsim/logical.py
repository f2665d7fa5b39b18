"""Logical layer: encodings, computational basis states, projective encoding
switches, gate compilation and the transition matrix.

Circuits compile to an ordered program of braid schedules, hybridization
holds and projective parity measurements.  Each measurement that opens a
dense block doubles the number of Gaussian branches (identity + bilinear);
closing quadruple projections collapse against computational-basis readout
states, so a circuit with M dense blocks costs exactly 2^M contraction
Pfaffians per readout label, matching the method's branch growth law.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import constants
from .bdg import ModelParams, MuProfile, assemble, slot_majoranas
from .gaussian import (GaussianState, MajoranaOperatorExpr, ReferenceVacuum,
                       amplitude, ground_state, evolve_state)
from .schedule import Choreographer, SchedulingConflict, exchange, parked_mu_profile, calibrate_tgate
from .evolution import propagate


class CompilationError(ValueError):
    pass


class EncodingStateError(RuntimeError):
    pass


@dataclass
class LogicalLabel:
    bits: tuple

    def __post_init__(self):
        self.bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in self.bits):
            raise CompilationError(f"bits must be 0/1, got {self.bits}")

    @property
    def index(self):
        return sum(b << i for i, b in enumerate(self.bits))

    @classmethod
    def from_index(cls, f, num_qubits):
        return cls(tuple((f >> i) & 1 for i in range(num_qubits)))

    def __repr__(self):
        return "|" + "".join(str(b) for b in self.bits) + ">"


@dataclass
class EncodingState:
    """Tracks sparse/dense mode and which boundary pairs are fused."""
    num_qubits: int
    fused_pairs: list = field(default_factory=list)   # [(slot_a, slot_b), ...]

    @property
    def mode(self):
        return "dense" if self.fused_pairs else "sparse"

    @property
    def active_majoranas(self):
        fused = {s for pair in self.fused_pairs for s in pair}
        return [s for s in range(1, 4 * self.num_qubits + 1) if s not in fused]


@dataclass
class ProjectionEvent:
    kind: str                  # "pair" or "quadruple"
    slots: tuple               # 2 or 4 slot labels
    sign: int                  # projected sector, +1 even / -1 odd
    time: float                # circuit time of the measurement


def stabilizer_pairs(label):
    """X-basis slot pairs and parities of |n_1..n_N>: both the inner pair
    (4k-2, 4k-1) and the outer pair (4k-3, 4k) carry (-1)^{n_k}."""
    pairs = []
    for k, bit in enumerate(label.bits, start=1):
        sign = 1 - 2 * bit
        pairs.append(((4 * k - 2, 4 * k - 1), sign))
        pairs.append(((4 * k - 3, 4 * k), sign))
    return pairs


def basis_state(label, network, params, reference=None, hamiltonian=None,
                disorder=None):
    """Computational X-basis Gaussian state of the parked network.

    Relative phases between labels are operator-anchored:
    |..1_k..> = -i g_{4k-3} g_{4k-2} |..0_k..| applied in ascending k, the
    same convention the ideal-algebra codewords use, so fidelities against
    abstract targets are meaningful.
    """
    from .gaussian import apply_majorana_pair
    if 4 * len(label.bits) != len(network.mzm_slots):
        raise CompilationError("label length does not match the network")
    if hamiltonian is None:
        hamiltonian = assemble(network, params, MuProfile(parked_mu_profile(network, params)), disorder)
    zero = LogicalLabel(tuple(0 for _ in label.bits))
    state = ground_state(hamiltonian, stabilizer_pairs(zero), network, reference)
    if label.index == 0:
        return state
    gam = slot_majoranas(network, hamiltonian)
    for k, bit in enumerate(label.bits, start=1):
        if bit:
            state = apply_majorana_pair(state, gam[4 * k - 4], gam[4 * k - 3])
    return state


# ---------------------------------------------------------------------------
# compilation


@dataclass
class GateOp:
    name: str
    qubits: tuple


def parse_circuit(text):
    """Line-oriented circuit grammar: one gate per line, e.g. ``H 0``,
    ``CNOT 2 3``, ``T 4``; blank lines and ``#`` comments ignored."""
    gates = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        name = parts[0].upper()
        try:
            qubits = tuple(int(p) for p in parts[1:])
        except ValueError as exc:
            raise CompilationError(f"line {ln}: bad qubit index in {raw!r}") from exc
        if name in ("H", "S", "SDG", "T", "SX", "SXDG", "X", "Z"):
            if len(qubits) != 1:
                raise CompilationError(f"line {ln}: {name} takes one qubit")
        elif name in ("CNOT", "CX", "CZ"):
            if len(qubits) != 2:
                raise CompilationError(f"line {ln}: {name} takes two qubits")
        else:
            raise CompilationError(f"line {ln}: unknown gate {name!r}")
        gates.append(GateOp(name, qubits))
    return gates


def print_circuit(gates):
    return "\n".join(f"{g.name} {' '.join(str(q) for q in g.qubits)}" for g in gates)


@dataclass
class CompiledStep:
    kind: str        # "braid" | "hold" | "project-pair" | "project-quad"
    payload: object


def compile_gate(gate, num_qubits, encoding=None):
    """Braid word / hybridize request / encoding-switch plan for one gate.

    Single-qubit gates require sparse mode; CNOT/CZ compile to an encoding
    switch into the dense pair block plus the locked braid word.  Qubit
    indices are 0-based; CNOT/CZ only between neighbors.
    """
    encoding = encoding or EncodingState(num_qubits)
    name = gate.name.upper()
    if name in ("CNOT", "CX", "CZ"):
        a, b = gate.qubits
        if abs(a - b) != 1:
            raise CompilationError(f"{name} requires neighboring qubits, got {gate.qubits}")
        if name != "CZ" and a > b:
            raise CompilationError("CNOT control must be the lower-index qubit (no routing)")
        k = min(a, b) + 1
        word = constants.CNOT_WORD if name != "CZ" else constants.CZ_WORD
        offs = 4 * (k - 1)
        moves = [(i + offs, j + offs, chir) for i, j, chir in word]
        open_pair = (4 * k, 4 * k + 1)
        quad = (4 * k - 3, 4 * k - 2, 4 * k - 1, 4 * k)
        return {"kind": "dense-block", "qubit_pair": (k, k + 1), "moves": moves,
                "open_pair": open_pair, "close_quad": quad}
    if encoding.mode == "dense":
        raise EncodingStateError("single-qubit gates require the sparse encoding")
    q = gate.qubits[0] + 1
    offs = 4 * (q - 1)
    if name == "T":
        pair = tuple(p + offs for p in constants.TGATE_PAIR)
        return {"kind": "hybridize", "pair": pair}
    word = constants.GATE_WORDS_1Q.get(name)
    if word is None:
        raise CompilationError(f"no braid word for gate {name}")
    return {"kind": "braid", "moves": [(i + offs, j + offs, chir) for i, j, chir in word]}


def compile_circuit(gates, num_qubits):
    """Full program: merges consecutive dense gates on the same pair into
    one block (minimizing the 2^M readout cost) and counts gates/projections."""
    program = []
    n_proj = 0
    for gate in gates:
        plan = compile_gate(gate, num_qubits)
        if plan["kind"] == "dense-block":
            prev = program[-1] if program else None
            if prev and prev["kind"] == "dense-block" and prev["qubit_pair"] == plan["qubit_pair"]:
                prev["moves"] = prev["moves"] + plan["moves"]
            else:
                program.append(plan)
                n_proj += 2
        else:
            program.append(plan)
    m_blocks = sum(1 for p in program if p["kind"] == "dense-block")
    return {"program": program, "num_qubits": num_qubits,
            "gate_count": len(gates), "projection_count": n_proj, "m_blocks": m_blocks}


# ---------------------------------------------------------------------------
# execution


@dataclass
class RunRecord:
    """Everything the readout needs: final propagator state per ket plus the
    branch insertion rows transported to the final time."""
    network: object
    params: object
    reference: ReferenceVacuum
    evolved_kets: dict            # label index -> GaussianState at T
    branch_groups: list           # per dense block: rows of the -i g_a g_b branch at T
    closing_groups: list          # per dense block: transported quadruple rows
    projections: list             # ProjectionEvent list
    m_blocks: int
    gate_count: int
    total_duration: float
    disorder: object = None
    pfaffian_calls: int = 0


def execute_circuit(circuit, network, params, ket_labels, t_braid=None,
                    disorder=None, dt=None, phase_mode="gauge",
                    calibrations=None, reference=None, tgate_defaults=None):
    """Evolve basis kets through the compiled circuit, recording projector
    branch operators (transported to the final time) along the way."""
    t_braid = t_braid if t_braid is not None else constants.T_BRAID
    dt = dt if dt is not None else constants.DEFAULT_DT
    n_q = circuit["num_qubits"]
    base_h = assemble(network, params, MuProfile(parked_mu_profile(network, params)), disorder)
    ref = reference or ReferenceVacuum.bare(network.num_sites)
    kets = {}
    for lbl in ket_labels:
        label = lbl if isinstance(lbl, LogicalLabel) else LogicalLabel.from_index(lbl, n_q)
        kets[label.index] = basis_state(label, network, params, ref, base_h, disorder)

    branch_groups = []
    closing_groups = []
    projections = []
    t_now = 0.0
    pending = []                  # transported operator row groups

    for step in circuit["program"]:
        if step["kind"] == "braid":
            ch = Choreographer(network, params)
            for i, j, chir in step["moves"]:
                exchange(network, params, i, j, t_braid, chirality=chir, choreographer=ch)
            sched = ch.schedule
        elif step["kind"] == "hybridize":
            from .schedule import hybridize_hold
            cal = (calibrations or {}).get(step["pair"])
            if cal is None:
                cal = calibrate_tgate(network, params, disorder, step["pair"],
                                      **(tgate_defaults or {}))
            sched = hybridize_hold(network, params, *step["pair"], cal.hold_time,
                                   approach_duration=2 * t_braid / 3,
                                   approach_sites=None if cal.approach_sites < 0 else cal.approach_sites)
        else:  # dense block: opening pair projection, braids, closing quadruple
            gam = slot_majoranas(network, base_h)
            a, b = step["open_pair"]
            projections.append(ProjectionEvent("pair", (a, b), +1, t_now))
            pending.append(("open", len(branch_groups), np.vstack([gam[a - 1], gam[b - 1]])))
            branch_groups.append(None)
            closing_groups.append(None)
            ch = Choreographer(network, params)
            for i, j, chir in step["moves"]:
                exchange(network, params, i, j, t_braid, chirality=chir, choreographer=ch)
            sched = ch.schedule

        if phase_mode == "exact":
            prop = propagate(network, params, sched, disorder, dt, reference=ref,
                             phase_mode="exact")
            for idx in kets:
                kets[idx] = evolve_state(kets[idx], prop)
            conj = prop.matrix.conj().T
            pending = [(tag, k, rows @ conj) for tag, k, rows in pending]
        else:
            # fast path: transport ket rows and pending operator rows only;
            # scalars are renormalized at segment ends (one global phase
            # gauge shared by every branch and label)
            from .evolution import propagate_rows
            from .gaussian import transport_state
            idx_order = sorted(kets)
            blocks = [kets[i].rows for i in idx_order] + [r for _, _, r in pending]
            sizes = [b.shape[0] for b in blocks]
            moved = propagate_rows(network, params, sched, np.vstack(blocks), disorder, dt)
            off = 0
            for i, sz in zip(idx_order, sizes[: len(idx_order)]):
                kets[i] = transport_state(kets[i], moved[off:off + sz])
                off += sz
            new_pending = []
            for (tag, k, _), sz in zip(pending, sizes[len(idx_order):]):
                new_pending.append((tag, k, moved[off:off + sz]))
                off += sz
            pending = new_pending
        t_now += sched.total_duration

        if step["kind"] == "dense-block":
            # closing quadruple measured at the end of the block's braids
            gam_close = slot_majoranas(network, base_h)
            quad = step["close_quad"]
            projections.append(ProjectionEvent("quadruple", quad, +1, t_now))
            pending.append(("close", len(closing_groups) - 1,
                            np.vstack([gam_close[s - 1] for s in quad])))

    for tag, k, rows in pending:
        if tag == "open":
            branch_groups[k] = rows
        else:
            closing_groups[k] = rows

    return RunRecord(network=network, params=params, reference=ref,
                     evolved_kets=kets, branch_groups=branch_groups,
                     closing_groups=closing_groups, projections=projections,
                     m_blocks=circuit["m_blocks"], gate_count=circuit["gate_count"],
                     total_duration=t_now, disorder=disorder)


# ---------------------------------------------------------------------------
# encoding switches as branch expansions


def switch_to_dense(encoding, pair, downstream_bra=None):
    """Branch expansion of the opening pair projection (1 + (-i g_a g_b))/2.

    Returns (event, branches); each branch is (operator rows or None, scalar
    weight).  The 1/sqrt(2) renormalization per Eq.-(3) is folded into the
    global factor 2 per round trip applied by transition_matrix.
    """
    if encoding.mode == "dense" and pair in encoding.fused_pairs:
        raise EncodingStateError(f"pair {pair} already fused")
    encoding.fused_pairs.append(pair)
    event = ProjectionEvent("pair", pair, +1, float("nan"))
    branches = [(None, 0.5), ("bilinear", 0.5)]
    return event, branches


def switch_to_sparse(encoding, quad, bra_is_stabilizer_eigenstate=True, sign=+1):
    """Closing quadruple projection (1 + Q)/2 with eigenstate absorption.

    When the downstream bra is a Q-eigenstate of matching sign the two
    branches are identical and collapse to one with weight 1 (no doubling);
    a generic bra keeps both branches with weight 1/2 each.
    """
    if encoding.mode != "dense":
        raise EncodingStateError("switch_to_sparse requires the dense encoding")
    pair = (quad[3], quad[3] + 1)
    for fused in list(encoding.fused_pairs):
        if fused[0] in quad or fused[1] in quad or fused == pair:
            encoding.fused_pairs.remove(fused)
            break
    else:
        encoding.fused_pairs.pop()
    event = ProjectionEvent("quadruple", quad, sign, float("nan"))
    if bra_is_stabilizer_eigenstate:
        return event, [(None, 1.0)]
    return event, [(None, 0.5), ("quartic", 0.5)]


# ---------------------------------------------------------------------------
# transition matrix


@dataclass
class TransitionMatrix:
    entries: np.ndarray          # [bra, ket] complex
    bra_labels: list
    ket_labels: list
    branch_count: int
    pfaffian_calls: int
    max_column_weight: float = 0.0

    def column(self, ket_index):
        j = self.ket_labels.index(ket_index)
        return self.entries[:, j]

    def to_document(self):
        return {
            "bra_labels": self.bra_labels,
            "ket_labels": self.ket_labels,
            "real": self.entries.real.tolist(),
            "imag": self.entries.imag.tolist(),
            "branch_count": self.branch_count,
            "pfaffian_calls": self.pfaffian_calls,
            "max_column_weight": self.max_column_weight,
        }

    @classmethod
    def from_document(cls, doc):
        entries = np.array(doc["real"]) + 1j * np.array(doc["imag"])
        return cls(entries=entries, bra_labels=list(doc["bra_labels"]),
                   ket_labels=list(doc["ket_labels"]),
                   branch_count=doc["branch_count"],
                   pfaffian_calls=doc["pfaffian_calls"],
                   max_column_weight=doc.get("max_column_weight", 0.0))


def transition_matrix(record, bra_labels=None, expand_closing=False):
    """T_mn over logical labels from a run record.

    Every dense block contributes its two opening-projection branches
    (identity and -i g_a g_b, both transported to the final time); the 2 per
    round trip of the readout formula cancels the 1/2 branch weights, so each
    branch enters with unit weight and a readout label costs exactly 2^M
    Pfaffians.  The closing quadruple projections are collapsed against the
    computational bras (exact up to diabatic leakage out of the stabilizer
    eigenspace); ``expand_closing`` keeps both closing branches instead,
    which restores the hard column-weight bound at 4^M branches.
    """
    net, params, ref = record.network, record.params, record.reference
    n_q = len(net.mzm_slots) // 4
    if bra_labels is None:
        bra_labels = list(range(1 << n_q))
    base_h = assemble(net, params, MuProfile(parked_mu_profile(net, params)), record.disorder)
    bras = {}
    for m in bra_labels:
        label = m if isinstance(m, LogicalLabel) else LogicalLabel.from_index(m, n_q)
        bras[label.index] = basis_state(label, net, params, ref, base_h, record.disorder)

    m_blocks = len(record.branch_groups)
    per_block = 4 if expand_closing else 2
    branch_count = per_block ** m_blocks
    ket_idx = sorted(record.evolved_kets)
    bra_idx = sorted(bras)
    out = np.zeros((len(bra_idx), len(ket_idx)), dtype=complex)
    calls = 0
    for col, nk in enumerate(ket_idx):
        ket = record.evolved_kets[nk]
        for row, mb in enumerate(bra_idx):
            bra = bras[mb]
            total = 0.0 + 0.0j
            for branch in range(branch_count):
                rows = []
                scalar = 1.0 + 0.0j
                # later blocks sit to the left in the operator string
                for blk in reversed(range(m_blocks)):
                    choice = (branch // per_block ** blk) % per_block
                    if expand_closing:
                        if choice >= 2:   # closing Q = -g_a g_b g_c g_d branch
                            rows.extend(record.closing_groups[blk])
                            scalar *= -0.5
                        else:
                            scalar *= 0.5
                        if choice % 2:
                            ga, gb = record.branch_groups[blk]
                            rows.extend([ga, gb])
                            scalar *= -1.0j
                    elif choice:
                        ga, gb = record.branch_groups[blk]
                        rows.extend([ga, gb])
                        scalar *= -1.0j
                total += scalar * amplitude(bra, rows, ket)
                calls += 1
            out[row, col] = total
    record.pfaffian_calls = calls
    weight = max((float((np.abs(out[:, c]) ** 2).sum()) for c in range(out.shape[1])), default=0.0)
    return TransitionMatrix(entries=out, bra_labels=bra_idx, ket_labels=ket_idx,
                            branch_count=branch_count, pfaffian_calls=calls,
                            max_column_weight=weight)


def fidelity_and_subspace_probability(tmat, input_label, target_vector):
    """fidelity = |<target|T column>|^2; subspace probability = sum |T|^2."""
    target = np.asarray(target_vector, dtype=complex)
    if abs(np.linalg.norm(target) - 1.0) > 1e-8:
        raise CompilationError("target state must be normalized")
    col = tmat.column(input_label)
    if len(col) != len(target):
        raise CompilationError("target dimension does not match the bra set")
    fidelity = float(abs(np.vdot(target, col)) ** 2)
    subspace = float((np.abs(col) ** 2).sum())
    return fidelity, subspace
