"""Derive the braid-word convention table from the ideal Majorana algebra.

Single-qubit table: classify every adjacent exchange on the N=1 sparse code.
Dense CNOT: meet-in-the-middle search over adjacent exchanges on the N=2
code sandwiched between the encoding-switch projectors.  The findings are
frozen in braidsim.constants (GATE_TABLE / CNOT_WORD) and locked by tests.

Run:  python3 scripts/derive_gate_table.py
"""

import itertools
import numpy as np

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from braidsim.gatecalc import (SparseCode, braid_unitary, braid_word_unitary,
                               GATES_1Q, equal_up_to_phase, circuit_unitary)


def classify_single_qubit():
    code = SparseCode(1)
    names = {name: m for name, m in GATES_1Q.items() if name in ("S", "SDG", "SX", "H", "X", "Z")}
    names["SXDG"] = GATES_1Q["SX"].conj().T
    print("single-qubit exchanges on the N=1 sparse code:")
    table = {}
    for i, j in ((1, 2), (2, 3), (3, 4)):
        for chir in ("ccw", "cw"):
            u = braid_word_unitary(code, [(i, j, chir)])
            sub = code.logical_unitary(u)
            if sub is None:
                print(f"  exchange({i},{j},{chir}): leaks the codespace")
                continue
            match = [nm for nm, m in names.items() if equal_up_to_phase(sub, m)]
            print(f"  exchange({i},{j},{chir}) -> {np.round(sub, 3).tolist()}  = {match}")
            for nm in match:
                table.setdefault(nm, []).append((i, j, chir))
    # compose H from S and SX words
    for s_word in table.get("S", []):
        for x_word in table.get("SX", []):
            u = braid_word_unitary(code, [s_word, x_word, s_word])
            sub = code.logical_unitary(u)
            if sub is not None and equal_up_to_phase(sub, GATES_1Q["H"]):
                print(f"  H = {s_word} * {x_word} * {s_word}")
    return table


def dense_cnot_search(max_half=3):
    """Find braid words w with 2 P1234 U_w P45 = CNOT (control 1) up to phase."""
    code = SparseCode(2)
    g = code.gamma
    dim = 1 << code.n_f
    eye = np.eye(dim)
    p45 = 0.5 * (eye + (-1j * g(4) @ g(5)))          # even joint parity of d_45
    q_s1 = -g(1) @ g(2) @ g(3) @ g(4)
    p1234 = 0.5 * (eye + q_s1)
    basis = code.basis
    target = circuit_unitary([("CNOT", 0, 1)], 2)

    # active modes in the dense encoding: (1,2,3,6,7,8); braids act on
    # dense-adjacent pairs, including (3,6) across the fused (4,5) pair
    pairs = [(1, 2), (2, 3), (3, 6), (6, 7), (7, 8)]
    gens = []
    for i, j in pairs:
        for chir in ("ccw", "cw"):
            gens.append(((i, j, chir), braid_unitary(code.gam, i - 1, j - 1, chir)))

    def logical_t(u_mid):
        m = 2.0 * (basis.conj() @ (p1234 @ u_mid @ p45) @ basis.T)
        return m

    def canon_key(mat):
        idx = np.unravel_index(np.argmax(np.abs(mat)), mat.shape)
        if abs(mat[idx]) < 1e-9:
            return None
        m = mat / mat[idx]
        return tuple(np.round(m, 6).ravel())

    # right halves: U_r applied first
    right = {}
    for depth in range(0, max_half + 1):
        for combo in itertools.product(gens, repeat=depth):
            u = eye
            word = []
            for mv, gm in combo:
                u = gm @ u
                word.append(mv)
            right.setdefault(depth, []).append((tuple(word), u))

    found = []
    for dl in range(0, max_half + 1):
        for combo_l in itertools.product(gens, repeat=dl):
            ul = eye
            word_l = []
            for mv, gm in combo_l:
                ul = gm @ ul
                word_l.append(mv)
            for dr in range(0, max_half + 1):
                for word_r, ur in right[dr]:
                    t = logical_t(ul @ ur)
                    if equal_up_to_phase(t, target, atol=1e-7):
                        word = list(word_r) + word_l
                        found.append(word)
                        print(f"  CNOT word (len {len(word)}): {word}")
                        if len(found) >= 4:
                            return found
    return found


if __name__ == "__main__":
    table = classify_single_qubit()
    print("\ndense CNOT search (depth <= 6):")
    words = dense_cnot_search()
    if not words:
        print("  none found up to the searched depth")
