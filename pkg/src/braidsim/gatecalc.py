"""Ideal Majorana braid algebra on the logical space.

Small exact matrix representation (Jordan-Wigner) of the 4N Majorana
operators, the X-basis codespace, braid generators exp(pi/4 g_i g_j) and the
sparse/dense projectors.  Used to derive and lock the gate convention table
(which exchange realizes which logical gate, including chirality signs) and
to compute ideal circuit targets for fidelity checks.
"""

from functools import lru_cache
import itertools

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

GATES_1Q = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "X": PAULI["X"],
    "Y": PAULI["Y"],
    "Z": PAULI["Z"],
    "SX": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex),
}
GATES_1Q["SXDG"] = GATES_1Q["SX"].conj().T


def _kron(ops):
    out = np.array([[1.0 + 0j]])
    for o in ops:
        out = np.kron(out, o)
    return out


@lru_cache(maxsize=32)
def majorana_ops(n_fermions):
    """2*n_fermions Majorana matrices via Jordan-Wigner; g_{2k} = c_k + c_k^dag."""
    out = []
    for k in range(n_fermions):
        z_string = ["Z"] * k
        out.append(_kron([PAULI[p] for p in z_string] + [PAULI["X"]] + [PAULI["I"]] * (n_fermions - k - 1)))
        out.append(_kron([PAULI[p] for p in z_string] + [PAULI["Y"]] + [PAULI["I"]] * (n_fermions - k - 1)))
    return out


def braid_unitary(gammas, i, j, chirality="ccw"):
    """exp(+pi/4 g_i g_j) for ccw, its inverse for cw (0-based Majorana ids)."""
    g = gammas[i] @ gammas[j]
    sign = 1.0 if chirality == "ccw" else -1.0
    # g^2 = -1 for i != j, so exp(s pi/4 g) = cos(pi/4) + s g sin(pi/4)
    return np.cos(np.pi / 4) * np.eye(g.shape[0]) + sign * np.sin(np.pi / 4) * g


class SparseCode:
    """X-basis codespace of N sparse qubits (4 Majoranas per qubit).

    Stabilizers: -i g_{4k-2} g_{4k-1} and -i g_{4k-3} g_{4k} (1-based labels)
    both equal to (-1)^{n_k} on |n_1..n_N>.
    """

    def __init__(self, num_qubits):
        self.n_q = num_qubits
        self.n_f = 2 * num_qubits
        self.gam = majorana_ops(self.n_f)
        self.basis = self._codewords()

    def gamma(self, label):
        """Majorana matrix by 1-based slot label."""
        return self.gam[label - 1]

    def stabilizers(self, k):
        """(X-pair, ancilla-pair) stabilizer matrices of qubit k (1-based)."""
        g = self.gamma
        return (-1j * g(4 * k - 2) @ g(4 * k - 1), -1j * g(4 * k - 3) @ g(4 * k))

    def _codewords(self):
        # row f holds |n_1..n_N> with the binary index f = sum 2^i n_{i+1};
        # relative phases are operator-anchored to |0..0> through
        # Z_k = -i g_{4k-3} g_{4k-2} applied in ascending k (the simulator's
        # Gaussian basis states use the identical convention)
        dim = 1 << self.n_f
        proj = np.eye(dim, dtype=complex)
        for k in range(1, self.n_q + 1):
            sx, sa = self.stabilizers(k)
            proj = proj @ (0.5 * (np.eye(dim) + sx)) @ (0.5 * (np.eye(dim) + sa))
        col = 0
        while np.linalg.norm(proj[:, col]) < 1e-9:
            col += 1
        zero = proj[:, col] / np.linalg.norm(proj[:, col])
        piv = zero[np.argmax(np.abs(zero))]
        zero = zero * (abs(piv) / piv)
        vecs = []
        for f in range(1 << self.n_q):
            v = zero
            for k in range(1, self.n_q + 1):
                if (f >> (k - 1)) & 1:
                    v = (-1j * self.gamma(4 * k - 3) @ self.gamma(4 * k - 2)) @ v
            vecs.append(v)
        return np.array(vecs)   # [label, dim]

    def logical_unitary(self, big_u, atol=1e-9):
        """Project a Fock-space unitary onto the codespace; None if it leaks."""
        sub = self.basis.conj() @ big_u @ self.basis.T
        # unitarity of the block detects leakage
        if np.abs(sub @ sub.conj().T - np.eye(len(sub))).max() > atol:
            return None
        return sub


def braid_word_unitary(code, word):
    """Unitary of a slot-indexed move list (1-based slots, applied in order).

    An exchange at slots (i, j) always applies exp(+-pi/4 g_i g_j) over the
    FIXED parked-slot operators: the schedule at a slot pair realizes the
    same lab-frame propagator regardless of which worldline currently parks
    there (identical mu(t) path, identical time-ordered exponential), which
    is why repeating an exchange twice yields the Ivanov bit flip.
    """
    dim = 1 << code.n_f
    u = np.eye(dim, dtype=complex)
    for i, j, chir in word:
        u = braid_unitary(code.gam, i - 1, j - 1, chir) @ u
    return u


def equal_up_to_phase(a, b, atol=1e-8):
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < atol or abs(a[idx]) < atol:
        return False
    phase = a[idx] / b[idx]
    if abs(abs(phase) - 1) > atol:
        return False
    return bool(np.abs(a - phase * b).max() < atol)


def single_qubit_gate(name, qubit, num_qubits):
    """Gate on qubit ``qubit`` (0-based) with labels f = sum 2^q n_{q+1}."""
    mat = GATES_1Q[name.upper()]
    dim = 1 << num_qubits
    u = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        b = (idx >> qubit) & 1
        for b2 in (0, 1):
            if mat[b2, b] != 0:
                u[(idx & ~(1 << qubit)) | (b2 << qubit), idx] += mat[b2, b]
    return u


def two_qubit_gate(name, control, target, num_qubits):
    dim = 1 << num_qubits
    u = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        bc, bt = (idx >> control) & 1, (idx >> target) & 1
        if name.upper() in ("CNOT", "CX"):
            j = idx ^ (1 << target) if bc else idx
            u[j, idx] = 1.0
        elif name.upper() == "CZ":
            u[idx, idx] = -1.0 if (bc and bt) else 1.0
        else:
            raise KeyError(f"unknown two-qubit gate {name!r}")
    return u


def circuit_unitary(gates, num_qubits):
    """Ideal 2^N x 2^N unitary of a gate list [(name, qubits...), ...]."""
    u = np.eye(1 << num_qubits, dtype=complex)
    for gate in gates:
        name, qubits = gate[0].upper(), gate[1:]
        if name in ("CNOT", "CX", "CZ"):
            u = two_qubit_gate(name, qubits[0], qubits[1], num_qubits) @ u
        else:
            u = single_qubit_gate(name, qubits[0], num_qubits) @ u
    return u
