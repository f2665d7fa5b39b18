"""Exact many-body simulation on the full 2^n Fock space.

Ground truth for the Gaussian machinery on small networks.  Basis state
``idx`` is (c_0^dag)^{b_0} (c_1^dag)^{b_1} ... |vac> with b_a = (idx >> a) & 1,
giving the usual Jordan-Wigner sign strings.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

SITE_CAP = 14


class OracleError(ValueError):
    pass


@lru_cache(maxsize=64)
def _annihilator(site, n):
    """Sparse c_site on the 2^n Fock space."""
    dim = 1 << n
    idx = np.arange(dim)
    occupied = (idx >> site) & 1 == 1
    src = idx[occupied]
    dst = src ^ (1 << site)
    below = src & ((1 << site) - 1)
    signs = 1.0 - 2.0 * (np.bitwise_count(below.astype(np.uint64)) & 1).astype(float)
    return sp.csr_matrix((signs, (dst, src)), shape=(dim, dim))


def annihilator(site, n):
    return _annihilator(site, n)


def creator(site, n):
    return _annihilator(site, n).T.conj().tocsr()


def number_op(site, n):
    c = _annihilator(site, n)
    return (c.T.conj() @ c).tocsr()


def parity_op(n):
    dim = 1 << n
    idx = np.arange(dim, dtype=np.uint64)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx) & 1).astype(float)
    return sp.diags(signs).tocsr()


def row_operator(row, n):
    """Sparse operator for a coefficient row over (c_1..c_n, c_1^dag..c_n^dag)."""
    row = np.asarray(row)
    if row.shape != (2 * n,):
        raise OracleError(f"row has shape {row.shape}, expected {(2 * n,)}")
    dim = 1 << n
    op = sp.csr_matrix((dim, dim), dtype=complex)
    for a in range(n):
        if row[a] != 0:
            op = op + row[a] * _annihilator(a, n)
        if row[n + a] != 0:
            op = op + row[n + a] * creator(a, n)
    return op


def many_body_hamiltonian(network, params, mu, disorder=None):
    """Second-quantized H of the Kitaev network on the full Fock space.

    Mirrors bdg.assemble term by term (same bond directions and phases).
    """
    n = network.num_sites
    if n > SITE_CAP:
        raise OracleError(f"{n} sites exceed the oracle cap of {SITE_CAP}")
    onsite = -np.asarray(mu.values if hasattr(mu, "values") else mu, dtype=float)
    if disorder is not None:
        onsite = onsite + disorder.offsets
    dim = 1 << n
    ham = sp.csr_matrix((dim, dim), dtype=complex)
    for a in range(n):
        if onsite[a] != 0.0:
            ham = ham + onsite[a] * number_op(a, n)
    for a, b, orient in network.bonds:
        ca, cb = _annihilator(a, n), _annihilator(b, n)
        hop = ca.T.conj() @ cb
        ham = ham - params.t_hop * (hop + hop.T.conj())
        delta = params.delta_abs * np.exp(1j * (0.0 if orient == "h" else np.pi / 2))
        pair = delta * (ca.T.conj() @ cb.T.conj())
        ham = ham + pair + pair.T.conj()
    return ham.tocsr()


@dataclass
class FockState:
    amplitudes: np.ndarray
    num_sites: int

    def __post_init__(self):
        if self.num_sites > SITE_CAP:
            raise OracleError(f"{self.num_sites} sites exceed the oracle cap")
        if self.amplitudes.shape != (1 << self.num_sites,):
            raise OracleError("amplitude vector has the wrong length")

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def vacuum(cls, n):
        amps = np.zeros(1 << n, dtype=complex)
        amps[0] = 1.0
        return cls(amps, n)


def state_from_rows(rows, scalar, n, reference=None):
    """Materialize scalar * L_1 L_2 ... L_K |ref> as a Fock vector."""
    vec = FockState.vacuum(n).amplitudes if reference is None else np.asarray(reference, dtype=complex).copy()
    for row in reversed(list(rows)):
        vec = row_operator(row, n) @ vec
    return FockState(scalar * vec, n)


def exact_propagate(network, params, schedule, disorder, state, dt):
    """Evolve under the full many-body Hamiltonian, midpoint rule per step.

    ``schedule`` only needs ``total_duration`` and ``mu_profile(t)``.
    """
    n = network.num_sites
    if n > SITE_CAP:
        raise OracleError(f"{n} sites exceed the oracle cap of {SITE_CAP}")
    amps = state.amplitudes.astype(complex)
    t = 0.0
    total = schedule.total_duration
    while t < total - 1e-12:
        step = min(dt, total - t)
        mu = schedule.mu_profile(t + 0.5 * step)
        ham = many_body_hamiltonian(network, params, mu, disorder)
        amps = expm_multiply(-1j * step * ham, amps)
        t += step
    out = FockState(amps, n)
    drift = abs(out.norm - state.norm)
    if drift > 1e-8:
        raise OracleError(f"oracle norm drift {drift:.2e}")
    return out


def exact_amplitude(bra, operator_rows, ket):
    """<bra| O_1 O_2 ... O_k |ket> with each O a coefficient row."""
    if bra.num_sites != ket.num_sites:
        raise OracleError("bra/ket site mismatch")
    n = ket.num_sites
    vec = ket.amplitudes
    for row in reversed(list(operator_rows)):
        vec = row_operator(row, n) @ vec
    return complex(np.vdot(bra.amplitudes, vec))
