"""Bogoliubov-de Gennes model assembly and zero-mode diagnostics.

Nambu convention: basis (c_1..c_n, c_1^dag..c_n^dag) with

    H_BdG = [[h, D], [-D*, -h^T]],

h_ab the hermitian single-particle block, D antisymmetric pairing.  The
many-body Hamiltonian is H = 1/2 Psi^dag H_BdG Psi + 1/2 tr(h), so the
positive eigenvalues of H_BdG are the physical quasiparticle energies.

Majorana convention (site a, 0-based): gamma_{2a} = c_a + c_a^dag,
gamma_{2a+1} = i(c_a^dag - c_a), i.e. c_a = (gamma_{2a} + i gamma_{2a+1})/2.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import constants
from .network import bond_pairing_phase


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    t_hop: float = constants.T_HOP
    delta_abs: float = constants.DELTA_ABS
    mu_topo: float = constants.MU_TOPO
    mu_triv: float = constants.MU_TRIV

    def validate(self):
        if self.t_hop <= 0:
            raise AssemblyError("hopping must be positive")
        if abs(self.mu_topo) >= 2 * self.t_hop:
            raise AssemblyError("mu_topo must satisfy |mu| < 2t for a topological region")
        if abs(self.mu_triv) <= 2 * self.t_hop:
            raise AssemblyError("mu_triv must satisfy |mu| > 2t for a trivial region")


class MuProfile:
    """Per-site chemical potential, indexed by site id."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)

    def __getitem__(self, site):
        return self.values[site]

    def __len__(self):
        return len(self.values)

    @classmethod
    def uniform(cls, network, mu):
        return cls(np.full(network.num_sites, float(mu)))


@dataclass(frozen=True)
class DisorderRealization:
    strength: float
    seed: int
    offsets: np.ndarray

    def to_document(self):
        return {"strength": self.strength, "seed": self.seed,
                "offsets": [float(x) for x in self.offsets]}

    def to_json(self):
        return json.dumps(self.to_document())

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        return cls(strength=doc["strength"], seed=doc["seed"],
                   offsets=np.array(doc["offsets"], dtype=float))


def sample_disorder(network, strength, seed):
    """I.i.d. uniform on-site offsets in [-V, V]; bit-reproducible from seed."""
    if strength < 0:
        raise AssemblyError(f"disorder strength must be >= 0, got {strength}")
    rng = np.random.Generator(np.random.PCG64(seed))
    offsets = rng.uniform(-strength, strength, size=network.num_sites) if strength > 0 \
        else np.zeros(network.num_sites)
    return DisorderRealization(strength=float(strength), seed=int(seed), offsets=offsets)


@dataclass(frozen=True)
class BdGMatrix:
    matrix: np.ndarray          # 2n x 2n complex
    num_sites: int
    trace_h: float              # tr(h), enters the many-body constant

    def __post_init__(self):
        m = self.matrix
        herm = np.abs(m - m.conj().T).max()
        scale = max(np.abs(m).max(), 1.0)
        if herm > 1e-12 * scale:
            raise AssemblyError(f"BdG matrix not hermitian: {herm:.3e}")


def assemble(network, params, mu, disorder=None):
    """Instantaneous BdG matrix from geometry, mu profile and disorder."""
    n = network.num_sites
    if len(mu) != n:
        raise AssemblyError(f"mu profile covers {len(mu)} sites, network has {n}")
    if disorder is not None and len(disorder.offsets) != n:
        raise AssemblyError("disorder realization does not cover the network")

    onsite = -np.asarray(mu.values if isinstance(mu, MuProfile) else mu, dtype=float)
    if disorder is not None:
        # impurity term +w_l c^dag c enters h with opposite sign to -mu
        onsite = onsite + disorder.offsets

    h = np.diag(onsite.astype(complex))
    d = np.zeros((n, n), dtype=complex)
    for a, b, orient in network.bonds:
        h[a, b] = h[b, a] = -params.t_hop
        phase = 0.0 if orient == "h" else np.pi / 2
        delta = params.delta_abs * np.exp(1j * phase)
        # pairing delta c_a^dag c_b^dag with (a, b) the stored bond direction
        d[a, b] += delta
        d[b, a] -= delta

    top = np.hstack([h, d])
    bot = np.hstack([-d.conj(), -h.T])
    m = np.vstack([top, bot])
    return BdGMatrix(matrix=m, num_sites=n, trace_h=float(np.trace(h).real))


def quasiparticle_rows(H):
    """Annihilator rows and energies of the BdG matrix.

    Returns (energies, rows): energies[k] >= 0 ascending, rows[k] the
    coefficient row of the annihilator d_k over (c, c^dag); rows are
    conjugate-transposed +E eigenvectors.  Creators are rows.conj() @ Lambda.
    """
    evals, evecs = np.linalg.eigh(H.matrix)
    n = H.num_sites
    pos = np.argsort(evals)[n:]          # the n nonnegative energies, ascending
    energies = evals[pos]
    rows = evecs[:, pos].conj().T
    return energies, rows


def adjoint_rows(rows):
    """Rows of the adjoint operators: swap (c, c^dag) blocks and conjugate."""
    n = rows.shape[1] // 2
    out = np.empty_like(rows)
    out[:, :n] = rows[:, n:].conj()
    out[:, n:] = rows[:, :n].conj()
    return out


def canonical_quasiparticle_rows(H, degeneracy_cut=1e-9):
    """Annihilator rows with the exact-zero block repaired to canonical form.

    eigh mixes annihilators and creators freely inside a degenerate zero
    block; those rows are rebuilt from the real (Majorana) span so that
    {d_i, d_j} = 0 and {d_i, d_j^dag} = delta_ij hold throughout.
    """
    energies, rows = quasiparticle_rows(H)
    n = H.num_sites
    k = int(np.sum(energies < degeneracy_cut))
    if k == 0:
        return energies, rows
    evals, evecs = np.linalg.eigh(H.matrix)
    null_idx = np.argsort(np.abs(evals))[: 2 * k]
    null_rows = evecs[:, null_idx].conj().T
    omega = majorana_basis_matrix(n)
    g = null_rows @ omega.conj().T / 2.0
    span = np.vstack([g.real, g.imag])
    q = np.linalg.svd(span.T, full_matrices=False)[0][:, : 2 * k].T
    fixed = np.empty((k, 2 * n), dtype=complex)
    for m in range(k):
        fixed[m] = 0.5 * (q[2 * m] + 1j * q[2 * m + 1]) @ omega
    rows = rows.copy()
    rows[:k] = fixed
    return energies, rows


def majorana_basis_matrix(n):
    """Omega with gamma = Omega Psi for the site-local Majorana convention."""
    omega = np.zeros((2 * n, 2 * n), dtype=complex)
    for a in range(n):
        omega[2 * a, a] = 1.0
        omega[2 * a, n + a] = 1.0
        omega[2 * a + 1, a] = -1.0j
        omega[2 * a + 1, n + a] = 1.0j
    return omega


def zero_modes(H, count):
    """The ``count`` smallest-|E| eigenpairs with localization centers.

    Returns a list of (energy, mode vector, center site); mode vectors are
    columns of the +E side paired with their particle-hole partners.  A
    degenerate, poorly separated manifold is flagged via the last return.
    """
    if count % 2:
        raise AssemblyError("zero-mode count must be even (PH symmetry pairs modes)")
    if count == 0:
        return [], False
    evals, evecs = np.linalg.eigh(H.matrix)
    order = np.argsort(np.abs(evals))
    n = H.num_sites
    out = []
    for idx in order[:count]:
        vec = evecs[:, idx]
        weight = np.abs(vec[:n]) ** 2 + np.abs(vec[n:]) ** 2
        out.append((float(evals[idx]), vec, int(np.argmax(weight))))
    # flag: next excitation not cleanly separated from the kept manifold
    kept = abs(evals[order[count - 1]])
    nxt = abs(evals[order[count]]) if 2 * n > count else np.inf
    flagged = bool(nxt < 10 * max(kept, 1e-300))
    return out, flagged


def slot_majoranas(network, H, zero_threshold=constants.ZERO_MODE_ENERGY_CUT,
                   window=4, min_weight=0.6):
    """Slot-localized Majorana operators from the near-zero manifold.

    Returns a (4N x 2n) complex array of operator rows over (c, c^dag), one
    self-adjoint gamma per parking slot in slot order, normalized to
    gamma^2 = 1, with a deterministic sign gauge.  Raises AssemblyError when
    localization is ambiguous (weight in the slot window below threshold).
    """
    n = H.num_sites
    slots = network.mzm_slots
    n_modes = len(slots) // 2            # near-zero fermion modes expected
    energies, rows = quasiparticle_rows(H)
    if not np.all(np.abs(energies[:n_modes]) < zero_threshold):
        raise AssemblyError("expected %d near-zero modes below %g, energies %s"
                            % (n_modes, zero_threshold, energies[:n_modes + 2]))
    if len(energies) > n_modes and abs(energies[n_modes]) < zero_threshold:
        raise AssemblyError("zero-mode manifold larger than the slot count")

    omega = majorana_basis_matrix(n)
    omega_inv = omega.conj().T / 2.0
    # span the zero manifold from every |E| < threshold eigenvector (exact
    # degeneracies let eigh mix annihilators with creators arbitrarily)
    evals, evecs = np.linalg.eigh(H.matrix)
    null_idx = np.argsort(np.abs(evals))[: 2 * n_modes]
    zero_rows = evecs[:, null_idx].conj().T
    gcoords = zero_rows @ omega_inv       # operator rows in gamma coordinates
    # real span of the self-adjoint operators in the zero manifold
    span = np.vstack([gcoords.real, gcoords.imag])
    q, s, _ = np.linalg.svd(span.T, full_matrices=False)
    rank = int(np.sum(s > 1e-8 * s[0]))
    if rank != 2 * n_modes:
        raise AssemblyError(f"zero-manifold real rank {rank}, expected {2*n_modes}")
    basis = q[:, :rank]                   # (2n, 4N), orthonormal columns

    candidates = []
    remaining = basis.copy()
    for slot_site in slots:
        dists = _distance_map(network, slot_site, window)
        cols, weights = [], []
        for s_, d in dists.items():
            cols.extend([2 * s_, 2 * s_ + 1])
            weights.extend([np.exp(-d), np.exp(-d)])
        sub = remaining[cols, :] * np.asarray(weights)[:, None]
        # coefficient maximizing distance-weighted weight near the slot
        coeff = np.linalg.svd(sub, full_matrices=False)[2][0]
        vec = remaining @ coeff
        w = float(np.linalg.norm(vec[cols]))
        if w < min_weight:
            raise AssemblyError(
                f"ambiguous Majorana localization at slot site {slot_site}: window weight {w:.3f}")
        candidates.append(vec)
        # deflate so later slots cannot reuse this direction
        remaining = remaining - np.outer(vec, vec @ remaining)

    v = np.array(candidates)              # (4N, 2n) real
    overlap = v @ v.T
    evals_o, evecs_o = np.linalg.eigh(overlap)
    if evals_o.min() < 1e-6:
        raise AssemblyError("slot Majorana candidates are (nearly) linearly dependent")
    inv_sqrt = evecs_o @ np.diag(evals_o ** -0.5) @ evecs_o.T
    v = inv_sqrt @ v                      # Loewdin orthonormalization
    # deterministic sign: largest-|component| entry positive
    for k in range(v.shape[0]):
        j = int(np.argmax(np.abs(v[k])))
        if v[k, j] < 0:
            v[k] = -v[k]
    return v @ omega                      # back to (c, c^dag) coefficient rows


def _distance_map(network, start, radius):
    """{site: graph distance} for sites within ``radius`` of ``start``."""
    seen = {start: 0}
    frontier = [start]
    for d in range(1, radius + 1):
        nxt = []
        for s in frontier:
            for t in network.neighbors(s):
                if t not in seen:
                    seen[t] = d
                    nxt.append(t)
        frontier = nxt
    return seen
