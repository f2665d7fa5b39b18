"""Phase-faithful fermionic Gaussian states over a fixed reference vacuum.

A pure Gaussian state is stored as |psi> = z * L_{k1} L_{k2} ... |ref>, where
the L_k are the quasiparticle annihilators of the state (coefficient rows
over (c_1..c_n, c_1^dag..c_n^dag)) whose occupation with respect to the
reference exceeds the empty threshold; modes that coincide with reference
modes (the Bloch-Messiah empty sector) drop out of the product.  All
amplitudes reduce to Pfaffians of Wick contraction matrices against the
reference, times the tracked scalars.
"""

from dataclasses import dataclass, field

import numpy as np

from . import constants
from .bdg import adjoint_rows, quasiparticle_rows, slot_majoranas
from .pfaffian import pfaffian


class GaussianError(ValueError):
    pass


def _lambda_swap(n):
    lam = np.zeros((2 * n, 2 * n))
    lam[:n, n:] = np.eye(n)
    lam[n:, :n] = np.eye(n)
    return lam


class ReferenceVacuum:
    """Fixed Gaussian vacuum |ref> against which all strings are contracted.

    ``rows``: n x 2n annihilator rows of the reference modes (orthonormal as
    half of a Bogoliubov transform).  The Wick matrix G_ij = <ref|Psi_i Psi_j|ref>
    is cached; for the bare vacuum it is [[0, I], [0, 0]].
    """

    def __init__(self, rows, tag="reference"):
        rows = np.asarray(rows, dtype=complex)
        n2 = rows.shape[1]
        if rows.shape[0] * 2 != n2:
            raise GaussianError(f"reference rows must be n x 2n, got {rows.shape}")
        self.rows = rows
        self.num_sites = n2 // 2
        self.tag = tag
        full = np.vstack([rows, adjoint_rows(rows)])
        dev = np.abs(full @ full.conj().T - np.eye(n2)).max()
        if dev > 1e-10:
            raise GaussianError(f"reference modes are not canonical: {dev:.2e}")
        lam = _lambda_swap(self.num_sites)
        self.wick = rows.conj().T @ rows @ lam
        self._fock_cache = None

    @classmethod
    def bare(cls, n):
        rows = np.zeros((n, 2 * n), dtype=complex)
        rows[:, :n] = np.eye(n)
        return cls(rows, tag="bare-vacuum")

    def contract(self, string_rows):
        """Antisymmetric Wick matrix M_ij = <ref| L_i L_j |ref> (i < j)."""
        s = string_rows @ self.wick @ string_rows.T
        m = np.triu(s, 1)
        return m - m.T

    def occupations(self, rows):
        """<ref| L^dag L |ref> for each row (0 = mode shared with reference)."""
        adj = adjoint_rows(np.atleast_2d(rows))
        out = np.einsum("ki,ij,kj->k", adj, self.wick, np.atleast_2d(rows))
        return out.real

    def fock_vector(self):
        """Deterministic Fock-space vector of |ref> (oracle-scale only)."""
        if self._fock_cache is None:
            from .fock import state_from_rows
            n = self.num_sites
            rotated, kept, _ = canonicalize(ReferenceVacuum.bare(n), self.rows)
            vec = state_from_rows(rotated[kept], 1.0, n).amplitudes
            nrm = np.linalg.norm(vec)
            if nrm == 0:
                raise GaussianError("reference product form vanished")
            self._fock_cache = vec / nrm
        return self._fock_cache


@dataclass
class MajoranaOperatorExpr:
    """Operator over the 2n Majorana basis: linear, bilinear or quartic-stabilizer.

    ``rows`` holds the linear factors as (c, c^dag) coefficient rows, applied
    left to right; ``scalar`` multiplies the product.  Bilinear expressions
    are -i g_a g_b (two rows, scalar -i); quartic stabilizers are signed
    four-row products.
    """
    kind: str
    rows: np.ndarray
    scalar: complex = 1.0

    def __post_init__(self):
        if self.kind not in ("linear", "bilinear", "quartic-stabilizer"):
            raise GaussianError(f"unknown operator kind {self.kind!r}")
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=complex))
        expected = {"linear": 1, "bilinear": 2, "quartic-stabilizer": 4}[self.kind]
        if self.rows.shape[0] != expected:
            raise GaussianError(f"{self.kind} expression needs {expected} rows")


@dataclass
class GaussianState:
    """|psi> = z * (product of kept annihilator rows, ascending index) |ref>."""

    reference: ReferenceVacuum
    rows: np.ndarray                  # n x 2n, all annihilators of the state
    kept: np.ndarray                  # bool mask of rows in the product string
    z: complex
    parity: int = 1                   # total fermion parity relative to |ref>

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=complex)
        self.kept = np.asarray(self.kept, dtype=bool)

    @property
    def num_sites(self):
        return self.rows.shape[1] // 2

    @property
    def string_rows(self):
        return self.rows[self.kept]

    @property
    def empty_sector_size(self):
        """p: number of modes shared with the reference (dropped from strings)."""
        return int((~self.kept).sum())

    def norm(self):
        return abs(self.z) * _string_norm(self.reference, self.string_rows)

    def with_scalar(self, z):
        return GaussianState(self.reference, self.rows, self.kept, z, self.parity)

    def fock_vector(self):
        from .fock import state_from_rows
        base = self.reference.fock_vector()
        return state_from_rows(self.string_rows, self.z, self.num_sites, base).amplitudes

    def overlap(self, other):
        """<self|other> via the contraction Pfaffian."""
        return amplitude(self, [], other)


def _string_norm(reference, string_rows):
    """|| L_1 ... L_K |ref> || from the 2K x 2K contraction Pfaffian."""
    k = string_rows.shape[0]
    if k == 0:
        return 1.0
    stack = np.vstack([adjoint_rows(string_rows)[::-1], string_rows])
    val = pfaffian(reference.contract(stack))
    if val.real < -1e-12:
        raise GaussianError(f"negative norm^2 {val:.3e} (inconsistent string)")
    return float(np.sqrt(max(val.real, 0.0)))


def canonicalize(reference, rows):
    """Rotate annihilator rows to the Bloch-Messiah basis of the reference.

    Returns (rotated rows, kept mask, occupations).  In this basis the empty
    sector (modes shared with the reference) is exact, so the kept product
    never vanishes by the parity obstruction that afflicts raw eigenrows.
    """
    rows = np.asarray(rows, dtype=complex)
    n = rows.shape[1] // 2
    fmat = np.vstack([reference.rows, adjoint_rows(reference.rows)])
    anomalous = rows @ fmat.conj().T[:, n:]      # B block of d = A f + B f^dag
    rho = anomalous @ anomalous.conj().T
    occ, mix = np.linalg.eigh(rho)
    occ = np.clip(occ.real, 0.0, 1.0)
    rotated = mix.conj().T @ rows
    kept = occ > constants.EMPTY_OCC_THRESHOLD
    return rotated, kept, occ


def make_state(reference, rows, normalize=True):
    """State from annihilator rows; scalar fixed real-positive by normalization."""
    rotated, kept, _ = canonicalize(reference, rows)
    st = GaussianState(reference, rotated, kept, 1.0, parity=int((-1) ** int(kept.sum())))
    if normalize:
        nrm = _string_norm(reference, st.string_rows)
        if nrm == 0:
            raise GaussianError("state has vanishing product form (degenerate string)")
        st.z = 1.0 / nrm
    return st


def amplitude(bra, insertions, ket):
    """<bra| O_1 ... O_k |ket> by Wick's theorem against the shared reference.

    ``insertions`` is a sequence of linear MajoranaOperatorExpr (or bare
    coefficient rows); bilinear/quartic operators must be pre-expanded into
    Gaussian branches upstream.  Exact zero is returned on a parity mismatch.
    """
    if bra.reference is not ket.reference and not np.array_equal(bra.reference.rows, ket.reference.rows):
        raise GaussianError("bra and ket use different reference vacua")
    rows = []
    scalar = np.conj(bra.z) * ket.z
    for op in insertions:
        if isinstance(op, MajoranaOperatorExpr):
            if op.kind != "linear":
                raise GaussianError("amplitude accepts only linear insertions; expand branches upstream")
            rows.append(op.rows[0])
            scalar *= op.scalar
        else:
            rows.append(np.asarray(op, dtype=complex))
    bra_rows = adjoint_rows(bra.string_rows)[::-1] if bra.string_rows.size else np.zeros((0, 2 * bra.num_sites))
    parts = [bra_rows] + [np.atleast_2d(r) for r in rows] + [ket.string_rows]
    stack = np.vstack([p for p in parts if p.size]) if any(p.size for p in parts) else np.zeros((0, 2 * ket.num_sites))
    if stack.shape[0] % 2:
        return 0.0 + 0.0j
    if stack.shape[0] == 0:
        return complex(scalar)
    return complex(scalar * pfaffian(ket.reference.contract(stack)))


def ground_state(H, pair_parities, network, reference=None,
                 zero_threshold=constants.ZERO_MODE_ENERGY_CUT):
    """BdG ground state with prescribed -i g_a g_b parities on slot pairs.

    ``pair_parities``: list of ((slot_a, slot_b), sign) over 1-based slot
    indices covering every near-zero mode; bulk (negative-energy) modes are
    filled.  The phase gauge is deterministic: bulk rows are re-phased so the
    largest-magnitude component is real positive, slot Majoranas carry the
    sign convention of slot_majoranas, and the overall scalar is real
    positive by normalization.
    """
    energies, rows = quasiparticle_rows(H)
    n = H.num_sites
    n_zero = len(pair_parities)          # one fermionic mode per slot pair
    if 2 * n_zero != len(network.mzm_slots):
        raise GaussianError("pair parities must cover every MZM slot pair")
    if n_zero and abs(energies[n_zero - 1]) > zero_threshold:
        raise GaussianError("requested parities do not cover all near-zero modes")
    bulk = rows[n_zero:].copy()
    # deterministic bulk gauge: largest-|.| component made real positive
    for k in range(len(bulk)):
        ph = bulk[k, np.argmax(np.abs(bulk[k]))]
        bulk[k] *= np.abs(ph) / ph

    gamma = slot_majoranas(network, H, zero_threshold=zero_threshold)
    pair_rows = []
    for (slot_a, slot_b), sign in pair_parities:
        if sign not in (+1, -1):
            raise GaussianError(f"parity must be +-1, got {sign}")
        ga, gb = gamma[slot_a - 1], gamma[slot_b - 1]
        pair_rows.append(0.5 * (ga + 1j * sign * gb))
    all_rows = np.vstack([np.array(pair_rows), bulk]) if pair_rows else bulk
    ref = reference if reference is not None else ReferenceVacuum.bare(n)
    return make_state(ref, all_rows)


def apply_majorana_pair(state, row_a, row_b, scalar=-1.0j):
    """Apply scalar * g_a g_b to a Gaussian state (result is Gaussian).

    Annihilator rows conjugate by the reflection g_c -> g_c - 2<g_c, span>,
    and the scalar is fixed through the contraction machinery so the result
    carries the operator-anchored phase (used to pin computational basis
    phases: |..1_k..> = -i g_{4k-3} g_{4k-2} |..0_k..>).
    """
    n = state.num_sites
    omega = _majorana_omega(n)
    u_a = (row_a @ omega.conj().T / 2.0).real
    u_b = (row_b @ omega.conj().T / 2.0).real
    for u, row in ((u_a, row_a), (u_b, row_b)):
        if np.linalg.norm(row @ omega.conj().T / 2.0 - u) > 1e-9:
            raise GaussianError("pair insertions must be self-adjoint Majorana rows")
    basis = np.vstack([u_a, u_b])
    refl = np.eye(2 * n) - 2.0 * basis.T @ np.linalg.solve(basis @ basis.T, basis)
    new_rows_raw = ((state.rows @ omega.conj().T / 2.0) @ refl) @ omega
    rotated, kept, _ = canonicalize(state.reference, new_rows_raw)
    new = GaussianState(state.reference, rotated, kept, 1.0, state.parity)
    parts = [np.atleast_2d(row_a), np.atleast_2d(row_b)]
    if state.string_rows.size:
        parts.append(state.string_rows)
    num = _pf_overlap(state.reference, new.string_rows, np.vstack(parts))
    den = _pf_overlap(state.reference, new.string_rows, new.string_rows)
    if abs(den) < 1e-300 or abs(num) < 1e-300:
        raise GaussianError("degenerate bilinear application")
    z = scalar * state.z * num / den
    # the operator is unitary for normalized Majorana rows; pin the norm to
    # guard against roundoff while keeping the operator-anchored phase
    nrm = abs(z) * _string_norm(state.reference, new.string_rows)
    new.z = z / nrm
    return new


def _majorana_omega(n):
    from .bdg import majorana_basis_matrix
    return majorana_basis_matrix(n)


def transport_state(state, moved_rows):
    """Re-canonicalize transported annihilator rows, preserving the phase
    relation between the old and new product forms.

    Used by the fast (gauge) evolution path: the reference-vacuum factor of
    the segment is not tracked, so the result carries the evolved state up to
    one segment-global phase; magnitudes are restored by normalization.
    """
    rotated, kept, _ = canonicalize(state.reference, moved_rows)
    new = GaussianState(state.reference, rotated, kept, 1.0, state.parity)
    old_moved = moved_rows[state.kept] if state.kept.any() else np.zeros((0, moved_rows.shape[1]))
    num = _pf_overlap(state.reference, new.string_rows, old_moved)
    den = _pf_overlap(state.reference, new.string_rows, new.string_rows)
    if abs(den) < 1e-300:
        raise GaussianError("transport recanonicalization degenerate")
    z = state.z * num / den
    if z == 0:
        raise GaussianError("transported state lost its product form")
    nrm = abs(z) * _string_norm(state.reference, new.string_rows)
    new.z = z / nrm
    return new


def evolve_state(state, propagator):
    """Transport a Gaussian state by a single-particle propagator.

    Annihilator rows are conjugated by the propagator; the scalar is updated
    from the propagator's reference-vacuum factor by one re-canonicalization
    Pfaffian pair, so downstream amplitudes remain true many-body amplitudes
    (exactly when the propagator was built with phase tracking, up to a
    documented global phase otherwise).
    """
    u = propagator.matrix
    if u.shape[0] != 2 * state.num_sites:
        raise GaussianError("state / propagator dimension mismatch")
    evolved = state.rows @ u.conj().T
    rotated, kept, _ = canonicalize(state.reference, evolved)
    mid = GaussianState(state.reference, rotated, kept, 1.0, state.parity)

    vac = propagator.vacuum_update
    if vac is None:
        raise GaussianError("propagator carries no vacuum update; use propagate()")
    lam, ref_string = vac.scalar, vac.string_rows
    # |psi'> = z * lam * (evolved kept rows) (evolved-reference string) |ref>;
    # re-express against the canonical string of the evolved rows.
    old_string = state.rows[state.kept] @ u.conj().T
    tail = np.vstack([old_string, ref_string]) if ref_string.size else old_string
    probe = mid.string_rows
    num = _pf_overlap(state.reference, probe, tail)
    den = _pf_overlap(state.reference, probe, probe)
    if abs(den) < 1e-300:
        raise GaussianError("degenerate re-canonicalization (vanishing norm)")
    z = state.z * lam * num / den
    return GaussianState(state.reference, rotated, kept, z, state.parity)


def _pf_overlap(reference, bra_rows, ket_rows):
    """<ref| (bra_rows)^dag-reversed (ket_rows) |ref> as a Pfaffian."""
    parts = []
    if bra_rows.size:
        parts.append(adjoint_rows(bra_rows)[::-1])
    if ket_rows.size:
        parts.append(ket_rows)
    if not parts:
        return 1.0 + 0.0j
    stack = np.vstack(parts)
    if stack.shape[0] % 2:
        return 0.0 + 0.0j
    return pfaffian(reference.contract(stack))


def bloch_messiah(state):
    """Canonical pairing structure of a state relative to its reference.

    Returns (pairs, p, full) where ``pairs`` is a list of
    (mode indices (k, l), u, v) 2x2 pairing blocks with occupation v^2 in
    (0, 1), ``p`` the empty-sector size and ``full`` the indices of fully
    occupied modes.  Near-degenerate splittings are flagged by a warning
    attribute on the result rather than an exception.
    """
    ref = state.reference
    n = state.num_sites
    fmat = np.vstack([ref.rows, adjoint_rows(ref.rows)])
    coords = state.rows @ fmat.conj().T     # d = A f + B f^dag
    a, b = coords[:, :n], coords[:, n:]
    rho = b @ b.conj().T
    occ, mix = np.linalg.eigh(rho)
    occ = np.clip(occ, 0.0, 1.0)
    d_rot = mix.conj().T @ coords           # rotate state modes
    a_r, b_r = d_rot[:, :n], d_rot[:, n:]

    thresh = constants.EMPTY_OCC_THRESHOLD
    empty = [k for k in range(n) if occ[k] < thresh]
    full = [k for k in range(n) if occ[k] > 1 - 1e-10]
    middle = [k for k in range(n) if thresh <= occ[k] <= 1 - 1e-10]
    pairs = []
    used = set()
    warn = False
    for k in middle:
        if k in used:
            continue
        # pairing partner: the other mode with (numerically) equal occupation
        partners = [l for l in middle if l not in used and l != k
                    and abs(occ[l] - occ[k]) < 1e-7 * max(occ[k], 1e-7)]
        if not partners:
            warn = True
            partners = [l for l in middle if l not in used and l != k]
            if not partners:
                raise GaussianError("unpaired partially occupied mode in Bloch-Messiah")
            partners.sort(key=lambda l: abs(occ[l] - occ[k]))
        l = partners[0]
        used.update((k, l))
        v = float(np.sqrt(0.5 * (occ[k] + occ[l])))
        u = float(np.sqrt(max(0.0, 1.0 - v * v)))
        pairs.append(((k, l), u, v))
    result = BlochMessiah(pairs=pairs, empty=empty, full=full,
                          p=len(empty), occupations=occ, degenerate_flag=warn)
    return result


@dataclass
class BlochMessiah:
    pairs: list
    empty: list
    full: list
    p: int
    occupations: np.ndarray
    degenerate_flag: bool = False
