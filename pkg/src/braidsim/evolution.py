"""Time-ordered single-particle propagators for chemical-potential schedules.

Per step the midpoint-evaluated BdG matrix is exponentiated exactly (dense
eigendecomposition, or a machine-precision Chebyshev expansion of the
exponential action for large systems).  Propagators optionally carry the
evolved reference vacuum and its scalar so that downstream Gaussian states
keep true many-body phases: in ``exact`` phase mode the scalar is updated
each step against an instantaneous quasiparticle eigenstate (whose time
dependence is a pure known phase); in ``gauge`` mode the scalar's magnitude
is kept and its overall phase is fixed to 1 (a single global gauge common to
every readout amplitude of the run).
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .bdg import assemble, MuProfile, adjoint_rows
from .gaussian import GaussianState, ReferenceVacuum, canonicalize, _pf_overlap, _string_norm


class EvolutionError(RuntimeError):
    pass


@dataclass
class VacuumUpdate:
    """Product form of U |ref>: scalar * (string rows) |ref>."""
    scalar: complex
    string_rows: np.ndarray
    exact_phase: bool
    reference: ReferenceVacuum = None


@dataclass
class Propagator:
    matrix: np.ndarray
    t_start: float
    t_end: float
    vacuum_update: VacuumUpdate = None

    @property
    def duration(self):
        return self.t_end - self.t_start

    def unitarity_defect(self):
        n2 = self.matrix.shape[0]
        return float(np.abs(self.matrix.conj().T @ self.matrix - np.eye(n2)).max())


def identity_propagator(n, t=0.0, reference=None):
    vac = None
    if reference is not None:
        vac = VacuumUpdate(1.0 + 0.0j, np.zeros((0, 2 * n)), True, reference)
    return Propagator(np.eye(2 * n, dtype=complex), t, t, vac)


def _chebyshev_terms(rho_dt, tol=1e-17):
    k = max(int(rho_dt) + 10, 16)
    while abs(jv(k, rho_dt)) > tol:
        k += 4
    return k


def _cheb_coeff_sequence(rho_dt, n_terms):
    ks = np.arange(n_terms + 1)
    return (2 - (ks == 0)) * (-1j) ** ks * jv(ks, rho_dt)


def _expm_action_seq(hmat, x, rho, coeffs):
    y0 = x
    y1 = (hmat @ x) / rho
    out = coeffs[0] * y0 + coeffs[1] * y1
    for k in range(2, len(coeffs)):
        y2 = 2.0 * (hmat @ y1) / rho - y0
        out = out + coeffs[k] * y2
        y0, y1 = y1, y2
    return out


class _SparseBdG:
    """Static bond/disorder part as CSR plus the time-dependent mu diagonal.

    exp(-i dt H(t)) actions run through a Chebyshev recursion using only
    sparse matvecs; the mu profile enters as a (2n) diagonal refreshed per
    step.
    """

    def __init__(self, network, params, disorder=None):
        import scipy.sparse as sp
        from .bdg import assemble as _assemble
        n = network.num_sites
        zero_mu = MuProfile(np.zeros(n))
        h0 = _assemble(network, params, zero_mu, disorder)
        self.static = sp.csr_matrix(h0.matrix)
        self.n = n

    def expm_action(self, mu_arr, dt, x, rho, coeffs):
        from ._kernels import HAVE_NUMBA, cheb_expm_action
        diag = np.concatenate([-mu_arr, mu_arr]).astype(complex)
        if HAVE_NUMBA:
            return cheb_expm_action(self.static.data, self.static.indices,
                                    self.static.indptr, diag, x, rho, coeffs)
        static = self.static
        d = diag[:, None]
        y0 = x
        y1 = (static @ x + d * x) / rho
        out = coeffs[0] * y0 + coeffs[1] * y1
        for k in range(2, len(coeffs)):
            y2 = 2.0 * (static @ y1 + d * y1) / rho - y0
            out = out + coeffs[k] * y2
            y0, y1 = y1, y2
        return out


def propagate_rows(network, params, schedule, rows, disorder=None, dt=None):
    """Transport operator coefficient rows through the schedule's dynamics.

    Rows are conjugated forward, r -> r U(T,0)^dag, with the same midpoint
    Chebyshev stepping as ``propagate`` but without forming the full
    propagator; scalars are not tracked (renormalize states at readout).
    """
    from . import constants
    if dt is None:
        dt = constants.DEFAULT_DT
    rows = np.asarray(rows, dtype=complex)
    engine = _SparseBdG(network, params, disorder)
    rho = _spectral_bound(network, params, schedule, disorder)
    n_terms = _chebyshev_terms(rho * dt)
    coeffs = _cheb_coeff_sequence(rho * dt, n_terms)
    total = schedule.total_duration
    # r -> r u^dag computed as (u r^dag)^dag with u = exp(-i H dt)
    x = rows.conj().T.copy()
    t = 0.0
    while t < total - 1e-12:
        step = min(dt, total - t)
        mu = schedule.mu_profile(t + 0.5 * step)
        mu_arr = mu.values if isinstance(mu, MuProfile) else np.asarray(mu)
        if abs(step - dt) < 1e-12:
            x = engine.expm_action(mu_arr, step, x, rho, coeffs)
        else:
            nt = _chebyshev_terms(rho * step)
            x = engine.expm_action(mu_arr, step, x, rho,
                                   _cheb_coeff_sequence(rho * step, nt))
        t += step
    return x.conj().T


class _ReferenceTracker:
    """Evolves |ref> alongside the propagator with exact scalar bookkeeping.

    The running state is U(t,0)|ref> = z * (kept rows) |ref>; each step the
    scalar is updated against an eigenstate chi of the step Hamiltonian,
    for which <chi| U_step = e^{-i E_chi dt} <chi| exactly.
    """

    def __init__(self, reference):
        self.ref = reference
        n = reference.num_sites
        self.rows = reference.rows.copy()
        self.kept = np.zeros(n, dtype=bool)
        self.z = 1.0 + 0.0j
        self._pattern = np.zeros(n, dtype=bool)

    def step(self, energies, step_rows, trace_h, u_step, dt):
        ref = self.ref
        old_string = self.rows[self.kept]
        new_rows_raw = self.rows @ u_step.conj().T
        rotated, kept, _ = canonicalize(ref, new_rows_raw)
        new_string = rotated[kept]

        # occupations of the step modes in the current state pick chi
        full = np.vstack([self.rows, adjoint_rows(self.rows)])
        beta = step_rows @ full.conj().T[:, self.rows.shape[0]:]
        occ = np.linalg.norm(beta, axis=1) ** 2
        pattern = occ > 0.5
        e0 = 0.5 * trace_h - 0.5 * energies.sum()

        for attempt in range(3):
            chi_rows = step_rows.copy()
            chi_rows[pattern] = adjoint_rows(step_rows[pattern])
            chi_rot, chi_kept, _ = canonicalize(ref, chi_rows)
            chi_string = chi_rot[chi_kept]
            e_chi = e0 + energies[pattern].sum()
            num = _pf_overlap(ref, chi_string, old_string)
            den = _pf_overlap(ref, chi_string, new_string)
            scale = _string_norm(ref, chi_string) ** 2
            if abs(den) > 1e-8 * max(scale, 1e-30):
                self.z *= np.exp(-1j * e_chi * dt) * num / den
                self.rows, self.kept = rotated, kept
                return
            # poor overlap: flip the most ambiguous occupancy and retry
            flip = int(np.argmin(np.abs(occ - 0.5)))
            pattern = pattern.copy()
            pattern[flip] = ~pattern[flip]
        raise EvolutionError("could not find a well-overlapping step eigenstate")

    def finish(self):
        return VacuumUpdate(self.z, self.rows[self.kept], True, self.ref)


def propagate(network, params, schedule, disorder=None, dt=None,
              reference=None, phase_mode="gauge"):
    """Time-ordered propagator of the schedule's BdG dynamics.

    Product of per-step exponentials of the midpoint-evaluated Hamiltonian.
    ``phase_mode="exact"`` (requires ``reference``) tracks the many-body
    vacuum factor step by step; ``"gauge"`` keeps only its magnitude.
    """
    from . import constants
    if dt is None:
        dt = constants.DEFAULT_DT
    if dt <= 0:
        raise EvolutionError("dt must be positive")
    n = network.num_sites
    total = schedule.total_duration
    if phase_mode not in ("exact", "gauge"):
        raise EvolutionError(f"unknown phase mode {phase_mode!r}")
    if phase_mode == "exact" and reference is None:
        raise EvolutionError("exact phase tracking needs a reference vacuum")

    u_total = np.eye(2 * n, dtype=complex)
    tracker = _ReferenceTracker(reference) if phase_mode == "exact" else None

    use_eigh = phase_mode == "exact" or 2 * n <= 64
    rho = _spectral_bound(network, params, schedule, disorder)
    if not np.isfinite(rho):
        raise EvolutionError("non-finite mu profile in schedule")
    engine = None if use_eigh else _SparseBdG(network, params, disorder)
    n_terms = _chebyshev_terms(rho * dt)
    coeffs = _cheb_coeff_sequence(rho * dt, n_terms)

    t = 0.0
    while t < total - 1e-12:
        step = min(dt, total - t)
        mu = schedule.mu_profile(t + 0.5 * step)
        mu_arr = mu.values if isinstance(mu, MuProfile) else np.asarray(mu)
        if not np.all(np.isfinite(mu_arr)):
            raise EvolutionError(f"non-finite mu profile at t={t + 0.5 * step}")
        if use_eigh:
            hbdg = assemble(network, params, MuProfile(mu_arr), disorder)
            evals, evecs = np.linalg.eigh(hbdg.matrix)
            phase = np.exp(-1j * evals * step)
            u_step = (evecs * phase) @ evecs.conj().T
            u_total = u_step @ u_total
            if tracker is not None:
                from .bdg import canonical_quasiparticle_rows
                energies, qrows = canonical_quasiparticle_rows(hbdg)
                tracker.step(energies, qrows, hbdg.trace_h, u_step, step)
        else:
            if abs(step - dt) < 1e-12:
                u_total = engine.expm_action(mu_arr, step, u_total, rho, coeffs)
            else:
                nt = _chebyshev_terms(rho * step)
                u_total = engine.expm_action(mu_arr, step, u_total, rho,
                                             _cheb_coeff_sequence(rho * step, nt))
        t += step

    vac = None
    if tracker is not None:
        vac = tracker.finish()
    elif reference is not None:
        rotated, kept, _ = canonicalize(reference, reference.rows @ u_total.conj().T)
        string = rotated[kept]
        nrm = _string_norm(reference, string)
        if nrm == 0:
            raise EvolutionError("evolved reference has vanishing product norm")
        vac = VacuumUpdate(1.0 / nrm, string, False, reference)
    return Propagator(u_total, 0.0, total, vac)


def _spectral_bound(network, params, schedule, disorder):
    mu0 = schedule.mu_profile(0.0)
    mu_arr = mu0.values if isinstance(mu0, MuProfile) else np.asarray(mu0)
    bound = 3 * (params.t_hop + params.delta_abs) + np.abs(mu_arr).max() + 1.0
    try:
        bound = max(bound, 3 * (params.t_hop + params.delta_abs) + abs(schedule.mu_bound()) + 1.0)
    except AttributeError:
        pass
    if disorder is not None:
        bound += disorder.strength
    return bound


def compose(a, b):
    """Propagator over [a.t_start, b.t_end]; requires a.t_end == b.t_start."""
    if abs(a.t_end - b.t_start) > 1e-9:
        raise EvolutionError(f"cannot compose: intervals [{a.t_start},{a.t_end}] + [{b.t_start},{b.t_end}]")
    matrix = b.matrix @ a.matrix
    vac = None
    if a.vacuum_update is not None and b.vacuum_update is not None:
        va, vb = a.vacuum_update, b.vacuum_update
        ref = va.reference
        # U_b U_a |ref> = lam_a lam_b (S_a C_b)(S_b) |ref>, re-canonicalized
        sa = va.string_rows @ b.matrix.conj().T if va.string_rows.size else va.string_rows
        parts = [p for p in (sa, vb.string_rows) if p.size]
        tail = np.vstack(parts) if parts else np.zeros((0, matrix.shape[0]))
        rotated, kept, _ = canonicalize(ref, ref.rows @ matrix.conj().T)
        string = rotated[kept]
        num = _pf_overlap(ref, string, tail)
        den = _pf_overlap(ref, string, string)
        if abs(den) < 1e-300:
            raise EvolutionError("degenerate vacuum re-canonicalization in compose")
        vac = VacuumUpdate(va.scalar * vb.scalar * num / den, string,
                           va.exact_phase and vb.exact_phase, ref)
    return Propagator(matrix, a.t_start, b.t_end, vac)


def adiabaticity_trace(network, params, schedule, disorder=None, probe_times=(),
                       n_zero_modes=None):
    """(time, gap to the first bulk excitation) at each probe time."""
    out = []
    if n_zero_modes is None:
        n_zero_modes = len(network.mzm_slots) // 2
    for t in probe_times:
        if t < 0 or t > schedule.total_duration:
            raise EvolutionError(f"probe time {t} outside the schedule")
        mu = schedule.mu_profile(t)
        hbdg = assemble(network, params, MuProfile(mu) if not isinstance(mu, MuProfile) else mu, disorder)
        evals = np.linalg.eigvalsh(hbdg.matrix)
        # each physical mode appears twice (PH symmetry): keep one copy
        energies = np.sort(np.abs(evals))[1::2]
        out.append((float(t), float(energies[n_zero_modes])))
    return out
