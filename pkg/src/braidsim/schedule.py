"""Keyframed chemical-potential schedules: parking, moving, exchanging and
hybridizing Majorana zero modes.

All motion is serialized into single-site ramps between mu_topo and mu_triv
(half-cosine by default).  An exchange is a fixed flip program on the wall
structure: the left mode parks up a leg, the right mode crosses underneath
(for modes on different islands the crossing merges the islands through the
junction, whose vertical arm keeps the transported mode at zero energy), and
the parked mode descends to the vacated slot.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import constants
from .bdg import MuProfile, assemble
from .network import path_between


class SchedulingConflict(RuntimeError):
    pass


@dataclass
class Ramp:
    site: int
    t0: float
    t1: float
    mu0: float
    mu1: float
    shape: str = "cosine"

    def value(self, t):
        if t <= self.t0:
            return self.mu0
        if t >= self.t1:
            return self.mu1
        x = (t - self.t0) / (self.t1 - self.t0)
        if self.shape == "linear":
            w = x
        else:
            w = 0.5 * (1.0 - np.cos(np.pi * x))
        return self.mu0 + (self.mu1 - self.mu0) * w


class Schedule:
    """Piecewise per-site mu trajectories over [0, total_duration]."""

    def __init__(self, base_mu, total_duration=0.0):
        self.base = np.asarray(base_mu, dtype=float).copy()
        self.total_duration = float(total_duration)
        self._ramps = {}

    @property
    def num_sites(self):
        return len(self.base)

    def ramps(self):
        for site in sorted(self._ramps):
            for r in self._ramps[site]:
                yield r

    def final_mu(self, site):
        rs = self._ramps.get(site)
        return rs[-1].mu1 if rs else self.base[site]

    def add_ramp(self, site, mu_to, duration, shape="cosine", start=None):
        """Append a ramp on ``site`` starting at ``start`` (default: schedule end)."""
        t0 = self.total_duration if start is None else float(start)
        rs = self._ramps.setdefault(site, [])
        if rs and t0 < rs[-1].t1 - 1e-12:
            raise SchedulingConflict(f"overlapping ramps on site {site}")
        r = Ramp(site, t0, t0 + float(duration), self.final_mu(site), float(mu_to), shape)
        rs.append(r)
        self.total_duration = max(self.total_duration, r.t1)
        return r

    def hold(self, duration):
        self.total_duration += float(duration)

    def mu_profile(self, t):
        mu = self.base.copy()
        for site, rs in self._ramps.items():
            for r in rs:
                if t >= r.t1:
                    mu[site] = r.mu1
                elif t > r.t0:
                    mu[site] = r.value(t)
                    break
                else:
                    break
        return mu

    def mu_bound(self):
        vals = [np.abs(self.base).max()]
        for r in self.ramps():
            vals.extend([abs(r.mu0), abs(r.mu1)])
        return max(vals)

    def then(self, other):
        """Concatenate ``other`` (whose base must match this schedule's end)."""
        end = np.array([self.final_mu(s) for s in range(self.num_sites)])
        if not np.allclose(end, other.base, atol=1e-9):
            raise SchedulingConflict("schedule concatenation is discontinuous")
        offset = self.total_duration
        out = Schedule(self.base, offset + other.total_duration)
        out._ramps = {s: list(rs) for s, rs in self._ramps.items()}
        for r in other.ramps():
            out._ramps.setdefault(r.site, []).append(
                Ramp(r.site, r.t0 + offset, r.t1 + offset, r.mu0, r.mu1, r.shape))
        return out

    def time_reversed(self):
        total = self.total_duration
        base = np.array([self.final_mu(s) for s in range(self.num_sites)])
        out = Schedule(base, total)
        for r in self.ramps():
            out._ramps.setdefault(r.site, []).append(
                Ramp(r.site, total - r.t1, total - r.t0, r.mu1, r.mu0, r.shape))
        for site in out._ramps:
            out._ramps[site].sort(key=lambda r: r.t0)
        return out

    def to_document(self):
        return {
            "total_duration": self.total_duration,
            "base_mu": [float(x) for x in self.base],
            "ramps": [{"site": r.site, "t0": r.t0, "t1": r.t1, "mu0": r.mu0,
                       "mu1": r.mu1, "shape": r.shape} for r in self.ramps()],
        }

    def to_json(self):
        return json.dumps(self.to_document())

    @classmethod
    def from_document(cls, doc):
        out = cls(np.array(doc["base_mu"]), doc["total_duration"])
        for r in doc["ramps"]:
            out._ramps.setdefault(r["site"], []).append(
                Ramp(r["site"], r["t0"], r["t1"], r["mu0"], r["mu1"], r["shape"]))
        for site in out._ramps:
            out._ramps[site].sort(key=lambda rr: rr.t0)
        return out


@dataclass
class BraidWord:
    """Ordered exchanges of adjacent MZM slots with chirality."""
    moves: list  # (slot_i, slot_j, chirality in {"ccw", "cw"})

    def permutation(self, n_slots):
        """perm[k] = label parked at slot k+1 after the word (slot semantics)."""
        perm = list(range(1, n_slots + 1))
        for i, j, _ in self.moves:
            perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
        return perm

    def validate(self, n_slots):
        for i, j, chir in self.moves:
            if i == j or not (1 <= i <= n_slots and 1 <= j <= n_slots):
                raise SchedulingConflict(f"bad braid move ({i}, {j})")
            if chir not in ("ccw", "cw"):
                raise SchedulingConflict(f"bad chirality {chir!r}")


@dataclass
class TGateCalibration:
    slot_pair: tuple
    approach_sites: int
    splitting_trace: list          # (t, epsilon)
    hold_time: float
    accumulated_phase: float
    ramp_phase: float


def parked_mu_profile(network, params):
    """Parked profile: islands between slot pairs (1,2), (3,4), ...; legs trivial."""
    mu = np.full(network.num_sites, params.mu_triv, dtype=float)
    slots = network.mzm_slots
    for k in range(0, len(slots), 2):
        a, b = slots[k], slots[k + 1]
        mu[a:b + 1] = params.mu_topo
    return mu


def parked_topo_sites(network, params):
    mu = parked_mu_profile(network, params)
    return {s for s in network.sites if mu[s] == params.mu_topo}


class Choreographer:
    """Serializes wall moves into a Schedule while tracking MZM positions.

    One site ramps at a time; ``positions`` maps MZM label (1-based slot
    label at t=0) to its current site.  ``topo`` is the set of topological
    sites, updated per flip for conflict detection.
    """

    def __init__(self, network, params, ramp_shape="cosine", base=None):
        self.network = network
        self.params = params
        self.shape = ramp_shape
        if base is None:
            self.schedule = Schedule(parked_mu_profile(network, params))
            self.topo = parked_topo_sites(network, params)
            self.positions = {k + 1: s for k, s in enumerate(network.mzm_slots)}
        else:
            base = np.asarray(base, dtype=float)
            self.schedule = Schedule(base)
            self.topo = {s for s in network.sites if base[s] == params.mu_topo}
            self.positions = {}

    def flip(self, site, to_topo, duration):
        if to_topo and site in self.topo:
            raise SchedulingConflict(f"site {site} already topological")
        if not to_topo and site not in self.topo:
            raise SchedulingConflict(f"site {site} already trivial")
        mu_to = self.params.mu_topo if to_topo else self.params.mu_triv
        self.schedule.add_ramp(site, mu_to, duration, self.shape)
        if to_topo:
            self.topo.add(site)
        else:
            self.topo.discard(site)

    def extend(self, label, path_sites, duration_per_site):
        """Grow the island of ``label`` along trivial sites, ending there."""
        for s in path_sites:
            if s in self.topo:
                raise SchedulingConflict(
                    f"extension of mode {label} blocked at occupied site {s}")
            self.flip(s, True, duration_per_site)
        if path_sites:
            self.positions[label] = path_sites[-1]

    def retract(self, label, path_sites, duration_per_site, land=None):
        """Shrink the island of ``label`` by vacating ``path_sites`` in order."""
        for s in path_sites:
            if s not in self.topo:
                raise SchedulingConflict(
                    f"retraction of mode {label} hit trivial site {s}")
            self.flip(s, False, duration_per_site)
        if land is not None:
            self.positions[label] = land

    def absorb(self, label, path_sites, land):
        """Move a mode through already-topological territory (merged islands):
        the trailing sites are vacated one by one and the mode re-emerges at
        ``land``.  No mu change happens on sites that stay topological."""
        for s in path_sites:
            if s not in self.topo:
                raise SchedulingConflict(f"absorb path broken at {s}")
        self.positions[label] = land


def _per_site(duration, n_flips):
    if n_flips == 0:
        return 0.0
    return duration / n_flips


def move_wall(network, params, from_site, to_site, duration, base=None,
              ramp_shape="cosine"):
    """Single-mode wall motion from ``from_site`` to ``to_site``.

    The domain wall advances one site at a time with equal sub-ramps; the
    direction (extension vs retraction) is taken from the parked profile.
    """
    if duration <= 0 and from_site != to_site:
        raise SchedulingConflict("move duration must be positive")
    ch = Choreographer(network, params, ramp_shape, base=base)
    if from_site == to_site:
        ch.schedule.hold(max(duration, 0.0))
        return ch.schedule
    path = path_between(network, from_site, to_site)
    steps = path[1:]
    dt_site = _per_site(duration, len(steps))
    label = None
    for lbl, pos in ch.positions.items():
        if pos == from_site:
            label = lbl
    cur = from_site
    for s in steps:
        if s not in ch.topo:
            ch.flip(s, True, dt_site)          # extension
        else:
            ch.flip(cur, False, dt_site)       # retraction into own island
        cur = s
    if label is not None:
        ch.positions[label] = to_site
    return ch.schedule


def exchange(network, params, mzm_i, mzm_j, t_braid, chirality="ccw",
             ramp_shape="cosine", choreographer=None):
    """Exchange of two adjacent Majorana modes in total time ``t_braid``.

    Counterclockwise moves the left mode into the junction leg first; the
    clockwise exchange is the exact time reverse.  Returns the Schedule (or
    extends the given choreographer).
    """
    i, j = int(mzm_i), int(mzm_j)
    if abs(i - j) != 1:
        raise SchedulingConflict(f"modes {i}, {j} are not slot-adjacent")
    left, right = min(i, j), max(i, j)
    if chirality not in ("ccw", "cw"):
        raise SchedulingConflict(f"unknown chirality {chirality!r}")
    ch = choreographer or Choreographer(network, params, ramp_shape)
    start = ch.schedule.total_duration
    if chirality == "cw":
        # the clockwise exchange is the exact time reverse of the ccw one
        scratch = Choreographer(network, params, ramp_shape)
        scratch.positions = dict(ch.positions)
        scratch.topo = set(ch.topo)
        scratch.schedule = Schedule(np.array(
            [ch.schedule.final_mu(s) for s in range(network.num_sites)]))
        _exchange_ccw(scratch, network, left, right, t_braid)
        ch.schedule = ch.schedule.then(scratch.schedule.time_reversed())
        ch.positions = dict(scratch.positions)
        ch.topo = set(scratch.topo)
    else:
        _exchange_ccw(ch, network, left, right, t_braid)
    assert abs(ch.schedule.total_duration - start - t_braid) < 1e-6
    return ch.schedule


def _exchange_ccw(ch, network, left, right, t_braid):
    """Flip program for one counterclockwise exchange of adjacent slots."""
    net = ch.network
    lab_l = _label_at(ch, net.slot_site(left))
    lab_r = _label_at(ch, net.slot_site(right))
    s_l, s_r = net.slot_site(left), net.slot_site(right)
    junction = net.junction_between(left, right)
    leg = list(net.leg_sites(junction))

    if _same_island(ch, s_l, s_r):
        # Alicea three-point turn inside one island through its junction;
        # the right mode parks up the leg (same handedness as the
        # inter-island program below, so one chirality convention covers
        # both, locked against the ideal braid algebra).
        program = [
            ("retract", lab_r, list(range(s_r, junction, -1)), None),
            ("extend", lab_r, leg, leg[-1]),
            ("retract", lab_l, list(range(s_l, junction)), None),
            ("extend", lab_l, list(range(junction + 1, s_r + 1)), s_r),
            ("retract", lab_r, leg[::-1], junction),
            ("extend", lab_r, list(range(junction - 1, s_l - 1, -1)), s_l),
        ]
    else:
        # different islands: right mode parks up the shared leg, left mode
        # crosses through the merged junction (the vertical arm keeps the
        # transported mode at zero energy) and exits by edge retraction,
        # then the parked mode descends into the vacated left slot.
        gap_r = list(range(s_r - 1, junction - 1, -1))   # s_r-1 .. junction
        gap_l = list(range(s_l + 1, junction))           # s_l+1 .. junction-1
        program = [
            ("extend", lab_r, gap_r, None),
            ("extend", lab_r, leg, leg[-1]),
            ("extend", lab_l, gap_l, None),
            ("absorb", lab_l, list(range(junction, s_r)), junction),
            ("retract", lab_l, list(range(junction + 1, s_r)), s_r),
            ("retract", lab_r, leg[::-1], junction),
            ("retract", lab_r, [junction] + gap_l[::-1], s_l),
        ]
    n_flips = sum(len(sites) for op, _, sites, _ in program if op != "absorb")
    dt = t_braid / n_flips
    for op, label, sites, land in program:
        if op == "extend":
            ch.extend(label, sites, dt)
        elif op == "retract":
            ch.retract(label, sites, dt)
        else:
            ch.absorb(label, sites, land)
        if land is not None:
            ch.positions[label] = land


def _label_at(ch, site):
    for lbl, pos in ch.positions.items():
        if pos == site:
            return lbl
    raise SchedulingConflict(f"no MZM parked at site {site}")


def _same_island(ch, a, b):
    """Are both sites in one connected topological component right now?"""
    if a not in ch.topo or b not in ch.topo:
        return False
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for s in frontier:
            for t in ch.network.neighbors(s):
                if t in ch.topo and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return b in seen


def hybridize_hold(network, params, mzm_i, mzm_j, hold_time, approach_duration,
                   approach_sites=None, ramp_shape="cosine"):
    """Bring a same-island pair to finite splitting, hold, separate again."""
    i, j = sorted((int(mzm_i), int(mzm_j)))
    if hold_time < 0:
        raise SchedulingConflict("hold time must be nonnegative")
    if j != i + 1:
        raise SchedulingConflict("hybridization pair must be slot-adjacent")
    ch = Choreographer(network, params, ramp_shape)
    s_i, s_j = network.slot_site(i), network.slot_site(j)
    span = s_j - s_i
    # default approach leaves a 3-site separation (splitting ~ 1e-4 t at the
    # Fig. 2 parameter set, holds of a few thousand hbar/t)
    k = approach_sites if approach_sites is not None else max(span - 3, 1)
    if k >= span:
        raise SchedulingConflict("approach would fuse the pair completely")
    dt_site = _per_site(approach_duration / 2.0, k)
    if _same_island(ch, s_i, s_j):
        # same island: shrink it from the left so the ends approach
        inward = list(range(s_i, s_i + k))
        ch.retract(i, inward, dt_site, land=s_i + k)
        ch.schedule.hold(hold_time)
        for s in inward[::-1]:
            ch.flip(s, True, dt_site)
    else:
        # neighboring islands: extend the left island toward the right one
        outward = list(range(s_i + 1, s_i + k + 1))
        ch.extend(i, outward, dt_site)
        ch.schedule.hold(hold_time)
        for s in outward[::-1]:
            ch.flip(s, False, dt_site)
    ch.positions[i] = s_i
    return ch.schedule


def splitting_trace(network, params, schedule, disorder=None, samples=160):
    """Instantaneous pair splitting eps(t) along a schedule (static spectra)."""
    n_zero = len(network.mzm_slots) // 2
    out = []
    for t in np.linspace(0.0, schedule.total_duration, samples):
        mu = MuProfile(schedule.mu_profile(t))
        evals = np.linalg.eigvalsh(assemble(network, params, mu, disorder).matrix)
        energies = np.sort(np.abs(evals))[1::2]
        out.append((float(t), float(energies[n_zero - 1])))
    return out


class CalibrationError(RuntimeError):
    pass


def calibrate_tgate(network, params, disorder, mzm_pair, approach_duration=None,
                    approach_sites=None, target_phase=constants.TGATE_TARGET_PHASE,
                    max_hold=20000.0, samples=200):
    """Solve for the hold time whose accumulated phase hits the T-gate target.

    The splitting eps(t) is read from instantaneous BdG spectra along the
    approach profile; the phase integral of the approach + retreat ramps is
    subtracted from the target and the remainder is served by the hold.
    Calibration is per-pair and per-disorder-realization.
    """
    if approach_duration is None:
        approach_duration = 2 * constants.T_BRAID / 3
    i, j = sorted(mzm_pair)
    ramp_only = hybridize_hold(network, params, i, j, 0.0, approach_duration,
                               approach_sites)
    trace = splitting_trace(network, params, ramp_only, disorder, samples)
    times = np.array([t for t, _ in trace])
    eps = np.array([e for _, e in trace])
    ramp_phase = float(np.trapezoid(eps, times))
    # splitting at the held configuration = value at the ramp midpoint
    mu_mid = MuProfile(ramp_only.mu_profile(ramp_only.total_duration / 2.0))
    evals = np.linalg.eigvalsh(assemble(network, params, mu_mid, disorder).matrix)
    n_zero = len(network.mzm_slots) // 2
    eps_hold = float(np.sort(np.abs(evals))[1::2][n_zero - 1])
    # the accumulated relative phase between the pair's parity sectors is
    # -int eps dt (sign locked by the Fock oracle), so the integral targets
    # the negated gate phase
    remainder = (-target_phase - ramp_phase) % (2 * np.pi)
    if eps_hold * max_hold < remainder:
        raise CalibrationError(
            f"splitting {eps_hold:.3e} cannot reach phase {remainder:.3f} within {max_hold}")
    hold_time = remainder / eps_hold
    return TGateCalibration(
        slot_pair=(i, j), approach_sites=approach_sites or -1,
        splitting_trace=trace, hold_time=float(hold_time),
        accumulated_phase=float(ramp_phase + eps_hold * hold_time),
        ramp_phase=ramp_phase)
