"""Randomized Pfaffian-vs-Fock amplitude battery on oracle-scale networks.

Each case computes one complex amplitude twice: through the Gaussian
contraction machinery (exact phase tracking) and through brute-force
evolution on the full Fock space, and records |difference|.  Cases cover
static overlaps with operator insertions, dynamical evolutions, pair /
quadruple projection branches and sparse-dense-sparse round trips.
"""

import numpy as np

from .network import custom_network
from .bdg import ModelParams, MuProfile, assemble, quasiparticle_rows, slot_majoranas
from .gaussian import ReferenceVacuum, amplitude, evolve_state, ground_state, make_state
from .schedule import Schedule, parked_mu_profile, exchange, move_wall
from .evolution import propagate
from .logical import LogicalLabel, basis_state, stabilizer_pairs
from .fock import FockState, exact_propagate, exact_amplitude


def mini_tjunction():
    """13-site one-qubit T network validated for oracle comparisons."""
    return custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})


def _record(report, tag, diff):
    report["cases"] += 1
    report["max_deviation"] = max(report["max_deviation"], diff)
    report["all"].append((tag, diff))


def run_suite(name="default", tolerance=1e-8, rng_seed=7, dt=0.05):
    if name not in ("default", "static", "dynamic", "empty"):
        raise ValueError(f"unknown oracle suite {name!r}")
    report = {"cases": 0, "max_deviation": 0.0, "all": [], "worst": []}
    if name == "empty":
        return report
    rng = np.random.default_rng(rng_seed)

    net = mini_tjunction()
    n = net.num_sites
    params = ModelParams(1.0, 1.0, 0.0, 20.0)
    ref = ReferenceVacuum.bare(n)
    base = parked_mu_profile(net, params)
    h0 = assemble(net, params, MuProfile(base))
    labels = [LogicalLabel.from_index(f, 1) for f in (0, 1)]
    states = {lbl.index: basis_state(lbl, net, params, ref, h0) for lbl in labels}
    focks = {k: FockState(st.fock_vector(), n) for k, st in states.items()}

    # --- static block: overlaps and random linear insertions ---
    if name in ("default", "static"):
        chain = custom_network(6, (0, 5), {2: 1})
        pc = ModelParams(1.0, 0.8, 0.3, 9.0)
        for trial in range(44):
            mu_a = MuProfile(rng.uniform(-1.2, 1.2, chain.num_sites))
            mu_b = MuProfile(rng.uniform(-1.2, 1.2, chain.num_sites))
            _, rows_a = quasiparticle_rows(assemble(chain, pc, mu_a))
            _, rows_b = quasiparticle_rows(assemble(chain, pc, mu_b))
            refc = ReferenceVacuum.bare(chain.num_sites)
            bra, ket = make_state(refc, rows_a), make_state(refc, rows_b)
            fb = FockState(bra.fock_vector(), chain.num_sites)
            fk = FockState(ket.fock_vector(), chain.num_sites)
            n_ins = int(rng.integers(0, 4))
            ins = [rng.standard_normal(2 * chain.num_sites)
                   + 1j * rng.standard_normal(2 * chain.num_sites) for _ in range(n_ins)]
            a_g = amplitude(bra, ins, ket)
            a_f = exact_amplitude(fb, ins, fk)
            _record(report, f"static-{trial}-ins{n_ins}", abs(a_g - a_f))

    # --- dynamic block: schedules, projections, round trips ---
    if name in ("default", "dynamic"):
        gam = slot_majoranas(net, h0)

        def both_sides(state, fock, schedule, insertions, tag):
            prop = propagate(net, params, schedule, dt=dt, reference=ref,
                             phase_mode="exact")
            ev = evolve_state(state, prop)
            fev = exact_propagate(net, params, schedule, None, fock, dt)
            for k, bra in states.items():
                a_g = amplitude(bra, insertions, ev)
                # oracle: same insertions applied after evolution
                vec = fev.amplitudes
                a_f = exact_amplitude(FockState(focks[k].amplitudes, n),
                                      insertions, FockState(vec, n))
                _record(report, f"{tag}-bra{k}", abs(a_g - a_f))

        # short wall moves with random targets
        for trial in range(6):
            frm = net.mzm_slots[0]
            sched = move_wall(net, params, frm, frm + 1, 8.0 + 4 * rng.random())
            back = move_wall(net, params, frm + 1, frm, 8.0,
                             base=np.array([sched.final_mu(s) for s in range(n)]))
            full = sched.then(back)
            k = int(rng.integers(0, 2))
            both_sides(states[k], focks[k], full, [], f"move-{trial}")

        # fast exchanges (diabatic is fine: amplitudes still must agree);
        # the mini network carries legs at the junctions of pairs (1,2), (2,3)
        for trial, (i, j, chir) in enumerate(((1, 2, "ccw"), (2, 3, "ccw"), (1, 2, "cw"))):
            sched = exchange(net, params, i, j, 24.0, chirality=chir)
            k = int(rng.integers(0, 2))
            both_sides(states[k], focks[k], sched, [], f"exch-{i}{j}{chir}")

        # pair projection branches -i g_a g_b at the parked instant
        for trial in range(10):
            a, b = sorted(rng.choice(np.arange(1, 5), size=2, replace=False))
            rows = [gam[a - 1], gam[b - 1]]
            hold = Schedule(base, total_duration=4.0 + 3 * rng.random())
            k = int(rng.integers(0, 2))
            prop = propagate(net, params, hold, dt=dt, reference=ref, phase_mode="exact")
            ev = evolve_state(states[k], prop)
            fev = exact_propagate(net, params, hold, None, focks[k], dt)
            for m, bra in states.items():
                a_g = -1j * amplitude(bra, rows, ev)
                a_f = -1j * exact_amplitude(focks[m], rows, fev)
                _record(report, f"pairproj-{trial}", abs(a_g - a_f))

        # quadruple stabilizer branch and the full projector round trip
        quad_rows = [gam[0], gam[1], gam[2], gam[3]]
        for trial in range(5):
            k = int(rng.integers(0, 2))
            hold = Schedule(base, total_duration=2.0 + trial)
            prop = propagate(net, params, hold, dt=dt, reference=ref, phase_mode="exact")
            ev = evolve_state(states[k], prop)
            fev = exact_propagate(net, params, hold, None, focks[k], dt)
            for m, bra in states.items():
                a_g = -amplitude(bra, quad_rows, ev)
                a_f = -exact_amplitude(focks[m], quad_rows, fev)
                _record(report, f"quadproj-{trial}", abs(a_g - a_f))
                # round trip: 2 * P_quad P_pair expanded in branches
                ga, gb = gam[1], gam[2]
                terms_g = 0.5 * (
                    amplitude(bra, [], ev) + (-1j) * amplitude(bra, [ga, gb], ev)
                    + (-1) * amplitude(bra, quad_rows, ev)
                    + (-1) * (-1j) * amplitude(bra, list(quad_rows) + [ga, gb], ev))
                terms_f = 0.5 * (
                    exact_amplitude(focks[m], [], fev)
                    + (-1j) * exact_amplitude(focks[m], [ga, gb], fev)
                    + (-1) * exact_amplitude(focks[m], quad_rows, fev)
                    + (-1) * (-1j) * exact_amplitude(focks[m], list(quad_rows) + [ga, gb], fev))
                _record(report, f"roundtrip-{trial}", abs(terms_g - terms_f))

    report["all"].sort(key=lambda kv: -kv[1])
    report["worst"] = [f"{tag}: {dev:.3e}" for tag, dev in report["all"][:5]]
    return report
