import numpy as np
import pytest
from scipy.linalg import expm

from braidsim.bdg import ModelParams, MuProfile, assemble
from braidsim.evolution import (EvolutionError, adiabaticity_trace, compose,
                                propagate, propagate_rows)
from braidsim.network import build_network, custom_network, NetworkParams
from braidsim.schedule import Schedule, exchange, move_wall, parked_mu_profile

PARAMS = ModelParams(1.0, 1.0, 0.0, 12.0)
FIG2 = ModelParams()


def mini():
    return custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})


def random_schedule(net, seed, duration=6.0):
    rng = np.random.default_rng(seed)
    base = parked_mu_profile(net, PARAMS)
    sched = Schedule(base, total_duration=0.0)
    t = 0.0
    for site in rng.choice(net.num_sites, size=4, replace=False):
        sched.add_ramp(int(site), float(rng.uniform(0, 12)), duration / 4, start=t)
        t += duration / 4
    return sched


def test_static_limit_matches_expm():
    net = mini()
    base = parked_mu_profile(net, PARAMS)
    sched = Schedule(base, total_duration=3.0)
    h = assemble(net, PARAMS, MuProfile(base)).matrix
    for mode in ("gauge", "exact"):
        prop = propagate(net, PARAMS, sched, dt=0.1,
                         reference=None if mode == "gauge" else None,
                         phase_mode="gauge")
        exact = expm(-1j * 3.0 * h)
        assert np.abs(prop.matrix - exact).max() < 1e-11


def test_unitarity_and_ph_covariance():
    net = mini()
    sched = random_schedule(net, 7)
    prop = propagate(net, PARAMS, sched, dt=0.05)
    assert prop.unitarity_defect() < 1e-10
    n = net.num_sites
    lam = np.zeros((2 * n, 2 * n))
    lam[:n, n:] = np.eye(n)
    lam[n:, :n] = np.eye(n)
    # BdG group: Lambda U* Lambda = U
    assert np.abs(lam @ prop.matrix.conj() @ lam - prop.matrix).max() < 1e-10


def test_compose_identity_inverse_and_split():
    net = mini()
    sched = random_schedule(net, 3)
    full = propagate(net, PARAMS, sched, dt=0.05)
    n2 = full.matrix.shape[0]
    from braidsim.evolution import identity_propagator
    ident = identity_propagator(net.num_sites, t=full.t_end)
    comp = compose(full, ident)
    assert np.abs(comp.matrix - full.matrix).max() < 1e-12
    inv = type(full)(full.matrix.conj().T, full.t_end, 2 * full.t_end)
    assert np.abs(compose(full, inv).matrix - np.eye(n2)).max() < 1e-10
    with pytest.raises(EvolutionError):
        compose(full, type(full)(np.eye(n2, dtype=complex), 99.0, 100.0))


def test_split_schedule_equals_single_pass():
    net = mini()
    base = parked_mu_profile(net, PARAMS)
    m1 = move_wall(net, PARAMS, 0, 1, 4.0)
    end1 = np.array([m1.final_mu(s) for s in range(net.num_sites)])
    m2 = move_wall(net, PARAMS, 1, 2, 4.0, base=end1)
    p1 = propagate(net, PARAMS, m1, dt=0.05)
    p2 = propagate(net, PARAMS, m2, dt=0.05)
    p2.t_start, p2.t_end = p1.t_end, p1.t_end + m2.total_duration
    joint = m1.then(m2)
    pj = propagate(net, PARAMS, joint, dt=0.05)
    assert np.abs(compose(p1, p2).matrix - pj.matrix).max() < 1e-10


def test_adiabatic_leg_move_returns_ground_state():
    # a time-ordered product composed with its reversed-path product is not
    # the identity matrix; the physical statement is adiabatic return of the
    # evolved state (schedule-level mu reversibility is exact, see
    # test_schedule).  Full-geometry legs keep the island long enough that
    # no transient hybridization survives.
    net = build_network(NetworkParams(1))
    from braidsim.gaussian import ReferenceVacuum, amplitude, make_state, evolve_state
    from braidsim.bdg import quasiparticle_rows
    base = parked_mu_profile(net, FIG2)
    _, rows = quasiparticle_rows(assemble(net, FIG2, MuProfile(base)))
    ref = ReferenceVacuum.bare(net.num_sites)
    st = make_state(ref, rows)
    junction = net.junction_between(1, 2)
    tip = net.leg_sites(junction)[-1]
    # same per-site ramp rate as a 7-site leg traversal in 300
    path_len = len(__import__("braidsim.network", fromlist=["path_between"]).path_between(net, net.slot_site(1), tip)) - 1
    fwd = move_wall(net, FIG2, net.slot_site(1), tip, 300.0 * path_len / 7.0)
    rt = fwd.then(fwd.time_reversed())
    moved = __import__("braidsim.evolution", fromlist=["propagate_rows"]).propagate_rows(
        net, FIG2, rt, st.rows, dt=0.25)
    from braidsim.gaussian import transport_state
    ev = transport_state(st, moved)
    assert abs(amplitude(st, [], ev)) > 0.999


def test_richardson_dt_convergence():
    net = mini()
    sched = random_schedule(net, 11)
    ref = propagate(net, PARAMS, sched, dt=0.002).matrix
    e1 = np.abs(propagate(net, PARAMS, sched, dt=0.08).matrix - ref).max()
    e2 = np.abs(propagate(net, PARAMS, sched, dt=0.04).matrix - ref).max()
    assert e1 / e2 == pytest.approx(4.0, rel=0.2)


def test_propagate_rows_matches_matrix():
    net = mini()
    sched = random_schedule(net, 13)
    prop = propagate(net, PARAMS, sched, dt=0.05)
    rng = np.random.default_rng(0)
    rows = rng.standard_normal((5, 2 * net.num_sites)) + 1j * rng.standard_normal((5, 2 * net.num_sites))
    moved = propagate_rows(net, PARAMS, sched, rows, dt=0.05)
    assert np.abs(moved - rows @ prop.matrix.conj().T).max() < 1e-10


def test_bad_dt_and_nonfinite():
    net = mini()
    sched = random_schedule(net, 1)
    with pytest.raises(EvolutionError):
        propagate(net, PARAMS, sched, dt=-0.1)
    bad = Schedule(np.zeros(net.num_sites), total_duration=1.0)
    bad.base[2] = np.nan
    with pytest.raises(EvolutionError):
        propagate(net, PARAMS, bad, dt=0.1)


def test_adiabaticity_trace():
    net = build_network(NetworkParams(1))
    base = parked_mu_profile(net, FIG2)
    sched = Schedule(base, total_duration=10.0)
    out = adiabaticity_trace(net, FIG2, sched, probe_times=(0.0, 5.0, 10.0))
    gaps = [g for _, g in out]
    assert np.allclose(gaps, gaps[0])
    assert 1.0 < gaps[0] < 2 * FIG2.delta_abs + 0.5   # 2|Delta| scale
    assert adiabaticity_trace(net, FIG2, sched, probe_times=()) == []
    with pytest.raises(EvolutionError):
        adiabaticity_trace(net, FIG2, sched, probe_times=(99.0,))
