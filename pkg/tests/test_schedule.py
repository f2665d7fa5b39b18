import numpy as np
import pytest

from braidsim.bdg import ModelParams, MuProfile
from braidsim.network import build_network, custom_network, NetworkParams
from braidsim.schedule import (BraidWord, CalibrationError, Choreographer,
                               Schedule, SchedulingConflict, calibrate_tgate,
                               exchange, hybridize_hold, move_wall,
                               parked_mu_profile, splitting_trace)

PARAMS = ModelParams(1.0, 1.0, 0.0, 12.0)
FIG2 = ModelParams()


def mini():
    return custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})


def test_parked_profile_islands():
    net = mini()
    mu = parked_mu_profile(net, PARAMS)
    assert np.allclose(mu[[0, 1, 2, 6, 7, 8]], PARAMS.mu_topo)
    assert np.allclose(mu[[3, 4, 5]], PARAMS.mu_triv)
    assert np.allclose(mu[9:], PARAMS.mu_triv)   # legs trivial


def test_move_wall_zero_length_is_hold():
    net = mini()
    sched = move_wall(net, PARAMS, 0, 0, 25.0)
    assert sched.total_duration == 25.0
    assert list(sched.ramps()) == []


def test_move_wall_equal_subramps():
    net = mini()
    sched = move_wall(net, PARAMS, 0, 2, 12.0)
    ramps = list(sched.ramps())
    # two steps: retraction of site 0, then of site 1 (island shrinks right)
    assert len(ramps) == 2
    durations = {r.t1 - r.t0 for r in ramps}
    assert durations == {6.0}


def test_continuity_and_reversibility():
    net = mini()
    ch = Choreographer(net, PARAMS)
    exchange(net, PARAMS, 1, 2, 48.0, choreographer=ch)
    sched = ch.schedule
    rev = sched.time_reversed()
    total = sched.total_duration
    for t in np.linspace(0, total, 37):
        mu_f = sched.mu_profile(t)
        mu_r = rev.mu_profile(total - t)
        assert np.allclose(mu_f, mu_r, atol=1e-12)
    # endpoints return to the parked profile
    assert np.allclose(sched.mu_profile(0.0), sched.mu_profile(total), atol=1e-12)


def test_exchange_swaps_positions():
    net = mini()
    ch = Choreographer(net, PARAMS)
    exchange(net, PARAMS, 2, 3, 60.0, choreographer=ch)
    assert ch.positions[2] == net.slot_site(3)
    assert ch.positions[3] == net.slot_site(2)
    assert ch.topo == Choreographer(net, PARAMS).topo


def test_exchange_inverse_restores_positions():
    net = mini()
    ch = Choreographer(net, PARAMS)
    exchange(net, PARAMS, 1, 2, 40.0, chirality="ccw", choreographer=ch)
    exchange(net, PARAMS, 1, 2, 40.0, chirality="cw", choreographer=ch)
    for k in (1, 2, 3, 4):
        assert ch.positions[k] == net.slot_site(k)


def test_exchange_duration_and_validation():
    net = mini()
    sched = exchange(net, PARAMS, 1, 2, 77.0)
    assert sched.total_duration == pytest.approx(77.0)
    with pytest.raises(SchedulingConflict):
        exchange(net, PARAMS, 1, 3, 10.0)
    with pytest.raises(SchedulingConflict):
        exchange(net, PARAMS, 1, 2, 10.0, chirality="widdershins")


def test_braid_word_permutation():
    word = BraidWord([(1, 2, "ccw"), (2, 3, "cw"), (1, 2, "ccw")])
    word.validate(4)
    assert word.permutation(4) == [3, 2, 1, 4]
    net = mini()
    ch = Choreographer(net, PARAMS)
    for i, j, chir in word.moves:
        exchange(net, PARAMS, i, j, 30.0, chirality=chir, choreographer=ch)
    # slot occupied by each original label must match the abstract permutation
    perm = word.permutation(4)
    for slot_index, label in enumerate(perm, start=1):
        assert ch.positions[label] == net.slot_site(slot_index)


def test_schedule_serialization_roundtrip():
    net = mini()
    sched = exchange(net, PARAMS, 2, 3, 36.0)
    doc = sched.to_document()
    back = Schedule.from_document(doc)
    for t in np.linspace(0, sched.total_duration, 23):
        assert np.allclose(sched.mu_profile(t), back.mu_profile(t))


def test_overlapping_ramp_rejected():
    sched = Schedule(np.zeros(3))
    sched.add_ramp(1, 5.0, 10.0)
    with pytest.raises(SchedulingConflict):
        sched.add_ramp(1, 0.0, 5.0, start=3.0)


def test_concatenation_rejects_discontinuity():
    a = Schedule(np.zeros(3))
    a.add_ramp(0, 4.0, 5.0)
    b = Schedule(np.zeros(3))
    with pytest.raises(SchedulingConflict):
        a.then(b)


def test_hybridize_hold_structure():
    net = mini()
    sched = hybridize_hold(net, PARAMS, 1, 2, hold_time=15.0, approach_duration=8.0,
                           approach_sites=1)
    # approach (1 flip) + hold + retreat (1 flip)
    assert sched.total_duration == pytest.approx(8.0 + 15.0)
    assert np.allclose(sched.mu_profile(0.0), sched.mu_profile(sched.total_duration))
    with pytest.raises(SchedulingConflict):
        hybridize_hold(net, PARAMS, 1, 2, hold_time=-1.0, approach_duration=8.0)
    with pytest.raises(SchedulingConflict):
        hybridize_hold(net, PARAMS, 1, 3, hold_time=0.0, approach_duration=8.0)
    # inter-island pair approaches by extension and returns to the parked profile
    inter = hybridize_hold(net, PARAMS, 2, 3, hold_time=5.0, approach_duration=8.0,
                           approach_sites=2)
    assert np.allclose(inter.mu_profile(0.0), inter.mu_profile(inter.total_duration))


def test_splitting_grows_on_approach():
    net = build_network(NetworkParams(1))
    sched = hybridize_hold(net, FIG2, 1, 2, hold_time=0.0, approach_duration=60.0,
                           approach_sites=9)
    trace = splitting_trace(net, FIG2, sched, samples=31)
    eps = [e for _, e in trace]
    assert max(eps) > 100 * (abs(eps[0]) + 1e-12)
    mid = eps[len(eps) // 2]
    assert mid == pytest.approx(max(eps), rel=0.2)


def test_calibrate_tgate_clean_scaling():
    net = build_network(NetworkParams(1))
    cal11 = calibrate_tgate(net, FIG2, None, (1, 2), approach_duration=40.0,
                            approach_sites=11, samples=80)
    assert cal11.hold_time > 0
    # closer approach -> larger splitting -> shorter hold (phase = eps * t)
    cal12 = calibrate_tgate(net, FIG2, None, (1, 2), approach_duration=40.0,
                            approach_sites=12, samples=80)
    assert cal12.hold_time < cal11.hold_time
    with pytest.raises(CalibrationError):
        calibrate_tgate(net, FIG2, None, (1, 2), approach_duration=40.0,
                        approach_sites=5, max_hold=50.0, samples=40)
