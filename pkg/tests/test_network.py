import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from braidsim.network import (NetworkError, NetworkParams, build_network,
                              bond_pairing_phase, custom_network, path_between)


@pytest.mark.parametrize("n_qubits,expected", [(1, 70), (2, 162), (5, 438)])
def test_default_site_counts(n_qubits, expected):
    net = build_network(NetworkParams(n_qubits))
    assert net.num_sites == expected


def test_site_count_formula_to_ten():
    for n in range(1, 11):
        net = build_network(NetworkParams(n))
        assert net.num_sites == 70 + 92 * (n - 1)
        assert len(net.mzm_slots) == 4 * n


def test_tree_structure():
    for n in (1, 3):
        net = build_network(NetworkParams(n))
        assert len(net.bonds) == net.num_sites - 1


def test_degrees():
    net = build_network(NetworkParams(2))
    for j in net.junctions:
        assert net.degree(j) == 3
    for s in net.sites:
        if s not in net.junctions:
            assert net.degree(s) <= 2


def test_junction_between_every_adjacent_slot_pair():
    net = build_network(NetworkParams(2))
    for k in range(1, 8):
        j = net.junction_between(k, k + 1)
        a, b = net.slot_site(k), net.slot_site(k + 1)
        assert a < j < b
        assert net.leg_sites(j)


def test_slots_sorted_distinct():
    net = build_network(NetworkParams(3))
    slots = net.mzm_slots
    assert list(slots) == sorted(set(slots))


def test_pairing_phases():
    net = build_network(NetworkParams(1))
    assert bond_pairing_phase(net, (0, 1)) == 0.0
    j = net.junctions[0]
    leg0 = net.leg_sites(j)[0]
    assert bond_pairing_phase(net, (j, leg0)) == pytest.approx(np.pi / 2)
    assert bond_pairing_phase(net, (leg0, j)) == pytest.approx(np.pi / 2)


def test_unknown_bond_raises():
    net = build_network(NetworkParams(1))
    with pytest.raises(NetworkError):
        bond_pairing_phase(net, (0, 5))


def test_path_identity_and_adjacent():
    net = build_network(NetworkParams(1))
    assert path_between(net, 4, 4) == [4]
    assert path_between(net, 4, 5) == [4, 5]


def test_path_end_to_leg_tip_passes_one_junction():
    net = build_network(NetworkParams(1))
    tip = net.legs[0][1][-1]
    path = path_between(net, 0, tip)
    crossings = [s for s in path if s in net.junctions]
    assert len(crossings) == 1


@given(st.integers(min_value=0, max_value=69), st.integers(min_value=0, max_value=69))
@settings(max_examples=30, deadline=None)
def test_path_properties(a, b):
    net = build_network(NetworkParams(1))
    path = path_between(net, a, b)
    assert path[0] == a and path[-1] == b
    assert len(set(path)) == len(path)
    for x, y in zip(path[:-1], path[1:]):
        assert y in net.neighbors(x)
    assert path_between(net, b, a) == path[::-1]


def test_invalid_params():
    with pytest.raises(NetworkError):
        build_network(NetworkParams(0))
    with pytest.raises(NetworkError):
        build_network(NetworkParams(1, leg_length=1))
    with pytest.raises(NetworkError):
        build_network(NetworkParams(1, intra_gap=4))


def test_serialization_roundtrip_fields():
    net = build_network(NetworkParams(1))
    doc = json.loads(net.to_json())
    assert doc["num_sites"] == 70
    assert doc["mzm_slots"] == list(net.mzm_slots)
    assert len(doc["bonds"]) == net.num_sites - 1


def test_custom_network():
    net = custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})
    assert net.num_sites == 13
    assert net.junction_between(1, 2) == 1
    assert net.junction_between(2, 3) == 4
    with pytest.raises(NetworkError):
        net.junction_between(3, 4)
