"""T-junction network geometry.

A horizontal backbone hosts 4N Majorana parking slots; between every pair of
adjacent slots a degree-3 junction carries a vertical leg of length L.  Site
ids are dense integers, backbone first (left to right), then legs appended
junction by junction (bottom to top).  The network is immutable; all time
dependence lives in chemical-potential profiles.
"""

import json
from dataclasses import dataclass, field

from . import constants


class NetworkError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkParams:
    num_qubits: int
    leg_length: int = constants.DEFAULT_LEG
    margin: int = constants.MARGIN
    intra_gap: int = constants.INTRA_GAP
    inter_gap: int = constants.INTER_GAP
    lattice_constant: float = 1.0

    def validate(self):
        if self.num_qubits < 1:
            raise NetworkError(f"need at least one qubit, got N={self.num_qubits}")
        if self.leg_length < 2:
            raise NetworkError(f"leg length must be >= 2, got L={self.leg_length}")
        if self.intra_gap % 2 == 0 or self.inter_gap % 2 == 0:
            raise NetworkError("slot gaps must be odd so a junction sits at the center")
        if self.margin < 0 or self.intra_gap < 3 or self.inter_gap < 3:
            raise NetworkError("margins/gaps too small to separate slots and junctions")


@dataclass(frozen=True)
class Network:
    params: NetworkParams
    sites: tuple                  # ordered site ids 0..n-1
    bonds: tuple                  # (a, b, orientation), orientation in {"h", "v"}
    junctions: tuple              # junction site ids, left to right
    legs: tuple                   # (junction id, (leg site ids bottom..tip))
    mzm_slots: tuple              # 4N backbone positions, left to right
    backbone: tuple               # backbone site ids, left to right
    lattice_constant: float = 1.0
    _adj: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def num_sites(self):
        return len(self.sites)

    @property
    def num_qubits(self):
        return len(self.mzm_slots) // 4

    def neighbors(self, site):
        return self._adj[site]

    def degree(self, site):
        return len(self._adj[site])

    def slot_site(self, slot_index):
        """Backbone site of MZM slot ``slot_index`` (1-based, 1..4N)."""
        return self.mzm_slots[slot_index - 1]

    def junction_between(self, slot_a, slot_b):
        """Junction site between adjacent slots (1-based indices)."""
        lo, hi = sorted((slot_a, slot_b))
        if hi != lo + 1:
            raise NetworkError(f"slots {slot_a},{slot_b} are not adjacent")
        a, b = self.mzm_slots[lo - 1], self.mzm_slots[hi - 1]
        between = [j for j in self.junctions if a < j < b]
        if not between:
            raise NetworkError(f"no junction between slots {slot_a} and {slot_b}")
        return between[len(between) // 2]

    def leg_sites(self, junction):
        for j, leg in self.legs:
            if j == junction:
                return leg
        raise NetworkError(f"site {junction} is not a junction")

    def to_document(self):
        """Serializable description (sites, bonds, slots) for debugging."""
        return {
            "num_qubits": self.num_qubits,
            "num_sites": self.num_sites,
            "lattice_constant": self.lattice_constant,
            "backbone": list(self.backbone),
            "mzm_slots": list(self.mzm_slots),
            "junctions": list(self.junctions),
            "legs": [{"junction": j, "sites": list(s)} for j, s in self.legs],
            "bonds": [[a, b, o] for a, b, o in self.bonds],
        }

    def to_json(self):
        return json.dumps(self.to_document(), indent=1)


def build_network(params):
    """Construct the T-junction network for ``params.num_qubits`` qubits.

    For the default segment lengths the site count is 70 + 92(N-1).
    """
    params.validate()
    n_q = params.num_qubits
    n_slots = 4 * n_q

    # backbone layout: margin, then slots separated by gaps (junction at each
    # gap center), margin.  Gap between slots 4k and 4k+1 is the inter-qubit one.
    positions = []  # slot positions along the backbone
    pos = params.margin
    for s in range(n_slots):
        positions.append(pos)
        if s == n_slots - 1:
            break
        gap = params.inter_gap if (s + 1) % 4 == 0 else params.intra_gap
        pos += gap + 1
    backbone_len = positions[-1] + 1 + params.margin

    backbone = tuple(range(backbone_len))
    mzm_slots = tuple(positions)
    junctions = []
    for s in range(n_slots - 1):
        junctions.append((positions[s] + positions[s + 1]) // 2)
    junctions = tuple(junctions)

    bonds = [(i, i + 1, "h") for i in range(backbone_len - 1)]
    legs = []
    next_id = backbone_len
    for j in junctions:
        leg = tuple(range(next_id, next_id + params.leg_length))
        legs.append((j, leg))
        bonds.append((j, leg[0], "v"))
        for a, b in zip(leg[:-1], leg[1:]):
            bonds.append((a, b, "v"))
        next_id += params.leg_length

    sites = tuple(range(next_id))
    adj = {s: [] for s in sites}
    for a, b, _ in bonds:
        adj[a].append(b)
        adj[b].append(a)

    net = Network(
        params=params,
        sites=sites,
        bonds=tuple(bonds),
        junctions=junctions,
        legs=tuple(legs),
        mzm_slots=mzm_slots,
        backbone=backbone,
        lattice_constant=params.lattice_constant,
        _adj={s: tuple(v) for s, v in adj.items()},
    )
    for j in junctions:
        assert net.degree(j) == 3
    return net


def bond_pairing_phase(network, bond):
    """Pairing phase of a bond: 0 on horizontal bonds, pi/2 on vertical ones."""
    a, b = bond[0], bond[1]
    for x, y, orient in network.bonds:
        if (x, y) == (a, b) or (x, y) == (b, a):
            return 0.0 if orient == "h" else 1.5707963267948966
    raise NetworkError(f"bond ({a}, {b}) not in network")


def path_between(network, site_a, site_b):
    """Unique simple path on the tree, endpoints included."""
    if site_a not in network._adj or site_b not in network._adj:
        raise NetworkError(f"unknown site in path request ({site_a}, {site_b})")
    if site_a == site_b:
        return [site_a]
    # BFS from site_a; tree so predecessor map gives the unique path
    prev = {site_a: None}
    frontier = [site_a]
    while frontier:
        nxt = []
        for s in frontier:
            for t in network.neighbors(s):
                if t not in prev:
                    prev[t] = s
                    nxt.append(t)
        if site_b in prev:
            break
        frontier = nxt
    assert site_b in prev, "network is connected by construction"
    path = [site_b]
    while path[-1] != site_a:
        path.append(prev[path[-1]])
    return path[::-1]


def reduced_params(num_qubits, leg_length=3, intra_gap=5, inter_gap=7, margin=1):
    """Small geometry for oracle-scale tests (site counts far below default)."""
    return NetworkParams(num_qubits=num_qubits, leg_length=leg_length,
                         margin=margin, intra_gap=intra_gap, inter_gap=inter_gap)


def custom_network(backbone_len, slots, legs, lattice_constant=1.0):
    """Hand-built mini network for oracle-scale tests.

    ``slots``: backbone positions of the MZM parking slots (even count);
    ``legs``: {junction backbone position: leg length}.  Invariants are the
    same as for build_network except that junctions are only required where
    braids will actually run.
    """
    if len(slots) % 2:
        raise NetworkError("slot count must be even (two per island)")
    if sorted(slots) != list(slots) or len(set(slots)) != len(slots):
        raise NetworkError("slots must be strictly increasing backbone positions")
    backbone = tuple(range(backbone_len))
    bonds = [(i, i + 1, "h") for i in range(backbone_len - 1)]
    leg_list = []
    next_id = backbone_len
    junctions = []
    for j in sorted(legs):
        if not 0 <= j < backbone_len:
            raise NetworkError(f"junction {j} outside the backbone")
        length = legs[j]
        leg = tuple(range(next_id, next_id + length))
        leg_list.append((j, leg))
        junctions.append(j)
        bonds.append((j, leg[0], "v"))
        for a, b in zip(leg[:-1], leg[1:]):
            bonds.append((a, b, "v"))
        next_id += length
    sites = tuple(range(next_id))
    adj = {s: [] for s in sites}
    for a, b, _ in bonds:
        adj[a].append(b)
        adj[b].append(a)
    params = NetworkParams(num_qubits=max(1, len(slots) // 4), leg_length=max(legs.values()) if legs else 2)
    return Network(params=params, sites=sites, bonds=tuple(bonds),
                   junctions=tuple(junctions), legs=tuple(leg_list),
                   mzm_slots=tuple(slots), backbone=backbone,
                   lattice_constant=lattice_constant,
                   _adj={s: tuple(v) for s, v in adj.items()})
