"""Braid-time scaling and Ivanov statistics on the mini network (Gaussian only)."""
import numpy as np
from braidsim.network import custom_network
from braidsim.bdg import ModelParams, MuProfile, assemble, quasiparticle_rows
from braidsim.gaussian import ReferenceVacuum, amplitude, ground_state, evolve_state
from braidsim.schedule import parked_mu_profile, exchange, Choreographer
from braidsim.evolution import propagate

net = custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})
n = net.num_sites
params = ModelParams(t_hop=1.0, delta_abs=1.0, mu_topo=0.0, mu_triv=20.0)
base = parked_mu_profile(net, params)
H0 = assemble(net, params, MuProfile(base))
ref = ReferenceVacuum.bare(n)
pairs0 = [((2, 3), +1), ((1, 4), +1)]
pairs1 = [((2, 3), -1), ((1, 4), -1)]
st0 = ground_state(H0, pairs0, net, ref)
st1 = ground_state(H0, pairs1, net, ref)

def tmat(schedule, dt=0.1):
    prop = propagate(net, params, schedule, dt=dt, reference=ref, phase_mode="exact")
    cols = []
    for ket in (st0, st1):
        ev = evolve_state(ket, prop)
        cols.append([amplitude(b, [], ev) for b in (st0, st1)])
    return np.array(cols).T

print("exchange(1,2) scaling:")
for tb in (120.0, 240.0, 480.0, 960.0):
    t = tmat(exchange(net, params, 1, 2, tb))
    print(f"  T_braid={tb:6.0f}  |T| = {np.round(np.abs(t).ravel(), 4)}  sum|col0|^2 = {np.abs(t[:,0]**2).sum():.4f}")

print("exchange(2,3) scaling:")
for tb in (240.0, 960.0):
    t = tmat(exchange(net, params, 2, 3, tb))
    print(f"  T_braid={tb:6.0f}  |T| = {np.round(np.abs(t).ravel(), 4)}  relative phase = {np.angle(t[1,1]/t[0,0]):+.4f}")

# two successive exchanges of (1,2): expect bit flip (Ivanov statistics)
ch = Choreographer(net, params)
exchange(net, params, 1, 2, 960.0, choreographer=ch)
exchange(net, params, 1, 2, 960.0, choreographer=ch)
t2 = tmat(ch.schedule)
print("exchange(1,2)^2 |T|:", np.round(np.abs(t2).ravel(), 4))
# four exchanges: identity up to phase
ch4 = Choreographer(net, params)
for _ in range(4):
    exchange(net, params, 1, 2, 480.0, choreographer=ch4)
t4 = tmat(ch4.schedule)
print("exchange(1,2)^4 |T|:", np.round(np.abs(t4).ravel(), 4))
