"""Braid statistics on the default N=1 network (70 sites, Fig. 2 parameters)."""
import time
import numpy as np
from braidsim.network import build_network, NetworkParams
from braidsim.bdg import ModelParams, MuProfile, assemble, quasiparticle_rows
from braidsim.gaussian import ReferenceVacuum, amplitude, ground_state, evolve_state
from braidsim.schedule import parked_mu_profile, exchange, Choreographer
from braidsim.evolution import propagate

net = build_network(NetworkParams(1))
n = net.num_sites
params = ModelParams()  # (1, 0.98, 0.02, 10.4)
base = parked_mu_profile(net, params)
H0 = assemble(net, params, MuProfile(base))
en, _ = quasiparticle_rows(H0)
print("zero-manifold energies:", en[:2], " bulk gap:", en[2])

ref = ReferenceVacuum.bare(n)
pairs0 = [((2, 3), +1), ((1, 4), +1)]
pairs1 = [((2, 3), -1), ((1, 4), -1)]
st0 = ground_state(H0, pairs0, net, ref)
st1 = ground_state(H0, pairs1, net, ref)
print("<0|1> =", abs(amplitude(st0, [], st1)))

def tmat(schedule, dt=0.25):
    prop = propagate(net, params, schedule, dt=dt, reference=ref, phase_mode="gauge")
    cols = []
    for ket in (st0, st1):
        ev = evolve_state(ket, prop)
        cols.append([amplitude(b, [], ev) for b in (st0, st1)])
    return np.array(cols).T

t0 = time.time()
tb = 2400.0
t1 = tmat(exchange(net, params, 1, 2, tb))
print(f"exchange(1,2) @ {tb}: |T| = {np.round(np.abs(t1).ravel(), 4)}  "
      f"sub0 = {np.abs(t1[:,0]**2).sum():.5f}  ({time.time()-t0:.0f}s)")

t0 = time.time()
ch = Choreographer(net, params)
exchange(net, params, 1, 2, tb, choreographer=ch)
exchange(net, params, 1, 2, tb, choreographer=ch)
t2 = tmat(ch.schedule)
print(f"exchange(1,2)^2: |T| = {np.round(np.abs(t2).ravel(), 4)}  flip prob = {abs(t2[1,0])**2:.5f}  ({time.time()-t0:.0f}s)")

t0 = time.time()
t3 = tmat(exchange(net, params, 2, 3, tb))
print(f"exchange(2,3): |T| = {np.round(np.abs(t3).ravel(), 4)}  rel phase = {np.angle(t3[1,1]/t3[0,0]):+.5f}  ({time.time()-t0:.0f}s)")
