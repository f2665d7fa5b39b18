"""Dev lab: validate evolution + exchange choreography against the Fock oracle."""
import numpy as np
from braidsim.network import custom_network
from braidsim.bdg import ModelParams, MuProfile, assemble, quasiparticle_rows, slot_majoranas
from braidsim.gaussian import ReferenceVacuum, make_state, amplitude, ground_state, evolve_state
from braidsim.schedule import Schedule, parked_mu_profile, exchange, Choreographer, move_wall
from braidsim.evolution import propagate
from braidsim.fock import FockState, exact_propagate, exact_amplitude, many_body_hamiltonian

# 1-qubit mini network: slots (0,2,6,8); legs at the junctions used by
# exchange(1,2) (inside island [0..2]) and exchange(2,3) (between islands)
net = custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})
print("sites:", net.num_sites)
params = ModelParams(t_hop=1.0, delta_abs=1.0, mu_topo=0.0, mu_triv=8.0)

base = parked_mu_profile(net, params)
print("parked mu:", base[:7])

H0 = assemble(net, params, MuProfile(base))
en, _ = quasiparticle_rows(H0)
print("spectrum head:", np.round(en[:4], 8))

gam = slot_majoranas(net, H0, zero_threshold=0.05)
print("slot majorana site weights:")
n = net.num_sites
for k in range(4):
    w = np.abs(gam[k][:n])**2 + np.abs(gam[k][n:])**2
    print("  slot", k+1, "peak site:", int(np.argmax(w)), "weight:", round(float(w.max()),3))

# basis states in the X convention: pairs (2,3) and (1,4)
pairs0 = [((2, 3), +1), ((1, 4), +1)]
pairs1 = [((2, 3), -1), ((1, 4), -1)]
ref = ReferenceVacuum.bare(n)
st0 = ground_state(H0, pairs0, net, ref)
st1 = ground_state(H0, pairs1, net, ref)
print("<0|0> =", amplitude(st0, [], st0), " <0|1> =", abs(amplitude(st0, [], st1)))

# --- static evolution phase test ---
sch = Schedule(base, total_duration=7.0)
prop = propagate(net, params, sch, dt=0.1, reference=ref, phase_mode="exact")
print("unitarity:", prop.unitarity_defect())
ev0 = evolve_state(st0, prop)
amp_g = amplitude(st0, [], ev0)

f0 = FockState(st0.fock_vector(), n)
fev = exact_propagate(net, params, sch, None, f0, 0.1)
amp_f = np.vdot(st0.fock_vector(), fev.amplitudes)
print("static evolution amp (gauss vs fock):", amp_g, amp_f, "diff:", abs(amp_g - amp_f))

# ---------- dynamic tests ----------
import time
from braidsim.bdg import adjoint_rows

def oracle_compare(schedule, kets, bras, dt=0.05, label=""):
    """Evolve each ket through the schedule in both engines; return amp matrix."""
    prop = propagate(net, params, schedule, dt=dt, reference=ref, phase_mode="exact")
    out_g, out_f = [], []
    for ket in kets:
        evolved = evolve_state(ket, prop)
        f0 = FockState(ket.fock_vector(), n)
        fev = exact_propagate(net, params, schedule, None, f0, dt)
        out_g.append([amplitude(b, [], evolved) for b in bras])
        out_f.append([np.vdot(b.fock_vector(), fev.amplitudes) for b in bras])
    g, f = np.array(out_g).T, np.array(out_f).T   # [bra, ket]
    print(f"{label}: max|gauss-fock| = {np.abs(g-f).max():.2e}")
    return g, f

params = ModelParams(t_hop=1.0, delta_abs=1.0, mu_topo=0.0, mu_triv=20.0)
base = parked_mu_profile(net, params)
H0 = assemble(net, params, MuProfile(base))
en, _ = quasiparticle_rows(H0)
print("\nmu_triv=20 spectrum head:", np.round(en[:3], 6))
st0 = ground_state(H0, pairs0, net, ref)
st1 = ground_state(H0, pairs1, net, ref)

t0 = time.time()
# move slot-1 MZM from site 0 to site 1 and back (tiny move, adiabatic-ish)
mv = move_wall(net, params, 0, 1, 30.0)
back = move_wall(net, params, 1, 0, 30.0, base=np.array([mv.final_mu(s) for s in range(n)]))
rt = mv.then(back)
g, f = oracle_compare(rt, [st0], [st0, st1], label="move roundtrip")
print("  ground-state retention |<0|U|0>|^2:", abs(g[0,0])**2, f"({time.time()-t0:.1f}s)")

# exchange(1,2): intra-island three-point turn
t0 = time.time()
ex12 = exchange(net, params, 1, 2, 120.0)
g, f = oracle_compare(ex12, [st0, st1], [st0, st1], label="exchange(1,2)")
print("  |T| matrix:\n", np.round(np.abs(g), 4), f"({time.time()-t0:.1f}s)")

# exchange(2,3): inter-island merge-through
t0 = time.time()
ex23 = exchange(net, params, 2, 3, 120.0)
g, f = oracle_compare(ex23, [st0, st1], [st0, st1], label="exchange(2,3)")
print("  |T| matrix:\n", np.round(np.abs(g), 4), f"({time.time()-t0:.1f}s)")
