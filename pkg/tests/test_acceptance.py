"""Acceptance criteria, one test per criterion, each printing PASS/FAIL.

Fast criteria run in the default suite; the disorder sweep, the five-qubit
depth-1 fidelity and the CNOT^2 group relation are marked slow (enable with
RUN_SLOW=1 pytest -m slow).  Tolerances are pinned here and nowhere else.
"""

import os
import shutil
import subprocess
import time

import numpy as np
import pytest

from braidsim import constants
from braidsim.bdg import ModelParams
from braidsim.experiments import ExperimentConfig, run_circuit, sweep
from braidsim.gatecalc import circuit_unitary
from braidsim.logical import (compile_circuit, execute_circuit,
                              fidelity_and_subspace_probability, parse_circuit,
                              transition_matrix)
from braidsim.network import build_network, NetworkParams
from braidsim.pfaffian import pfaffian

RUN_SLOW = os.environ.get("RUN_SLOW", "") not in ("", "0")
slow = pytest.mark.skipif(not RUN_SLOW, reason="slow acceptance test; set RUN_SLOW=1")


def report(name, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


# ---------------------------------------------------------------------------
# 1. Oracle equivalence (core correctness)

def test_oracle_equivalence():
    from braidsim.oracle_suite import run_suite
    t0 = time.time()
    rep = run_suite("default", tolerance=1e-8)
    wall = time.time() - t0
    ok = rep["cases"] >= 100 and rep["max_deviation"] < 1e-8 and wall < 300
    report("oracle equivalence",
           ok, f"{rep['cases']} amplitudes, max |gaussian - fock| = "
               f"{rep['max_deviation']:.3e} (tol 1e-8), {wall:.0f}s (< 300s)")


# ---------------------------------------------------------------------------
# 2. Pfaffian identities

def test_pfaffian_identities():
    rng = np.random.default_rng(2024)
    worst_sq = worst_cong = 0.0
    for n in (2, 8, 40, 120, 240, 400):
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = x - x.T
        p = pfaffian(a)
        sign, logabs = np.linalg.slogdet(a)
        rel = abs(2 * np.log(abs(p)) - logabs) / max(abs(logabs), 1.0)
        phase = abs((p / abs(p)) ** 2 - sign)
        worst_sq = max(worst_sq, rel, phase)
        if n <= 100:
            b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            lhs = pfaffian(b.T @ a @ b)
            rhs = np.linalg.det(b) * p
            worst_cong = max(worst_cong, abs(lhs - rhs) / abs(rhs))
    ok = worst_sq < 1e-9 and worst_cong < 1e-8
    report("pfaffian identities", ok,
           f"pf^2=det worst {worst_sq:.2e} (tol 1e-9), congruence worst {worst_cong:.2e}")


# ---------------------------------------------------------------------------
# 3. Braiding statistics on the published N=1 geometry

def _run_text(circ_text, n_q, net_params, t_braid, dt=0.25, disorder=None,
              model=None, bra_labels=None):
    net = build_network(net_params)
    params = model or ModelParams()
    circ = compile_circuit(parse_circuit(circ_text), n_q)
    rec = execute_circuit(circ, net, params, ket_labels=[0], t_braid=t_braid,
                          disorder=disorder, dt=dt)
    return transition_matrix(rec, bra_labels=bra_labels)


def test_braiding_statistics():
    t0 = time.time()
    tm1 = _run_text("SX 0", 1, NetworkParams(1), constants.T_BRAID)
    probs = np.abs(tm1.entries[:, 0]) ** 2
    ok1 = abs(probs[0] - 0.5) < 0.01 and abs(probs[1] - 0.5) < 0.01
    tm2 = _run_text("SX 0\nSX 0", 1, NetworkParams(1), constants.T_BRAID)
    flip = abs(tm2.entries[1, 0]) ** 2
    ok2 = flip > 0.99
    report("braiding statistics", ok1 and ok2,
           f"single exchange probs {probs.round(4)} (0.5 +- 0.01), "
           f"squared-exchange flip {flip:.5f} (> 0.99), {time.time()-t0:.0f}s")


# ---------------------------------------------------------------------------
# 4. Bell state at the published parameter set

def test_bell_states_fig2():
    t0 = time.time()
    tm = _run_text("H 0\nCNOT 0 1", 2, NetworkParams(2), 2400.0)
    p = np.abs(tm.entries[:, 0]) ** 2
    ok = (abs(p[0] - 0.5) < 0.01 and abs(p[3] - 0.5) < 0.01
          and p[1] < 0.01 and p[2] < 0.01)
    report("Bell state (Fig. 2 parameters)", ok,
           f"|T|^2 = {p.round(5)} targets [0.5, <0.01, <0.01, 0.5] +-0.01, "
           f"{time.time()-t0:.0f}s")


# ---------------------------------------------------------------------------
# 5. GHZ(3) desk-scale proxy (GHZ(5) is the optional long preset)

def test_ghz3_proxy():
    t0 = time.time()
    tm = _run_text("H 0\nCNOT 0 1\nCNOT 1 2", 3, NetworkParams(3), 1500.0, dt=0.5)
    p = np.abs(tm.entries[:, 0]) ** 2
    others = np.delete(p, [0, 7])
    ok = abs(p[0] - 0.5) < 0.01 and abs(p[7] - 0.5) < 0.01 and others.max() < 0.01
    report("GHZ(3) proxy", ok,
           f"|T|^2[0]={p[0]:.4f}, |T|^2[7]={p[7]:.4f} (0.5 +- 0.01), "
           f"max other {others.max():.4f} (< 0.01), {time.time()-t0:.0f}s")


@slow
def test_ghz5_long():
    tm = _run_text("H 0\n" + "\n".join(f"CNOT {k} {k+1}" for k in range(4)),
                   5, NetworkParams(5), 2400.0, dt=0.5)
    p = np.abs(tm.entries[:, 0]) ** 2
    others = np.delete(p, [0, 31])
    ok = abs(p[0] - 0.5) < 0.01 and abs(p[31] - 0.5) < 0.01 and others.max() < 0.01
    report("GHZ(5) (Fig. 2e)", ok, f"p0={p[0]:.4f}, p31={p[31]:.4f}")


# ---------------------------------------------------------------------------
# 6. Branch-count law 2^M

def test_branch_count_law():
    from braidsim.bdg import ModelParams as MP
    net = build_network(NetworkParams(2, leg_length=2, margin=1, intra_gap=3, inter_gap=3))
    params = MP(1.0, 1.0, 0.0, 12.0)
    counts = []
    for m in range(1, 7):
        program = [{"kind": "dense-block", "qubit_pair": (1, 2), "moves": [],
                    "open_pair": (4, 5), "close_quad": (1, 2, 3, 4)}] * m
        circuit = {"program": program, "num_qubits": 2, "gate_count": 0,
                   "projection_count": 2 * m, "m_blocks": m}
        rec = execute_circuit(circuit, net, params, ket_labels=[0], dt=0.5)
        tm = transition_matrix(rec, bra_labels=[0])
        counts.append((m, tm.pfaffian_calls))
    ok = all(c == 2 ** m for m, c in counts)
    report("branch-count law", ok,
           f"Pfaffian evaluations per label {counts} == 2^M for M=1..6")


# ---------------------------------------------------------------------------
# 7. Disorder sweep (scaled Fig. 3) -- slow

@slow
def test_disorder_sweep_scaled_fig3():
    cfg = ExperimentConfig.fig3(num_qubits=2, circuit="random", depth=1,
                                circuit_seed=12, dt=0.5, output_dir="/tmp/accept_sweep")
    tb_grid = [400.0, 1200.0, 2000.0, 2800.0]
    v_grid = [0.0, 0.1, 0.2, 1.0]
    rows = sweep(cfg, tb_grid, v_grid, replicates=1)
    table = {(tb, v): (fid, sub) for tb, v, _, fid, sub, err in rows if err == ""}
    ok_rows = len(table) == len(rows)
    subs_v0 = [table[(tb, 0.0)][1] for tb in tb_grid]
    mono = all(b >= a - 1e-3 for a, b in zip(subs_v0[:-1], subs_v0[1:]))
    fid_small_v = min(table[(2800.0, v)][0] for v in (0.0, 0.1, 0.2))
    strong = max(table[(tb, 1.0)][0] for tb in tb_grid)
    ok = ok_rows and mono and fid_small_v > 0.99 and strong < 0.99
    report("disorder sweep (scaled Fig. 3)", ok,
           f"subspace@V=0 {np.round(subs_v0,4)} monotone within 1e-3: {mono}; "
           f"min fid(V<=0.2, T=2800) = {fid_small_v:.4f} (> 0.99); "
           f"max fid(V=1) = {strong:.4f} (< 0.99)")


# ---------------------------------------------------------------------------
# 8. Long-run substitutes: depth-1 five-qubit fidelity and gate-group relations

@slow
def test_five_qubit_depth1_fidelity():
    cfg = ExperimentConfig(num_qubits=5, circuit="random", depth=1,
                           circuit_seed=5, dt=0.5, output_dir="/tmp/accept_5q")
    res = run_circuit(cfg, save=False)
    ok = res.fidelity > 0.99
    report("five-qubit depth-1 fidelity", ok,
           f"fidelity {res.fidelity:.5f} (> 0.99), subspace {res.subspace_probability:.5f}")


def test_gate_group_relations_single_qubit():
    t0 = time.time()
    deviations = {}
    for name, text in (("S^4", "S 0\nS 0\nS 0\nS 0"),
                       ("SX^4", "SX 0\nSX 0\nSX 0\nSX 0")):
        tm = _run_text(text, 1, NetworkParams(1), 4800.0, dt=0.5)
        col = tm.entries[:, 0]
        # identity up to global phase
        dev = float(np.abs(np.abs(col[0]) - 1.0) + abs(col[1]))
        deviations[name] = dev
    ok = all(d < 1e-4 for d in deviations.values())
    report("gate group relations (S^4, sqrtX^4)", ok,
           f"deviations {deviations} (tol 1e-4 each), {time.time()-t0:.0f}s")


@slow
def test_gate_group_relation_cnot_squared():
    tm = _run_text("CNOT 0 1\nCNOT 0 1", 2, NetworkParams(2), 4800.0, dt=0.5)
    ent = tm.entries
    dev = float(abs(abs(ent[0, 0]) - 1.0) + np.abs(ent[1:, 0]).max())
    ok = dev < 1e-4
    report("gate group relation (CNOT^2)", ok, f"deviation {dev:.2e} (tol 1e-4)")


# ---------------------------------------------------------------------------
# 9. Unitarity and dt convergence

def test_unitarity_and_convergence():
    from braidsim.evolution import propagate
    from braidsim.network import custom_network
    from braidsim.schedule import Schedule, parked_mu_profile
    rng = np.random.default_rng(5)
    net = custom_network(9, (0, 2, 6, 8), {1: 2, 4: 2})
    params = ModelParams(1.0, 1.0, 0.0, 12.0)
    base = parked_mu_profile(net, params)
    sched = Schedule(base, total_duration=0.0)
    t = 0.0
    for site in rng.choice(net.num_sites, size=5, replace=False):
        sched.add_ramp(int(site), float(rng.uniform(0, 12)), 1.5, start=t)
        t += 1.5
    defect = propagate(net, params, sched, dt=0.05).unitarity_defect()
    ref = propagate(net, params, sched, dt=0.002).matrix
    e1 = np.abs(propagate(net, params, sched, dt=0.08).matrix - ref).max()
    e2 = np.abs(propagate(net, params, sched, dt=0.04).matrix - ref).max()
    ratio = e1 / e2
    ok = defect < 1e-10 and 3.2 <= ratio <= 4.8
    report("unitarity and convergence", ok,
           f"max |U^dag U - 1| = {defect:.2e} (tol 1e-10), "
           f"Richardson ratio {ratio:.2f} (4 +- 20%)")


# ---------------------------------------------------------------------------
# 10. [SECONDARY] figure rendering

@pytest.mark.skipif(shutil.which("node") is None, reason="node not available")
def test_secondary_viz_renders(tmp_path):
    front = os.path.join(os.path.dirname(__file__), "..", "frontend")
    if not os.path.exists(os.path.join(front, "dist", "render.js")):
        pytest.skip("frontend not built (run npm install && npm run build)")
    bell_out = tmp_path / "bell.svg"
    heat_out = tmp_path / "heat.svg"
    r1 = subprocess.run(["node", "dist/render.js", "--kind", "bars",
                         "--in", "fixtures/bell_result.json", "--out", str(bell_out)],
                        cwd=front, capture_output=True, text=True)
    r2 = subprocess.run(["node", "dist/render.js", "--kind", "heatmap",
                         "--in", "fixtures/sweep.csv", "--out", str(heat_out)],
                        cwd=front, capture_output=True, text=True)
    heat_svg = heat_out.read_text() if heat_out.exists() else ""
    bell_svg = bell_out.read_text() if bell_out.exists() else ""
    hatched = heat_svg.count('class="hatched"')
    import csv as _csv
    expected = 0
    with open(os.path.join(front, "fixtures", "sweep.csv")) as fh:
        for row in _csv.DictReader(fh):
            if row["fidelity"] != "nan" and float(row["fidelity"]) > 0.99:
                expected += 1
    ok = (r1.returncode == 0 and r2.returncode == 0
          and bell_svg.count('class="bar"') == 4 and hatched == expected)
    report("secondary viz", ok,
           f"4-bar Bell chart rendered, hatched cells {hatched} == "
           f"cells above 0.99 ({expected})")
