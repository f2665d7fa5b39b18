"""Command-line entry point.

Subcommands: build, calibrate, run, ghz, bell, random, sweep, oracle-check,
inspect.  Progress goes to stderr; machine-readable output lands under the
output directory only.  Exit codes: 0 success, 1 computation failure,
2 usage error.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, fields

import numpy as np


def _eprint(*args):
    print(*args, file=sys.stderr, flush=True)


def load_config(args):
    from .experiments import ExperimentConfig
    cfg = ExperimentConfig()
    if args.config:
        if not os.path.exists(args.config):
            raise UsageError(f"config file not found: {args.config}")
        with open(args.config) as fh:
            doc = json.load(fh)
        names = {f.name for f in fields(ExperimentConfig)}
        unknown = set(doc) - names
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg = ExperimentConfig(**doc)
    for key, attr in (("t_braid", "t_braid"), ("dt", "dt")):
        pass
    if args.t_braid is not None:
        cfg.t_braid = args.t_braid
    if args.dt is not None:
        cfg.dt = args.dt
    if args.disorder_v is not None:
        cfg.disorder_strength = args.disorder_v
    if args.seed is not None:
        cfg.disorder_seed = args.seed
        cfg.circuit_seed = args.seed
    if args.out is not None:
        cfg.output_dir = args.out
    for override in args.set or []:
        if "=" not in override:
            raise UsageError(f"override must be key=value, got {override!r}")
        key, val = override.split("=", 1)
        names = {f.name: f.type for f in fields(cfg)}
        if key not in names:
            raise UsageError(f"unknown config key {key!r}")
        cur = getattr(cfg, key)
        setattr(cfg, key, type(cur)(json.loads(val) if isinstance(cur, (int, float)) else val))
    return cfg


class UsageError(Exception):
    pass


def _summary(kind, result, started):
    wall = time.time() - started
    print(f"{kind}: fidelity={result.fidelity:.6f} "
          f"subspace_probability={result.subspace_probability:.6f} "
          f"branches={result.branch_count} wall={wall:.1f}s")


def cmd_build(args):
    from .network import build_network
    cfg = load_config(args)
    net = build_network(cfg.network_params())
    out_dir = cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"network_N{cfg.num_qubits}.json")
    with open(path, "w") as fh:
        fh.write(net.to_json())
    print(f"build: N={cfg.num_qubits} sites={net.num_sites} -> {path}")
    return 0


def cmd_calibrate(args):
    from .network import build_network
    from .bdg import sample_disorder
    from .schedule import calibrate_tgate, CalibrationError
    cfg = load_config(args)
    net = build_network(cfg.network_params())
    disorder = None
    if cfg.disorder_strength > 0:
        disorder = sample_disorder(net, cfg.disorder_strength, cfg.disorder_seed)
    pair = tuple(int(x) for x in (args.pair or "2,3").split(","))
    cal = calibrate_tgate(net, cfg.model_params(), disorder, pair)
    print(f"calibrate: pair={pair} hold_time={cal.hold_time:.4f} "
          f"ramp_phase={cal.ramp_phase:.6f} total_phase={cal.accumulated_phase:.6f}")
    out_dir = cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"tgate_{pair[0]}_{pair[1]}_{cfg.digest()}.json")
    with open(path, "w") as fh:
        json.dump({"pair": pair, "hold_time": cal.hold_time,
                   "ramp_phase": cal.ramp_phase,
                   "accumulated_phase": cal.accumulated_phase}, fh)
    return 0


def cmd_bell(args):
    from .experiments import ExperimentConfig, run_bell
    cfg = load_config(args)
    cfg.num_qubits = 2
    t0 = time.time()
    _eprint("bell: simulating ...")
    res = run_bell(cfg)
    _summary("bell", res, t0)
    return 0


def cmd_ghz(args):
    from .experiments import run_ghz
    cfg = load_config(args)
    t0 = time.time()
    res = run_ghz(cfg, args.n or cfg.num_qubits)
    _summary(f"ghz({args.n or cfg.num_qubits})", res, t0)
    return 0


def cmd_random(args):
    from .experiments import run_random_circuit
    cfg = load_config(args)
    t0 = time.time()
    res = run_random_circuit(cfg, args.n, args.depth, args.circuit_seed)
    _summary("random", res, t0)
    return 0


def cmd_run(args):
    from .experiments import run_circuit
    cfg = load_config(args)
    if args.preset:
        cfg.circuit = args.preset
    if args.circuit_file:
        cfg.circuit = "@" + args.circuit_file
    t0 = time.time()
    res = run_circuit(cfg)
    _summary("run", res, t0)
    return 0


def cmd_sweep(args):
    from .experiments import sweep, save_sweep_csv
    cfg = load_config(args)
    tb_grid = [float(x) for x in args.t_braid_grid.split(",")]
    v_grid = [float(x) for x in args.v_grid.split(",")]
    if not cfg.circuit:
        cfg.circuit = "random"

    def progress(done, total, row):
        _eprint(f"sweep [{done}/{total}] t_braid={row[0]} V={row[1]} fid={row[3]:.4f}")

    rows = sweep(cfg, tb_grid, v_grid, replicates=args.replicates,
                 jobs=args.jobs, progress=progress)
    path = os.path.join(cfg.output_dir, f"sweep_{cfg.digest()}.csv")
    save_sweep_csv(rows, path)
    ok = sum(1 for r in rows if r[5] == "")
    print(f"sweep: {ok}/{len(rows)} points -> {path}")
    return 0 if ok == len(rows) else 1


def cmd_oracle_check(args):
    from .oracle_suite import run_suite
    tol = args.tolerance
    if tol <= 0:
        print(f"oracle-check: nonpositive tolerance {tol}", file=sys.stderr)
        return 1
    report = run_suite(args.suite, tolerance=tol)
    print(f"oracle-check[{args.suite}]: {report['cases']} cases, "
          f"max deviation {report['max_deviation']:.3e}")
    if report["cases"] == 0:
        _eprint("warning: empty suite")
        return 0
    if report["max_deviation"] > tol:
        for case in report["worst"]:
            print(f"  worst: {case}", file=sys.stderr)
        return 1
    return 0


def cmd_inspect(args):
    from .experiments import RunResult
    res = RunResult.load(args.result, check=not args.no_check)
    doc = res.tmatrix
    probs = (np.array(doc["real"]) ** 2 + np.array(doc["imag"]) ** 2)
    print(f"file: {args.result}")
    print(f"fidelity={res.fidelity:.6f} subspace={res.subspace_probability:.6f} "
          f"gates={res.gate_count} projections={res.projection_count} M={res.m_blocks}")
    print("|T|^2 column for input 0:")
    for lbl, p in zip(doc["bra_labels"], probs[:, 0]):
        print(f"  {lbl:4d}  {p:.6f}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="braidsim",
                                description="Majorana braiding simulator on Kitaev T-junction networks")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker parallelism")
    p.add_argument("--t-braid", type=float, dest="t_braid")
    p.add_argument("--disorder-v", type=float, dest="disorder_v")
    p.add_argument("--seed", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override any config key")
    sub = p.add_subparsers(dest="command")

    sub.add_parser("build", help="construct and serialize the network")
    pc = sub.add_parser("calibrate", help="T-gate hold-time calibration")
    pc.add_argument("--pair", help="slot pair, e.g. 2,3")
    sub.add_parser("bell", help="Bell-state preparation (N=2)")
    pg = sub.add_parser("ghz", help="GHZ(N) preparation")
    pg.add_argument("--n", type=int)
    pr = sub.add_parser("random", help="seeded random circuit")
    pr.add_argument("--n", type=int)
    pr.add_argument("--depth", type=int)
    pr.add_argument("--circuit-seed", type=int, dest="circuit_seed")
    prun = sub.add_parser("run", help="run a preset or circuit file")
    prun.add_argument("--preset", help="bell | ghz | random | ten-qubit")
    prun.add_argument("--circuit-file")
    ps = sub.add_parser("sweep", help="(t_braid x V) disorder sweep")
    ps.add_argument("--t-braid-grid", required=True)
    ps.add_argument("--v-grid", required=True)
    ps.add_argument("--replicates", type=int, default=1)
    po = sub.add_parser("oracle-check", help="Pfaffian-vs-Fock battery")
    po.add_argument("--suite", default="default")
    po.add_argument("--tolerance", type=float, default=1e-8)
    pi = sub.add_parser("inspect", help="inspect a stored RunResult")
    pi.add_argument("result")
    pi.add_argument("--no-check", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    handler = {
        "build": cmd_build, "calibrate": cmd_calibrate, "bell": cmd_bell,
        "ghz": cmd_ghz, "random": cmd_random, "run": cmd_run,
        "sweep": cmd_sweep, "oracle-check": cmd_oracle_check,
        "inspect": cmd_inspect,
    }[args.command]
    try:
        args.jobs = max(1, args.jobs)
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
