"""Command line entry point: run, gen and verify-oracle."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from dynst.errors import DynstError, EngineError
from dynst.graph import dump_graph, read_graph
from dynst.harness.generate import KINDS, generate_instance
from dynst.harness.report import to_csv
from dynst.harness.runner import BASELINES, ENGINES, SCHEMES, RunConfig, build_oracle, run_scenario
from dynst.harness.trace import read_trace, serialize_trace
from dynst.oracle.generic import verify_generic

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynst", description="Dynamic Steiner tree experiments.")
    sub = p.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="run an engine over a trace")
    r.add_argument("--graph", required=True)
    r.add_argument("--trace", required=True)
    r.add_argument("--engine", choices=ENGINES, default="fd")
    r.add_argument("--scheme", choices=SCHEMES, default="fd", help="scheme used by --engine ref")
    r.add_argument("--backend", default="exact", help="exact, tz3 or bunch:L")
    r.add_argument("--eps", type=float, default=0.25)
    r.add_argument("--tau", type=float, default=0.25)
    r.add_argument("--l", type=int, default=2, help="bunch levels of the emulator")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--baseline", choices=BASELINES, default="none")
    r.add_argument("--msf", choices=("dynamic", "kruskal"), default="dynamic")
    r.add_argument("--differential", action="store_true", help="also run the reference scheme")
    r.add_argument("--timing", action="store_true", help="add a wall time column")
    r.add_argument("--out", help="report path (default stdout)")

    g = sub.add_parser("gen", help="generate a graph and a trace")
    g.add_argument("--kind", choices=KINDS, default="gnm")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--radius", type=float)
    g.add_argument("--ops", type=int, default=100)
    g.add_argument("--mix", type=float, default=0.6)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-graph", required=True)
    g.add_argument("--out-trace", required=True)

    v = sub.add_parser("verify-oracle", help="check the oracle conditions on a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--backend", default="tz3")
    v.add_argument("--seeds", type=int, default=1)
    return p


def _run(args) -> int:
    try:
        g = read_graph(args.graph)
        trace = read_trace(args.trace, g.n)
        cfg = RunConfig(engine=args.engine, backend=args.backend, eps=args.eps, tau=args.tau, l=args.l,
                        seed=args.seed, baseline=args.baseline, scheme=args.scheme, msf=args.msf,
                        differential=args.differential, timing=args.timing)
        cfg.validate()
    except (OSError, DynstError) as exc:
        print(f"dynst: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run_scenario(g, trace, cfg)
    except EngineError as exc:
        print(f"dynst: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = to_csv(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for msg in report.failures:
        print(f"dynst: {msg}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def _gen(args) -> int:
    try:
        g, trace = generate_instance(args.kind, args.n, args.m, args.seed, args.ops, args.mix, args.radius)
    except DynstError as exc:
        print(f"dynst: {exc}", file=sys.stderr)
        return EXIT_USAGE
    Path(args.out_graph).write_text(dump_graph(g))
    Path(args.out_trace).write_text(serialize_trace(trace))
    return EXIT_OK


def _verify(args) -> int:
    try:
        g = read_graph(args.graph)
        build_oracle(g, args.backend, 0)
    except (OSError, DynstError) as exc:
        print(f"dynst: {exc}", file=sys.stderr)
        return EXIT_USAGE
    total = 0
    for seed in range(args.seeds):
        bad = verify_generic(build_oracle(g, args.backend, seed), g)
        total += len(bad)
        print(f"seed {seed}: {len(bad)} violations")
        for msg in bad[:5]:
            print(f"  {msg}")
    print(f"{'pass' if total == 0 else 'FAIL'}: {total} violations over {args.seeds} seeds")
    return EXIT_OK if total == 0 else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.cmd == "run":
        return _run(args)
    if args.cmd == "gen":
        return _gen(args)
    return _verify(args)


if __name__ == "__main__":
    sys.exit(main())
