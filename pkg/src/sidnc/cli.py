"""Command-line front end: Monte-Carlo sweeps, bounds, oracles, exports."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import analytics
from .algorithms import (
    brute_force_min_apdd,
    bron_kerbosch,
    exact_chromatic_number,
    heuristic_solution_search,
)
from .errors import InvalidSolution, SIdncError, SizeLimitExceeded
from .experiment import LIMITS, ExperimentSpec, ResultRow, emit_csv, run_experiment
from .fixtures import branching_example_graph
from .graphs import (
    build_gidnc_graph,
    build_sidnc_graph,
    complement,
    gidnc_graph_to_dot,
    sidnc_graph_to_dot,
)
from .schemes import ALGORITHMS, RLNC, SCHEMES, SchemeSpec
from .state import BroadcastConfig, fig1_sfm, format_sfm, load_sfm

DEFAULTS = {"packets": 15, "receivers": 10, "erasure": 0.2, "trials": 1000, "seed": 1}


def _read_config_file(path) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {raw.rstrip()!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in DEFAULTS:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = float(val) if key == "erasure" else int(val)
    return values


def _resolve(args) -> dict:
    """CLI flags over config file over defaults."""
    resolved = dict(DEFAULTS)
    if getattr(args, "config", None):
        resolved.update(_read_config_file(args.config))
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
    return resolved


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sidnc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte-Carlo sweep over receiver counts")
    _add_common(sim)
    sim.add_argument("--sweep", help="comma-separated receiver counts (default: -N alone)")
    sim.add_argument(
        "--scheme",
        default="fully-online",
        help="comma-separated schemes: " + ",".join(SCHEMES + (LIMITS,)),
    )
    sim.add_argument(
        "--algorithm",
        default="heuristic",
        help="comma-separated algorithms: " + ",".join(ALGORITHMS),
    )
    sim.add_argument("--coded-erasure", type=float, help="override Pe in the coded phase")
    sim.add_argument("--slot-cap", type=int, help="slot budget per trial (default 50*K)")
    sim.add_argument("--out", help="CSV output path (default: stdout)")
    sim.add_argument("--plot-dir", help="also render figures into this directory")
    sim.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sim.add_argument(
        "--check",
        action="store_true",
        help="validate every transmitted solution (exit 1 on violation)",
    )
    sim.add_argument("--confidence", action="store_true", help="require >=30 trials")

    bounds = sub.add_parser("bounds", help="completion-time bounds for one SFM")
    bounds.add_argument("--sfm-file", required=True)
    bounds.add_argument("--chromatic-cap", type=int, default=24)

    oracle = sub.add_parser("oracle", help="exact small-instance oracles")
    oracle.add_argument("kind", choices=["chromatic", "min-apdd"])
    oracle.add_argument("--sfm-file", required=True)

    graph = sub.add_parser("graph", help="graph utilities")
    gsub = graph.add_subparsers(dest="graph_command", required=True)
    export = gsub.add_parser("export", help="DOT export of a conflict graph")
    export.add_argument("--sfm-file", required=True)
    export.add_argument("--kind", choices=["s", "g", "complement"], default="s")
    export.add_argument("--out", help="output path (default: stdout)")

    sub.add_parser("fixture", help="print the built-in test fixtures")
    return parser


def _add_common(cmd):
    cmd.add_argument("--packets", "-K", type=int)
    cmd.add_argument("--receivers", "-N", type=int)
    cmd.add_argument("--erasure", "-p", type=float)
    cmd.add_argument("--trials", type=int)
    cmd.add_argument("--seed", type=int)
    cmd.add_argument("--config", help="key=value config file (flags win)")


def _parse_schemes(args) -> list:
    algorithms = [a.strip() for a in args.algorithm.split(",") if a.strip()]
    entries = []
    for name in (s.strip() for s in args.scheme.split(",")):
        if not name:
            continue
        if name == LIMITS:
            entries.append(LIMITS)
        elif name == RLNC:
            entries.append(
                SchemeSpec(RLNC, slot_cap=args.slot_cap, validate=args.check)
            )
        else:
            for algorithm in algorithms:
                entries.append(
                    SchemeSpec(name, algorithm, slot_cap=args.slot_cap, validate=args.check)
                )
    return entries


def _cmd_simulate(args) -> int:
    opts = _resolve(args)
    config = BroadcastConfig(
        packets=opts["packets"],
        receivers=opts["receivers"],
        erasure_prob=opts["erasure"],
        seed=opts["seed"],
        trials=opts["trials"],
    )
    sweep = (
        [int(tok) for tok in args.sweep.split(",")] if args.sweep else [config.receivers]
    )
    spec = ExperimentSpec(
        config=config,
        sweep=tuple(sweep),
        schemes=tuple(_parse_schemes(args)),
        coded_phase_erasure=args.coded_erasure,
        confidence=args.confidence,
    )

    t0 = time.perf_counter()

    def progress(row: ResultRow):
        print(
            f"[{time.perf_counter() - t0:7.2f}s] {row.scheme}/{row.algorithm} "
            f"N={row.receivers} mean_UT={row.mean_completion}",
            file=sys.stderr,
        )

    rows = run_experiment(spec, workers=max(1, args.threads), progress=progress)
    if args.out:
        emit_csv(rows, args.out)
    else:
        emit_csv(rows, sys.stdout)
    if args.plot_dir:
        from .plotting import render_figures

        for path in render_figures(rows, args.plot_dir):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_bounds(args) -> int:
    sfm = load_sfm(args.sfm_file)
    g = build_sidnc_graph(sfm)
    gbar = complement(g)
    k, m0 = g.vertex_count, g.edge_count
    try:
        chi = exact_chromatic_number(gbar, cap=args.chromatic_cap)
        chi_txt, apdd_txt = str(chi), f"{analytics.apdd_upper_bound(max(chi, 1)):.1f}"
    except SizeLimitExceeded:
        chi_txt, apdd_txt = "-", "-"
    print(f"K                 {k}")
    print(f"M0                {m0}")
    print(f"geller_lower      {analytics.geller_lower_bound(k, m0)}")
    print(f"staircase_upper   {analytics.staircase_upper_bound(k, m0)}")
    print(f"max_degree_upper  {analytics.degree_upper_bound(gbar)}")
    print(f"clique_lower      {analytics.clique_lower_bound(gbar)}")
    print(f"chromatic         {chi_txt}")
    print(f"apdd_upper        {apdd_txt}")
    return 0


def _cmd_oracle(args) -> int:
    sfm = load_sfm(args.sfm_file)
    if args.kind == "chromatic":
        chi = exact_chromatic_number(complement(build_sidnc_graph(sfm)))
        print(chi)
        return 0
    value, witness = brute_force_min_apdd(sfm)
    print(f"{value:.10g}")
    for cs in witness.coding_sets:
        print(" ".join(str(p) for p in cs))
    return 0


def _cmd_graph_export(args) -> int:
    sfm = load_sfm(args.sfm_file)
    if args.kind == "g":
        dot = gidnc_graph_to_dot(build_gidnc_graph(sfm))
    elif args.kind == "complement":
        dot = sidnc_graph_to_dot(complement(build_sidnc_graph(sfm)))
    else:
        dot = sidnc_graph_to_dot(build_sidnc_graph(sfm))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return 0


def _cmd_fixture(_args) -> int:
    sfm = fig1_sfm()
    print("# canonical 5x6 SFM")
    sys.stdout.write(format_sfm(sfm))
    print("# its packet conflict graph (DOT)")
    sys.stdout.write(sidnc_graph_to_dot(build_sidnc_graph(sfm)))
    g = branching_example_graph()
    print("# branching example graph: maximal cliques")
    for cs in bron_kerbosch(g).cliques:
        print(" ".join(str(p) for p in cs))
    print("# heuristic solution of the canonical SFM graph")
    for cs in heuristic_solution_search(build_sidnc_graph(sfm)).coding_sets:
        print(" ".join(str(p) for p in cs))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "graph":
            return _cmd_graph_export(args)
        return _cmd_fixture(args)
    except InvalidSolution as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except (SIdncError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
