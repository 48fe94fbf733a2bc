"""Command-line interface.

Subcommands: ``density`` (exact fractions), ``gen`` (graph generation),
``arrow`` (deciders; exit code 0 = arrows, 1 = not-arrows, 2 = unknown),
``construct`` (adversarial colourings and dependent random choice), and
``experiment`` (Monte Carlo estimates and threshold sweeps).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from . import constructions, densities, experiments, generators
from .arrowing import (
    ARROWS,
    NOT_ARROWS,
    Budget,
    EdgeColoring,
    VertexColoring,
    ArrowVerdict,
    arrows_edge,
    arrows_vertex,
    export_cnf,
)
from .constructions import BudgetExhausted, PreconditionFailed, Success
from .graphcore import VertexSet, read_graph, write_graph


def _budget_from_args(args) -> Optional[Budget]:
    if args.budget_ms is None and getattr(args, "budget_nodes", None) is None:
        return None
    return Budget(max_nodes=getattr(args, "budget_nodes", None), max_ms=args.budget_ms)


def _witness_json(obj) -> object:
    if obj is None:
        return None
    if isinstance(obj, VertexSet):
        return {"kind": "vertex-set", "n": obj.n, "members": list(obj.members())}
    if isinstance(obj, EdgeColoring):
        return {
            "kind": "edge-coloring",
            "n": obj.n,
            "edges": [[u, v, c] for (u, v), c in zip(obj.edges, obj.colors)],
        }
    if isinstance(obj, VertexColoring):
        return {"kind": "vertex-coloring", "n": obj.n, "colors": list(obj.colors)}
    if isinstance(obj, ArrowVerdict):
        return {"kind": "arrow-verdict", "verdict": obj.kind}
    if isinstance(obj, tuple):
        return [_witness_json(x) for x in obj]
    if isinstance(obj, int):
        return obj
    return repr(obj)


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _outcome_json(name: str, seed: Optional[int], outcome) -> dict:
    if isinstance(outcome, Success):
        payload = outcome.payload
        base = {"construction": name, "seed": seed, "verified": True}
        if isinstance(payload, EdgeColoring):
            base["n"] = payload.n
            base["edges"] = [[u, v, c] for (u, v), c in zip(payload.edges, payload.colors)]
        elif isinstance(payload, VertexSet):
            base["n"] = payload.n
            base["vertices"] = list(payload.members())
        else:
            base["payload"] = _witness_json(payload)
        return base
    if isinstance(outcome, PreconditionFailed):
        return {
            "construction": name,
            "seed": seed,
            "outcome": "precondition-failed",
            "check": outcome.check,
            "witness": _witness_json(outcome.witness),
        }
    assert isinstance(outcome, BudgetExhausted)
    return {
        "construction": name,
        "seed": seed,
        "outcome": "budget-exhausted",
        "stage": outcome.stage,
    }


def _cmd_density(args) -> int:
    if args.graph is None and args.closed_form is None:
        print("density: nothing to compute (need --graph and/or --closed-form)", file=sys.stderr)
        return 2
    if args.graph is not None:
        h = read_graph(args.graph)
        print(f"rho = {densities.rho(h)}")
        print(f"d2 = {densities.d2(h)}")
        if h.n <= densities.MAX_BRUTE_FORCE_VERTICES:
            print(f"m2 = {densities.m2(h)}")
        if args.asym_left is not None:
            g = read_graph(args.asym_left)
            print(f"d2_asym = {densities.d2_asym(g, h)}")
            print(f"m2_asym = {densities.m2_asym(g, h)}")
    if args.closed_form is not None:
        l, r = args.closed_form
        print(f"m2_clique_closed_form({l},{r}) = {densities.m2_clique_closed_form(l, r)}")
    return 0


def _cmd_gen(args) -> int:
    if args.model == "gnp":
        if args.p is None or args.seed is None:
            print("gen: gnp needs --p and --seed", file=sys.stderr)
            return 2
        g = generators.gnp(args.n, args.p, args.seed)
        write_graph(g, args.out)
    elif args.model == "bipartite":
        g, _, _ = generators.complete_bipartite(args.n)
        write_graph(g, args.out)
    else:
        if args.p is None or args.seed is None:
            print("gen: perturbed needs --p and --seed", file=sys.stderr)
            return 2
        seed_graph = read_graph(args.seed_file) if args.seed_file else None
        kind = "file" if args.seed_file else "complete-bipartite"
        pg = generators.perturbed(kind, args.n, args.p, args.seed, seed_graph)
        write_graph(pg.graph, args.out)
        _write_json(str(args.out) + ".json", generators.perturbed_sidecar(pg, kind))
    return 0


def _cmd_arrow(args) -> int:
    g = read_graph(args.graph)
    budget = _budget_from_args(args)
    if args.cnf is not None and not args.vertex:
        export_cnf(g, args.s, args.t, args.cnf)
    if args.vertex:
        if args.r is None:
            print("arrow: vertex mode needs --r", file=sys.stderr)
            return 2
        verdict = arrows_vertex(g, args.r, budget)
    else:
        verdict = arrows_edge(g, args.s, args.t, budget)
    print(f"{verdict.kind} nodes={verdict.nodes} elapsed_ms={verdict.elapsed_ms:.3f}")
    if args.witness is not None and verdict.witness is not None:
        _write_json(args.witness, _witness_json(verdict.witness))
    if verdict.kind == ARROWS:
        return 0
    if verdict.kind == NOT_ARROWS:
        return 1
    return 2


def _cmd_construct(args) -> int:
    budget = _budget_from_args(args)
    if args.kind in ("bipartite-extend", "k4-adversary"):
        if args.n is None or args.p is None:
            print(f"construct {args.kind}: needs --n and --p", file=sys.stderr)
            return 2
    else:
        if args.graph is None:
            print(f"construct {args.kind}: needs --graph", file=sys.stderr)
            return 2
    if args.kind == "bipartite-extend":
        pg = generators.perturbed("complete-bipartite", args.n, args.p, args.seed)
        within = constructions.within_class_graph(pg)
        ell = math.ceil(args.r / 2)
        verdict = arrows_edge(within, ell, args.r, budget)
        if verdict.kind != NOT_ARROWS:
            outcome = (
                BudgetExhausted("inner colouring search")
                if verdict.kind == "unknown"
                else PreconditionFailed("within-class edges arrow the targets", verdict)
            )
        else:
            outcome = constructions.extend_bipartite_coloring(pg, verdict.witness, ell, args.r)
        payload = _outcome_json("bipartite-extend", args.seed, outcome)
    elif args.kind == "k4-adversary":
        pg = generators.perturbed("complete-bipartite", args.n, args.p, args.seed)
        outcome = constructions.k4_adversarial_coloring(pg, budget)
        payload = _outcome_json("k4-adversary", args.seed, outcome)
    elif args.kind == "drc":
        g = read_graph(args.graph)
        outcome = constructions.drc_extract(
            g, args.r, args.m, args.a, args.t, args.seed, args.max_attempts
        )
        payload = _outcome_json("drc", args.seed, outcome)
    else:
        g = read_graph(args.graph)
        with open(args.coloring) as fh:
            data = json.load(fh)
        coloring = EdgeColoring(
            g.n,
            tuple((e[0], e[1]) for e in data["edges"]),
            tuple(e[2] for e in data["edges"]),
        )
        outcome = constructions.mono_clique_via_drc(
            g, coloring, args.r, args.u_floor, args.w_floor, args.t, args.seed
        )
        if isinstance(outcome, Success):
            color, vs = outcome.payload
            payload = {
                "construction": "mono-clique",
                "seed": args.seed,
                "verified": True,
                "color": color,
                "vertices": list(vs.members()),
            }
        else:
            payload = _outcome_json("mono-clique", args.seed, outcome)
    _write_json(args.out, payload)
    print(payload.get("outcome", "success"))
    return 0 if isinstance(outcome, Success) else 1


def _parse_n_list(raw: str) -> list[int]:
    return [int(x) for x in raw.split(",") if x]


def _cmd_experiment(args) -> int:
    cfg = experiments.ExperimentConfig(
        model=args.model,
        r=args.r,
        n=0,
        p=args.p if args.p is not None else 0.0,
        trials=args.trials,
        master_seed=args.seed,
        mode=args.mode,
        s=args.s,
        t=args.t,
        budget_ms=args.budget_ms,
        budget_nodes=args.budget_nodes,
    )
    n_list = _parse_n_list(args.n)
    if args.action == "estimate":
        if args.p is None:
            print("experiment estimate: needs --p", file=sys.stderr)
            return 2
        rows = []
        from dataclasses import replace

        for n in n_list:
            est = experiments.estimate_arrow_probability(replace(cfg, n=n))
            rows.extend(experiments.estimate_rows(replace(cfg, n=n), est))
            print(
                f"n={n} p={args.p} phat={est.phat:.4f} "
                f"[{est.ci_lo:.4f}, {est.ci_hi:.4f}] unknown={est.unknown}"
            )
        experiments.write_points_csv(rows, args.out)
        experiments.write_manifest(str(args.out) + ".manifest.json", cfg, n_list=n_list)
    else:
        if args.p_bracket is not None:
            lo, hi = (float(x) for x in args.p_bracket.split(","))
        else:
            lo, hi = 0.0, 1.0
        strategy = "grid" if args.p_grid is not None else "bisection"
        grid = [float(x) for x in args.p_grid.split(",")] if args.p_grid else None
        result = experiments.sweep_threshold(
            cfg, n_list, strategy, p_bracket=(lo, hi), p_grid=grid, max_iters=args.max_iters
        )
        experiments.write_points_csv(experiments.sweep_rows(result), args.out)
        experiments.write_manifest(
            str(args.out) + ".manifest.json", cfg, result=result, n_list=n_list
        )
        for curve in result.curves:
            print(
                f"n={curve.n} p_half={curve.p_half} crossed={curve.crossed} "
                f"valid={curve.valid}"
            )
        if result.fit is not None:
            print(
                f"exponent slope={result.fit.slope:.4f} "
                f"intercept={result.fit.intercept:.4f} residual={result.fit.residual:.6f}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perturbed-ramsey",
        description="Ramsey computations on randomly perturbed dense graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="exact density parameters, printed as p/q")
    d.add_argument("--graph", help="graph file (text format)")
    d.add_argument("--asym-left", help="left graph for the asymmetric 2-density")
    d.add_argument("--closed-form", nargs=2, type=int, metavar=("L", "R"))
    d.set_defaults(func=_cmd_density)

    g = sub.add_parser("gen", help="generate graphs")
    g.add_argument("--model", choices=("gnp", "bipartite", "perturbed"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p")
    g.add_argument("--seed", type=int)
    g.add_argument("--seed-file", help="seed graph file for the perturbed model")
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    a = sub.add_parser("arrow", help="decide edge or vertex arrowing")
    a.add_argument("--graph", required=True)
    a.add_argument("--s", type=int, default=3)
    a.add_argument("--t", type=int, default=3)
    a.add_argument("--vertex", action="store_true")
    a.add_argument("--r", type=int)
    a.add_argument("--budget-ms", type=float)
    a.add_argument("--budget-nodes", type=int)
    a.add_argument("--cnf", help="also export the DIMACS encoding here")
    a.add_argument("--witness", help="write the witness colouring as JSON here")
    a.set_defaults(func=_cmd_arrow)

    c = sub.add_parser("construct", help="run a constructive pipeline")
    c.add_argument(
        "kind", choices=("bipartite-extend", "k4-adversary", "drc", "mono-clique")
    )
    c.add_argument("--n", type=int)
    c.add_argument("--p")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--r", type=int)
    c.add_argument("--graph")
    c.add_argument("--coloring")
    c.add_argument("--m", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--u-floor", type=int)
    c.add_argument("--w-floor", type=int)
    c.add_argument("--max-attempts", type=int, default=50)
    c.add_argument("--budget-ms", type=float)
    c.add_argument("--budget-nodes", type=int)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_construct)

    e = sub.add_parser("experiment", help="Monte Carlo estimates and sweeps")
    e.add_argument("action", choices=("estimate", "sweep"))
    e.add_argument("--model", choices=experiments.MODELS, required=True)
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--mode", choices=experiments.MODES, default="edge-symmetric")
    e.add_argument("--s", type=int)
    e.add_argument("--t", type=int)
    e.add_argument("--n", required=True, help="comma-separated n values")
    e.add_argument("--p")
    e.add_argument("--p-bracket", help="LO,HI bisection bracket")
    e.add_argument("--p-grid", help="comma-separated p grid (grid strategy)")
    e.add_argument("--max-iters", type=int, default=12)
    e.add_argument("--trials", type=int, required=True)
    e.add_argument("--seed", type=int, required=True)
    e.add_argument("--budget-ms", type=float)
    e.add_argument("--budget-nodes", type=int)
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
