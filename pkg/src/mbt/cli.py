"""Command-line entry point: solve, verify, enumerate-collections,
simulate, and catalog subcommands with reproducible JSON/text output.

Exit codes: 0 success or PASS, 1 FAIL, 2 usage error, 3 resource cap.
JSON is the machine interface; text output is a projection of the same
record.
"""

from __future__ import annotations

import argparse
import json
import os
import pickle
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .graphs import Graph, build_named_graph, from_edge_list, to_edge_list, to_graph6
from .engine import GameConfig, GoalSpec, new_game
from . import experiments as ex
from . import solver as slv
from . import triangle_collections as tc
from . import verify as vf

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3

CACHE_MAGIC = "mbt-cache-v1"


class UsageError(ValueError):
    pass


def _load_board(spec: str) -> Graph:
    if os.path.exists(spec):
        return from_edge_list(Path(spec).read_text())
    try:
        return build_named_graph(spec)
    except ValueError as exc:
        raise UsageError(f"board {spec!r}: {exc}") from exc


def _load_goal(spec: str) -> GoalSpec:
    if spec == "tc":
        return GoalSpec.cyclic_triangle()
    if spec == "ta":
        return GoalSpec.acyclic_triangle()
    if spec.startswith("clique:"):
        return GoalSpec.clique(int(spec.split(":", 1)[1]))
    if spec.startswith("good-clique:"):
        return GoalSpec.good_clique(int(spec.split(":", 1)[1]))
    if spec.startswith("tournament:"):
        path = spec.split(":", 1)[1]
        arcs = []
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            i, j = line.split()
            arcs.append((int(i), int(j)))
        return GoalSpec.tournament(arcs)
    raise UsageError(f"unknown goal {spec!r}")


def _parse_bias(text: str) -> GameConfig:
    try:
        a, b = text.split(":")
        return GameConfig(maker_bias=int(a), breaker_bias=int(b))
    except ValueError as exc:
        raise UsageError(f"bias must look like 1:2, got {text!r}") from exc


def _load_cache(path: Optional[str]) -> dict:
    if not path or not os.path.exists(path):
        return {}
    with open(path, "rb") as fh:
        blob = pickle.load(fh)
    if blob.get("magic") != CACHE_MAGIC:
        raise UsageError(f"cache file {path} has an unknown format")
    return blob["records"]


def _save_cache(path: Optional[str], records: dict) -> None:
    if not path:
        return
    with open(path, "wb") as fh:
        pickle.dump({"magic": CACHE_MAGIC, "records": records}, fh)


def cmd_solve(args) -> int:
    board = _load_board(args.board)
    goal = _load_goal(args.goal)
    config = _parse_bias(args.bias)
    if args.handicap:
        config = GameConfig(config.maker_bias, config.breaker_bias, 1)
    state = new_game(board, goal, config)
    cache_path = args.cache or os.environ.get("MBT_CACHE_DIR_FILE")
    if args.cache is None and os.environ.get("MBT_CACHE_DIR"):
        cache_path = os.path.join(os.environ["MBT_CACHE_DIR"], "solve-cache.bin")
    records = _load_cache(cache_path)
    key = f"{board.n}:{board.edge_mask:x}:{goal.describe()}:" \
          f"{config.breaker_bias}:{config.handicap}:{state.code()}"
    if not args.no_cache and key in records:
        winner, best = records[key]
        payload = {"winner": winner, "best_move": best, "cached": True,
                   "nodes": 0, "table_hits": 0, "elapsed_s": 0.0}
    else:
        res = slv.solve(state)
        best = None
        if res.best_move is not None:
            u, v = res.best_move.endpoints(board.n)
            best = {"edge": [u, v], "orientation": res.best_move.orientation}
        payload = {"winner": res.winner_name, "best_move": best, "cached": False,
                   "nodes": res.nodes_visited, "table_hits": res.table_hits,
                   "elapsed_s": round(res.elapsed, 4)}
        records[key] = (res.winner_name, best)
        _save_cache(cache_path, records)
    payload.update({"board": args.board, "goal": goal.describe(),
                    "bias": f"{config.maker_bias}:{config.breaker_bias}",
                    "handicap": config.handicap})
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        move = payload["best_move"]
        extra = f", best move {move}" if move else ""
        print(f"{payload['goal']} on {args.board}: winner={payload['winner']}{extra}")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(vf.CHECKS) if args.check == "all" else [args.check]
    for name in names:
        if name not in vf.CHECKS:
            raise UsageError(f"unknown check {name!r}; "
                             f"choose from {', '.join(vf.CHECKS)} or all")
    out_dir = Path(args.out) if args.out else None
    results = vf.run_all(out_dir, names)
    ledger = [r.to_json() for r in results]
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "ledger.json").write_text(json.dumps(ledger, indent=2,
                                                        sort_keys=True))
    all_pass = all(r.passed for r in results)
    if args.format == "json":
        print(json.dumps(ledger, indent=2, sort_keys=True))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:22s} "
                  f"{r.runtime:8.2f}s")
    return EXIT_OK if all_pass else EXIT_FAIL


def cmd_enumerate_collections(args) -> int:
    bound = None
    if args.max_density:
        num, den = args.max_density.split("/")
        bound = Fraction(int(num), int(den))
    classes = tc.enumerate_collections(
        range(args.min_v, args.max_v + 1),
        edge_formula=args.edge_formula,
        min_degree=args.min_degree,
        max_density_bound=bound,
        strict_density=True,
        basic_allowed=args.basic)
    records = [c.record() for c in classes]
    if args.out:
        with open(args.out, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
    if args.format == "json":
        print(json.dumps({"classes": len(records), "out": args.out},
                         sort_keys=True))
    else:
        print(f"{len(records)} collection classes"
              + (f" -> {args.out}" if args.out else ""))
        for rec in records:
            print(f"  {rec['graph6']}  v={rec['vertices']} "
                  f"e={len(rec['edges'])} m={rec['max_density']} "
                  f"basic={rec['basic']}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = json.loads(Path(args.spec).read_text())
    seed = args.seed
    trials = args.trials
    if args.kind == "curve":
        goal = _load_goal(spec.get("goal", "clique:3"))
        if "b_grid" in spec:
            report = ex.bias_threshold_curve(goal, spec["n"], spec["b_grid"])
        else:
            report = ex.empirical_threshold_curve(
                goal, spec["n"], spec["p_grid"], trials, seed,
                maker_policy=spec.get("maker_policy"),
                breaker_policy=spec.get("breaker_policy"),
                threads=args.threads)
    elif args.kind == "random-maker":
        report = ex.random_maker_trial(
            spec["n"], spec["k"], spec["M"], spec.get("b", 1),
            trials, seed, adversary=spec.get("adversary", "greedy"),
            delta=spec.get("delta", 0.1))
    elif args.kind == "pittel":
        k = spec["k"]

        def has_good(g: Graph) -> bool:
            return ex.count_good_copies(g, k) > 0

        report = ex.model_transfer_check(has_good, spec["n"], k,
                                         spec["M"], trials, seed)
    elif args.kind == "subgraph":
        if "pattern_graph6" in spec:
            from .graphs import from_graph6
            pattern = from_graph6(spec["pattern_graph6"])
        else:
            pattern = _load_board(spec["pattern"])
        report = ex.subgraph_frequency(pattern, spec["n"], spec["p_grid"],
                                       trials, seed, threads=args.threads)
    else:
        raise UsageError(f"unknown simulation kind {args.kind!r}")
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
        if args.csv:
            Path(args.csv).write_text(report.to_csv())
    print(text if args.format == "json" else report.to_csv())
    return EXIT_OK


def cmd_catalog(args) -> int:
    board = _load_board(args.name)
    if args.format == "graph6":
        print(to_graph6(board))
    else:
        sys.stdout.write(to_edge_list(board))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbt",
        description="Exact Maker-Breaker tournament-game verification lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact winner of one game")
    p.add_argument("--board", required=True, help="catalog name or edge-list file")
    p.add_argument("--goal", required=True,
                   help="clique:k | tc | ta | good-clique:k | tournament:file")
    p.add_argument("--bias", default="1:1")
    p.add_argument("--handicap", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--cache", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run named verification checks")
    from .verify import CHECKS
    p.add_argument("check", help="'all' or one of: " + ", ".join(CHECKS))
    p.add_argument("--out", default=None, help="directory for ledger/artifacts")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate-collections",
                       help="isomorph-free collection atlas")
    p.add_argument("--min-v", type=int, required=True)
    p.add_argument("--max-v", type=int, required=True)
    p.add_argument("--edge-formula", choices=("2v-1",), default=None)
    p.add_argument("--min-degree", type=int, default=None)
    p.add_argument("--max-density", default=None, help="strict bound, e.g. 15/8")
    p.add_argument("--basic", choices=("include", "exclude", "only"),
                   default="include")
    p.add_argument("--out", default=None, help="atlas JSONL path")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_enumerate_collections)

    p = sub.add_parser("simulate", help="randomized experiment")
    p.add_argument("kind", choices=("curve", "random-maker", "pittel", "subgraph"))
    p.add_argument("--spec", required=True, help="JSON spec file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--threads", type=int, default=1,
                   help="worker count; outputs are identical for any value")
    p.add_argument("--out", default=None, help="report JSON path")
    p.add_argument("--csv", default=None, help="report CSV path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("catalog", help="emit a named graph")
    p.add_argument("name")
    p.add_argument("--format", choices=("edge-list", "graph6"),
                   default="edge-list")
    p.set_defaults(func=cmd_catalog)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        _emit_error(args, "usage", str(exc))
        return EXIT_USAGE
    except slv.SolverCapExceeded as exc:
        _emit_error(args, "resource-cap", str(exc))
        return EXIT_CAP
    except (ValueError, OSError, KeyError) as exc:
        _emit_error(args, "error", str(exc))
        return EXIT_USAGE


def _emit_error(args, kind: str, message: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    else:
        print(f"{kind}: {message}", file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
