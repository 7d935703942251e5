"""Named verification checks and the PASS/FAIL ledger.

Every PASS here rests on exact solving or exact enumeration, never on
sampling.  The checks mirror the finite cores the asymptotic results
reduce to: the complete-board and wheel handicap observations, the
K5-minus and S-class defenses, the minimal-collection classification,
the 15/8 and 9/5 density cores, the acyclic-triangle equivalence, the
pairing constructions, the collection reduction, and the monotonicity
and invariance property suites.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .graphs import (Graph, complete_graph, edge_endpoints, edge_index,
                     k5_minus, pair_table, to_graph6, wheel_graph)
from .engine import (BREAKER, MAKER, GameConfig, GameState, GoalSpec, Move,
                     new_game)
from . import iso
from . import solver as slv
from . import strategies as st
from . import triangle_collections as tc


@dataclass
class CheckResult:
    name: str
    passed: bool
    runtime: float
    details: dict
    artifacts: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "status": "PASS" if self.passed else "FAIL",
                "runtime_s": round(self.runtime, 3), "details": self.details,
                "artifacts": self.artifacts}


def _opening_pairs_mod_symmetry(board: Graph, goal: GoalSpec,
                                config: GameConfig) -> list[tuple[Move, Move]]:
    """Distinct Maker opening pairs modulo the board's automorphisms."""
    autos = iso.automorphism_group(board)
    n = board.n

    def move_image(m: Move, p) -> tuple[int, Optional[int]]:
        u, v = edge_endpoints(n, m.edge)
        a, b = p[u], p[v]
        if m.orientation is None:
            return (edge_index(n, min(a, b), max(a, b)), None)
        arc = (a, b) if m.orientation == 0 else (b, a)
        if arc[0] < arc[1]:
            return (edge_index(n, arc[0], arc[1]), 0)
        return (edge_index(n, arc[1], arc[0]), 1)

    state = new_game(board, goal, config)
    seen = set()
    reps = []
    for m1 in state.legal_moves():
        state.apply_move(m1)
        for m2 in state.legal_moves():
            canon = min(tuple(sorted((move_image(m1, p), move_image(m2, p))))
                        for p in autos)
            if canon not in seen:
                seen.add(canon)
                reps.append((m1, m2))
        state.undo()
    return reps


def check_k4_handicap() -> tuple[bool, dict]:
    """Breaker stops cyclic triangles on the complete 4-board even when
    Maker opens with any two oriented edges."""
    board = complete_graph(4)
    goal = GoalSpec.cyclic_triangle()
    config = GameConfig(handicap=1)
    reps = _opening_pairs_mod_symmetry(board, goal, config)
    losers = []
    for (m1, m2) in reps:
        state = new_game(board, goal, config)
        state.apply_move(m1)
        state.apply_move(m2)
        res = slv.solve(state)
        if res.winner != BREAKER:
            losers.append((m1, m2))
    return not losers, {"opening_orbits": len(reps), "maker_wins": len(losers)}


def check_w4_handicap() -> tuple[bool, dict]:
    """Breaker stops cyclic triangles on the 4-wheel when Maker's two
    opening arcs are not both incident with the center (vertex 0)."""
    board = wheel_graph(4)
    goal = GoalSpec.cyclic_triangle()
    config = GameConfig(handicap=1)
    reps = _opening_pairs_mod_symmetry(board, goal, config)
    n = board.n
    checked = 0
    losers = 0
    for (m1, m2) in reps:
        centers = [0 in edge_endpoints(n, m.edge) for m in (m1, m2)]
        if all(centers):
            continue
        checked += 1
        state = new_game(board, goal, config)
        state.apply_move(m1)
        state.apply_move(m2)
        if slv.solve(state).winner != BREAKER:
            losers += 1
    return losers == 0, {"restricted_orbits": checked, "maker_wins": losers}


def check_k5minus() -> tuple[bool, dict]:
    """Breaker wins the cyclic-triangle game on K5 minus an edge, and the
    transcribed case table survives every Maker line."""
    board = k5_minus()
    goal = GoalSpec.cyclic_triangle()
    res = slv.solve(new_game(board, goal))
    dres = slv.duel(new_game(board, goal), st.K5MinusBreakerScript(), BREAKER,
                    memo_key=st.k5m_duel_key)
    return (res.winner == BREAKER and dres.always_wins), {
        "solver_winner": res.winner_name,
        "duel_always_wins": dres.always_wins,
        "duel_nodes": dres.nodes,
        "counterexample": [m.edge for (_, m) in dres.counterexample or []] or None,
    }


def check_si_scripts() -> tuple[bool, dict]:
    """Breaker wins the cyclic-triangle game on each minimal 6/7-vertex
    class, and the cover-splitting scripts survive every Maker line."""
    goal = GoalSpec.cyclic_triangle()
    names = {k: v for k, v in tc.named_minimal_classes().items()
             if k.startswith("S")}
    details = {}
    ok = True
    for name, cls in names.items():
        g = cls.graph
        res = slv.solve(new_game(g, goal))
        script = st.catalog_breaker_script(g, name)
        dres = st.cover_duel_result(g)
        if dres is None:
            dres = slv.duel(new_game(g, goal), script, BREAKER,
                            memo_key=st.cover_split_duel_key)
        details[name] = {"solver_winner": res.winner_name,
                         "duel_always_wins": dres.always_wins,
                         "duel_nodes": dres.nodes}
        ok = ok and res.winner == BREAKER and dres.always_wins
    return ok, details


def check_classification() -> tuple[bool, dict]:
    rep = tc.verify_classification(run_solver=True)
    return rep.passed, {"minimal_counts": rep.minimal_counts(),
                        "basic_counts": {v: sum(1 for c in rep.basic_classes
                                                if c.v == v) for v in (6, 7)},
                        "failures": rep.failures}


def check_min_density_tc() -> tuple[bool, dict]:
    """The two 15/8 cores: no Maker win below density 15/8 on up to 7
    vertices, and an 8-vertex 15-edge Maker-win witness at exactly 15/8
    with an all-triangles-cyclic orientation and a win in 5 moves."""
    goal = GoalSpec.cyclic_triangle()
    bound = Fraction(15, 8)
    below = slv.min_density_maker_win_search(goal, 7, density_cap=bound,
                                             density_strict=True)
    upper = slv.min_density_maker_win_search(goal, 8, edge_range=(15, 15),
                                             density_cap=bound, min_degree=3)
    witness_checks = {}
    ok = not below.maker_win_classes
    ok = ok and upper.witness is not None and upper.min_density == bound
    if upper.witness is not None and upper.witness_cyclic_orientation is not None:
        g = upper.witness
        orient = upper.witness_cyclic_orientation
        capped = slv.solve(new_game(g, GoalSpec.clique(3)), maker_move_cap=5)
        script = st.fixed_orientation_maker_script(orient, maker_move_cap=5)
        dres = slv.duel(new_game(g, goal), script, MAKER, maker_move_cap=5)
        witness_checks = {
            "witness_graph6": to_graph6(g),
            "m": f"{upper.min_density.numerator}/{upper.min_density.denominator}",
            "undirected_win_in_5": capped.winner == MAKER,
            "tc_duel_win_in_5": dres.always_wins,
            "duel_nodes": dres.nodes,
        }
        ok = ok and capped.winner == MAKER and dres.always_wins
    else:
        ok = False
    return ok, {"below_15_8_maker_wins": len(below.maker_win_classes),
                "boards_below": below.boards_examined,
                "v8e15_maker_wins": len(upper.maker_win_classes),
                "v8e15_examined": upper.boards_examined,
                **witness_checks}


def check_min_density_k3() -> tuple[bool, dict]:
    """Minimum Maker-win density for the plain triangle game on at most 5
    vertices is 9/5, witnessed by K5 minus an edge."""
    rep = slv.min_density_maker_win_search(GoalSpec.clique(3), 5)
    ok = (rep.min_density == Fraction(9, 5)
          and rep.witness is not None
          and iso.are_isomorphic(rep.witness, k5_minus()))
    return ok, {"min_density": str(rep.min_density),
                "witness": to_graph6(rep.witness) if rep.witness else None,
                "maker_win_classes": len(rep.maker_win_classes)}


def _ta_corpus(seed: int = 20240817, random_boards: int = 200) -> list[Graph]:
    out = [cls.graph for cls in _collection_corpus_le7()]
    rng = random.Random(seed)
    for _ in range(random_boards):
        n = rng.randint(4, 8)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        m = rng.randint(3, 12)
        out.append(Graph.from_edges(n, pairs[:m]))
    return out


_corpus_cache: list = []


def _collection_corpus_le7() -> list[tc.CollectionClass]:
    """All collections on at most 7 vertices with maximum density below
    15/8 (the lower-core corpus), cached."""
    if not _corpus_cache:
        bound = Fraction(15, 8)
        for v in range(3, 8):
            _corpus_cache.extend(tc.enumerate_collections(
                [v], edge_range=(3, v * (v - 1) // 2),
                max_density_bound=bound, strict_density=True))
    return _corpus_cache


def check_ta_equivalence() -> tuple[bool, dict]:
    """The acyclic-triangle game has the same winner as the undirected
    triangle game on every corpus board."""
    ta = GoalSpec.acyclic_triangle()
    k3 = GoalSpec.clique(3)
    mismatches = []
    boards = _ta_corpus()
    for g in boards:
        w_ta = slv.solve(new_game(g, ta)).winner
        w_k3 = slv.solve(new_game(g, k3)).winner
        if w_ta != w_k3:
            mismatches.append(to_graph6(g))
    return not mismatches, {"boards": len(boards), "mismatches": mismatches}


def check_very_basic_pairings() -> tuple[bool, dict]:
    """Every very basic graph on up to 7 vertices admits a blocking pairing
    whose response defeats every Maker line even with the two-edge
    handicap; every basic atlas class falls to the witness-edge script."""
    failures = []
    checked = 0
    goal = GoalSpec.clique(3)
    config = GameConfig(handicap=1)
    for n in range(3, 8):
        for g in iso.enumerate_nonisomorphic(n, edges=(1, n * (n - 1) // 2),
                                             min_degree=1):
            if not tc.is_very_basic(g):
                continue
            checked += 1
            script = _very_basic_script(g)
            dres = slv.duel(new_game(g, goal, config), script, BREAKER,
                            memo_key=st.opening_pair_duel_key)
            if not dres.always_wins:
                failures.append(to_graph6(g))
    basics = [c for name, c in tc.named_minimal_classes().items()
              if name[0] in "AB"]
    basic_checked = 0
    for cls in basics:
        basic_checked += 1
        script = st.basic_breaker_script(cls.graph)
        dres = slv.duel(new_game(cls.graph, goal), script, BREAKER,
                        memo_key=st.opening_pair_duel_key)
        if not dres.always_wins:
            failures.append(f"basic:{cls.graph6}")
    return not failures, {"very_basic_checked": checked,
                          "basic_checked": basic_checked,
                          "failures": failures}


def _very_basic_script(g: Graph):
    def script(state: GameState) -> Move:
        makers = [m.edge for (pl, m) in state.history if pl == MAKER]
        if len(makers) < 2:
            return st.blocking_breaker_move(state)
        pairing = st.very_basic_pairing(g, (makers[0], makers[1]))
        if not st.pairing_is_blocking(g, GoalSpec.clique(3), pairing):
            raise AssertionError(f"pairing not blocking on {to_graph6(g)}")
        return st.pairing_response_script(g, pairing)(state)
    return script


def check_reduction() -> tuple[bool, dict]:
    """Solver winner equals the collection-subgraph disjunction on 100
    seeded random boards with at most 12 edges."""
    rng = random.Random(411)
    cache: dict = {}
    bad = []
    tc_checked = 0
    for i in range(100):
        n = rng.randint(4, 8)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        m = rng.randint(3, 12)
        g = Graph.from_edges(n, pairs[:m])
        rep = tc.reduction_check(g, GoalSpec.clique(3), solve_cache=cache)
        if not rep.consistent:
            bad.append(to_graph6(g))
        if i % 5 == 0:
            tc_checked += 1
            rep2 = tc.reduction_check(g, GoalSpec.cyclic_triangle(),
                                      solve_cache=cache)
            if not rep2.consistent:
                bad.append(f"tc:{to_graph6(g)}")
    return not bad, {"boards": 100, "tc_boards": tc_checked,
                     "inconsistent": bad}


def check_monotonicity() -> tuple[bool, dict]:
    """Bias monotonicity, board monotonicity, relabeling invariance, and
    repeat-solve determinism on the corpus."""
    rng = random.Random(97)
    failures = []
    boards = [complete_graph(4), complete_graph(5), wheel_graph(4),
              k5_minus(), wheel_graph(5)]
    goals = [GoalSpec.clique(3), GoalSpec.cyclic_triangle()]
    for g in boards:
        for goal in goals:
            prev = None
            for b in (1, 2, 3):
                w = slv.solve(new_game(g, goal, GameConfig(breaker_bias=b))).winner
                if prev == BREAKER and w != BREAKER:
                    failures.append(f"bias:{to_graph6(g)}:{goal.describe()}:{b}")
                prev = w
    # board monotonicity: adding edges never flips Maker to Breaker
    for g in boards:
        goal = GoalSpec.clique(3)
        base = slv.solve(new_game(g, goal)).winner
        free_pairs = [e for e in pair_table(g.n) if not g.has_edge(*e)]
        for (u, v) in free_pairs[:4]:
            sup = g.with_edge(u, v)
            w = slv.solve(new_game(sup, goal)).winner
            if base == MAKER and w != MAKER:
                failures.append(f"board:{to_graph6(g)}+{u}{v}")
    # relabeling invariance
    for g in boards:
        for goal in goals:
            base = slv.solve(new_game(g, goal)).winner
            for _ in range(100):
                perm = list(range(g.n))
                rng.shuffle(perm)
                w = slv.solve(new_game(g.relabel(perm), goal)).winner
                if w != base:
                    failures.append(f"relabel:{to_graph6(g)}:{goal.describe()}")
                    break
    # determinism: identical repeat solves
    for g in boards:
        for goal in goals:
            a = slv.solve(new_game(g, goal))
            b = slv.solve(new_game(g, goal))
            if (a.winner, a.best_move) != (b.winner, b.best_move):
                failures.append(f"determinism:{to_graph6(g)}")
    return not failures, {"failures": failures}


CHECKS: dict[str, Callable[[], tuple[bool, dict]]] = {
    "k4-handicap": check_k4_handicap,
    "w4-handicap": check_w4_handicap,
    "k5minus": check_k5minus,
    "si-scripts": check_si_scripts,
    "classification": check_classification,
    "min-density-tc": check_min_density_tc,
    "min-density-k3": check_min_density_k3,
    "ta-equivalence": check_ta_equivalence,
    "very-basic-pairings": check_very_basic_pairings,
    "reduction": check_reduction,
    "monotonicity": check_monotonicity,
}


def run_check(name: str, out_dir: Optional[Path] = None) -> CheckResult:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    start = time.perf_counter()
    passed, details = CHECKS[name]()
    result = CheckResult(name, passed, time.perf_counter() - start, details)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        if name == "classification":
            atlas_path = out_dir / "atlas.jsonl"
            rep = tc.verify_classification(run_solver=False)
            with atlas_path.open("w") as fh:
                for rec in rep.atlas:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
            result.artifacts.append(str(atlas_path))
    return result


def run_all(out_dir: Optional[Path] = None,
            names: Optional[list[str]] = None) -> list[CheckResult]:
    results = []
    for name in (names or list(CHECKS)):
        results.append(run_check(name, out_dir))
    return results
