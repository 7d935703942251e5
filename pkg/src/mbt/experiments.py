"""Random-board samplers, good-copy counting, empirical threshold curves,
and numeric bound evaluation.

Every sampler derives one substream per trial from (seed, trial index),
so reports are bit-reproducible for a fixed spec and seed regardless of
how trials are scheduled.  Statistical cells carry Wilson 95% intervals;
nothing statistical ever gates an exact verification.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .graphs import Graph, cliques_of, edge_endpoints, pair_table, turan_graph
from .engine import (BREAKER, MAKER, GameConfig, GameState, GoalSpec, Move,
                     Status, new_game)
from . import solver as slv

CODE_VERSION = "mbt-0.1.0"


# -- sampling ------------------------------------------------------------------


@dataclass(frozen=True)
class SampleSpec:
    """Random board model: gnp, turan_p, or turan_m."""
    model: str
    n: int
    k: Optional[int] = None
    p: Optional[float] = None
    m: Optional[int] = None
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.model not in ("gnp", "turan_p", "turan_m"):
            raise ValueError(f"unknown sample model {self.model!r}")
        if self.model in ("turan_p", "turan_m") and not self.k:
            raise ValueError("Turan models need a class count k")
        if self.model.endswith("_p") or self.model == "gnp":
            if self.p is None or not 0 <= self.p <= 1:
                raise ValueError("edge probability must lie in [0, 1]")
        if self.model == "turan_m":
            if self.m is None or self.m < 0 or self.m > turan_edge_count(self.n, self.k):
                raise ValueError("edge count M out of range for the Turan board")
        if self.trials < 1:
            raise ValueError("need at least one trial")

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def turan_edge_count(n: int, k: int) -> int:
    return turan_graph(n, k).num_edges


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                        spawn_key=(trial,)))


def sample_board(spec: SampleSpec) -> Iterator[Graph]:
    """Deterministic stream of sampled boards, one per trial."""
    for trial in range(spec.trials):
        yield sample_one(spec, trial)


def sample_one(spec: SampleSpec, trial: int) -> Graph:
    rng = trial_rng(spec.seed, trial)
    if spec.model == "gnp":
        pairs = pair_table(spec.n)
        keep = rng.random(len(pairs)) < spec.p
        return Graph.from_edges(spec.n, [e for e, k in zip(pairs, keep) if k])
    base = turan_graph(spec.n, spec.k)
    eids = sorted(base.edge_ids())
    if spec.model == "turan_p":
        keep = rng.random(len(eids)) < spec.p
        chosen = [eid for eid, k in zip(eids, keep) if k]
    else:
        chosen = sorted(rng.choice(len(eids), size=spec.m, replace=False).tolist())
        chosen = [eids[i] for i in chosen]
    mask = 0
    for eid in chosen:
        mask |= 1 << eid
    return Graph(spec.n, mask, base.partition)


# -- exact counting ---------------------------------------------------------------


def count_good_copies(g: Graph, k: int) -> int:
    """Number of k-cliques using at most one vertex per partition class."""
    if g.partition is None:
        raise ValueError("good-copy counting needs a partitioned board")
    count = 0
    for clique in cliques_of(g, k):
        classes = {g.partition[v] for v in clique}
        if len(classes) == k:
            count += 1
    return count


def pair_intersection_stats(n: int, k: int) -> list[dict]:
    """Exact table over t in [2, k]: ordered pairs of good K_k copies of the
    full Turan board sharing exactly t vertices, with the n^(2k-t) bound."""
    if n > 12 or k not in (3, 4):
        raise ValueError("exact pair counting supports n <= 12, k in {3, 4}")
    board = turan_graph(n, k)
    copies = [frozenset(c) for c in cliques_of(board, k)
              if len({board.partition[v] for v in c}) == k]
    table = []
    for t in range(2, k + 1):
        count = sum(1 for c1 in copies for c2 in copies if len(c1 & c2) == t)
        table.append({"t": t, "pairs": count, "bound": n ** (2 * k - t),
                      "holds": count <= n ** (2 * k - t)})
    return table


# -- bounds ------------------------------------------------------------------------


def chernoff_bound_eval(lam: float, t: float) -> float:
    """Upper tail bound exp(-t^2/(2 lambda) + t^3/(6 lambda^2))."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")
    return math.exp(-t * t / (2 * lam) + t ** 3 / (6 * lam * lam))


def wilson_interval(wins: int, trials: int, z: float = 1.959963984540054
                    ) -> tuple[float, float]:
    """Wilson score 95% interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    phat = wins / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials
                         + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


# -- reports -----------------------------------------------------------------------


@dataclass
class ExperimentReport:
    kind: str
    spec: dict
    cells: list[dict]
    seed: Optional[int] = None
    code_version: str = CODE_VERSION
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "spec": self.spec,
            "seed": self.seed,
            "code_version": self.code_version,
            "notes": self.notes,
            "cells": self.cells,
        }, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        if not self.cells:
            return ""
        keys: list[str] = []
        for cell in self.cells:
            for key in cell:
                if key not in keys:
                    keys.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        for cell in self.cells:
            writer.writerow(cell)
        return buf.getvalue()


def _freq_cell(params: dict, wins: int, trials: int) -> dict:
    lo, hi = wilson_interval(wins, trials)
    cell = dict(params)
    cell.update({"wins": wins, "trials": trials,
                 "freq": wins / trials if trials else 0.0,
                 "ci_lo": lo, "ci_hi": hi})
    return cell


# -- playout policies ----------------------------------------------------------------


def greedy_breaker_policy(state: GameState) -> Move:
    """Claim the free edge lying in the most alive goal embeddings, ties by
    edge id (documented heuristic; never used in exact verification)."""
    free = state.free_mask
    best_eid = None
    best_score = -1
    counts: dict[int, int] = {}
    for p in state.patterns:
        if state.pattern_alive(p):
            open_bits = p.edges & free
            m = open_bits
            while m:
                low = m & -m
                counts[low.bit_length() - 1] = counts.get(low.bit_length() - 1, 0) + 1
                m ^= low
    for pos, eid in enumerate(state.edge_list):
        if free >> pos & 1:
            score = counts.get(pos, 0)
            if score > best_score:
                best_score, best_eid = score, eid
    if best_eid is None:
        raise ValueError("no free edge for greedy policy")
    return Move(best_eid)


def random_policy(rng: np.random.Generator) -> Callable[[GameState], Move]:
    def policy(state: GameState) -> Move:
        free = [eid for pos, eid in enumerate(state.edge_list)
                if state.free_mask >> pos & 1]
        eid = free[int(rng.integers(len(free)))]
        if state.goal.oriented and state.mover == MAKER:
            return Move(eid, int(rng.integers(2)))
        return Move(eid)
    return policy


def _playout_winner(board: Graph, goal: GoalSpec, config: GameConfig,
                    maker_policy, breaker_policy) -> int:
    state = new_game(board, goal, config)
    while True:
        status = state.goal_status()
        if status is Status.MAKER_WON:
            return MAKER
        if status is not Status.ONGOING:
            return BREAKER
        policy = maker_policy if state.mover == MAKER else breaker_policy
        state.apply_move(policy(state))


# -- threshold curves ---------------------------------------------------------------


EXACT_CURVE_VERTEX_CAP = 7


def _curve_trial_wins(goal: GoalSpec, n: int, p_grid: tuple[float, ...],
                      seed: int, trial: int, maker_policy: Optional[str],
                      breaker_policy: Optional[str], config: GameConfig,
                      solve_cache: Optional[dict] = None) -> list[bool]:
    """Per-trial Maker-win indicators over the p grid (shared uniforms)."""
    exact = maker_policy is None and breaker_policy is None
    pairs = pair_table(n)
    uniforms = trial_rng(seed, trial).random(len(pairs))
    out = []
    for p in p_grid:
        edges = [e for e, u in zip(pairs, uniforms) if u < p]
        board = Graph.from_edges(n, edges)
        if exact:
            winner = solve_cache.get(board.edge_mask) if solve_cache is not None else None
            if winner is None:
                winner = slv.solve(new_game(board, goal, config)).winner
                if solve_cache is not None:
                    solve_cache[board.edge_mask] = winner
        else:
            mk = (greedy_breaker_policy if maker_policy == "greedy"
                  else random_policy(trial_rng(seed ^ 0x5e5e, trial)))
            bk = (greedy_breaker_policy if breaker_policy == "greedy"
                  else random_policy(trial_rng(seed ^ 0x7a7a, trial)))
            winner = _playout_winner(board, goal, config, mk, bk)
        out.append(winner == MAKER)
    return out


def _curve_worker(args) -> tuple[int, list[bool]]:
    goal, n, p_grid, seed, trial, mk, bk, config = args
    return trial, _curve_trial_wins(goal, n, p_grid, seed, trial, mk, bk,
                                    config, {})


def empirical_threshold_curve(goal: GoalSpec, n: int,
                              p_grid: Sequence[float], trials: int, seed: int,
                              maker_policy: Optional[str] = None,
                              breaker_policy: Optional[str] = None,
                              config: Optional[GameConfig] = None,
                              threads: int = 1) -> ExperimentReport:
    """Maker-win frequency on G(n, p) boards over a p grid.

    Without policies the winner is exact (n capped); with policies the
    curve is a heuristic playout and labeled as such.  Boards across the
    grid share one uniform per edge (common random numbers), so exact
    curves are pointwise non-decreasing in p by construction.  Trials are
    independent substreams, so the report is identical for any worker
    count.
    """
    config = config or GameConfig()
    exact = maker_policy is None and breaker_policy is None
    if exact and n > EXACT_CURVE_VERTEX_CAP:
        raise slv.SolverCapExceeded(
            f"exact curves capped at {EXACT_CURVE_VERTEX_CAP} vertices")
    grid = tuple(p_grid)
    wins = [0] * len(grid)
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        jobs = [(goal, n, grid, seed, t, maker_policy, breaker_policy, config)
                for t in range(trials)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for _, row in sorted(pool.map(_curve_worker, jobs)):
                for ip, won in enumerate(row):
                    wins[ip] += won
    else:
        cache: dict[int, int] = {}
        for trial in range(trials):
            row = _curve_trial_wins(goal, n, grid, seed, trial, maker_policy,
                                    breaker_policy, config, cache)
            for ip, won in enumerate(row):
                wins[ip] += won
    cells = [_freq_cell({"p": p}, wins[ip], trials) for ip, p in enumerate(grid)]
    report = ExperimentReport("threshold-curve",
                              {"goal": goal.describe(), "n": n,
                               "p_grid": list(grid), "trials": trials,
                               "exact": exact}, cells, seed)
    if not exact:
        report.notes.append("heuristic playout policies; not an exact verdict")
    return report


def bias_threshold_curve(goal: GoalSpec, n: int, b_grid: Sequence[int],
                         ) -> ExperimentReport:
    """Exact winner of the (1:b) game on the complete board per bias."""
    cells = []
    for b in b_grid:
        res = slv.solve(new_game(Graph.from_edges(n, pair_table(n)), goal,
                                 GameConfig(breaker_bias=b)))
        cells.append({"b": b, "winner": res.winner_name})
    return ExperimentReport("bias-curve",
                            {"goal": goal.describe(), "n": n,
                             "b_grid": list(b_grid)}, cells)


# -- random-Maker trials ----------------------------------------------------------------


def _greedy_adversary(board: Graph, k: int, maker_mask: int, breaker_mask: int,
                      rng: np.random.Generator) -> Optional[int]:
    """Free edge in the most alive good copies, ties by edge id."""
    part = board.partition
    free_best = None
    best = -1
    alive_copies = []
    for clique in cliques_of(board, k):
        if len({part[v] for v in clique}) != k:
            continue
        bits = 0
        dead = False
        for i in range(len(clique)):
            for j in range(i + 1, len(clique)):
                from .graphs import edge_index
                eid = edge_index(board.n, min(clique[i], clique[j]),
                                 max(clique[i], clique[j]))
                if breaker_mask >> eid & 1:
                    dead = True
                    break
                bits |= 1 << eid
            if dead:
                break
        if not dead:
            alive_copies.append(bits)
    counts: dict[int, int] = {}
    taken = maker_mask | breaker_mask
    for bits in alive_copies:
        m = bits & ~taken
        while m:
            low = m & -m
            eid = low.bit_length() - 1
            counts[eid] = counts.get(eid, 0) + 1
            m ^= low
    for eid in sorted(board.edge_ids()):
        if taken >> eid & 1:
            continue
        score = counts.get(eid, 0)
        if score > best:
            best, free_best = score, eid
    return free_best


def random_maker_trial(n: int, k: int, m_edges: int, b: int, trials: int,
                       seed: int, adversary: str = "greedy",
                       delta: float = 0.1) -> ExperimentReport:
    """Random Maker against a Breaker heuristic on uniform-M Turan boards.

    Maker draws uniformly among edges she has not claimed; a draw landing
    on a Breaker edge is a failure and skips her claim.  The game runs for
    rounds = 2*floor(n^(2-2/(k+1))) Maker attempts, capped by the board.
    Reports failures, good-copy completion frequency, and delta * rounds.
    """
    spec = SampleSpec("turan_m", n, k, m=m_edges, seed=seed, trials=trials)
    rounds_target = 2 * int(n ** (2 - 2 / (k + 1)))
    completions = 0
    failure_counts = []
    for trial in range(trials):
        board = sample_one(spec, trial)
        rng = trial_rng(seed ^ 0x9d2c5680, trial)
        eids = sorted(board.edge_ids())
        maker_mask = breaker_mask = 0
        failures = 0
        rounds = min(rounds_target, len(eids))
        for _ in range(rounds):
            pool = [e for e in eids if not maker_mask >> e & 1]
            if not pool:
                break
            draw = pool[int(rng.integers(len(pool)))]
            if breaker_mask >> draw & 1:
                failures += 1
            else:
                maker_mask |= 1 << draw
            for _ in range(b):
                if adversary == "greedy":
                    pick = _greedy_adversary(board, k, maker_mask, breaker_mask, rng)
                else:
                    free = [e for e in eids
                            if not (maker_mask | breaker_mask) >> e & 1]
                    pick = free[int(rng.integers(len(free)))] if free else None
                if pick is None:
                    break
                breaker_mask |= 1 << pick
        maker_graph = Graph(board.n, maker_mask, board.partition)
        if count_good_copies(maker_graph, k) > 0:
            completions += 1
        failure_counts.append(failures)
    cell = _freq_cell({"n": n, "k": k, "M": m_edges, "b": b,
                       "rounds": min(rounds_target, m_edges)},
                      completions, trials)
    cell.update({
        "mean_failures": float(np.mean(failure_counts)),
        "max_failures": int(np.max(failure_counts)),
        "failure_budget": delta * rounds_target,
    })
    return ExperimentReport("random-maker",
                            {"n": n, "k": k, "M": m_edges, "b": b,
                             "trials": trials, "adversary": adversary,
                             "delta": delta},
                            [cell], seed,
                            notes=["failure/binomial comparison is a probe, "
                                   "not an asserted coupling"])


def resilience_probe(n: int, k: int, m_edges: int, delta: float, trials: int,
                     seed: int) -> ExperimentReport:
    """Lower-bound probe of edge-deletion resilience: sample uniform-M
    Turan boards, delete floor(delta*M) edges (half at random, half
    greedily against surviving good copies), and report how often a good
    copy survives.  Non-exhaustive by design: adversarial deletion here is
    a heuristic, so survival frequencies only bound resilience from below.
    """
    spec = SampleSpec("turan_m", n, k, m=m_edges, seed=seed, trials=trials)
    deletions = int(delta * m_edges)
    survived = 0
    for trial in range(trials):
        board = sample_one(spec, trial)
        rng = trial_rng(seed ^ 0x2545f491, trial)
        removed = 0
        work = board
        budget_random = deletions // 2
        eids = sorted(work.edge_ids())
        drop = rng.choice(len(eids), size=min(budget_random, len(eids)),
                          replace=False)
        for i in sorted(drop.tolist(), reverse=True):
            u, v = _endpoints(work.n, eids[i])
            work = work.without_edge(u, v)
            removed += 1
        while removed < deletions and work.num_edges:
            pick = _greedy_adversary(work, k, 0, 0, rng)
            if pick is None:
                break
            u, v = _endpoints(work.n, pick)
            work = work.without_edge(u, v)
            removed += 1
        if count_good_copies(work, k) > 0:
            survived += 1
    cell = _freq_cell({"n": n, "k": k, "M": m_edges, "delta": delta,
                       "deleted": deletions}, survived, trials)
    return ExperimentReport(
        "resilience", {"n": n, "k": k, "M": m_edges, "delta": delta,
                       "trials": trials}, [cell], seed,
        notes=["non-exhaustive lower-bound probe: deletion adversary is "
               "heuristic"])


def _endpoints(n: int, eid: int) -> tuple[int, int]:
    from .graphs import edge_endpoints
    return edge_endpoints(n, eid)


# -- model transfer (Pittel) -----------------------------------------------------------


def model_transfer_check(property_fn: Callable[[Graph], bool], n: int, k: int,
                         m_edges: int, trials: int, seed: int) -> ExperimentReport:
    """Estimate Pr(H_M lacks the property) against 3*sqrt(M)*Pr(H_p lacks
    it) at p = M/N and report whether the inequality holds within the 95%
    intervals."""
    N = turan_edge_count(n, k)
    p = m_edges / N
    spec_m = SampleSpec("turan_m", n, k, m=m_edges, seed=seed, trials=trials)
    spec_p = SampleSpec("turan_p", n, k, p=p, seed=seed ^ 0x0f0f, trials=trials)
    fail_m = sum(1 for g in sample_board(spec_m) if not property_fn(g))
    fail_p = sum(1 for g in sample_board(spec_p) if not property_fn(g))
    lo_m, hi_m = wilson_interval(fail_m, trials)
    lo_p, hi_p = wilson_interval(fail_p, trials)
    factor = 3 * math.sqrt(m_edges)
    cells = [{
        "n": n, "k": k, "M": m_edges, "p": p,
        "fail_m": fail_m, "fail_p": fail_p, "trials": trials,
        "lhs_freq": fail_m / trials, "lhs_ci_lo": lo_m, "lhs_ci_hi": hi_m,
        "rhs_freq": factor * fail_p / trials,
        "rhs_ci_hi": factor * hi_p,
        "holds_within_ci": lo_m <= factor * hi_p,
    }]
    return ExperimentReport("pittel", {"n": n, "k": k, "M": m_edges,
                                       "trials": trials}, cells, seed)


# -- subgraph containment frequency ------------------------------------------------------


PROBE_VERTEX_CAP = 200


def contains_copy_edges(n: int, host_edges: list[tuple[int, int]],
                        pattern: Graph) -> bool:
    """Does the host edge set contain a (not necessarily induced) copy of
    the pattern?

    The host is first trimmed to vertices of sufficient degree and, when
    every pattern edge lies in a triangle, to edges in triangles; the
    remaining core goes to a mature subgraph-monomorphism matcher.  Hosts
    are plain edge lists, so containment probes run on boards larger than
    the bit-mask graph type supports.
    """
    import networkx as nx
    from .graphs import every_edge_in_triangle

    if pattern.num_edges == 0:
        return n >= pattern.n
    min_deg = pattern.min_degree()
    need_triangles = every_edge_in_triangle(pattern)
    adj: dict[int, set[int]] = {}
    for (u, v) in host_edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) < min_deg:
                for u in adj[v]:
                    adj[u].discard(v)
                del adj[v]
                changed = True
        if need_triangles:
            for v in list(adj):
                for u in list(adj[v]):
                    if u > v and not (adj[u] & adj[v]):
                        adj[u].discard(v)
                        adj[v].discard(u)
                        changed = True
    hg = nx.Graph()
    hg.add_edges_from((u, v) for v in adj for u in adj[v] if u < v)
    if hg.number_of_edges() < pattern.num_edges:
        return False
    pg = nx.Graph()
    pg.add_edges_from(pattern.edges())
    matcher = nx.algorithms.isomorphism.GraphMatcher(hg, pg)
    return matcher.subgraph_is_monomorphic()


def contains_copy(host: Graph, pattern: Graph) -> bool:
    return contains_copy_edges(host.n, list(host.edges()), pattern)


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _subgraph_worker(args) -> tuple[int, list[bool]]:
    pattern, n, p_grid, seed, trial = args
    pairs = _all_pairs(n)
    uniforms = trial_rng(seed, trial).random(len(pairs))
    row = []
    for p in p_grid:
        edges = [e for e, u in zip(pairs, uniforms) if u < p]
        row.append(contains_copy_edges(n, edges, pattern))
    return trial, row


def subgraph_frequency(pattern: Graph, n: int, p_grid: Sequence[float],
                       trials: int, seed: int, threads: int = 1
                       ) -> ExperimentReport:
    """Frequency of 'contains a copy of the pattern' on G(n, p) per p, with
    the appearance pivot n^(-1/m) annotated.  Hosts are sampled as plain
    edge lists, so n may exceed the bit-mask board cap (up to 200)."""
    if pattern.n > 8:
        raise ValueError("pattern capped at 8 vertices")
    if n > PROBE_VERTEX_CAP:
        raise ValueError(f"containment probes capped at {PROBE_VERTEX_CAP} vertices")
    from .graphs import max_density
    m = max_density(pattern)[0]
    pivot = n ** (-1 / float(m))
    grid = tuple(p_grid)
    wins = [0] * len(grid)
    jobs = [(pattern, n, grid, seed, t) for t in range(trials)]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = sorted(pool.map(_subgraph_worker, jobs))
    else:
        rows = [_subgraph_worker(j) for j in jobs]
    for _, row in rows:
        for ip, won in enumerate(row):
            wins[ip] += won
    cells = []
    for ip, p in enumerate(grid):
        cell = _freq_cell({"p": p}, wins[ip], trials)
        cell["pivot"] = pivot
        cells.append(cell)
    return ExperimentReport("subgraph-frequency",
                            {"n": n, "pattern_m": f"{m.numerator}/{m.denominator}",
                             "p_grid": list(grid), "trials": trials},
                            cells, seed)
