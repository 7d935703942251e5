"""Exact perfect-play resolution of Maker-Breaker game states.

The search is AND-OR minimax over win/loss with memoization.  Both
players' move lists are restricted to free edges of alive goal
embeddings: claiming any other edge is dominated (extra claims never
hurt in Maker-Breaker games, and an edge outside every alive embedding
can affect neither player's prospects), so the restriction preserves the
game value exactly.  Breaker moves are ordered by how many alive
embeddings they kill, Maker moves by how close a matching embedding is
to completion, with deterministic lexicographic tie-breaking.

On a fresh board the root moves are reduced modulo the board's
automorphism group.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .graphs import Graph, edge_endpoints, edge_index, max_density, triangles_of
from .engine import (BACKWARD, BREAKER, FORWARD, MAKER, GameState,
                     GoalSpec, Move, Status, new_game)
from . import iso

DEFAULT_NODE_CAP = 400_000_000
ORIENTED_EDGE_CAP = 18
UNORIENTED_EDGE_CAP = 24


class SolverCapExceeded(RuntimeError):
    """A configured resource cap was hit; results are never truncated silently."""


@dataclass
class SolveResult:
    winner: int                      # MAKER or BREAKER
    best_move: Optional[Move]
    nodes_visited: int
    table_hits: int
    elapsed: float

    @property
    def winner_name(self) -> str:
        return "Maker" if self.winner == MAKER else "Breaker"


def _other(player: int) -> int:
    return 1 - player


class _Arena:
    """Flat, fast mirror of a GameState for the search inner loop."""

    __slots__ = ("oriented", "E", "pat_edges", "pat_fwd", "pat_bwd", "pat_size",
                 "through_mask", "req_fwd_mask", "req_bwd_mask",
                 "match_fwd", "match_bwd", "maker_fwd", "maker_bwd", "breaker",
                 "alive", "progress", "mover", "claims_left", "handicap_spent",
                 "config", "memo", "nodes", "hits", "node_cap", "stack",
                 "maker_moves", "maker_move_cap", "full_mask")

    def __init__(self, state: GameState, node_cap: int,
                 maker_move_cap: Optional[int] = None):
        self.oriented = state.goal.oriented
        self.E = state.num_edges
        self.full_mask = (1 << self.E) - 1
        pats = state.patterns
        P = len(pats)
        self.pat_edges = [p.edges for p in pats]
        self.pat_fwd = [p.fwd for p in pats]
        self.pat_bwd = [p.bwd for p in pats]
        self.pat_size = [bin(p.edges).count("1") for p in pats]
        self.through_mask = [0] * self.E
        self.req_fwd_mask = [0] * self.E
        self.req_bwd_mask = [0] * self.E
        self.match_fwd: list[list[int]] = [[] for _ in range(self.E)]
        self.match_bwd: list[list[int]] = [[] for _ in range(self.E)]
        for idx, p in enumerate(pats):
            bitp = 1 << idx
            m = p.edges
            while m:
                low = m & -m
                e = low.bit_length() - 1
                m ^= low
                self.through_mask[e] |= bitp
                if self.oriented:
                    if p.fwd & low:
                        self.req_fwd_mask[e] |= bitp
                        self.match_fwd[e].append(idx)
                    else:
                        self.req_bwd_mask[e] |= bitp
                        self.match_bwd[e].append(idx)
                else:
                    self.req_fwd_mask[e] |= bitp
                    self.match_fwd[e].append(idx)
        self.maker_fwd = state.maker_fwd
        self.maker_bwd = state.maker_bwd
        self.breaker = state.breaker
        self.progress = [0] * P
        self.alive = 0
        for idx, p in enumerate(pats):
            if state.pattern_alive(p):
                self.alive |= 1 << idx
            if self.oriented:
                self.progress[idx] = (bin(p.fwd & self.maker_fwd).count("1")
                                      + bin(p.bwd & self.maker_bwd).count("1"))
            else:
                self.progress[idx] = bin(p.edges & self.maker_fwd).count("1")
        self.mover = state.mover
        self.claims_left = state.claims_left
        self.handicap_spent = state.handicap_spent
        self.config = state.config
        self.memo: dict[int, int] = {}
        self.nodes = 0
        self.hits = 0
        self.node_cap = node_cap
        self.stack: list[tuple[int, int, int, int, bool, int]] = []
        self.maker_moves = 0
        self.maker_move_cap = maker_move_cap

    # -- state transitions ----------------------------------------------------

    def key(self) -> int:
        E = self.E
        k = self.maker_fwd | self.maker_bwd << E | self.breaker << 2 * E
        k |= (self.mover | self.claims_left << 1 | self.handicap_spent << 5) << 3 * E
        if self.maker_move_cap is not None:
            k |= self.maker_moves << (3 * E + 6)
        return k

    def status_now(self) -> Optional[int]:
        """Winner if the position is already decided, else None."""
        a = self.alive
        while a:
            low = a & -a
            idx = low.bit_length() - 1
            a ^= low
            if self.progress[idx] == self.pat_size[idx]:
                return MAKER
        if self.alive == 0:
            return BREAKER
        if self.maker_move_cap is not None and self.mover == MAKER \
                and self.maker_moves >= self.maker_move_cap:
            return BREAKER
        return None

    def apply(self, e: int, orient: int) -> Optional[int]:
        """Claim local edge e for the current mover; orient is FORWARD/BACKWARD
        for oriented Maker moves and ignored otherwise.  Returns the winner
        if the move decides the game, else None."""
        bit = 1 << e
        self.stack.append((self.alive, self.mover, self.claims_left,
                           self.handicap_spent, e, self.maker_moves))
        terminal: Optional[int] = None
        if self.mover == MAKER:
            self.maker_moves += 1
            if self.oriented and orient == BACKWARD:
                self.maker_bwd |= bit
                self.alive &= ~self.req_fwd_mask[e]
                matched = self.match_bwd[e]
            else:
                self.maker_fwd |= bit
                if self.oriented:
                    self.alive &= ~self.req_bwd_mask[e]
                matched = self.match_fwd[e]
            alive = self.alive
            progress = self.progress
            size = self.pat_size
            for idx in matched:
                progress[idx] += 1
                if progress[idx] == size[idx] and alive >> idx & 1:
                    terminal = MAKER
            if terminal is None and self.maker_move_cap is not None \
                    and self.maker_moves >= self.maker_move_cap:
                terminal = BREAKER
        else:
            self.breaker |= bit
            self.alive &= ~self.through_mask[e]
            if self.alive == 0:
                terminal = BREAKER
        self._advance()
        return terminal

    def _advance(self) -> None:
        self.claims_left -= 1
        if self.claims_left == 0:
            if self.mover == MAKER:
                self.handicap_spent = True
                self.mover = BREAKER
                self.claims_left = self.config.breaker_bias
            else:
                self.mover = MAKER
                self.claims_left = self.config.maker_bias
                if not self.handicap_spent:
                    self.claims_left += self.config.handicap

    def undo(self) -> None:
        alive, mover, claims, hand, e, mm = self.stack.pop()
        bit = 1 << e
        if mover == MAKER:
            if self.maker_fwd & bit:
                for idx in self.match_fwd[e]:
                    self.progress[idx] -= 1
            else:
                for idx in self.match_bwd[e]:
                    self.progress[idx] -= 1
            self.maker_fwd &= ~bit
            self.maker_bwd &= ~bit
        else:
            self.breaker &= ~bit
        self.alive = alive
        self.mover = mover
        self.claims_left = claims
        self.handicap_spent = hand
        self.maker_moves = mm

    # -- candidate generation ---------------------------------------------------

    def alive_free_edges(self) -> int:
        edges = 0
        a = self.alive
        pe = self.pat_edges
        while a:
            low = a & -a
            edges |= pe[low.bit_length() - 1]
            a ^= low
        return edges & ~(self.maker_fwd | self.maker_bwd | self.breaker)

    def candidates(self) -> list[tuple[int, int, int]]:
        """(score, edge, orientation) sorted best-first, deterministic."""
        free = self.alive_free_edges()
        out = []
        if self.mover == BREAKER:
            f = free
            while f:
                low = f & -f
                e = low.bit_length() - 1
                f ^= low
                kills = bin(self.alive & self.through_mask[e]).count("1")
                out.append((kills, e, FORWARD))
            out.sort(key=lambda t: (-t[0], t[1]))
        else:
            progress = self.progress
            f = free
            while f:
                low = f & -f
                e = low.bit_length() - 1
                f ^= low
                m = self.alive & self.req_fwd_mask[e]
                if m:
                    best = 0
                    for idx in self.match_fwd[e]:
                        if m >> idx & 1 and progress[idx] > best:
                            best = progress[idx]
                    out.append((best, e, FORWARD))
                if self.oriented:
                    m = self.alive & self.req_bwd_mask[e]
                    if m:
                        best = 0
                        for idx in self.match_bwd[e]:
                            if m >> idx & 1 and progress[idx] > best:
                                best = progress[idx]
                        out.append((best, e, BACKWARD))
            out.sort(key=lambda t: (-t[0], t[1], t[2]))
        return out

    # -- the search ------------------------------------------------------------

    def search(self) -> int:
        key = self.key()
        memo = self.memo
        cached = memo.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise SolverCapExceeded(f"node cap {self.node_cap} exceeded")
        mover = self.mover
        result = _other(mover)
        for _, e, orient in self.candidates():
            terminal = self.apply(e, orient)
            child = terminal if terminal is not None else self.search()
            self.undo()
            if child == mover:
                result = mover
                break
        memo[key] = result
        return result


def _edge_caps_ok(state: GameState, edge_cap: Optional[int] = None) -> None:
    cap = edge_cap if edge_cap is not None else \
        (ORIENTED_EDGE_CAP if state.goal.oriented else UNORIENTED_EDGE_CAP)
    if state.num_edges > cap:
        raise SolverCapExceeded(
            f"board has {state.num_edges} edges, above the "
            f"{'oriented' if state.goal.oriented else 'unoriented'} cap {cap}")


def _partition_respecting(board: Graph, perm: Sequence[int]) -> bool:
    part = board.partition
    if part is None:
        return True
    mapping: dict[int, int] = {}
    for v in range(board.n):
        c = part[v]
        img = part[perm[v]]
        if mapping.setdefault(c, img) != img:
            return False
    return len(set(mapping.values())) == len(mapping)


def _move_image(board: Graph, move: tuple[int, int], perm: Sequence[int]) -> tuple[int, int]:
    e, orient = move
    u, v = edge_endpoints(board.n, e)
    a, b = perm[u], perm[v]
    if a < b:
        return edge_index(board.n, a, b), orient
    flipped = orient if orient is None else (FORWARD if orient == BACKWARD else BACKWARD)
    return edge_index(board.n, b, a), flipped


def _root_orbit_reps(state: GameState) -> Optional[set[tuple[int, int]]]:
    """Minimal-image representatives of (edge, orientation) root moves, or
    None when symmetry reduction does not apply (non-fresh position or
    trivial group)."""
    board = state.board
    if state.history or state.maker_fwd or state.maker_bwd or state.breaker:
        return None
    if board.n > iso.ISO_VERTEX_CAP:
        return None
    autos = [p for p in iso.automorphism_group(board.drop_partition())
             if _partition_respecting(board, p)]
    if len(autos) <= 1:
        return None
    reps: set[tuple[int, int]] = set()
    orients = (FORWARD, BACKWARD) if state.goal.oriented else (FORWARD,)
    for eid in state.edge_list:
        for orient in orients:
            image = min(_move_image(board, (eid, orient), p) for p in autos)
            reps.add(image)
    return reps


def solve(state: GameState,
          node_cap: int = DEFAULT_NODE_CAP,
          use_symmetry: bool = True,
          maker_move_cap: Optional[int] = None,
          shared_memo: Optional[dict[int, int]] = None,
          edge_cap: Optional[int] = None) -> SolveResult:
    """Exact winner under optimal play from `state`, with a best move for
    the mover when the mover wins.

    `shared_memo` lets repeated solves on the same (board, goal, config)
    share one transposition table; keys encode full position and ledger.
    `edge_cap` overrides the default board-size guard.
    """
    _edge_caps_ok(state, edge_cap)
    start = time.perf_counter()
    arena = _Arena(state, node_cap, maker_move_cap)
    if shared_memo is not None:
        arena.memo = shared_memo
    decided = arena.status_now()
    if decided is None and state.free_mask == 0:
        decided = BREAKER
    if decided is not None:
        return SolveResult(decided, None, 0, 0, time.perf_counter() - start)

    mover = arena.mover
    reps = _root_orbit_reps(state) if use_symmetry else None
    winner = _other(mover)
    best: Optional[Move] = None
    for _, e, orient in arena.candidates():
        eid = state.edge_list[e]
        if reps is not None and (eid, orient) not in reps:
            continue
        terminal = arena.apply(e, orient)
        child = terminal if terminal is not None else arena.search()
        arena.undo()
        if child == mover:
            winner = mover
            best = Move(eid, orient if state.goal.oriented and mover == MAKER else None)
            break
    return SolveResult(winner, best, arena.nodes, arena.hits,
                       time.perf_counter() - start)


class CachedSolver:
    """Repeated exact solves for one (board, goal, config) with a shared
    transposition table; cheap enough to call from scripts per move."""

    def __init__(self, node_cap: int = DEFAULT_NODE_CAP):
        self.memo: dict[tuple, dict[int, int]] = {}
        self.node_cap = node_cap

    def solve(self, state: GameState,
              maker_move_cap: Optional[int] = None) -> SolveResult:
        sig = (state.board.n, state.board.edge_mask, state.board.partition,
               state.goal, state.config, maker_move_cap)
        table = self.memo.setdefault(sig, {})
        return solve(state, node_cap=self.node_cap, use_symmetry=False,
                     maker_move_cap=maker_move_cap, shared_memo=table)

    def winning_move(self, state: GameState) -> Optional[Move]:
        res = self.solve(state)
        return res.best_move if res.winner == state.mover else None


def winning_move(state: GameState,
                 node_cap: int = DEFAULT_NODE_CAP) -> Optional[Move]:
    """A winning move for the mover, or None if the mover is lost."""
    res = solve(state, node_cap=node_cap, use_symmetry=False)
    return res.best_move if res.winner == state.mover else None


# -- strategy trees ------------------------------------------------------------


EXTRACT_EDGE_CAP = 14


@dataclass
class StrategyTree:
    """Winning reply book for one player, total over every legal deviation
    of the opponent, stored as a DAG keyed by position."""
    player: int
    root_key: tuple
    replies: dict[tuple, Move] = field(default_factory=dict)

    def reply_for(self, state: GameState) -> Move:
        key = state.memo_key()
        if key not in self.replies:
            raise KeyError(f"position {state.code()} not covered by strategy")
        return self.replies[key]

    def as_script(self) -> Callable[[GameState], Move]:
        return self.reply_for

    def __len__(self) -> int:
        return len(self.replies)


def extract_strategy(state: GameState, player: int,
                     node_cap: int = DEFAULT_NODE_CAP,
                     maker_move_cap: Optional[int] = None) -> StrategyTree:
    """Build the winning player's total reply book by exhaustive walk over
    all legal opponent deviations."""
    if state.num_edges > EXTRACT_EDGE_CAP:
        raise SolverCapExceeded(
            f"strategy extraction capped at {EXTRACT_EDGE_CAP} edges")
    base = solve(state, node_cap=node_cap, use_symmetry=False,
                 maker_move_cap=maker_move_cap)
    if base.winner != player:
        raise ValueError("requested player is not the winner here")
    work = state.copy()
    arena = _Arena(work, node_cap, maker_move_cap)
    tree = StrategyTree(player, state.memo_key())
    seen: set[tuple] = set()

    def walk() -> None:
        status = work.goal_status()
        if status is not Status.ONGOING:
            won = status is Status.MAKER_WON
            assert won == (player == MAKER), "strategy walk reached a losing leaf"
            return
        key = work.memo_key()
        if key in seen:
            return
        seen.add(key)
        if work.mover == player:
            move = _winning_move_on(work, arena)
            if move is None:
                raise AssertionError("winner has no winning move in extraction")
            tree.replies[key] = move
            _apply_both(work, arena, move)
            walk()
            _undo_both(work, arena)
        else:
            for move in work.legal_moves():
                _apply_both(work, arena, move)
                walk()
                _undo_both(work, arena)

    walk()
    return tree


def _apply_both(state: GameState, arena: _Arena, move: Move) -> None:
    state.apply_move(move)
    e = state.edge_pos[move.edge]
    orient = move.orientation if move.orientation is not None else FORWARD
    arena.apply(e, orient)


def _undo_both(state: GameState, arena: _Arena) -> None:
    state.undo()
    arena.undo()


def _winning_move_on(state: GameState, arena: _Arena) -> Optional[Move]:
    """Winning move for the mover using the shared arena memo; falls back
    to dominated moves never (candidates cover winning options)."""
    mover = arena.mover
    for _, e, orient in arena.candidates():
        terminal = arena.apply(e, orient)
        child = terminal if terminal is not None else arena.search()
        arena.undo()
        if child == mover:
            oriented = state.goal.oriented and mover == MAKER
            return Move(state.edge_list[e], orient if oriented else None)
    return None


# -- duels -----------------------------------------------------------------------


@dataclass
class DuelResult:
    always_wins: bool
    counterexample: Optional[list[tuple[int, Move]]]
    nodes: int

    def __bool__(self) -> bool:
        return self.always_wins


DUEL_NODE_CAP = 80_000_000


def duel(state: GameState, script: Callable[[GameState], Move],
         scripted_player: int,
         restrict_adversary: bool = True,
         node_cap: int = DUEL_NODE_CAP,
         maker_move_cap: Optional[int] = None,
         memo_key: Optional[Callable[[GameState], tuple]] = None) -> DuelResult:
    """Follow `script` for one player and branch over every adversary reply;
    AlwaysWins iff every branch ends in the scripted player's win.

    With restrict_adversary the adversary skips dominated moves (edges in
    no alive embedding, or orientations matching no alive embedding),
    which cannot change the verdict: if any adversary strategy beats the
    script, an optimal one does, and optimal play never needs dominated
    moves.

    `memo_key`, when given, must digest everything the script's choices
    depend on (masks, ledger, and whatever it reads from the history);
    positions whose key already proved winning are then skipped.  Only
    winning outcomes are cached, so reported counterexamples are always
    complete histories.
    """
    work = state.copy()
    arena = _Arena(work, node_cap, maker_move_cap)
    nodes = 0
    proven: set[tuple] = set()

    def dfs(terminal: Optional[int]) -> Optional[list[tuple[int, Move]]]:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SolverCapExceeded(f"duel node cap {node_cap} exceeded")
        decided = terminal if terminal is not None else arena.status_now()
        if decided is not None:
            if decided == scripted_player:
                return None
            return list(work.history)
        key = memo_key(work) if memo_key is not None else None
        if key is not None and key in proven:
            return None
        if work.mover == scripted_player:
            move = script(work)
            try:
                work.apply_move(move)
            except (ValueError, TypeError) as exc:
                raise ValueError(
                    f"script returned illegal move {move} after "
                    f"{work.history}: {exc}") from exc
            sub = arena.apply(work.edge_pos[move.edge],
                              move.orientation if move.orientation is not None else FORWARD)
            bad = dfs(sub)
            work.undo()
            arena.undo()
        else:
            bad = None
            if restrict_adversary:
                moves = [(state.edge_list[e], orient)
                         for _, e, orient in arena.candidates()]
                oriented = work.goal.oriented and work.mover == MAKER
                for (eid, orient) in moves:
                    mv = Move(eid, orient if oriented else None)
                    work.apply_move(mv)
                    sub = arena.apply(work.edge_pos[eid], orient)
                    bad = dfs(sub)
                    work.undo()
                    arena.undo()
                    if bad is not None:
                        break
            else:
                for mv in work.legal_moves():
                    work.apply_move(mv)
                    sub = arena.apply(work.edge_pos[mv.edge],
                                      mv.orientation if mv.orientation is not None else FORWARD)
                    bad = dfs(sub)
                    work.undo()
                    arena.undo()
                    if bad is not None:
                        break
        if bad is None and key is not None:
            proven.add(key)
        return bad

    counter = dfs(None)
    return DuelResult(counter is None, counter, nodes)


# -- minimum-density Maker-win search ---------------------------------------------


@dataclass
class DensitySearchReport:
    goal: GoalSpec
    maker_win_classes: list[Graph]
    min_density: Optional[Fraction]
    witness: Optional[Graph]
    witness_cyclic_orientation: Optional[dict[int, int]]
    boards_examined: int


def all_triangles_cyclic_orientation(g: Graph) -> Optional[dict[int, int]]:
    """An orientation (edge id -> FORWARD/BACKWARD) making every triangle a
    directed 3-cycle, found by backtracking; None if none exists."""
    tris = triangles_of(g)
    edge_ids = sorted(g.edge_ids())
    tri_edges = []
    for (a, b, c) in tris:
        tri_edges.append(tuple(edge_index(g.n, x, y)
                               for (x, y) in ((a, b), (b, c), (a, c))))
    assign: dict[int, int] = {}

    def cyclic_ok(t: tuple[int, int, int]) -> Optional[bool]:
        vals = [assign.get(e) for e in t]
        if any(v is None for v in vals):
            return None
        # edges (a,b),(b,c),(a,c) with a<b<c: cyclic iff orientation pattern
        # is a->b, b->c, c->a  (F,F,B)  or  b->a, c->b, a->c  (B,B,F)
        return tuple(vals) in ((FORWARD, FORWARD, BACKWARD),
                               (BACKWARD, BACKWARD, FORWARD))

    def backtrack(i: int) -> bool:
        if i == len(edge_ids):
            return True
        e = edge_ids[i]
        for val in (FORWARD, BACKWARD):
            assign[e] = val
            ok = True
            for t in tri_edges:
                if e in t and cyclic_ok(t) is False:
                    ok = False
                    break
            if ok and backtrack(i + 1):
                return True
            del assign[e]
        return False

    if backtrack(0):
        return dict(assign)
    return None


def _is_collection_graph(g: Graph) -> bool:
    from .triangle_collections import is_collection
    return is_collection(g)


def min_density_maker_win_search(goal: GoalSpec, v_max: int,
                                 edge_range: Optional[tuple[int, int]] = None,
                                 density_cap: Optional[Fraction] = None,
                                 density_strict: bool = False,
                                 min_degree: Optional[int] = None,
                                 node_cap: int = DEFAULT_NODE_CAP,
                                 progress: Optional[Callable[[Graph, int], None]] = None,
                                 ) -> DensitySearchReport:
    """Enumerate collection boards up to v_max vertices, solve the goal on
    each, and report all Maker-win classes with the minimum maximum-density
    and a witness.

    Restricting to collections is exact: Maker wins on a board iff she wins
    on some collection subgraph of it, and that subgraph's maximum density
    is no larger.

    For the cyclic-triangle goal the per-board verdict uses two exact
    shortcuts before a direct solve: a board whose undirected triangle game
    is a Breaker win is a Breaker win here too, and an undirected Maker win
    that admits an all-triangles-cyclic orientation is a Maker win (claim
    the undirected strategy's edges with the fixed orientation; any
    completed triangle is then cyclic).
    """
    if goal.oriented and v_max > 8:
        raise SolverCapExceeded("oriented-goal search capped at 8 vertices")
    if not goal.oriented and v_max > 6:
        raise SolverCapExceeded("clique-goal search capped at 6 vertices")
    is_tc = goal == GoalSpec.cyclic_triangle()
    wins: list[Graph] = []
    best: Optional[Fraction] = None
    witness: Optional[Graph] = None
    witness_orient: Optional[dict[int, int]] = None
    examined = 0

    def accept(g: Graph) -> bool:
        if not _is_collection_graph(g):
            return False
        if density_cap is not None and density_strict \
                and g.num_edges and max_density(g)[0] >= density_cap:
            return False
        return True

    for n in range(3, v_max + 1):
        if edge_range is None:
            e_lo, e_hi = 3, n * (n - 1) // 2
        else:
            e_lo, e_hi = edge_range
        for g in iso.enumerate_nonisomorphic(
                n, edges=(e_lo, e_hi), min_degree=max(2, min_degree or 2),
                every_edge_in_triangle=True, density_cap=density_cap,
                extra_final=accept):
            if g.num_edges == 0:
                continue
            examined += 1
            if progress is not None:
                progress(g, examined)
            orient = None
            if is_tc:
                und = solve(new_game(g, GoalSpec.clique(3)), node_cap=node_cap)
                if und.winner == BREAKER:
                    continue
                orient = all_triangles_cyclic_orientation(g)
                if orient is None:
                    res = solve(new_game(g, goal), node_cap=node_cap)
                    if res.winner == BREAKER:
                        continue
            else:
                res = solve(new_game(g, goal), node_cap=node_cap)
                if res.winner == BREAKER:
                    continue
            wins.append(g)
            m, _ = max_density(g)
            if best is None or m < best:
                best, witness = m, g
                witness_orient = orient
    return DensitySearchReport(goal, wins, best, witness, witness_orient, examined)
