"""Rules of (a:b) Maker-Breaker games on graph boards.

Supports plain clique goals, good-clique goals on partitioned (Turan)
boards, and tournament goals where Maker orients each edge she claims.
A goal is compiled against a board into a list of *patterns*: bit masks
over the board's edge list recording which edges an embedding of the
goal uses and, for tournament goals, which orientation each edge needs.
Win/alive checks are then a handful of integer operations per pattern.

Orientation convention: a board edge {u, v} with u < v claimed "forward"
points u -> v, "backward" points v -> u.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from .graphs import Graph, cliques_of, edge_endpoints

FORWARD = 0
BACKWARD = 1

MAKER = 0
BREAKER = 1


class Status(Enum):
    MAKER_WON = "MakerWon"
    BREAKER_WON_EARLY = "BreakerWonEarly"
    BREAKER_WON_FULL = "BreakerWonFull"
    ONGOING = "Ongoing"


@dataclass(frozen=True)
class GoalSpec:
    """Target structure: k-clique, good k-clique, or an oriented tournament.

    For tournaments, `arcs` is a complete asymmetric orientation of the
    goal's k vertices given as ordered pairs (i, j) meaning i -> j.
    """
    kind: str                                # "clique" | "good_clique" | "tournament"
    k: int
    arcs: Optional[frozenset[tuple[int, int]]] = None

    def __post_init__(self):
        if self.kind not in ("clique", "good_clique", "tournament"):
            raise ValueError(f"unknown goal kind {self.kind!r}")
        if not 3 <= self.k <= 8:
            raise ValueError("goal order must be between 3 and 8")
        if self.kind == "tournament":
            if self.arcs is None:
                raise ValueError("tournament goal needs an arc set")
            for i in range(self.k):
                for j in range(i + 1, self.k):
                    if ((i, j) in self.arcs) == ((j, i) in self.arcs):
                        raise ValueError("arcs must orient each pair exactly once")
            if len(self.arcs) != self.k * (self.k - 1) // 2:
                raise ValueError("arc set has pairs outside the goal vertices")
        elif self.arcs is not None:
            raise ValueError("only tournament goals carry arcs")

    @property
    def oriented(self) -> bool:
        return self.kind == "tournament"

    @staticmethod
    def clique(k: int) -> "GoalSpec":
        return GoalSpec("clique", k)

    @staticmethod
    def good_clique(k: int) -> "GoalSpec":
        return GoalSpec("good_clique", k)

    @staticmethod
    def tournament(arcs) -> "GoalSpec":
        arcs = frozenset(arcs)
        k = max(max(a, b) for (a, b) in arcs) + 1
        return GoalSpec("tournament", k, arcs)

    @staticmethod
    def cyclic_triangle() -> "GoalSpec":
        return GoalSpec.tournament([(0, 1), (1, 2), (2, 0)])

    @staticmethod
    def acyclic_triangle() -> "GoalSpec":
        return GoalSpec.tournament([(0, 1), (0, 2), (1, 2)])

    def describe(self) -> str:
        if self.kind == "clique":
            return f"clique:{self.k}"
        if self.kind == "good_clique":
            return f"good-clique:{self.k}"
        if self == GoalSpec.cyclic_triangle():
            return "tc"
        if self == GoalSpec.acyclic_triangle():
            return "ta"
        return "tournament:" + ",".join(f"{i}>{j}" for (i, j) in sorted(self.arcs))


@dataclass(frozen=True)
class GameConfig:
    maker_bias: int = 1
    breaker_bias: int = 1
    handicap: int = 0          # extra first-round Maker claims (0 or 1)
    maker_moves_first: bool = True

    def __post_init__(self):
        if self.maker_bias < 1 or self.breaker_bias < 1:
            raise ValueError("biases must be at least 1")
        if self.handicap not in (0, 1):
            raise ValueError("handicap must be 0 or 1")


@dataclass(frozen=True)
class Move:
    edge: int                            # global pair slot on the board's vertex set
    orientation: Optional[int] = None    # FORWARD/BACKWARD for tournament goals

    def endpoints(self, n: int) -> tuple[int, int]:
        return edge_endpoints(n, self.edge)


@dataclass(frozen=True)
class Pattern:
    """One embedding of the goal: edge mask plus required orientations,
    all as masks over the board's local edge indices."""
    edges: int
    fwd: int
    bwd: int
    vertices: tuple[int, ...]


def compile_patterns(board: Graph, goal: GoalSpec) -> list[Pattern]:
    """All embeddings of the goal into the board, deduplicated."""
    local = {eid: i for i, eid in enumerate(board.edge_ids())}

    def local_bit(u: int, v: int) -> int:
        from .graphs import edge_index
        return 1 << local[edge_index(board.n, u, v)]

    patterns: dict[tuple[int, int, int], Pattern] = {}
    if goal.kind in ("clique", "good_clique"):
        if goal.kind == "good_clique" and board.partition is None:
            raise ValueError("good-clique goal needs a partitioned board")
        for clique in cliques_of(board, goal.k):
            if goal.kind == "good_clique":
                classes = [board.partition[v] for v in clique]
                if len(set(classes)) != goal.k:
                    continue
            mask = 0
            for (u, v) in itertools.combinations(clique, 2):
                mask |= local_bit(u, v)
            patterns[(mask, 0, 0)] = Pattern(mask, 0, 0, clique)
    else:
        assert goal.arcs is not None
        for clique in cliques_of(board, goal.k):
            for images in itertools.permutations(clique):
                mask = fwd = bwd = 0
                for (i, j) in goal.arcs:
                    a, b = images[i], images[j]   # arc a -> b on the board
                    bit = local_bit(a, b)
                    mask |= bit
                    if a < b:
                        fwd |= bit
                    else:
                        bwd |= bit
                key = (mask, fwd, bwd)
                if key not in patterns:
                    patterns[key] = Pattern(mask, fwd, bwd, clique)
    return list(patterns.values())


class GameState:
    """Mutable game position with an undo stack.

    Maker's claims live in `maker_fwd` / `maker_bwd` (local edge masks);
    for unoriented goals all Maker edges sit in `maker_fwd`.  `history`
    lists (player, Move) in play order and is available to scripts.
    """

    def __init__(self, board: Graph, goal: GoalSpec, config: GameConfig):
        if goal.kind == "good_clique" and board.partition is None:
            raise ValueError("good-clique goal needs a partitioned board")
        if config.maker_bias != 1:
            raise ValueError("Maker bias above 1 is not supported")
        self.board = board
        self.goal = goal
        self.config = config
        self.edge_list: list[int] = sorted(board.edge_ids())
        self.edge_pos: dict[int, int] = {eid: i for i, eid in enumerate(self.edge_list)}
        self.num_edges = len(self.edge_list)
        self.patterns = compile_patterns(board, goal)
        self.maker_fwd = 0
        self.maker_bwd = 0
        self.breaker = 0
        if config.maker_moves_first:
            self.mover = MAKER
            self.claims_left = min(1 + config.handicap, self.num_edges)
        else:
            self.mover = BREAKER
            self.claims_left = min(config.breaker_bias, self.num_edges)
        # spent means no extra first-round claims are still pending
        self.handicap_spent = not config.maker_moves_first or config.handicap == 0
        self.history: list[tuple[int, Move]] = []
        self._undo: list[tuple[int, int, bool]] = []

    # -- mask helpers -------------------------------------------------------

    @property
    def maker_all(self) -> int:
        return self.maker_fwd | self.maker_bwd

    @property
    def free_mask(self) -> int:
        full = (1 << self.num_edges) - 1
        return full & ~(self.maker_all | self.breaker)

    def edge_state(self, eid: int) -> str:
        bit = 1 << self.edge_pos[eid]
        if self.breaker & bit:
            return "breaker"
        if self.maker_fwd & bit:
            return "maker" if not self.goal.oriented else "maker-forward"
        if self.maker_bwd & bit:
            return "maker-backward"
        return "free"

    # -- status ---------------------------------------------------------------

    def pattern_won(self, p: Pattern) -> bool:
        return (p.edges & ~self.maker_all) == 0 \
            and (p.fwd & ~self.maker_fwd) == 0 \
            and (p.bwd & ~self.maker_bwd) == 0

    def pattern_alive(self, p: Pattern) -> bool:
        return (p.edges & self.breaker) == 0 \
            and (p.fwd & self.maker_bwd) == 0 \
            and (p.bwd & self.maker_fwd) == 0

    def goal_status(self) -> Status:
        for p in self.patterns:
            if self.pattern_won(p):
                return Status.MAKER_WON
        if self.free_mask == 0:
            return Status.BREAKER_WON_FULL
        if not any(self.pattern_alive(p) for p in self.patterns):
            return Status.BREAKER_WON_EARLY
        return Status.ONGOING

    def is_over(self) -> bool:
        return self.goal_status() is not Status.ONGOING

    # -- moves ------------------------------------------------------------------

    def legal_moves(self) -> list[Move]:
        if self.is_over():
            raise ValueError("game is over")
        moves = []
        free = self.free_mask
        for pos, eid in enumerate(self.edge_list):
            if not free >> pos & 1:
                continue
            if self.goal.oriented and self.mover == MAKER:
                moves.append(Move(eid, FORWARD))
                moves.append(Move(eid, BACKWARD))
            else:
                moves.append(Move(eid))
        return moves

    def _check_move(self, move: Move) -> int:
        pos = self.edge_pos.get(move.edge)
        if pos is None:
            raise ValueError(f"edge {move.edge} is not on the board")
        bit = 1 << pos
        if (self.maker_all | self.breaker) & bit:
            raise ValueError(f"edge {move.edge} is already claimed")
        if self.mover == MAKER and self.goal.oriented:
            if move.orientation not in (FORWARD, BACKWARD):
                raise ValueError("tournament goals require an orientation on Maker moves")
        elif move.orientation is not None:
            raise ValueError("this move must not carry an orientation")
        return bit

    def apply_move(self, move: Move) -> None:
        bit = self._check_move(move)
        self._undo.append((self.mover, self.claims_left, self.handicap_spent))
        if self.mover == MAKER:
            if move.orientation == BACKWARD:
                self.maker_bwd |= bit
            else:
                self.maker_fwd |= bit
        else:
            self.breaker |= bit
        self.history.append((self.mover, move))
        self._advance_turn()

    def _advance_turn(self) -> None:
        self.claims_left -= 1
        free = self.free_mask
        if free == 0:
            self.claims_left = 0
            return
        if self.claims_left == 0:
            if self.mover == MAKER:
                self.handicap_spent = True
                self.mover = BREAKER
                quota = self.config.breaker_bias
            else:
                self.mover = MAKER
                quota = self.config.maker_bias
                if not self.handicap_spent:
                    quota += self.config.handicap
            self.claims_left = min(quota, bin(free).count("1"))

    def undo(self) -> Move:
        if not self.history:
            raise ValueError("nothing to undo")
        mover, move = self.history.pop()
        self.mover, self.claims_left, self.handicap_spent = self._undo.pop()
        bit = 1 << self.edge_pos[move.edge]
        self.maker_fwd &= ~bit
        self.maker_bwd &= ~bit
        self.breaker &= ~bit
        return move

    def copy(self) -> "GameState":
        clone = object.__new__(GameState)
        clone.board = self.board
        clone.goal = self.goal
        clone.config = self.config
        clone.edge_list = self.edge_list
        clone.edge_pos = self.edge_pos
        clone.num_edges = self.num_edges
        clone.patterns = self.patterns
        clone.maker_fwd = self.maker_fwd
        clone.maker_bwd = self.maker_bwd
        clone.breaker = self.breaker
        clone.mover = self.mover
        clone.claims_left = self.claims_left
        clone.handicap_spent = self.handicap_spent
        clone.history = list(self.history)
        clone._undo = list(self._undo)
        return clone

    # -- serialization ------------------------------------------------------------

    def code(self) -> str:
        """Hex of per-edge 2-bit codes (00 free, 01 breaker, 10 maker-forward,
        11 maker-backward) in board edge order, plus the turn ledger."""
        value = 0
        for pos in range(self.num_edges - 1, -1, -1):
            bit = 1 << pos
            if self.breaker & bit:
                code = 1
            elif self.maker_bwd & bit:
                code = 3
            elif self.maker_fwd & bit:
                code = 2
            else:
                code = 0
            value = value << 2 | code
        digits = max(1, (2 * self.num_edges + 3) // 4)
        mover = "M" if self.mover == MAKER else "B"
        return f"{value:0{digits}x}:{mover}{self.claims_left}{'h' if not self.handicap_spent else ''}"

    def memo_key(self) -> tuple[int, int, int, int, int, bool]:
        return (self.maker_fwd, self.maker_bwd, self.breaker,
                self.mover, self.claims_left, self.handicap_spent)

    def __repr__(self) -> str:
        return (f"GameState({self.board!r}, {self.goal.describe()}, "
                f"mover={'M' if self.mover == MAKER else 'B'}, code={self.code()})")


def new_game(board: Graph, goal: GoalSpec,
             config: Optional[GameConfig] = None) -> GameState:
    return GameState(board, goal, config or GameConfig())


def position_from_masks(board: Graph, goal: GoalSpec, config: GameConfig,
                        maker_fwd_edges: Iterator[int] | list[int],
                        maker_bwd_edges: Iterator[int] | list[int],
                        breaker_edges: Iterator[int] | list[int],
                        mover: int, claims_left: int = 1,
                        handicap_spent: bool = True) -> GameState:
    """A game position with the given claims and ledger, no history.

    Used to project a live game onto an auxiliary board (for example
    forgetting orientations, or restricting to cross edges).
    """
    state = GameState(board, goal, config)
    for eid in maker_fwd_edges:
        state.maker_fwd |= 1 << state.edge_pos[eid]
    for eid in maker_bwd_edges:
        state.maker_bwd |= 1 << state.edge_pos[eid]
    for eid in breaker_edges:
        state.breaker |= 1 << state.edge_pos[eid]
    if state.maker_fwd & state.maker_bwd or (state.maker_all & state.breaker):
        raise ValueError("conflicting edge claims")
    state.mover = mover
    state.claims_left = claims_left
    state.handicap_spent = handicap_spent
    return state
