"""Exact solver: known verdicts, oracle cross-checks, strategies, duels."""

import random
from fractions import Fraction

import pytest

from mbt.graphs import (Graph, complete_graph, k5_minus, pair_table,
                        wheel_graph)
from mbt.engine import (BREAKER, MAKER, GameConfig, GoalSpec, Move,
                        new_game)
from mbt import iso
from mbt import solver as slv
from reference_solver import reference_winner

TC = GoalSpec.cyclic_triangle()
TA = GoalSpec.acyclic_triangle()
K3 = GoalSpec.clique(3)


def test_k3_triangle_breaker():
    res = slv.solve(new_game(complete_graph(3), K3))
    assert res.winner == BREAKER and res.best_move is None


def test_k5_triangle_maker():
    res = slv.solve(new_game(complete_graph(5), K3))
    assert res.winner == MAKER and res.best_move is not None


def test_k4_tc_handicap_breaker():
    res = slv.solve(new_game(complete_graph(4), TC, GameConfig(handicap=1)))
    assert res.winner == BREAKER


def test_k5_minus_tc_breaker():
    res = slv.solve(new_game(k5_minus(), TC))
    assert res.winner == BREAKER


def test_k5_minus_triangle_maker():
    assert slv.solve(new_game(k5_minus(), K3)).winner == MAKER


def test_wheels_triangle_breaker():
    for k in (3, 4, 5, 6):
        assert slv.solve(new_game(wheel_graph(k), K3)).winner == BREAKER


def test_solved_state_already_decided():
    state = new_game(complete_graph(3), K3)
    state.apply_move(Move(0))
    state.apply_move(Move(1))
    res = slv.solve(state)
    assert res.winner == BREAKER and res.nodes_visited == 0


def test_matches_reference_on_random_boards():
    rng = random.Random(77)
    for _ in range(24):
        n = rng.randint(3, 6)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        g = Graph.from_edges(n, pairs[:rng.randint(3, 8)])
        goal = rng.choice([K3, TC, TA])
        config = GameConfig(breaker_bias=rng.choice([1, 1, 2]),
                            handicap=rng.choice([0, 1]))
        state = new_game(g, goal, config)
        assert slv.solve(state).winner == reference_winner(state), \
            f"{g!r} {goal.describe()} {config}"


def test_matches_reference_mid_game():
    rng = random.Random(78)
    for _ in range(10):
        g = Graph.from_edges(5, random.Random(rng.random()).sample(
            list(pair_table(5)), 7))
        state = new_game(g, TC)
        for _ in range(rng.randint(1, 3)):
            from mbt.engine import Status
            if state.goal_status() is not Status.ONGOING:
                break
            state.apply_move(rng.choice(state.legal_moves()))
        from mbt.engine import Status
        if state.goal_status() is Status.ONGOING:
            assert slv.solve(state).winner == reference_winner(state)


def test_symmetry_does_not_change_winner():
    for g, goal in [(complete_graph(5), K3), (k5_minus(), TC),
                    (wheel_graph(4), TC)]:
        a = slv.solve(new_game(g, goal), use_symmetry=True)
        b = slv.solve(new_game(g, goal), use_symmetry=False)
        assert a.winner == b.winner


def test_determinism():
    state = new_game(k5_minus(), TC)
    a = slv.solve(state)
    b = slv.solve(new_game(k5_minus(), TC))
    assert (a.winner, a.best_move) == (b.winner, b.best_move)


def test_winner_invariant_under_relabeling():
    rng = random.Random(5)
    g = k5_minus()
    base = slv.solve(new_game(g, TC)).winner
    for _ in range(100):
        perm = list(range(5))
        rng.shuffle(perm)
        assert slv.solve(new_game(g.relabel(perm), TC)).winner == base


def test_bias_monotonicity():
    for g in (complete_graph(5), k5_minus(), wheel_graph(4)):
        prev = None
        for b in (1, 2, 3):
            w = slv.solve(new_game(g, K3, GameConfig(breaker_bias=b))).winner
            if prev == BREAKER:
                assert w == BREAKER
            prev = w


def test_board_monotonicity():
    g = k5_minus()
    assert slv.solve(new_game(g, K3)).winner == MAKER
    sup = g.with_edge(3, 4)
    assert slv.solve(new_game(sup, K3)).winner == MAKER


def test_edge_cap_enforced():
    big = complete_graph(7)   # 21 edges, above the oriented cap
    with pytest.raises(slv.SolverCapExceeded):
        slv.solve(new_game(big, TC))


def test_node_cap_enforced():
    with pytest.raises(slv.SolverCapExceeded):
        slv.solve(new_game(complete_graph(5), TC), node_cap=5)


# -- strategy extraction ----------------------------------------------------------


def test_extract_breaker_tree_k4_handicap():
    state = new_game(complete_graph(4), TC, GameConfig(handicap=1))
    tree = slv.extract_strategy(state, BREAKER)
    res = slv.duel(state, tree.as_script(), BREAKER, restrict_adversary=False)
    assert res.always_wins


def test_extract_maker_tree_k5_clique():
    state = new_game(complete_graph(5), K3)
    tree = slv.extract_strategy(state, MAKER)
    res = slv.duel(state, tree.as_script(), MAKER, restrict_adversary=False)
    assert res.always_wins


def test_extract_rejects_loser():
    state = new_game(complete_graph(3), K3)
    with pytest.raises(ValueError):
        slv.extract_strategy(state, MAKER)


def test_strategy_matches_solve_agreement():
    state = new_game(k5_minus(), TC)
    winner = slv.solve(state).winner
    tree = slv.extract_strategy(state, winner)
    assert len(tree) > 0
    with pytest.raises(ValueError):
        slv.extract_strategy(state, 1 - winner)


# -- duels -------------------------------------------------------------------------


def test_duel_trivial_maker_script_fails():
    from mbt.strategies import lowest_free_move
    state = new_game(complete_graph(3), K3)
    res = slv.duel(state, lowest_free_move, MAKER)
    assert not res.always_wins
    assert res.counterexample is not None


def test_duel_illegal_script_reported():
    def bad(state):
        return Move(999)
    with pytest.raises(ValueError):
        slv.duel(new_game(complete_graph(3), K3), bad, MAKER)


def test_duel_restricted_vs_full_agree():
    from mbt.strategies import SolverScript
    state = new_game(complete_graph(4), K3)
    script = SolverScript()
    full = slv.duel(new_game(complete_graph(4), K3), script, BREAKER,
                    restrict_adversary=False)
    fast = slv.duel(new_game(complete_graph(4), K3), script, BREAKER,
                    restrict_adversary=True)
    assert full.always_wins == fast.always_wins


def test_duel_agrees_with_solver():
    from mbt.strategies import SolverScript
    for g, goal in [(complete_graph(4), K3), (k5_minus(), TC),
                    (complete_graph(5), K3)]:
        winner = slv.solve(new_game(g, goal)).winner
        script = SolverScript()
        res = slv.duel(new_game(g, goal), script, winner)
        assert res.always_wins


# -- minimum-density search -----------------------------------------------------------


def test_min_density_triangle_small():
    rep = slv.min_density_maker_win_search(K3, 5)
    assert rep.min_density == Fraction(9, 5)
    assert iso.are_isomorphic(rep.witness, k5_minus())


def test_min_density_tc_below_15_8_empty():
    rep = slv.min_density_maker_win_search(TC, 6, density_cap=Fraction(15, 8),
                                           density_strict=True)
    assert rep.maker_win_classes == []


def test_all_triangles_cyclic_orientation():
    orient = slv.all_triangles_cyclic_orientation(complete_graph(3))
    assert orient is not None and len(orient) == 3
    # K4 admits no orientation making every triangle cyclic
    assert slv.all_triangles_cyclic_orientation(complete_graph(4)) is None


def test_search_caps():
    with pytest.raises(slv.SolverCapExceeded):
        slv.min_density_maker_win_search(TC, 9)
    with pytest.raises(slv.SolverCapExceeded):
        slv.min_density_maker_win_search(K3, 7)


def test_exhaustive_reference_cross_check_small_boards():
    """Every board class on 3..6 vertices with 3..9 edges, three goals,
    two configurations, against the independent reference."""
    goals = [K3, TC, TA]
    configs = [GameConfig(), GameConfig(breaker_bias=2, handicap=1)]
    checks = 0
    for n in (3, 4, 5, 6):
        for g in iso.enumerate_nonisomorphic(n, edges=(3, 9)):
            for goal in goals:
                for config in configs:
                    state = new_game(g, goal, config)
                    assert slv.solve(state).winner == reference_winner(state), \
                        (g, goal.describe(), config)
                    checks += 1
    assert checks == 936


def test_arena_incremental_state_matches_rebuild():
    """Drive the search arena through random playouts and compare its
    incrementally maintained bookkeeping against a fresh arena rebuilt
    from the mirrored engine state at every step."""
    from mbt.solver import _Arena
    from mbt.engine import Status
    rng = random.Random(60)
    for trial in range(12):
        n = rng.randint(4, 6)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        g = Graph.from_edges(n, pairs[:rng.randint(4, 9)])
        goal = rng.choice([K3, TC, TA])
        config = GameConfig(handicap=rng.choice([0, 1]))
        state = new_game(g, goal, config)
        arena = _Arena(state, node_cap=10**9)
        while state.goal_status() is Status.ONGOING:
            mv = rng.choice(state.legal_moves())
            state.apply_move(mv)
            orient = mv.orientation if mv.orientation is not None else 0
            arena.apply(state.edge_pos[mv.edge], orient)
            fresh = _Arena(state, node_cap=10**9)
            assert (arena.maker_fwd, arena.maker_bwd, arena.breaker) == \
                   (fresh.maker_fwd, fresh.maker_bwd, fresh.breaker)
            assert arena.alive == fresh.alive
            assert arena.progress == fresh.progress
            # ledgers agree wherever the search still consults them: the
            # engine zeroes its ledger at board exhaustion and caps claims
            # by the free count, both of which only differ on positions the
            # arena has already recognized as decided
            free_count = bin(state.free_mask).count("1")
            if state.goal_status() is Status.ONGOING \
                    and free_count >= state.claims_left \
                    and arena.status_now() is None:
                assert arena.mover == state.mover
                assert min(arena.claims_left, free_count) == state.claims_left
