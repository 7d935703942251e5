"""Paper strategies: pairings, case tables, compositions, random Maker."""

import random

import pytest

from mbt.graphs import (Graph, complete_graph, edge_endpoints, edge_index,
                        k5_minus, turan_graph, wheel_graph)
from mbt.engine import (BREAKER, FORWARD, MAKER, GameConfig, GoalSpec,
                        Move, Status, new_game)
from mbt import solver as slv
from mbt import strategies as st

TC = GoalSpec.cyclic_triangle()
K3 = GoalSpec.clique(3)

BOOK = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def _w5_pairing():
    pairs = []
    for i in range(1, 6):
        spoke = edge_index(6, 0, i)
        rim = edge_index(6, min(i, i % 5 + 1), max(i, i % 5 + 1))
        pairs.append((spoke, rim))
    return st.Pairing(pairs)


def test_w5_pairing_blocking_and_duel():
    w5 = wheel_graph(5)
    pairing = _w5_pairing()
    assert st.pairing_is_blocking(w5, K3, pairing)
    script = st.pairing_response_script(w5, pairing)
    assert slv.duel(new_game(w5, K3), script, BREAKER).always_wins
    assert slv.duel(new_game(w5, TC), script, BREAKER).always_wins


def test_empty_pairing_not_blocking():
    assert not st.pairing_is_blocking(complete_graph(3), K3, st.Pairing([]))


def test_overlapping_pairs_rejected():
    with pytest.raises(ValueError):
        st.pairing_is_blocking(complete_graph(4), K3,
                               st.Pairing([(0, 1), (1, 2)]))
    with pytest.raises(ValueError):
        st.Pairing([(0, 0)]).validate(complete_graph(3))


def test_blocking_implies_duel_win():
    # soundness cross-check on wheels of several sizes
    for k in (3, 4, 5):
        w = wheel_graph(k)
        pairs = []
        for i in range(1, k + 1):
            spoke = edge_index(k + 1, 0, i)
            rim = edge_index(k + 1, min(i, i % k + 1), max(i, i % k + 1))
            pairs.append((spoke, rim))
        pairing = st.Pairing(pairs)
        if st.pairing_is_blocking(w, K3, pairing):
            script = st.pairing_response_script(w, pairing)
            assert slv.duel(new_game(w, K3), script, BREAKER).always_wins


def test_very_basic_pairing_book():
    e01 = edge_index(4, 0, 1)
    e13 = edge_index(4, 1, 3)
    pairing = st.very_basic_pairing(BOOK, (e01, e13))
    assert len(pairing.pairs) == 2
    assert all(len(p) == 2 for p in pairing.pairs)
    flat = [e for p in pairing.pairs for e in p]
    assert len(flat) == len(set(flat))
    assert e01 not in flat                      # anchor edge stays unpaired
    assert pairing.first_move == pairing.partner(e13)


def test_very_basic_pairing_k3plus_shape():
    # four triangles whose relation graph is a triangle with a pendant
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3),
                             (0, 4), (1, 4), (2, 5), (0, 5)])
    tg = tc_triangle_graph(g)
    assert tg.node_count == 4
    assert tg.embeds_in_k3_plus()
    pairing = st.very_basic_pairing(g, (edge_index(6, 0, 1),
                                        edge_index(6, 0, 3)))
    assert len(pairing.pairs) == 4


def tc_triangle_graph(g):
    from mbt.triangle_collections import triangle_graph
    return triangle_graph(g)


def test_very_basic_pairing_rejects_k4():
    with pytest.raises(ValueError):
        st.very_basic_pairing(complete_graph(4), (0, 1))


def test_very_basic_handicap_duels():
    rng = random.Random(2)
    boards = [BOOK,
              Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
                                   (3, 4), (2, 4)]),
              complete_graph(3)]
    for g in boards:
        from mbt.triangle_collections import is_very_basic
        assert is_very_basic(g)

        def script(state, g=g):
            makers = [m.edge for (pl, m) in state.history if pl == MAKER]
            if len(makers) < 2:
                return st.blocking_breaker_move(state)
            pairing = st.very_basic_pairing(g, (makers[0], makers[1]))
            return st.pairing_response_script(g, pairing)(state)

        res = slv.duel(new_game(g, K3, GameConfig(handicap=1)), script, BREAKER)
        assert res.always_wins, g


def test_basic_breaker_script_w4():
    script = st.basic_breaker_script(wheel_graph(4))
    assert slv.duel(new_game(wheel_graph(4), K3), script, BREAKER).always_wins


def test_basic_breaker_script_rejects_nonbasic():
    with pytest.raises(ValueError):
        st.basic_breaker_script(k5_minus())


def test_basic_scripts_on_atlas_classes():
    from mbt.triangle_collections import named_minimal_classes
    names = named_minimal_classes()
    for label in ("A1", "A2", "A3"):
        g = names[label].graph
        script = st.basic_breaker_script(g)
        res = slv.duel(new_game(g, K3), script, BREAKER,
                       memo_key=st.opening_pair_duel_key)
        assert res.always_wins, label


def test_k5_minus_script_duel():
    script = st.K5MinusBreakerScript()
    res = slv.duel(new_game(k5_minus(), TC), script, BREAKER,
                   memo_key=st.k5m_duel_key)
    assert res.always_wins


def test_k5_minus_script_transported():
    rng = random.Random(8)
    perm = list(range(5))
    rng.shuffle(perm)
    board = k5_minus().relabel(perm)
    script = st.catalog_breaker_script(board, "K5minus")
    res = slv.duel(new_game(board, TC), script, BREAKER,
                   memo_key=st.k5m_duel_key)
    assert res.always_wins


def test_catalog_rejects_wrong_board():
    with pytest.raises(ValueError):
        st.catalog_breaker_script(complete_graph(5), "K5minus")
    with pytest.raises(ValueError):
        st.catalog_breaker_script(k5_minus(), "S9")


def test_s1_script_duel_and_transport():
    from mbt.triangle_collections import named_minimal_classes
    s1 = named_minimal_classes()["S1"].graph
    script = st.catalog_breaker_script(s1, "S1")
    res = slv.duel(new_game(s1, TC), script, BREAKER,
                   memo_key=st.cover_split_duel_key)
    assert res.always_wins
    rng = random.Random(3)
    perm = list(range(6))
    rng.shuffle(perm)
    relabeled = s1.relabel(perm)
    script2 = st.catalog_breaker_script(relabeled, "S1")
    res2 = slv.duel(new_game(relabeled, TC), script2, BREAKER,
                    memo_key=st.cover_split_duel_key)
    assert res2.always_wins


def test_find_two_covers_s1():
    from mbt.triangle_collections import named_minimal_classes
    s1 = named_minimal_classes()["S1"].graph
    c1, c2, extra = st.find_two_covers(s1)
    assert bin(c1).count("1") == 6 and bin(c2).count("1") == 6
    assert extra == 0
    assert bin(c1 & c2).count("1") == 1       # the shared edge


def test_identification_equivalence_k6():
    idmap = st.identification_map(6, TC)
    script = st.identification_maker_script(idmap)
    composed = slv.duel(new_game(complete_graph(6), TC), script, MAKER)
    shadow = slv.solve(new_game(turan_graph(6, 3), GoalSpec.good_clique(3)))
    assert composed.always_wins == (shadow.winner == MAKER)


def test_identification_orientation_rule():
    idmap = st.identification_map(6, TC)
    script = st.identification_maker_script(idmap)
    state = new_game(complete_graph(6), TC)
    mv = script(state)
    u, v = edge_endpoints(6, mv.edge)
    assert idmap.classes[u] != idmap.classes[v]
    assert mv.orientation == idmap.orient(u, v)


def test_identification_rejects_intra_class_inner():
    idmap = st.identification_map(6, TC)

    def bad_inner(_state):
        return Move(edge_index(6, 0, 1))      # vertices 0,1 share a class

    script = st.identification_maker_script(idmap, inner=bad_inner)
    with pytest.raises(ValueError):
        script(new_game(complete_graph(6), TC))


def test_ta_orientation_script_wins_on_k5():
    script = st.ta_orientation_script()
    res = slv.duel(new_game(complete_graph(5), GoalSpec.acyclic_triangle()),
                   script, MAKER)
    assert res.always_wins


def test_ta_script_never_creates_cyclic_triangle():
    rng = random.Random(12)
    script = st.ta_orientation_script()
    state = new_game(complete_graph(5), GoalSpec.acyclic_triangle())
    while state.goal_status() is Status.ONGOING:
        if state.mover == MAKER:
            state.apply_move(script(state))
        else:
            state.apply_move(rng.choice(state.legal_moves()))
    tc_view = new_game(complete_graph(5), TC)
    tc_view.maker_fwd = state.maker_fwd
    tc_view.maker_bwd = state.maker_bwd
    assert not any(tc_view.pattern_won(p) for p in tc_view.patterns)


def test_random_maker_determinism():
    from mbt.strategies import RandomMakerScript

    def run(seed):
        script = RandomMakerScript(seed)
        state = new_game(complete_graph(4), K3)
        transcript = []
        while state.goal_status() is Status.ONGOING:
            if state.mover == MAKER:
                mv = script(state)
                if mv is None:
                    break
                transcript.append(("M", mv.edge))
                state.apply_move(mv)
            else:
                mv = st.lowest_free_move(state)
                transcript.append(("B", mv.edge))
                state.apply_move(mv)
        return transcript, script.failures

    a = run(123)
    b = run(123)
    c = run(124)
    assert a == b
    assert a != c or a[1] == c[1]


def test_random_maker_failure_counting():
    script = st.RandomMakerScript(5)
    g = complete_graph(3)
    state = new_game(g, K3)
    # breaker owns everything except one edge
    state.breaker = 0b011
    draws = 0
    while draws < 50:
        mv = script(state)
        draws += 1
        if mv is not None:
            assert mv.edge == state.edge_list[2]
            break
    assert script.failures <= draws


def test_transcript_format():
    state = new_game(complete_graph(3), TC)
    state.apply_move(Move(edge_index(3, 0, 1), FORWARD))
    state.apply_move(Move(edge_index(3, 1, 2)))
    recs = st.transcript(state)
    assert recs[0] == {"mover": "Maker", "edge": [0, 1], "orientation": FORWARD}
    assert recs[1]["mover"] == "Breaker" and recs[1]["orientation"] is None
    flagged = st.transcript(state, failures=[1])
    assert flagged[1]["failed"] is True
