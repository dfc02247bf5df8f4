import random

import pytest
from hypothesis import given, settings, strategies as st

from smbdlab.graphs import Graph, Matching, sample_caterpillar, forest_perfect_matching, path_graph, star_graph, subdivided_star
from smbdlab.hypergraph import INF
from smbdlab.play import (
    DOMINATOR,
    DOMINATOR_WIN,
    FORFEIT,
    STALLER,
    STALLER_WIN,
    Strategy,
    Transcript,
    certifies,
    dominator_pairing_strategy,
    optimal_strategy,
    pairing_matching,
    play_match,
    verify_dominator_strategy,
    verify_strategy_bound,
)
from smbdlab.solver import Solver
from smbdlab.trees import CapExceededError, trees_up_to

from oracles import has_cover_matching


def test_pairing_examples():
    assert pairing_matching(path_graph(4)) == Matching.of([(0, 1), (2, 3)])
    M = pairing_matching(path_graph(5), X={2})
    assert M == Matching.of([(0, 1), (3, 4)])
    assert certifies(path_graph(5), M, X={2})
    assert pairing_matching(path_graph(5)) is None
    with pytest.raises(ValueError):
        pairing_matching(path_graph(3), X={1}, Y={1})


def test_pairing_matches_brute_force():
    rng = random.Random(4)
    for T in trees_up_to(8):
        for _ in range(4):
            X = {v for v in T.vertices() if rng.random() < 0.2}
            Y = {v for v in T.vertices() if v not in X and rng.random() < 0.2}
            dom = set().union(*(T.closed_neighborhood(x) for x in X)) if X else set()
            avail = set(T.vertices()) - X - Y
            required = set(T.vertices()) - dom
            want = required <= avail and has_cover_matching(T.n, T.edges(), avail, required)
            M = pairing_matching(T, X, Y)
            assert (M is not None) == want
            if M is not None:
                assert certifies(T, M, X, Y)


def test_pairing_on_cycle_uses_exhaustive_search():
    C6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    M = pairing_matching(C6)
    assert M is not None and len(M) == 3
    big = Graph.from_edges(18, [(i, (i + 1) % 18) for i in range(18)])
    with pytest.raises(CapExceededError):
        pairing_matching(big)


def test_pairing_strategy_p4():
    G = path_graph(4)
    d = dominator_pairing_strategy(G, pairing_matching(G))
    assert verify_dominator_strategy(G, d)


def test_stale_certificate():
    with pytest.raises(ValueError):
        dominator_pairing_strategy(path_graph(5), Matching.of([(0, 1), (2, 3)]))


def test_pairing_strategy_trees_with_perfect_matching():
    for T in trees_up_to(10):
        M = forest_perfect_matching(T)
        if M is not None:
            assert verify_dominator_strategy(T, dominator_pairing_strategy(T, M))


def test_pairing_strategy_star_dgame_from_center():
    for b in [(1, 1, 1), (2, 2, 2), (1, 2, 3), (3, 3, 1), (2, 1, 1, 2), (1, 1, 1, 1, 1)]:
        G = subdivided_star(*b)
        M = pairing_matching(G, X={0})
        assert M is not None
        d = dominator_pairing_strategy(G, M, opening=0)
        assert verify_dominator_strategy(G, d, first=DOMINATOR)


def _random_tree(rng, n):
    return Graph.from_edges(n, [(v, rng.randrange(v)) for v in range(1, n)])


def test_pairing_soundness_random_positions():
    rng = random.Random(12)
    hits = 0
    for _ in range(200):
        G = _random_tree(rng, rng.randint(2, 9))
        X = {v for v in G.vertices() if rng.random() < 0.25}
        Y = {v for v in G.vertices() if v not in X and rng.random() < 0.1}
        M = pairing_matching(G, X, Y)
        if M is None or any(G.closed_neighborhood(u) <= Y for u in G.vertices()):
            continue
        hits += 1
        d = dominator_pairing_strategy(G, M, X=X, Y=Y)
        # continue from the position: Staller to move, replay X and Y as a prefix
        prefix = [(DOMINATOR, x) for x in sorted(X)] + [(STALLER, y) for y in sorted(Y)]
        assert _staller_never_wins(G, d, prefix)
    assert hits > 30


def _staller_never_wins(G, d, prefix):
    from smbdlab.play import staller_completed

    def walk(t):
        played = t.played()
        if len(played) == G.n:
            return True
        for v in G.vertices():
            if v in played:
                continue
            t.moves.append((STALLER, v))
            try:
                if staller_completed(G, t.by(STALLER), v):
                    return False
                if len(t.moves) < G.n:
                    w = d.next_move(t)
                    assert w not in t.played()
                    t.moves.append((DOMINATOR, w))
                    ok = walk(t)
                    t.moves.pop()
                    if not ok:
                        return False
            finally:
                t.moves.pop()
        return True

    return walk(Transcript(list(prefix)))


def test_optimal_matches():
    for n, k in [(7, 3), (9, 4)]:
        G = path_graph(n)
        t = play_match(G, optimal_strategy(G, STALLER), optimal_strategy(G, DOMINATOR))
        assert (t.status, t.staller_moves) == (STALLER_WIN, k)
    F = sample_caterpillar()
    t = play_match(F, optimal_strategy(F, "s"), optimal_strategy(F, "d"), first=DOMINATOR)
    assert (t.status, t.staller_moves) == (STALLER_WIN, 3)
    P2 = path_graph(2)
    assert play_match(P2, optimal_strategy(P2, "s"), optimal_strategy(P2, "d")).status == DOMINATOR_WIN


def test_pairing_vs_optimal_staller_p6():
    G = path_graph(6)
    t = play_match(G, optimal_strategy(G, STALLER), dominator_pairing_strategy(G, pairing_matching(G)))
    assert t.status == DOMINATOR_WIN


def test_optimal_play_length_equals_solver_value():
    s = Solver()
    for T in trees_up_to(11):
        st_, dom = optimal_strategy(T, STALLER, s), optimal_strategy(T, DOMINATOR, s)
        for first, value in [(STALLER, s.gamma_smb_prime(T)), (DOMINATOR, s.gamma_smb(T))]:
            t = play_match(T, st_, dom, first=first)
            if value == INF:
                assert t.status == DOMINATOR_WIN
            else:
                assert (t.status, t.staller_moves) == (STALLER_WIN, value)


def test_verify_bound_optimal_p7():
    G = path_graph(7)
    s = optimal_strategy(G, STALLER)
    assert verify_strategy_bound(G, s, 3)
    assert not verify_strategy_bound(G, s, 2)


def test_forfeit_recorded():
    G = path_graph(3)
    cheat = Strategy(STALLER, lambda t: 0)
    t = play_match(G, cheat, optimal_strategy(G, DOMINATOR))
    assert t.status == FORFEIT and t.forfeited_by == STALLER

    def broken(t):
        raise RuntimeError("boom")

    t = play_match(G, optimal_strategy(G, STALLER), Strategy(DOMINATOR, broken), first=DOMINATOR)
    assert t.status == FORFEIT and t.forfeited_by == DOMINATOR


def test_transcript_text_round_trip():
    G = path_graph(7)
    t = play_match(G, optimal_strategy(G, STALLER), optimal_strategy(G, DOMINATOR))
    text = t.to_text()
    assert text.splitlines()[-1] == "status staller-win 3"
    assert text.splitlines()[0].startswith("staller ")
    back = Transcript.from_text(text)
    assert back.moves == t.moves and back.status == t.status and back.staller_moves == 3
    assert len(set(v for _, v in t.moves)) == len(t.moves)


def test_over_cap():
    with pytest.raises(CapExceededError):
        optimal_strategy(path_graph(20), STALLER)
    with pytest.raises(CapExceededError):
        verify_strategy_bound(path_graph(20), Strategy(STALLER, lambda t: 0), 3)
