import math

import networkx as nx
import pytest

from smbdlab.formulas import (
    T0,
    T1,
    IntervalResult,
    PathProfile,
    StarProfile,
    all_even3_value,
    all_even_upper_bound,
    caterpillar_values,
    ceil_log2,
    path_value,
    recognize_caterpillar,
    recognize_star,
    star_value_sgame,
    z_branches,
    z_family,
)
from smbdlab.graphs import Graph, sample_caterpillar, forest_perfect_matching, path_graph, star_graph, subdivided_star
from smbdlab.hypergraph import INF
from smbdlab.solver import Solver, gamma_smb, gamma_smb_prime
from smbdlab.trees import canonical_code, trees_up_to


def test_log_helpers():
    assert [ceil_log2(m) for m in range(1, 10)] == [0, 1, 2, 2, 3, 3, 3, 3, 4]
    assert all(ceil_log2(m) == math.ceil(math.log2(m)) for m in range(1, 5000))


def test_path_value_examples():
    assert path_value(13, "S") == 4
    assert path_value(6, "S") == INF
    assert path_value(1, "S") == 1
    assert path_value(9, "D") == INF
    with pytest.raises(ValueError):
        path_value(0)


def test_path_value_against_solver():
    for n in range(1, 15):
        assert path_value(n, "S") == gamma_smb_prime(path_graph(n))
        assert path_value(n, "D") == gamma_smb(path_graph(n))


def test_recognize_star_examples():
    assert recognize_star(star_graph(3)) == StarProfile(0, (1, 1, 1))
    assert recognize_star(subdivided_star(2, 4, 6)).branch_lengths == (2, 4, 6)
    assert recognize_star(path_graph(7)) == PathProfile(7)
    assert recognize_star(sample_caterpillar()) is None
    assert recognize_star(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])) is None


def test_star_value_examples():
    assert star_value_sgame(recognize_star(subdivided_star(1, 1, 2))) == 2
    assert star_value_sgame(recognize_star(subdivided_star(1, 2, 2))) == INF
    assert star_value_sgame(StarProfile(0, (3, 5, 8))) == 4
    assert star_value_sgame(recognize_star(subdivided_star(1, 3, 2))) == 3 == gamma_smb_prime(subdivided_star(1, 3, 2))
    iv = star_value_sgame(StarProfile(0, (2, 2, 2, 2)))
    assert iv == IntervalResult(4, 5, True)


def test_all_even3_examples():
    v, c = all_even3_value(2, 2, 2)
    assert (v, c.tag) == (4, T1)
    v, c = all_even3_value(2, 2, 4)
    assert (v, c.tag) == (4, T0)
    v, c = all_even3_value(2, 2, 10)
    assert (v, c.tag) == (5, T1)
    assert [s[:3] for s in c.trace] == [(2, 2, 10), (2, 2, 2)]
    for bad in [(1, 2, 2), (0, 2, 2), (2, 2, -4)]:
        with pytest.raises(ValueError):
            all_even3_value(*bad)


def test_all_even3_trace_invariants():
    for a in range(2, 40, 2):
        for b in range(a, 40, 2):
            for c in range(b, 40, 2):
                v, cls = all_even3_value(a, b, c)
                trace = cls.trace
                assert not trace[-1][3]
                assert all(step[3] for step in trace[:-1])
                for (x, y, z, _, k), nxt in zip(trace, trace[1:]):
                    assert sorted((x, y, z - 2 ** (k - 1))) == list(nxt[:3])
                k = ceil_log2(a + b + c + 1)
                assert v == k + (cls.tag == T1)


def test_all_even3_input_order_irrelevant():
    assert all_even3_value(10, 2, 2) == all_even3_value(2, 2, 10)


def test_all_even3_against_solver_small():
    s = Solver()
    for a in range(2, 12, 2):
        for b in range(a, 12, 2):
            for c in range(b, 12, 2):
                if a + b + c + 1 <= 13:
                    assert all_even3_value(a, b, c)[0] == s.gamma_smb_prime(subdivided_star(a, b, c))


def test_equal_branch_identity():
    for k in range(1, 4):
        assert all_even3_value(2 * k, 2 * k, 2 * k)[0] == ceil_log2(4 * k + 1) + 1


def test_upper_bound_examples():
    assert all_even_upper_bound((4, 2, 2)) == 4
    assert all_even_upper_bound((8, 4, 2, 2)) == 5
    assert all_even_upper_bound(StarProfile(0, (2, 2, 2, 2))) == 5
    assert all_even_upper_bound((2, 2, 4)) == 4  # order of input irrelevant
    with pytest.raises(ValueError):
        all_even_upper_bound((3, 2, 2))


def test_z_family_examples():
    G, expected = z_family(3, 2)
    assert recognize_star(G).branch_lengths == (2, 2, 4) and expected == 4
    assert z_branches(4, 2) == (8, 4, 2, 2) and z_family(4, 2)[1] == 5
    assert z_branches(3, 3) == (8, 6, 2) and z_family(3, 3)[1] == 5
    with pytest.raises(ValueError):
        z_family(2, 5)


def test_z_family_exactness():
    for l in range(3, 8):
        for p in range(2, 8 - l):
            b = z_branches(l, p)
            n = 1 + sum(b)
            assert n == 2 ** (l + p - 2) + 1
            assert all_even_upper_bound(b) == ceil_log2(n) == l + p - 1


def test_z32_solver():
    G, expected = z_family(3, 2)
    assert gamma_smb_prime(G) == expected


def test_caterpillar_examples():
    F = recognize_caterpillar(sample_caterpillar())
    assert len(F.p_co) == 4 and F.p == 3 and F.p_star == 7
    assert not F.common_vertex_exists
    assert caterpillar_values(F) == (3, 2)
    K = recognize_caterpillar(star_graph(3))
    assert len(K.p_co) == 3 and K.common_vertex_exists and K.p == 3 and K.p_star is None
    assert all(0 in P for P in K.p_co)
    assert K.spine == (0,)
    assert caterpillar_values(K) == (INF, 2)
    P6 = recognize_caterpillar(path_graph(6))
    assert P6.p_co == () and caterpillar_values(P6) == (INF, INF)


def test_caterpillar_recognition_matches_definition():
    for T in trees_up_to(11):
        prof = recognize_caterpillar(T)
        H = nx.Graph(T.edges())
        H.add_nodes_from(range(T.n))
        inner = H.subgraph([v for v in H if H.degree(v) >= 2])
        expect = T.n >= 3 and nx.is_connected(inner) and max(dict(inner.degree()).values(), default=0) <= 2
        assert (prof is not None) == expect
        if prof:
            assert set(prof.spine) == set(inner.nodes)
            assert all(T.has_edge(a, b) for a, b in zip(prof.spine, prof.spine[1:]))
            assert sum(prof.leaves_at) == len(T.leaves())


def test_caterpillar_profile_invariants():
    for T in trees_up_to(11):
        prof = recognize_caterpillar(T)
        if prof is None:
            continue
        for P in prof.p_co:
            assert len(P) % 2 == 1 and T.degree(P[0]) == 1 == T.degree(P[-1])
            assert all(T.degree(u) == 2 for u in P[2:-2])
        if prof.p_co:
            assert prof.p == min(len(P) for P in prof.p_co)
        assert (prof.p_star is not None) == (bool(prof.p_co) and not prof.common_vertex_exists)


def test_caterpillar_values_small():
    s = Solver()
    for T in trees_up_to(11):
        prof = recognize_caterpillar(T)
        if prof is not None:
            assert caterpillar_values(prof) == (s.gamma_smb(T), s.gamma_smb_prime(T))


def test_empty_clean_paths_iff_perfect_matching():
    for T in trees_up_to(13):
        prof = recognize_caterpillar(T)
        if prof is not None:
            assert (not prof.p_co) == (forest_perfect_matching(T) is not None)


def test_formulas_agree_where_families_overlap():
    for T in trees_up_to(13):
        cat = recognize_caterpillar(T)
        shape = recognize_star(T)
        if cat is None or shape is None:
            continue
        g, gp = caterpillar_values(cat)
        if isinstance(shape, PathProfile):
            assert (g, gp) == (path_value(T.n, "D"), path_value(T.n, "S"))
        else:
            val = star_value_sgame(shape)
            assert g == INF
            if isinstance(val, IntervalResult):
                assert val.contains(gp)
            else:
                assert val == gp
