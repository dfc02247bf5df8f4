"""Independent reference implementations used only by the tests.

Nothing here imports the solver, the tree enumerator or the pairing code;
they work on plain Python sets and networkx graphs.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import networkx as nx

INF = math.inf


def game_values(edges, universe):
    """(maker-start value, breaker-start value) by raw minimax over claimed sets.

    No normalisation, no pruning: the state is the pair of claimed sets.
    """
    edges = [frozenset(e) for e in edges]
    universe = frozenset(universe)

    @lru_cache(maxsize=None)
    def maker(M: frozenset, B: frozenset):
        free = universe - M - B
        best = INF
        for v in free:
            M2 = M | {v}
            if any(e <= M2 for e in edges):
                return 1
            best = min(best, 1 + breaker(M2, B))
        return best

    @lru_cache(maxsize=None)
    def breaker(M: frozenset, B: frozenset):
        free = universe - M - B
        if not free:
            return INF
        return max(maker(M, B | {v}) for v in free)

    if any(not e for e in edges):
        raise ValueError("oracle expects non-empty edges")
    empty = frozenset()
    if not edges:
        return INF, INF
    return maker(empty, empty), breaker(empty, empty)


def graph_game_values(edge_list, n):
    """(gamma_smb, gamma_smb_prime) of a graph from raw closed neighbourhoods."""
    nbr = {v: {v} for v in range(n)}
    for u, v in edge_list:
        nbr[u].add(v)
        nbr[v].add(u)
    if n == 0:
        return INF, INF
    m, b = game_values([nbr[v] for v in range(n)], range(n))
    return b, m


def otter_tree_counts(max_n: int) -> list[int]:
    """Unlabelled free tree counts t(0..max_n) from Otter's formula."""
    r = [0] * (max_n + 1)  # rooted trees
    if max_n >= 1:
        r[1] = 1
    for n in range(1, max_n):
        s = 0
        for k in range(1, n + 1):
            s += sum(d * r[d] for d in range(1, k + 1) if k % d == 0) * r[n - k + 1]
        r[n + 1] = s // n
    t = [0] * (max_n + 1)
    for n in range(1, max_n + 1):
        pairs = sum(r[i] * r[n - i] for i in range(1, n))
        if n % 2 == 0:
            pairs -= r[n // 2]
        t[n] = r[n] - pairs // 2
    return t


def prufer_tree(seq, n) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    if n == 2:
        G.add_edge(0, 1)
        return G
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        G.add_edge(leaf, x)
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    G.add_edge(u, v)
    return G


def prufer_isomorphism_classes(n: int) -> list[nx.Graph]:
    """All labelled trees via Prufer sequences, reduced up to isomorphism."""
    if n == 1:
        G = nx.Graph()
        G.add_node(0)
        return [G]
    buckets: dict[str, list[nx.Graph]] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        T = prufer_tree(seq, n)
        key = tuple(sorted(d for _, d in T.degree()))
        h = nx.weisfeiler_lehman_graph_hash(T) + str(key)
        reps = buckets.setdefault(h, [])
        if not any(nx.is_isomorphic(T, R) for R in reps):
            reps.append(T)
    return [T for reps in buckets.values() for T in reps]


def tree_automorphisms(edges, n) -> int:
    """|Aut(T)| by rooting at the centre and multiplying symmetric child classes."""
    if n <= 1:
        return 1
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    centre = nx.center(G)

    def rooted(v, parent):
        kids = [rooted(u, v) for u in G[v] if u != parent]
        shape = "(" + "".join(sorted(k[0] for k in kids)) + ")"
        count = 1
        for _, a in kids:
            count *= a
        for _, group in itertools.groupby(sorted(k[0] for k in kids)):
            count *= math.factorial(len(list(group)))
        return shape, count

    if len(centre) == 1:
        return rooted(centre[0], None)[1]
    a, b = centre
    sa, ca = rooted(a, b)
    sb, cb = rooted(b, a)
    return ca * cb * (2 if sa == sb else 1)


def has_cover_matching(n, edge_list, avail, required) -> bool:
    """Is there a matching inside ``avail`` covering ``required``?  Brute force."""
    usable = [(u, v) for u, v in edge_list if u in avail and v in avail]
    for k in range(len(usable) + 1):
        for pick in itertools.combinations(usable, k):
            seen = set()
            ok = True
            for u, v in pick:
                if u in seen or v in seen:
                    ok = False
                    break
                seen |= {u, v}
            if ok and set(required) <= seen:
                return True
    return False
