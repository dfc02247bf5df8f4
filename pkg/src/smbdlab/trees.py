"""Free-tree canonical forms (centre-rooted AHU) and exhaustive enumeration."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graphs import Graph, NotATreeError, to_graph6

DEFAULT_TREE_CAP = 14


class CapExceededError(ValueError):
    pass


def tree_centers(T: Graph) -> list[int]:
    """The one or two central vertices of a tree (leaf peeling)."""
    if T.n <= 2:
        return list(T.vertices())
    deg = [T.degree(v) for v in T.vertices()]
    layer = [v for v in T.vertices() if deg[v] == 1]
    remaining = T.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in T.adjacency[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_code(T: Graph, root: int) -> tuple[str, list[int]]:
    """AHU code of ``T`` rooted at ``root`` and the vertex order it induces."""
    parent = {root: -1}
    order = [root]
    for v in order:
        for u in T.adjacency[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    code: dict[int, str] = {}
    kids: dict[int, list[int]] = {v: [] for v in order}
    for v in reversed(order):
        kids[v].sort(key=lambda c: code[c])
        code[v] = "(" + "".join(code[c] for c in kids[v]) + ")"
        if parent[v] >= 0:
            kids[parent[v]].append(v)
    # canonical vertex order: BFS with children in code order
    labelled = [root]
    for v in labelled:
        labelled.extend(kids[v])
    return code[root], labelled


def canonical_code(T: Graph) -> str:
    """Isomorphism-invariant string for a tree."""
    if not T.is_tree():
        raise NotATreeError("canonical_code needs a tree")
    return min(_rooted_code(T, c)[0] for c in tree_centers(T))


def canonical_tree(T: Graph) -> tuple[str, Graph]:
    """Canonical code and the canonically relabelled copy of ``T``."""
    if not T.is_tree():
        raise NotATreeError("canonical_tree needs a tree")
    code, order = min(_rooted_code(T, c) for c in tree_centers(T))
    return code, T.relabel(order)


def canonical_forest(G: Graph) -> tuple[str, Graph]:
    """Canonical form of a forest: components canonicalised and sorted."""
    if not G.is_forest():
        raise NotATreeError("canonical_forest needs a forest")
    parts = []
    for comp in G.components():
        sub, old = G.induced_subgraph(comp)
        code, order = min(_rooted_code(sub, c) for c in tree_centers(sub))
        parts.append((len(comp), code, [old[i] for i in order]))
    parts.sort()
    order = [v for _, _, o in parts for v in o]
    return "".join(code for _, code, _ in parts), G.relabel(order)


def canonical_graph6(G: Graph) -> str:
    """graph6 id: canonical for forests, the given labelling otherwise."""
    if G.is_forest() and G.n > 0:
        return to_graph6(canonical_forest(G)[1])
    return to_graph6(G)


@lru_cache(maxsize=None)
def _trees_of_order(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.from_edges(1, []),)
    found: dict[str, Graph] = {}
    for T in _trees_of_order(n - 1):
        for v in T.vertices():
            grown = Graph.from_edges(n, T.edges() + [(v, n - 1)])
            code, canon = canonical_tree(grown)
            found.setdefault(code, canon)
    return tuple(found[c] for c in sorted(found))


def enumerate_trees(n: int, cap: int = DEFAULT_TREE_CAP) -> Iterator[Graph]:
    """One canonically labelled representative per isomorphism class of n-vertex trees.

    Trees on n vertices are grown from those on n-1 by attaching a leaf
    everywhere and keeping the first copy of every canonical code.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds tree enumeration cap {cap}")
    yield from _trees_of_order(n)


def trees_up_to(max_n: int, cap: int = DEFAULT_TREE_CAP) -> Iterator[Graph]:
    for n in range(1, max_n + 1):
        yield from enumerate_trees(n, cap)


def prufer_decode(seq: list[int] | tuple[int, ...], n: int) -> Graph:
    """Labelled tree with the given Prüfer sequence (length n-2)."""
    if n == 1:
        return Graph.from_edges(1, [])
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)
