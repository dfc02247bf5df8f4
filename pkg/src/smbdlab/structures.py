"""Once-subdivided trees as winning substructures for Staller.

A member ``S`` of the family is a tree whose leaf class ``X(S)`` of the
bipartition holds every leaf while all other vertices have degree 2
(equivalently, ``S`` is a tree with every edge subdivided once).  Its rank is
the least ``k`` such that ``S`` is built in ``k`` rounds of joining two
smaller members through a new origin vertex.  ``S`` is a substructure of a
host graph when it embeds as a subgraph with every ``X(S)`` vertex keeping
its full host degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .graphs import Graph, NotATreeError
from .hypergraph import INF, Hypergraph
from .play import STALLER, Strategy, Transcript
from .trees import DEFAULT_TREE_CAP, CapExceededError, canonical_code, enumerate_trees

DEFAULT_PATTERN_CAP = 15


@dataclass(frozen=True)
class SubdividedTree:
    tree: Graph
    x_class: frozenset[int]
    rank: int

    @property
    def order(self) -> int:
        return self.tree.n

    def origins(self) -> list[int]:
        return [v for v in self.tree.vertices() if v not in self.x_class]


@dataclass(frozen=True)
class Substructure:
    pattern: SubdividedTree
    embedding: tuple[int, ...]  # pattern vertex i -> host vertex embedding[i]

    @property
    def rank(self) -> int:
        return self.pattern.rank

    def host_vertices(self) -> frozenset[int]:
        return frozenset(self.embedding)

    def host_x_class(self) -> frozenset[int]:
        return frozenset(self.embedding[x] for x in self.pattern.x_class)

    def is_valid_in(self, G: Graph) -> bool:
        emb = self.embedding
        P = self.pattern.tree
        if len(set(emb)) != len(emb) or any(not 0 <= h < G.n for h in emb):
            return False
        if any(not G.has_edge(emb[u], emb[v]) for u, v in P.edges()):
            return False
        return all(G.degree(emb[x]) == P.degree(x) for x in self.pattern.x_class)

    def to_text(self) -> str:
        P = self.pattern.tree
        lines = [f"pattern n {P.n} rank {self.rank}"]
        lines += [f"{u} {v}" for u, v in P.edges()]
        lines.append("x_class " + " ".join(str(x) for x in sorted(self.pattern.x_class)))
        lines += [f"map {i} {h}" for i, h in enumerate(self.embedding)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Substructure":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        head = lines[0]
        if head[:2] != ["pattern", "n"] or head[3] != "rank":
            raise ValueError("bad substructure header")
        n, rank = int(head[2]), int(head[4])
        edges, x_class, emb = [], None, {}
        for parts in lines[1:]:
            if parts[0] == "x_class":
                x_class = frozenset(int(t) for t in parts[1:])
            elif parts[0] == "map":
                emb[int(parts[1])] = int(parts[2])
            else:
                edges.append((int(parts[0]), int(parts[1])))
        tree = Graph.from_edges(n, edges)
        if membership_in_S(tree) != x_class or rank_of_tree(tree) != rank:
            raise ValueError("certificate pattern is not a family member of the stated rank")
        return cls(SubdividedTree(tree, x_class, rank), tuple(emb[i] for i in range(n)))


# ---------------------------------------------------------------------------
# membership and rank

def membership_in_S(T: Graph) -> Optional[frozenset[int]]:
    """The leaf class X(T) if ``T`` belongs to the family, else None."""
    if not T.is_tree():
        return None
    if T.n == 1:
        return frozenset({0})
    color = T.bipartition()
    leaf_colors = {color[v] for v in T.leaves()}
    if len(leaf_colors) != 1:
        return None
    (c,) = leaf_colors
    if any(T.degree(v) != 2 for v in T.vertices() if color[v] != c):
        return None
    return frozenset(v for v in T.vertices() if color[v] == c)


def _split(T: Graph, z: int) -> list[Graph]:
    rest = [v for v in T.vertices() if v != z]
    sub, _ = T.induced_subgraph(rest)
    return [sub.induced_subgraph(comp)[0] for comp in sub.components()]


_RANKS: dict[str, int] = {}


def rank_of_tree(T: Graph) -> int:
    """Least k with T in the k-th family, via the split at every origin vertex.

    Memoised on the canonical code.
    """
    x = membership_in_S(T)
    if x is None:
        raise ValueError("tree is not a once-subdivided tree")
    code = canonical_code(T)
    r = _RANKS.get(code)
    if r is None:
        if T.n == 1:
            r = 1
        else:
            r = min(max(rank_of_tree(a), rank_of_tree(b)) + 1 for z in T.vertices() if z not in x for a, b in [_split(T, z)])
        _RANKS[code] = r
    return r


def rank(S: SubdividedTree | Graph) -> int:
    return rank_of_tree(S.tree if isinstance(S, SubdividedTree) else S)


def as_subdivided(T: Graph) -> SubdividedTree:
    x = membership_in_S(T)
    if x is None:
        raise ValueError("tree is not a once-subdivided tree")
    return SubdividedTree(T, x, rank_of_tree(T))


def subdivide(G: Graph) -> Graph:
    """Subdivide every edge once; edge i's new vertex gets id n + i."""
    edges = []
    for i, (u, v) in enumerate(G.edges()):
        z = G.n + i
        edges += [(u, z), (z, v)]
    return Graph.from_edges(G.n + G.edge_count, edges)


@lru_cache(maxsize=None)
def _patterns(n: int) -> tuple[SubdividedTree, ...]:
    out = []
    m = 1
    while 2 * m - 1 <= n:
        for G in enumerate_trees(m, cap=max(DEFAULT_TREE_CAP, m)):
            out.append(as_subdivided(subdivide(G)))
        m += 1
    return tuple(out)


def generate_S_upto(n: int, cap: int = DEFAULT_PATTERN_CAP) -> list[SubdividedTree]:
    """One representative of every family member on at most ``n`` vertices."""
    if n > cap:
        raise CapExceededError(f"n={n} exceeds pattern cap {cap}")
    return list(_patterns(n))


# ---------------------------------------------------------------------------
# substructure search

def find_embedding(pattern: SubdividedTree, G: Graph) -> Optional[tuple[int, ...]]:
    """Embed ``pattern`` in ``G`` with X-vertices keeping their host degree."""
    P, X = pattern.tree, pattern.x_class
    root = max(P.vertices(), key=lambda v: (P.degree(v), v in X, -v))
    order, parent = [root], {root: None}
    for v in order:
        for u in sorted(P.adjacency[v]):
            if u not in parent:
                parent[u] = v
                order.append(u)

    def fits(p, h):
        return G.degree(h) == P.degree(p) if p in X else G.degree(h) >= P.degree(p)

    emb: dict[int, int] = {}
    used: set[int] = set()

    def extend(i):
        if i == len(order):
            return True
        p = order[i]
        cands = G.vertices() if parent[p] is None else sorted(G.adjacency[emb[parent[p]]])
        for h in cands:
            if h in used or not fits(p, h):
                continue
            emb[p] = h
            used.add(h)
            if extend(i + 1):
                return True
            used.discard(h)
            del emb[p]
        return False

    if extend(0):
        return tuple(emb[i] for i in P.vertices())
    return None


def min_rank_substructure(T: Graph, cap: int = DEFAULT_PATTERN_CAP) -> Optional[tuple[Substructure, int]]:
    """A substructure of least rank in ``T`` (searching patterns up to |V(T)|)."""
    if T.n > cap:
        raise CapExceededError(f"graph on {T.n} vertices exceeds pattern cap {cap}")
    for pat in sorted(generate_S_upto(T.n, cap), key=lambda p: (p.rank, p.order)):
        emb = find_embedding(pat, T)
        if emb is not None:
            return Substructure(pat, emb), pat.rank
    return None


def gamma_prime_via_structure(T: Graph, cap: int = DEFAULT_PATTERN_CAP):
    if not T.is_tree():
        raise NotATreeError("the substructure characterisation is for trees")
    found = min_rank_substructure(T, cap)
    return INF if found is None else found[1]


# ---------------------------------------------------------------------------
# hypergraphs of fixed-degree neighbourhoods

def build_F(S: SubdividedTree) -> Hypergraph:
    """Closed neighbourhoods of the X-vertices, on vertex set V(S)."""
    T = S.tree
    return Hypergraph.from_sets([T.closed_neighborhood(x) for x in sorted(S.x_class)], T.vertices())


@dataclass(frozen=True)
class Plan:
    """Split tree of a pattern: play ``origin``, then descend into an untouched part."""

    vertices: frozenset[int]
    rank: int
    origin: int
    parts: tuple["Plan", ...] = field(default=())


def plan_of(S: SubdividedTree, vertices: Optional[frozenset[int]] = None) -> Plan:
    """Rank-attaining decomposition of ``S`` (ties broken by smallest origin id)."""
    T = S.tree
    vs = frozenset(T.vertices()) if vertices is None else vertices
    if len(vs) == 1:
        (x,) = vs
        return Plan(vs, 1, x)
    sub, old = T.induced_subgraph(vs)
    best = None
    for z in sorted(vs - S.x_class):
        parts = []
        rest, back = sub.induced_subgraph([i for i, v in enumerate(old) if v != z])
        for comp in rest.components():
            parts.append(frozenset(old[back[i]] for i in comp))
        r = max(rank_of_tree(T.induced_subgraph(p)[0]) for p in parts) + 1
        if best is None or r < best[0]:
            best = (r, z, parts)
    r, z, parts = best
    return Plan(vs, r, z, tuple(sorted((plan_of(S, p) for p in parts), key=lambda pl: (pl.rank, min(pl.vertices)))))


def build_F_recursive(S: SubdividedTree) -> Hypergraph:
    """F built bottom-up along a decomposition: a singleton edge per leaf part,
    and at every join the origin is added to the two edges that meet it."""

    def build(plan: Plan) -> list[set[int]]:
        if not plan.parts:
            return [{plan.origin}]
        edges = []
        for part in plan.parts:
            sub = build(part)
            for e in sub:
                if any(S.tree.has_edge(plan.origin, v) for v in e if v in S.x_class):
                    e = e | {plan.origin}
                edges.append(e)
        return edges

    return Hypergraph.from_sets(build(plan_of(S)), S.tree.vertices())


def _check_certificate(G: Graph, sub: Substructure) -> None:
    if not sub.is_valid_in(G):
        raise ValueError("invalid substructure certificate for this graph")


def staller_strategy_from_substructure(G: Graph, sub: Substructure) -> Strategy:
    """Staller policy driven by a substructure certificate (S-game).

    Staller plays the current part's origin; after Dominator answers she
    moves to a part the answer did not touch (lowest rank first).  On a
    single X-vertex she claims it, completing its closed neighbourhood.
    """
    _check_certificate(G, sub)
    plan = plan_of(sub.pattern)
    emb = sub.embedding

    def host(vs):
        return {emb[v] for v in vs}

    def next_move(t: Transcript) -> int:
        played = t.played()
        node = plan
        awaiting_reply = False
        for role, v in t.moves:
            if role == STALLER:
                awaiting_reply = node.parts != ()
            elif awaiting_reply:
                for part in node.parts:
                    if v not in host(part.vertices):
                        node = part
                        break
                awaiting_reply = False
            elif v in host(node.vertices):
                node = None
                break
        if node is not None and awaiting_reply:
            # Dominator has not answered yet (only possible mid-transcript edits)
            node = None
        if node is not None and emb[node.origin] not in played:
            return emb[node.origin]
        return min(v for v in G.vertices() if v not in played)

    return Strategy(STALLER, next_move, sub)
