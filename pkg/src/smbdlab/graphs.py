"""Simple undirected graphs, interchange formats and tree-level primitives.

Vertices are the integers ``0 .. n-1``.  Everything here is pure; a
:class:`Graph` is immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

LEAF = "leaf"
WEAK_SUPPORT = "weak support"
STRONG_SUPPORT = "strong support"
OTHER = "other"


class GraphFormatError(ValueError):
    """Malformed edge-list or graph6 input."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NotATreeError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex_count")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"self-loop at {v}")
            for u in nbrs:
                if not 0 <= u < self.vertex_count or v not in self.adjacency[u]:
                    raise ValueError(f"asymmetric or out-of-range edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u} {v} outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @property
    def n(self) -> int:
        return self.vertex_count

    def vertices(self) -> range:
        return range(self.vertex_count)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices() for v in sorted(self.adjacency[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adjacency[v] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def leaves(self) -> list[int]:
        return [v for v in self.vertices() if len(self.adjacency[v]) == 1]

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph on ``keep`` relabelled in ascending order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges() if u in new_id and v in new_id]
        return Graph.from_edges(len(old), edges), old

    def relabel(self, order: list[int]) -> "Graph":
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        new_id = {v: i for i, v in enumerate(order)}
        return Graph.from_edges(self.n, [(new_id[u], new_id[v]) for u, v in self.edges()])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in self.vertices():
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                v = queue.popleft()
                comp.append(v)
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_forest(self) -> bool:
        return self.edge_count == self.n - len(self.components())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.edge_count == self.n - 1 and len(self.components()) == 1

    def bipartition(self) -> list[int]:
        """2-colouring of a forest (colour 0 holds the smallest id of each component)."""
        color = [-1] * self.n
        for s in self.vertices():
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adjacency[v]:
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        queue.append(u)
                    elif color[u] == color[v]:
                        raise ValueError("graph is not bipartite")
        return color

    def path_between(self, a: int, b: int) -> list[int]:
        parent = {a: a}
        queue = deque([a])
        while queue:
            v = queue.popleft()
            if v == b:
                break
            for u in sorted(self.adjacency[v]):
                if u not in parent:
                    parent[u] = v
                    queue.append(u)
        if b not in parent:
            raise ValueError(f"no path between {a} and {b}")
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        return path[::-1]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "Matching":
        return cls(frozenset((min(u, v), max(u, v)) for u, v in pairs))

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def partner(self) -> dict[int, int]:
        out = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out

    def is_valid_in(self, G: Graph) -> bool:
        covered = [v for e in self.edges for v in e]
        return len(covered) == len(set(covered)) and all(G.has_edge(u, v) for u, v in self.edges)

    def __len__(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# Standard families

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def subdivided_star(*branches: int) -> Graph:
    """S(n_1, ..., n_l): centre 0 joined to one end of a path on n_i vertices per branch.

    Branch vertices are numbered consecutively, nearest-to-centre first.
    """
    if any(b < 1 for b in branches):
        raise ValueError("branch lengths must be positive")
    edges, nxt = [], 1
    for b in branches:
        prev = 0
        for _ in range(b):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def caterpillar(leaf_counts: list[int]) -> Graph:
    """Spine v_0..v_{l-1} (ids 0..l-1) with ``leaf_counts[i]`` pendant leaves at v_i."""
    spine = len(leaf_counts)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i, c in enumerate(leaf_counts):
        for _ in range(c):
            edges.append((i, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def sample_caterpillar() -> Graph:
    """The 13-vertex caterpillar used as the worked example for clean paths.

    Spine v1..v8 are ids 0..7; leaf u1 hangs on v1, u3 and u3' on v3, u4 on v4
    and u8 on v8.
    """
    return caterpillar([1, 0, 2, 1, 0, 0, 0, 1])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


# ---------------------------------------------------------------------------
# Parsing

def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; ``#`` starts a comment."""
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphFormatError("expected header 'n <count>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise GraphFormatError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"malformed edge line {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge line {raw.strip()!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range in {u} {v}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        raise GraphFormatError("missing header 'n <count>'")
    return Graph.from_edges(n, edges)


def format_edge_list(G: Graph) -> str:
    return "\n".join([f"n {G.n}"] + [f"{u} {v}" for u, v in G.edges()]) + "\n"


def _graph6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 4 and data[1] != 126:
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        return n, 4
    if len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    raise GraphFormatError("truncated graph6 size field")


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="replace")
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"symbol {chr(b)!r} at offset {pos} outside 63..126")
    n, start = _graph6_size(data)
    nbits = n * (n - 1) // 2
    body = data[start:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"bad length: {len(body)} data symbols for n={n}")
    bits = []
    for b in body:
        x = b - 63
        bits.extend((x >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise GraphFormatError("non-zero padding bits")
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def to_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if G.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        body.append(x + 63)
    return bytes(head + body).decode("ascii")


# ---------------------------------------------------------------------------
# Tree-level primitives

def residual_vertices(G: Graph) -> frozenset[int]:
    """Vertices surviving iterated removal of pendant P_2's (lowest ids first)."""
    alive = set(G.vertices())
    deg = {v: G.degree(v) for v in alive}

    def drop(v):
        alive.discard(v)
        for u in G.adjacency[v]:
            if u in alive:
                deg[u] -= 1

    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if v not in alive or deg[v] != 1:
                continue
            (w,) = [u for u in G.adjacency[v] if u in alive]
            if deg[w] == 1 or deg[w] == 2:
                drop(v)
                drop(w)
                changed = True
    return frozenset(alive)


def residual_graph(G: Graph) -> Graph:
    return G.induced_subgraph(residual_vertices(G))[0]


def support_classification(G: Graph) -> list[str]:
    tags = []
    for v in G.vertices():
        if G.degree(v) == 1:
            tags.append(LEAF)
            continue
        leaf_nbrs = sum(1 for u in G.adjacency[v] if G.degree(u) == 1)
        tags.append(STRONG_SUPPORT if leaf_nbrs >= 2 else WEAK_SUPPORT if leaf_nbrs == 1 else OTHER)
    return tags


def forest_perfect_matching(F: Graph) -> Matching | None:
    """Perfect matching of a forest by repeatedly pairing a leaf with its neighbour."""
    if not F.is_forest():
        raise NotATreeError("forest_perfect_matching needs a forest")
    alive = set(F.vertices())
    deg = [F.degree(v) for v in F.vertices()]
    stack = [v for v in F.vertices() if deg[v] <= 1]
    pairs = []
    while alive:
        while stack and stack[-1] not in alive:
            stack.pop()
        if not stack:
            # a forest with live vertices always has a vertex of degree <= 1
            raise AssertionError("unreachable for forests")
        v = stack.pop()
        if deg[v] == 0:
            return None
        (w,) = [u for u in F.adjacency[v] if u in alive]
        pairs.append((v, w))
        for x in (v, w):
            alive.discard(x)
            for u in F.adjacency[x]:
                if u in alive:
                    deg[u] -= 1
                    if deg[u] <= 1:
                        stack.append(u)
    return Matching.of(pairs)


def staller_wins(G: Graph, game: str) -> bool:
    """Outcome of the domination game on a tree: does Staller have a winning strategy?

    ``game`` is ``"D"`` (Dominator starts) or ``"S"`` (Staller starts).  The
    S-game also accepts forests.
    """
    game = game.upper()
    if game == "D":
        if not G.is_tree():
            raise NotATreeError("D-game outcome test needs a tree")
        R, _ = G.induced_subgraph(residual_vertices(G))
        return support_classification(R).count(STRONG_SUPPORT) >= 2
    if game == "S":
        if not G.is_forest():
            raise NotATreeError("S-game outcome test needs a forest")
        return forest_perfect_matching(G) is None
    raise ValueError(f"unknown game {game!r}; use 'D' or 'S'")


def iter_leaf_pairs(G: Graph) -> Iterator[tuple[int, int]]:
    leaves = G.leaves()
    for i, a in enumerate(leaves):
        for b in leaves[i + 1:]:
            yield a, b
