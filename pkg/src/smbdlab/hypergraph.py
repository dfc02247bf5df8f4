"""Hypergraph states for Maker-Breaker play, stored as bitmasks.

A hyperedge is an ``int`` whose set bits are its vertices.  Vertex ids are
capped at :data:`MAX_VERTICES`; larger inputs are rejected.

Game values are "extended counts": non-negative ints or :data:`INF`
(``math.inf``), which already gives the required order and ``INF + 1 == INF``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable

from .graphs import Graph

INF = math.inf
MAX_VERTICES = 64


def format_count(x) -> str:
    return "inf" if x == INF else str(int(x))


def parse_count(s: str):
    return INF if s == "inf" else int(s)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if not 0 <= v < MAX_VERTICES:
            raise ValueError(f"vertex id {v} outside 0..{MAX_VERTICES - 1}")
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def normalize_edges(edges: Iterable[int]) -> tuple[int, ...]:
    """Drop duplicates and proper supersets; sorted result is the memo key."""
    kept: list[int] = []
    for e in sorted(set(edges), key=int.bit_count):
        for f in kept:
            if f & e == f:
                break
        else:
            kept.append(e)
    kept.sort()
    return tuple(kept)


def edge_components(edges: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Split edges into classes connected through shared vertices."""
    # group masks stay pairwise disjoint, so one pass per edge suffices
    groups: list[tuple[int, list[int]]] = []
    for e in edges:
        merged_mask, merged = e, [e]
        rest = []
        for mask, members in groups:
            if mask & e:
                merged_mask |= mask
                merged.extend(members)
            else:
                rest.append((mask, members))
        rest.append((merged_mask, merged))
        groups = rest
    return sorted(tuple(sorted(members)) for _, members in groups)


class Hypergraph:
    """Universe + edge family, with the ``maker_won`` flag for a shrunk-away edge."""

    __slots__ = ("universe", "edges", "maker_won")

    def __init__(self, universe: int, edges: Iterable[int], maker_won: bool = False):
        edges = tuple(sorted(set(edges)))
        for e in edges:
            if e & ~universe:
                raise ValueError("edge not contained in the universe")
        if universe >> MAX_VERTICES:
            raise ValueError(f"hypergraph vertex cap is {MAX_VERTICES}")
        if 0 in edges:
            raise ValueError("empty edges are represented by the maker_won flag")
        self.universe = universe
        self.edges = edges
        self.maker_won = maker_won

    @classmethod
    def from_sets(cls, edges: Iterable[Iterable[int]], universe: Iterable[int] | None = None) -> "Hypergraph":
        masks = [mask_of(e) for e in edges]
        won = 0 in masks
        masks = [m for m in masks if m]
        u = mask_of(universe) if universe is not None else 0
        for m in masks:
            u |= m
        return cls(u, masks, won)

    def vertices(self) -> list[int]:
        return bits(self.universe)

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(bits(e)) for e in self.edges]

    def _check_subset(self, X) -> int:
        x = mask_of(X)
        if x & ~self.universe:
            raise ValueError("vertex set is not a subset of the universe")
        return x

    def delete(self, X: Iterable[int]) -> "Hypergraph":
        """H - X: drop the vertices and every edge meeting them."""
        x = self._check_subset(X)
        return Hypergraph(self.universe & ~x, [e for e in self.edges if not e & x], self.maker_won)

    def shrink(self, X: Iterable[int]) -> "Hypergraph":
        """H | X: drop the vertices from the universe and from every edge."""
        x = self._check_subset(X)
        shrunk = [e & ~x for e in self.edges]
        won = self.maker_won or 0 in shrunk
        return Hypergraph(self.universe & ~x, [e for e in shrunk if e], won)

    def normalize(self) -> "Hypergraph":
        edges = normalize_edges(self.edges)
        u = 0
        for e in edges:
            u |= e
        return Hypergraph(u, edges, self.maker_won)

    def is_normalized(self) -> bool:
        u = 0
        for e in self.edges:
            u |= e
        return u == self.universe and normalize_edges(self.edges) == self.edges

    def components(self) -> list["Hypergraph"]:
        out = []
        for comp in edge_components(self.edges):
            u = 0
            for e in comp:
                u |= e
            out.append(Hypergraph(u, comp, False))
        return out

    def canonical_key(self):
        """Deterministic key: equal for equal (universe, edge family, flag).

        Relabelled copies generally get different keys.
        """
        if self.is_normalized() and not self.maker_won:
            return self.edges
        return (self.universe, self.edges, self.maker_won)

    def min_edge_size(self) -> int:
        return min((e.bit_count() for e in self.edges), default=0)

    def to_text(self) -> str:
        lines = ["{" + ", ".join(str(v) for v in bits(e)) + "}" for e in sorted(self.edges, key=lambda e: bits(e))]
        if self.maker_won:
            lines.insert(0, "{}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, universe: Iterable[int] | None = None) -> "Hypergraph":
        edges = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            m = re.fullmatch(r"\{([\d,\s]*)\}", line)
            if not m:
                raise ValueError(f"bad edge line {line!r}")
            body = m.group(1).strip()
            edges.append([int(t) for t in body.split(",")] if body else [])
        return cls.from_sets(edges, universe)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.universe, self.edges, self.maker_won) == (other.universe, other.edges, other.maker_won)

    def __hash__(self):
        return hash((self.universe, self.edges, self.maker_won))

    def __repr__(self):
        flag = ", maker_won" if self.maker_won else ""
        return f"Hypergraph(V={self.vertices()}, E={[sorted(s) for s in self.edge_sets()]}{flag})"


def closed_neighborhood_hypergraph(G: Graph) -> Hypergraph:
    """One hyperedge N[v] per vertex, no normalisation."""
    if G.n > MAX_VERTICES:
        raise ValueError(f"hypergraph vertex cap is {MAX_VERTICES}")
    masks = [mask_of(G.closed_neighborhood(v)) for v in G.vertices()]
    return Hypergraph((1 << G.n) - 1, masks)


def closed_neighborhood_family(G: Graph) -> list[frozenset[int]]:
    """The raw family N[v] in vertex order, duplicates kept."""
    return [G.closed_neighborhood(v) for v in G.vertices()]
