"""Closed-form Staller winning numbers for paths, subdivided stars and caterpillars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, subdivided_star
from .hypergraph import INF

T0 = "T0"
T1 = "T1"


def ceil_log2(m: int) -> int:
    if m < 1:
        raise ValueError("ceil_log2 needs m >= 1")
    return (m - 1).bit_length()


def floor_log2(m: int) -> int:
    if m < 1:
        raise ValueError("floor_log2 needs m >= 1")
    return m.bit_length() - 1


@dataclass(frozen=True)
class IntervalResult:
    """Bounds for a value the theory leaves open."""

    lower: int
    upper: int
    open: bool = True

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper


# ---------------------------------------------------------------------------
# paths

def path_value(n: int, game: str = "S"):
    """Staller's winning number on P_n: S-game finite only for odd n, D-game never."""
    if n < 1:
        raise ValueError("path order must be positive")
    if game.upper() == "D":
        return INF
    if game.upper() != "S":
        raise ValueError(f"unknown game {game!r}")
    return floor_log2(n) + 1 if n % 2 else INF


# ---------------------------------------------------------------------------
# subdivided stars

@dataclass(frozen=True)
class StarProfile:
    center: int
    branch_lengths: tuple[int, ...]

    @property
    def order(self) -> int:
        return 1 + sum(self.branch_lengths)

    @property
    def arms(self) -> int:
        return len(self.branch_lengths)

    def graph(self) -> Graph:
        return subdivided_star(*self.branch_lengths)


@dataclass(frozen=True)
class PathProfile:
    order: int


def recognize_star(G: Graph) -> StarProfile | PathProfile | None:
    """Subdivided star with >= 3 branches, a path, or None."""
    if not G.is_tree():
        return None
    hubs = [v for v in G.vertices() if G.degree(v) >= 3]
    if not hubs:
        return PathProfile(G.n)
    if len(hubs) > 1:
        return None
    (c,) = hubs
    lengths = []
    for first in sorted(G.neighbors(c)):
        prev, cur, length = c, first, 1
        while True:
            nxt = [u for u in G.neighbors(cur) if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return StarProfile(c, tuple(sorted(lengths)))


@dataclass(frozen=True)
class AllEvenClass:
    tag: str
    trace: tuple[tuple[int, int, int, bool, int], ...]


def _check_even(branches):
    if any(b <= 0 or b % 2 for b in branches):
        raise ValueError("branch lengths must be positive even integers")


def all_even3_value(n1: int, n2: int, n3: int) -> tuple[int, AllEvenClass]:
    """Exact S-game value of S(n1, n2, n3) with all branches even.

    While the longest branch alone reaches the order's log-ceiling k, it is
    cut by 2^(k-1) and the triple re-sorted; the type of the innermost
    triple then decides between k and k + 1 on the way back up.
    """
    _check_even((n1, n2, n3))
    a, b, c = sorted((n1, n2, n3))
    steps = []
    while True:
        n = a + b + c + 1
        k = ceil_log2(n)
        reducible = ceil_log2(c) == k
        steps.append((a, b, c, reducible, k))
        if not reducible:
            break
        a, b, c = sorted((a, b, c - 2 ** (k - 1)))
    a, b, c, _, k = steps[-1]
    tag = T1 if ceil_log2(a + b + 1) == k else T0
    for a, b, c, _, k in reversed(steps[:-1]):
        n = a + b + c + 1
        tag = T1 if tag == T1 and ceil_log2(n - 2 ** (k - 2)) == k else T0
    k0 = steps[0][4]
    return k0 + (1 if tag == T1 else 0), AllEvenClass(tag, tuple(steps))


def all_even_upper_bound(branches) -> int:
    """Staller's guaranteed finish on an all-even star with >= 3 branches."""
    if isinstance(branches, StarProfile):
        branches = branches.branch_lengths
    ns = sorted(branches, reverse=True)
    if len(ns) < 3:
        raise ValueError("need at least three branches")
    _check_even(ns)
    l = len(ns)
    terms = [i + ceil_log2(ns[i - 1]) for i in range(1, l - 1)]
    terms.append(l - 2 + ceil_log2(ns[-2] + ns[-1] + 1))
    return max(terms)


def star_value_sgame(profile: StarProfile | PathProfile):
    """S-game value of a subdivided star; an open :class:`IntervalResult`
    for all-even stars with four or more branches."""
    if isinstance(profile, PathProfile):
        return path_value(profile.order, "S")
    ns = profile.branch_lengths
    if len(ns) < 2 or any(b < 1 for b in ns):
        raise ValueError("invalid star profile")
    if len(ns) == 2:
        return path_value(profile.order, "S")
    odd = sorted(b for b in ns if b % 2)
    if len(odd) == 1:
        return INF
    if len(odd) >= 2:
        return ceil_log2(odd[0] + odd[1] + 1)
    if len(ns) == 3:
        return all_even3_value(*ns)[0]
    return IntervalResult(ceil_log2(profile.order), all_even_upper_bound(ns))


def z_family(l: int, p: int) -> tuple[Graph, int]:
    """The all-even star on which the upper bound is attained, with its value l + p - 1."""
    if l < 3 or p < 2:
        raise ValueError("Z(l, p) needs l >= 3 and p >= 2")
    return subdivided_star(*z_branches(l, p)), l + p - 1


def z_branches(l: int, p: int) -> tuple[int, ...]:
    if l < 3 or p < 2:
        raise ValueError("Z(l, p) needs l >= 3 and p >= 2")
    return tuple([2 ** (l + p - i - 2) for i in range(1, l - 1)] + [2 ** p - 2, 2])


# ---------------------------------------------------------------------------
# caterpillars

@dataclass(frozen=True)
class CaterpillarProfile:
    spine: tuple[int, ...]
    leaves_at: tuple[int, ...]
    p_o: tuple[tuple[int, ...], ...]
    p_co: tuple[tuple[int, ...], ...]
    p: Optional[int]
    p_star: Optional[int]
    common_vertex_exists: bool


def _common_vertex(paths) -> bool:
    if not paths:
        return False
    common = set(paths[0])
    for P in paths[1:]:
        common &= set(P)
    return bool(common)


def is_clean(G: Graph, path) -> bool:
    """Interior vertices beyond the two at each end all have degree 2."""
    return all(G.degree(u) == 2 for u in path[2:-2])


def recognize_caterpillar(G: Graph) -> Optional[CaterpillarProfile]:
    if G.n < 3 or not G.is_tree():
        return None
    inner = [v for v in G.vertices() if G.degree(v) >= 2]
    spine_graph, old = G.induced_subgraph(inner)
    if len(spine_graph.components()) != 1 or any(spine_graph.degree(v) > 2 for v in spine_graph.vertices()):
        return None
    if spine_graph.n == 1:
        spine = (old[0],)
    else:
        ends = [v for v in spine_graph.vertices() if spine_graph.degree(v) == 1]
        walk = spine_graph.path_between(min(ends), max(ends))
        spine = tuple(old[v] for v in walk)
    leaves_at = tuple(sum(1 for u in G.neighbors(v) if G.degree(u) == 1) for v in spine)

    leaves = G.leaves()
    p_o, p_co = [], []
    for i, a in enumerate(leaves):
        for b in leaves[i + 1:]:
            P = tuple(G.path_between(a, b))
            if len(P) % 2:
                p_o.append(P)
                if is_clean(G, P):
                    p_co.append(P)
    p = min((len(P) for P in p_co), default=None)
    common = _common_vertex(p_co)
    p_star = None
    if p_co and not common:
        for s in sorted({len(P) for P in p_co}):
            if not _common_vertex([P for P in p_co if len(P) <= s]):
                p_star = s
                break
    return CaterpillarProfile(spine, leaves_at, tuple(p_o), tuple(p_co), p, p_star, common)


def caterpillar_values(profile: CaterpillarProfile):
    """(D-game value, S-game value) of a caterpillar."""
    if not profile.p_co:
        return INF, INF
    prime = ceil_log2(profile.p)
    if profile.common_vertex_exists:
        return INF, prime
    return ceil_log2(profile.p_star), prime
