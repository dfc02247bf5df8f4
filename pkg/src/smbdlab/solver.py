"""Exact Maker-Breaker winning numbers by memoised game search.

Two engines share one :class:`Solver`:

* the default engine answers "can Maker (to move) win within k moves?" with
  a transposition table of value bounds, forced-reply detection, component
  splitting and the min-edge-size cutoff, and deepens k until the answer
  flips;
* the paranoid engine evaluates the plain min/max recursion
  ``wMM(H) = 1 + min_v wMB(H|v)`` and ``wMB(H) = max_v wMM(H-v)`` with no
  cutoffs at all.

States are normalised edge tuples (see :func:`normalize_edges`); the
universe is implied as the union of the edges.
"""

from __future__ import annotations

import logging
import os
import zlib
from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, NotATreeError
from .hypergraph import (
    INF,
    Hypergraph,
    bits,
    closed_neighborhood_hypergraph,
    edge_components,
    format_count,
    normalize_edges,
    parse_count,
)
from .trees import CapExceededError

log = logging.getLogger(__name__)

DEFAULT_CAP = 16
CACHE_HEADER = "# smbdlab memo v1"


@dataclass(frozen=True)
class SolveResult:
    value: float | int
    best_move: Optional[int]
    node_count: int


def _union(edges) -> int:
    u = 0
    for e in edges:
        u |= e
    return u


def _delete(edges, w: int):
    return normalize_edges([e for e in edges if not e & w])


def _min_size(edges) -> int:
    return min(e.bit_count() for e in edges)


def _maker_order(edges) -> list[int]:
    count: dict[int, int] = {}
    small: dict[int, int] = {}
    for e in edges:
        size = e.bit_count()
        for v in bits(e):
            count[v] = count.get(v, 0) + 1
            if size < small.get(v, 99):
                small[v] = size
    return sorted(count, key=lambda v: (-count[v], small[v], v))


def _breaker_order(edges) -> list[int]:
    count: dict[int, int] = {}
    small: dict[int, int] = {}
    for e in edges:
        size = e.bit_count()
        for v in bits(e):
            count[v] = count.get(v, 0) + 1
            if size < small.get(v, 99):
                small[v] = size
    return sorted(count, key=lambda v: (small[v], -count[v], v))


class Solver:
    """Winning-number oracle with a shared transposition table.

    ``cap`` bounds the number of vertices of any solved hypergraph or graph.
    ``paranoid=True`` switches every query to the cutoff-free recursion.
    """

    def __init__(self, cap: int = DEFAULT_CAP, paranoid: bool = False):
        self.cap = cap
        self.paranoid = paranoid
        self.nodes = 0
        # maker-start value bounds [lo, hi] per state
        self._bounds: dict[tuple[int, ...], list] = {}
        self._breaker: dict[tuple[int, ...], float | int] = {}
        self._p_maker: dict[tuple[int, ...], float | int] = {}
        self._p_breaker: dict[tuple[int, ...], float | int] = {}
        self._persisted: set = set()

    # ------------------------------------------------------------------
    # bounded search

    def _store(self, E, lo, hi):
        self._bounds[E] = [lo, hi]

    def _maker_wins(self, E: tuple[int, ...], k) -> bool:
        """True iff Maker, to move on ``E``, can claim an edge within ``k`` moves."""
        self.nodes += 1
        if not E:
            return False
        b = self._bounds.get(E)
        if b is not None:
            lo, hi = b
            if hi <= k:
                return True
            if lo > k:
                return False
        else:
            lo, hi = 1, INF
        m = _min_size(E)
        if m > lo:
            lo = m
        horizon = (_union(E).bit_count() + 1) // 2
        if k > horizon:
            k = horizon
        if lo > k:
            self._store(E, INF if k == horizon else lo, hi)
            return False
        if m == 1:
            self._store(E, 1, 1)
            return True

        comps = edge_components(E)
        if len(comps) > 1:
            comps.sort(key=_min_size)
            won = any(self._maker_wins(c, k) for c in comps)
        else:
            won = any(self._move_wins(E, v, k) for v in _maker_order(E))
        if won:
            hi = min(hi, k)
        else:
            lo = INF if k == horizon else k + 1
        self._store(E, lo, hi)
        return won

    def _move_wins(self, E, v: int, k) -> bool:
        """Does Maker's move ``v`` force a win within ``k`` moves in total?"""
        bit = 1 << v
        E1 = [e & ~bit for e in E]
        singles = set()
        for e in E1:
            if e.bit_count() <= 1:
                if e == 0:
                    return True
                singles.add(e)
        if k <= 1:
            return False
        if len(singles) >= 2:
            return True
        if singles:
            # Breaker must take the threatened vertex or lose at once
            (w,) = singles
            return self._maker_wins(_delete(E1, w), k - 1)
        if k - 1 < 2:
            return False
        E1 = normalize_edges(E1)
        for w in _breaker_order(E1):
            if not self._maker_wins(_delete(E1, 1 << w), k - 1):
                return False
        return True

    def _maker_value(self, E):
        if not E:
            return INF
        b = self._bounds.get(E)
        if b is not None and b[0] == b[1]:
            return b[0]
        horizon = (_union(E).bit_count() + 1) // 2
        k = max(_min_size(E), b[0] if b else 1)
        while k <= horizon:
            if self._maker_wins(E, k):
                return k
            k = self._bounds[E][0]
        return INF

    def _breaker_value(self, E):
        if not E:
            return INF
        if E in self._breaker:
            return self._breaker[E]
        u = _union(E)
        children = [_delete(E, 1 << w) for w in bits(u)]
        if any(not c for c in children):
            val = INF
        else:
            horizon = u.bit_count() // 2
            k = _min_size(E)
            val = INF
            while k <= horizon:
                if all(self._maker_wins(c, k) for c in children):
                    val = k
                    break
                k += 1
        self._breaker[E] = val
        return val

    # ------------------------------------------------------------------
    # plain recursion

    def _pm(self, E):
        if not E:
            return INF
        got = self._p_maker.get(E)
        if got is not None:
            return got
        self.nodes += 1
        best = INF
        for v in bits(_union(E)):
            bit = 1 << v
            E1 = [e & ~bit for e in E]
            if 0 in E1:
                val = 1
            else:
                val = 1 + self._pb(normalize_edges(E1))
            if val < best:
                best = val
        self._p_maker[E] = best
        return best

    def _pb(self, E):
        if not E:
            return INF
        got = self._p_breaker.get(E)
        if got is not None:
            return got
        self.nodes += 1
        best = -1
        for w in bits(_union(E)):
            val = self._pm(_delete(E, 1 << w))
            if val > best:
                best = val
        self._p_breaker[E] = best
        return best

    # ------------------------------------------------------------------
    # public queries on normalised edge tuples

    def maker_value_of(self, E: tuple[int, ...]):
        return self._pm(E) if self.paranoid else self._maker_value(E)

    def breaker_value_of(self, E: tuple[int, ...]):
        return self._pb(E) if self.paranoid else self._breaker_value(E)

    def _prepare(self, H: Hypergraph) -> tuple[int, ...]:
        if H.maker_won:
            raise ValueError("state already won by Maker (empty edge present)")
        E = normalize_edges(H.edges)
        if _union(E).bit_count() > self.cap:
            raise CapExceededError(f"{_union(E).bit_count()} active vertices exceed solver cap {self.cap}")
        return E

    def maker_start_value(self, H: Hypergraph) -> SolveResult:
        E = self._prepare(H)
        start = self.nodes
        val = self.maker_value_of(E)
        move = None
        if val != INF:
            for v in bits(_union(E)):
                bit = 1 << v
                E1 = [e & ~bit for e in E]
                if 0 in E1:
                    got = 1
                else:
                    got = 1 + self.breaker_value_of(normalize_edges(E1))
                if got == val:
                    move = v
                    break
        return SolveResult(val, move, self.nodes - start)

    def breaker_start_value(self, H: Hypergraph) -> SolveResult:
        """Maker's winning number when Breaker moves first.

        ``best_move`` is Breaker's optimal move (smallest id); it is also
        reported when the value is infinite, since Breaker then still has to
        pick a move that keeps Maker from winning.
        """
        E = self._prepare(H)
        start = self.nodes
        val = self.breaker_value_of(E)
        move = None
        for w in bits(_union(E)):
            if self.maker_value_of(_delete(E, 1 << w)) == val:
                move = w
                break
        return SolveResult(val, move, self.nodes - start)

    # ------------------------------------------------------------------
    # graphs

    def _graph_edges(self, G: Graph) -> tuple[int, ...]:
        if G.n > self.cap:
            raise CapExceededError(f"graph on {G.n} vertices exceeds solver cap {self.cap}")
        return normalize_edges(closed_neighborhood_hypergraph(G).edges)

    def gamma_smb_prime(self, G: Graph):
        return self.maker_value_of(self._graph_edges(G))

    def gamma_smb(self, G: Graph):
        return self.breaker_value_of(self._graph_edges(G))

    def solve_tree_sgame(self, T: Graph) -> SolveResult:
        """S-game value of a tree, restricting Dominator's first reply to N(s_1).

        The restricted evaluation can only under-estimate a first move, so the
        candidate moves are then confirmed with unrestricted replies in order
        of their restricted value until no smaller value is possible.
        """
        if not T.is_tree():
            raise NotATreeError("solve_tree_sgame needs a tree")
        E = self._graph_edges(T)
        start = self.nodes
        if T.n == 1:
            return SolveResult(1, 0, 0)

        def comp_min(edges):
            return min((self.maker_value_of(c) for c in edge_components(edges)), default=INF)

        restricted = []
        for s in T.vertices():
            bit = 1 << s
            E1 = normalize_edges([e & ~bit for e in E])
            worst = max(comp_min(_delete(E1, 1 << d)) for d in T.neighbors(s))
            restricted.append((1 + worst, s, E1))
        restricted.sort(key=lambda t: (t[0], t[1]))

        best = INF
        confirmed = {}
        for bound, s, E1 in restricted:
            if bound >= best:
                break
            confirmed[s] = 1 + self.breaker_value_of(E1)
            best = min(best, confirmed[s])
        best_move = None
        if best != INF:
            # smallest-id optimum, matching maker_start_value
            for bound, s, E1 in sorted(restricted, key=lambda t: t[1]):
                if bound <= best:
                    if s not in confirmed:
                        confirmed[s] = 1 + self.breaker_value_of(E1)
                    if confirmed[s] == best:
                        best_move = s
                        break
        return SolveResult(best, best_move, self.nodes - start)

    # ------------------------------------------------------------------
    # memo inspection and persistence

    def exact_entries(self):
        """Yield (state, maker value or None, breaker value or None) for every state with a known value."""
        keys = set(self._bounds) | set(self._breaker) | set(self._p_maker) | set(self._p_breaker)
        for E in sorted(keys, key=lambda e: (len(e), e)):
            m = self._p_maker.get(E)
            if m is None:
                b = self._bounds.get(E)
                if b is not None and b[0] == b[1]:
                    m = b[0]
            br = self._p_breaker.get(E, self._breaker.get(E))
            if m is not None or br is not None:
                yield E, m, br

    @staticmethod
    def _read_cache(path):
        """Records of a cache file, or None when it is missing or corrupt."""
        if not os.path.exists(path):
            return None
        records = []
        try:
            with open(path, encoding="ascii") as fh:
                lines = fh.read().splitlines()
            if not lines or lines[0] != CACHE_HEADER:
                raise ValueError("bad header")
            for line in lines[1:]:
                body, crc = line.rsplit(" ", 1)
                if int(crc, 16) != zlib.crc32(body.encode()):
                    raise ValueError("checksum mismatch")
                edges_s, m_s, b_s = body.split(" ")
                E = tuple(int(t, 16) for t in edges_s.split(","))
                if normalize_edges(E) != E:
                    raise ValueError("unnormalised state")
                records.append((E, None if m_s == "-" else parse_count(m_s), None if b_s == "-" else parse_count(b_s)))
        except (OSError, ValueError, UnicodeDecodeError) as exc:
            log.warning("ignoring memo cache %s: %s", path, exc)
            return None
        return records

    def load_cache(self, path) -> int:
        """Merge records from an on-disk cache; a corrupt file is ignored entirely."""
        records = self._read_cache(path)
        if records is None:
            return 0
        for E, m, br in records:
            if m is not None:
                self._bounds[E] = [m, m]
                if self.paranoid:
                    self._p_maker[E] = m
            if br is not None:
                self._breaker[E] = br
                if self.paranoid:
                    self._p_breaker[E] = br
            self._persisted.add(E)
        return len(records)

    def save_cache(self, path) -> int:
        """Append records not yet on disk; start a fresh file if missing or corrupt."""
        fresh = self._read_cache(path) is None
        written = 0
        with open(path, "w" if fresh else "a", encoding="ascii") as fh:
            if fresh:
                fh.write(CACHE_HEADER + "\n")
                self._persisted.clear()
            for E, m, br in self.exact_entries():
                if not E or E in self._persisted:
                    continue
                body = "{} {} {}".format(
                    ",".join(format(e, "x") for e in E),
                    "-" if m is None else format_count(m),
                    "-" if br is None else format_count(br),
                )
                fh.write(f"{body} {zlib.crc32(body.encode()):08x}\n")
                self._persisted.add(E)
                written += 1
        return written


_default = Solver()


def default_solver() -> Solver:
    return _default


def maker_start_value(H: Hypergraph, solver: Solver | None = None) -> SolveResult:
    return (solver or _default).maker_start_value(H)


def breaker_start_value(H: Hypergraph, solver: Solver | None = None) -> SolveResult:
    return (solver or _default).breaker_start_value(H)


def gamma_smb_prime(G: Graph, solver: Solver | None = None):
    """Staller's winning number in the S-game (Staller moves first)."""
    return (solver or _default).gamma_smb_prime(G)


def gamma_smb(G: Graph, solver: Solver | None = None):
    """Staller's winning number in the D-game (Dominator moves first)."""
    return (solver or _default).gamma_smb(G)


def solve_tree_sgame(T: Graph, solver: Solver | None = None) -> SolveResult:
    return (solver or _default).solve_tree_sgame(T)
