"""Executable strategies, a match runner and exhaustive strategy checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .graphs import Graph, Matching
from .hypergraph import Hypergraph, closed_neighborhood_hypergraph
from .trees import CapExceededError

DOMINATOR = "dominator"
STALLER = "staller"

ONGOING = "ongoing"
STALLER_WIN = "staller-win"
DOMINATOR_WIN = "dominator-win"
FORFEIT = "forfeit"

PAIRING_CAP = 16


def _role(first: str) -> str:
    r = first.lower()
    if r in ("d", DOMINATOR):
        return DOMINATOR
    if r in ("s", STALLER):
        return STALLER
    raise ValueError(f"unknown role {first!r}")


def other(role: str) -> str:
    return STALLER if role == DOMINATOR else DOMINATOR


@dataclass
class Transcript:
    moves: list[tuple[str, int]] = field(default_factory=list)
    status: str = ONGOING
    staller_moves: int = 0
    forfeited_by: Optional[str] = None

    def played(self) -> set[int]:
        return {v for _, v in self.moves}

    def by(self, role: str) -> set[int]:
        return {v for r, v in self.moves if r == role}

    def to_text(self) -> str:
        lines = [f"{r} {v}" for r, v in self.moves]
        if self.status == STALLER_WIN:
            lines.append(f"status {STALLER_WIN} {self.staller_moves}")
        elif self.status == FORFEIT:
            lines.append(f"status {FORFEIT} {self.forfeited_by}")
        else:
            lines.append(f"status {self.status}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Transcript":
        t = cls()
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "status":
                t.status = parts[1]
                if t.status == STALLER_WIN:
                    t.staller_moves = int(parts[2])
                elif t.status == FORFEIT:
                    t.forfeited_by = parts[2]
            else:
                t.moves.append((_role(parts[0]), int(parts[1])))
        if t.status != STALLER_WIN:
            t.staller_moves = sum(1 for r, _ in t.moves if r == STALLER)
        return t


@dataclass
class Strategy:
    """A player's deterministic move policy.

    ``next_move`` sees the transcript so far and returns an unplayed vertex.
    ``positional`` promises the choice depends only on the two claimed sets
    and the opponent's last move, which lets exhaustive checks share work.
    """

    role: str
    next_move: Callable[[Transcript], int]
    certificate: object = None
    positional: bool = False


def staller_completed(G: Graph, staller: set[int], v: int) -> bool:
    """Did claiming ``v`` complete some closed neighbourhood?"""
    return any(G.closed_neighborhood(u) <= staller for u in G.closed_neighborhood(v))


def dominated(G: Graph, dominator: set[int]) -> bool:
    return all(G.closed_neighborhood(u) & dominator for u in G.vertices())


# ---------------------------------------------------------------------------
# pairing

def _forest_cover(G: Graph, avail: set[int], required: set[int]) -> Optional[list[tuple[int, int]]]:
    """Matching inside ``avail`` covering ``required`` (forest host), by tree DP."""
    seen: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for root in sorted(avail):
        if root in seen:
            continue
        order, parent = [root], {root: None}
        seen.add(root)
        for v in order:
            for u in sorted(G.adjacency[v]):
                if u in avail and u not in seen:
                    seen.add(u)
                    parent[u] = v
                    order.append(u)
        # free[v]: subtree ok with v left for its parent; done[v]: ok with v settled inside
        free, done, choice = {}, {}, {}
        for v in reversed(order):
            kids = [u for u in G.adjacency[v] if parent.get(u) == v and u in avail]
            all_done = all(done[c] for c in kids)
            free[v] = all_done
            choice[v] = None
            if v not in required and all_done:
                done[v] = True
                continue
            done[v] = False
            for c in kids:
                if free[c] and all(done[o] for o in kids if o != c):
                    done[v] = True
                    choice[v] = c
                    break
        if not done[root]:
            return None

        def settle(v):
            c = choice[v]
            for u in G.adjacency[v]:
                if parent.get(u) == v and u in avail:
                    if u == c:
                        pairs.append((v, u))
                        for w in G.adjacency[u]:
                            if parent.get(w) == u and w in avail:
                                settle(w)
                    else:
                        settle(u)

        settle(root)
    return pairs


def _exhaustive_cover(G: Graph, avail: set[int], required: set[int]) -> Optional[list[tuple[int, int]]]:
    def search(req: frozenset, free: frozenset):
        if not req:
            return []
        r = min(req)
        for u in sorted(G.adjacency[r]):
            if u in free:
                rest = search(req - {r, u}, free - {r, u})
                if rest is not None:
                    return [(r, u)] + rest
        return None

    return search(frozenset(required), frozenset(avail))


def pairing_matching(G: Graph, X=(), Y=()) -> Optional[Matching]:
    """Matching in G - (X u Y) whose uncovered vertices are all dominated by X.

    ``X`` holds Dominator's moves, ``Y`` Staller's.
    """
    X, Y = set(X), set(Y)
    if X & Y:
        raise ValueError("Dominator and Staller sets overlap")
    dominated_by_x = set()
    for x in X:
        dominated_by_x |= G.closed_neighborhood(x)
    avail = set(G.vertices()) - X - Y
    required = set(G.vertices()) - dominated_by_x
    if required - avail:
        return None
    if G.is_forest():
        pairs = _forest_cover(G, avail, required)
    elif G.n <= PAIRING_CAP:
        pairs = _exhaustive_cover(G, avail, required)
    else:
        raise CapExceededError(f"pairing search on a non-forest limited to {PAIRING_CAP} vertices")
    return None if pairs is None else Matching.of(pairs)


def certifies(G: Graph, M: Matching, X=(), Y=()) -> bool:
    X, Y = set(X), set(Y)
    if not M.is_valid_in(G) or M.vertices() & (X | Y):
        return False
    dom = set()
    for x in X:
        dom |= G.closed_neighborhood(x)
    return set(G.vertices()) - M.vertices() <= dom


def dominator_pairing_strategy(G: Graph, M: Matching, opening: Optional[int] = None, X=(), Y=()) -> Strategy:
    """Answer a Staller move inside a pair with its partner, else the smallest free id.

    ``opening`` is Dominator's first move when he starts; the certificate
    must then witness the position after it.
    """
    X = set(X) | ({opening} if opening is not None else set())
    if not certifies(G, M, X, Y):
        raise ValueError("stale certificate: matching does not witness the pairing condition")
    partner = M.partner()

    def next_move(t: Transcript) -> int:
        played = t.played()
        if opening is not None and opening not in played:
            return opening
        if t.moves and t.moves[-1][0] == STALLER:
            mate = partner.get(t.moves[-1][1])
            if mate is not None and mate not in played:
                return mate
        return min(v for v in G.vertices() if v not in played)

    return Strategy(DOMINATOR, next_move, M, positional=opening is None)


# ---------------------------------------------------------------------------
# solver-driven play

def position(G: Graph, t: Transcript) -> Hypergraph:
    """Closed-neighbourhood hypergraph after Staller's shrinks and Dominator's deletes."""
    H = closed_neighborhood_hypergraph(G)
    return H.shrink(t.by(STALLER)).delete(t.by(DOMINATOR))


def optimal_strategy(G: Graph, role: str, solver=None) -> Strategy:
    from .solver import default_solver

    role = _role(role)
    engine = solver or default_solver()
    if G.n > engine.cap:
        raise CapExceededError(f"graph on {G.n} vertices exceeds solver cap {engine.cap}")

    def next_move(t: Transcript) -> int:
        played = t.played()
        H = position(G, t).normalize()
        move = None
        if H.edges and not H.maker_won:
            res = engine.maker_start_value(H) if role == STALLER else engine.breaker_start_value(H)
            move = res.best_move
        if move is None:
            move = min(v for v in G.vertices() if v not in played)
        return move

    return Strategy(role, next_move, "solver")


# ---------------------------------------------------------------------------
# running games

def play_match(G: Graph, staller: Strategy, dominator: Strategy, first: str = STALLER) -> Transcript:
    """Alternate moves until Staller owns a closed neighbourhood or the board is full."""
    t = Transcript()
    turn = _role(first)
    players = {STALLER: staller, DOMINATOR: dominator}
    claimed = {STALLER: set(), DOMINATOR: set()}
    while len(t.moves) < G.n:
        try:
            v = players[turn].next_move(t)
        except Exception:
            v = None
        if not isinstance(v, int) or not 0 <= v < G.n or v in t.played():
            t.status, t.forfeited_by = FORFEIT, turn
            return t
        t.moves.append((turn, v))
        claimed[turn].add(v)
        if turn == STALLER:
            t.staller_moves += 1
            if staller_completed(G, claimed[STALLER], v):
                t.status = STALLER_WIN
                return t
        turn = other(turn)
    t.status = DOMINATOR_WIN
    return t


def verify_strategy_bound(G: Graph, s: Strategy, bound: int, first: str = STALLER, cap: int = 16) -> bool:
    """Does Staller's strategy win within ``bound`` moves against every Dominator?"""
    if G.n > cap:
        raise CapExceededError(f"exhaustive walk limited to {cap} vertices")
    first = _role(first)

    def walk(t: Transcript, turn: str) -> bool:
        played = t.played()
        if turn == STALLER:
            v = s.next_move(t)
            if not isinstance(v, int) or not 0 <= v < G.n or v in played:
                return False
            t.moves.append((STALLER, v))
            try:
                mine = t.by(STALLER)
                if staller_completed(G, mine, v):
                    return len(mine) <= bound
                if len(mine) >= bound or len(t.moves) == G.n:
                    return False
                return walk(t, DOMINATOR)
            finally:
                t.moves.pop()
        if dominated(G, t.by(DOMINATOR)):
            return False
        for d in G.vertices():
            if d in played:
                continue
            t.moves.append((DOMINATOR, d))
            try:
                ok = len(t.moves) < G.n and walk(t, STALLER)
            finally:
                t.moves.pop()
            if not ok:
                return False
        return True

    return walk(Transcript(), first)


def verify_dominator_strategy(G: Graph, d: Strategy, first: str = STALLER, cap: int = 16) -> bool:
    """Does Dominator's strategy stop every Staller play line?"""
    if G.n > cap:
        raise CapExceededError(f"exhaustive walk limited to {cap} vertices")
    first = _role(first)
    memo: dict = {}

    def walk(t: Transcript, turn: str) -> bool:
        played = t.played()
        if len(played) == G.n:
            return True
        if turn == DOMINATOR:
            v = d.next_move(t)
            if not isinstance(v, int) or not 0 <= v < G.n or v in played:
                return False
            t.moves.append((DOMINATOR, v))
            try:
                return walk(t, STALLER)
            finally:
                t.moves.pop()
        dom = frozenset(t.by(DOMINATOR))
        if dominated(G, dom):
            return True
        key = (frozenset(t.by(STALLER)), dom) if d.positional else None
        if key is not None and key in memo:
            return memo[key]
        ok = True
        for v in G.vertices():
            if v in played:
                continue
            t.moves.append((STALLER, v))
            try:
                if staller_completed(G, t.by(STALLER), v):
                    ok = False
                else:
                    ok = walk(t, DOMINATOR)
            finally:
                t.moves.pop()
            if not ok:
                break
        if key is not None:
            memo[key] = ok
        return ok

    return walk(Transcript(), first)
