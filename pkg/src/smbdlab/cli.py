"""Command-line entry point: ``smbdlab {solve,formula,verify,enumerate,z-family,play}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .formulas import (
    IntervalResult,
    PathProfile,
    StarProfile,
    caterpillar_values,
    path_value,
    recognize_caterpillar,
    recognize_star,
    star_value_sgame,
    z_branches,
    z_family,
)
from .graphs import Graph, GraphFormatError, format_edge_list, parse_edge_list, parse_graph6, staller_wins, to_graph6
from .hypergraph import INF, format_count
from .play import DOMINATOR, STALLER, STALLER_WIN, Transcript, optimal_strategy, other, staller_completed
from .solver import DEFAULT_CAP, Solver
from .structures import min_rank_substructure
from .trees import CapExceededError, canonical_graph6, enumerate_trees

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_DISCREPANCY = 4

CSV_FIELDS = [
    "graph",
    "n",
    "family",
    "method",
    "solver_gamma_smb",
    "solver_gamma_smb_prime",
    "other_gamma_smb",
    "other_gamma_smb_prime",
    "agree",
]


def _count(x):
    if x is None:
        return None
    if isinstance(x, IntervalResult):
        return {"lower": x.lower, "upper": x.upper, "status": "OPEN"}
    return format_count(x) if x == INF else int(x)


def read_graph(path: str, fmt: str) -> Graph:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    if fmt == "graph6":
        return parse_graph6(text.strip().splitlines()[-1] if text.strip() else "")
    return parse_edge_list(text)


def family_of(G: Graph) -> str:
    if not G.is_tree():
        return "forest" if G.is_forest() else "graph"
    shape = recognize_star(G)
    if isinstance(shape, PathProfile):
        return "path"
    if isinstance(shape, StarProfile):
        return "star"
    if recognize_caterpillar(G) is not None:
        return "caterpillar"
    return "tree"


def record(G: Graph, method: str, gamma, gamma_prime, started: float, **extra) -> dict:
    out = {
        "graph": canonical_graph6(G),
        "family": family_of(G),
        "gamma_smb": _count(gamma),
        "gamma_smb_prime": _count(gamma_prime),
        "method": method,
        "time_ms": round((time.perf_counter() - started) * 1000, 3),
    }
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# formula dispatch

def formula_values(G: Graph, cap: int = DEFAULT_CAP):
    """(gamma, gamma_prime, method, extra) from whichever closed form applies."""
    if not G.is_tree():
        raise ValueError("closed forms are only available for trees")
    shape = recognize_star(G)
    if isinstance(shape, PathProfile):
        return path_value(G.n, "D"), path_value(G.n, "S"), "formula", {}
    if isinstance(shape, StarProfile):
        val = star_value_sgame(shape)
        extra = {"branches": list(shape.branch_lengths)}
        if isinstance(val, IntervalResult) and G.n <= cap:
            extra["exact"] = _count(Solver(cap).gamma_smb_prime(G))
        return INF, val, "formula", extra
    cat = recognize_caterpillar(G)
    if cat is not None:
        g, gp = caterpillar_values(cat)
        return g, gp, "formula", {}
    found = min_rank_substructure(G)
    gp = INF if found is None else found[1]
    g = None if staller_wins(G, "D") else INF
    extra = {"certificate": found[0].to_text()} if found else {}
    return g, gp, "structure", extra


# ---------------------------------------------------------------------------
# verify sweeps

def _family_graphs(family: str, max_n: int):
    for n in range(1, max_n + 1):
        for T in enumerate_trees(n, cap=max(max_n, 1)):
            if family == "trees":
                yield T
            elif family == "caterpillars" and recognize_caterpillar(T) is not None:
                yield T
            elif family == "stars" and isinstance(recognize_star(T), StarProfile):
                yield T


_worker_solver: Solver | None = None


def _verify_one(task) -> dict:
    global _worker_solver
    g6, family, cap = task
    if _worker_solver is None or _worker_solver.cap != cap:
        _worker_solver = Solver(cap)
    s = _worker_solver
    G = parse_graph6(g6)
    sp = s.gamma_smb_prime(G)
    row = {"graph": g6, "n": G.n, "family": family_of(G), "solver_gamma_smb_prime": format_count(sp)}
    if family == "trees":
        found = min_rank_substructure(G, cap=max(cap, G.n))
        other_p = INF if found is None else found[1]
        row.update(method="structure", solver_gamma_smb="", other_gamma_smb="", other_gamma_smb_prime=format_count(other_p))
        row["agree"] = other_p == sp
    elif family == "caterpillars":
        sg = s.gamma_smb(G)
        fg, fp = caterpillar_values(recognize_caterpillar(G))
        row.update(method="formula", solver_gamma_smb=format_count(sg), other_gamma_smb=format_count(fg))
        row["other_gamma_smb_prime"] = format_count(fp)
        row["agree"] = (fg, fp) == (sg, sp)
    else:
        sg = s.gamma_smb(G)
        val = star_value_sgame(recognize_star(G))
        row.update(method="formula", solver_gamma_smb=format_count(sg), other_gamma_smb="inf")
        if isinstance(val, IntervalResult):
            row["other_gamma_smb_prime"] = f"[{val.lower},{val.upper}]"
            row["agree"] = val.contains(sp) and sg == INF
        else:
            row["other_gamma_smb_prime"] = format_count(val)
            row["agree"] = val == sp and sg == INF
    row["agree"] = "yes" if row["agree"] else "no"
    return row


def verify_rows(family: str, max_n: int, jobs: int = 1, cap: int = DEFAULT_CAP) -> list[dict]:
    if max_n > cap:
        raise CapExceededError(f"max-n {max_n} exceeds solver cap {cap}")
    tasks = sorted((canonical_graph6(T), family, cap) for T in _family_graphs(family, max_n))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_verify_one, tasks, chunksize=8))
    else:
        rows = [_verify_one(t) for t in tasks]
    return sorted(rows, key=lambda r: r["graph"])


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# interactive play

def play_session(G: Graph, human: str, first: str, input_fn=None, out=print, solver: Solver | None = None) -> Transcript:
    input_fn = input_fn or input
    engine_role = other(human)
    engine = optimal_strategy(G, engine_role, solver)
    t = Transcript()
    turn = first
    mine = set()
    out(f"graph on {G.n} vertices, edges " + " ".join(f"{u}-{v}" for u, v in G.edges()))
    while len(t.moves) < G.n:
        if turn == human:
            played = t.played()
            while True:
                raw = input_fn(f"{human} move (0..{G.n - 1}): ").strip()
                try:
                    v = int(raw)
                except ValueError:
                    out(f"not a vertex id: {raw!r}")
                    continue
                if not 0 <= v < G.n:
                    out(f"vertex {v} out of range")
                elif v in played:
                    out(f"vertex {v} already played")
                else:
                    break
        else:
            v = engine.next_move(t)
            out(f"{engine_role} plays {v}")
        t.moves.append((turn, v))
        if turn == STALLER:
            t.staller_moves += 1
            mine.add(v)
            if staller_completed(G, mine, v):
                t.status = STALLER_WIN
                out(f"Staller wins after {t.staller_moves} moves")
                return t
        turn = other(turn)
    t.status = "dominator-win"
    out("Dominator wins: every closed neighbourhood holds a Dominator vertex")
    return t


# ---------------------------------------------------------------------------
# commands

def cmd_solve(args) -> int:
    G = read_graph(args.input, args.format)
    s = Solver(args.cap)
    if args.cache:
        s.load_cache(args.cache)
    started = time.perf_counter()
    if G.n > args.cap:
        raise CapExceededError(f"graph on {G.n} vertices, cap {args.cap}")
    g = s.gamma_smb(G) if args.game in ("d", "both") else None
    gp = s.gamma_smb_prime(G) if args.game in ("s", "both") else None
    rec = record(G, "solver", g, gp, started)
    if args.cache:
        s.save_cache(args.cache)
    print(json.dumps(rec))
    return EXIT_OK


def cmd_formula(args) -> int:
    G = read_graph(args.input, args.format)
    started = time.perf_counter()
    try:
        g, gp, method, extra = formula_values(G, args.cap)
    except ValueError as e:
        if isinstance(e, CapExceededError):
            raise
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(record(G, method, g, gp, started, **extra)))
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = verify_rows(args.family, args.max_n, args.jobs, args.cap)
    body = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    bad = [r for r in rows if r["agree"] != "yes"]
    print(f"{len(rows)} graphs, {len(bad)} discrepancies", file=sys.stderr)
    if bad:
        r = bad[0]
        repro = (
            f"graph6 {r['graph']}\n"
            f"solver gamma_smb={r['solver_gamma_smb']} gamma_smb_prime={r['solver_gamma_smb_prime']}\n"
            f"{r['method']} gamma_smb={r['other_gamma_smb']} gamma_smb_prime={r['other_gamma_smb_prime']}\n"
        )
        sys.stderr.write(repro)
        if args.reproducer:
            with open(args.reproducer, "w", encoding="utf-8") as fh:
                fh.write(repro)
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_enumerate(args) -> int:
    for n in range(1, args.max_n + 1):
        for T in enumerate_trees(n, cap=args.cap):
            print(canonical_graph6(T))
    return EXIT_OK


def cmd_z_family(args) -> int:
    if args.l < 3 or args.p < 2:
        print("usage error: Z(l, p) needs l >= 3 and p >= 2", file=sys.stderr)
        return EXIT_PARSE
    G, expected = z_family(args.l, args.p)
    if args.emit == "edge-list":
        sys.stdout.write(format_edge_list(G))
        print(f"# expected {expected}")
    else:
        print(json.dumps({"graph": to_graph6(G), "branches": list(z_branches(args.l, args.p)), "n": G.n, "expected": expected}))
    return EXIT_OK


def cmd_play(args) -> int:
    G = read_graph(args.input, args.format)
    if G.n > args.cap:
        raise CapExceededError(f"graph on {G.n} vertices, cap {args.cap}")
    human = DOMINATOR if args.human.startswith("d") else STALLER
    first = DOMINATOR if args.first == "d" else STALLER
    t = play_session(G, human, first, solver=Solver(args.cap))
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as fh:
            fh.write(t.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smbdlab", description="Exact Staller-Maker-Breaker domination numbers.")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_input(p):
        p.add_argument("input", help="graph file, '-' for stdin")
        p.add_argument("--format", choices=["edge-list", "graph6"], default="edge-list")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("solve", help="exact solver values")
    graph_input(p)
    p.add_argument("--game", choices=["d", "s", "both"], default="both")
    p.add_argument("--cache", help="on-disk memo file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("formula", help="closed-form values")
    graph_input(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="compare solver and formulas over a family")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--family", choices=["trees", "caterpillars", "stars"], default="trees")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.add_argument("--reproducer", help="write the first discrepancy here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list trees as canonical graph6")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--cap", type=int, default=14)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("z-family", help="the sharp all-even stars Z(l, p)")
    p.add_argument("l", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--emit", choices=["graph6", "edge-list"], default="graph6")
    p.set_defaults(func=cmd_z_family)

    p = sub.add_parser("play", help="play against the solver")
    graph_input(p)
    p.add_argument("--human", choices=["dominator", "staller"], required=True)
    p.add_argument("--first", choices=["d", "s"], default="s")
    p.add_argument("--transcript", help="save the game transcript")
    p.set_defaults(func=cmd_play)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (EOFError, KeyboardInterrupt):
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
