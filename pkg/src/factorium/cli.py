"""Command-line front end.

Exit codes: 0 the property holds or the object was found, 1 it was not found
or a counterexample exists, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from .enumeration import (
    default_jobs,
    enumerate_graphs,
    enumerate_ore_graphs,
    enumerate_regular_graphs,
    format_report,
    search_kfactor_counterexample,
    search_win_counterexample,
)
from .factor import (
    find_extremal_certificate,
    find_k_factor,
    find_tutte_certificate,
    format_certificate,
)
from .factorization import (
    decompose_via_factor,
    format_factorization,
    k_disjoint_perfect_matchings,
    one_factorization,
)
from .graph import Graph, GraphFormatError, emit_graph6, ore_report, parse_dimacs, parse_graph6
from .ledger import format_result, run_ledger

FOUND, NOT_FOUND, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_graphs(args: argparse.Namespace) -> list[tuple[str, Graph]]:
    if args.graph is not None:
        sources = [args.graph]
    else:
        if args.file is not None:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
        else:
            text = sys.stdin.read()
        if any(line.split()[:2] == ["p", "edge"] for line in text.splitlines() if line.strip()):
            try:
                g = parse_dimacs(text)
            except (GraphFormatError, ValueError) as exc:
                raise InputError(f"bad DIMACS input: {exc}") from exc
            return [(emit_graph6(g).decode() if g.n <= 62 else "dimacs", g)]
        sources = [line.strip() for line in text.splitlines() if line.strip()]
    if not sources:
        raise InputError("no graph given (positional graph6, --file, or stdin)")
    out = []
    for src in sources:
        try:
            out.append((src, parse_graph6(src)))
        except GraphFormatError as exc:
            raise InputError(f"bad graph6 {src!r}: {exc}") from exc
    return out


def _emit(args, command: str, params: dict, result: Any, witness: Any, text: str, start: float) -> None:
    if args.json:
        obj = {
            "command": command,
            "params": params,
            "result": result,
            "witness": witness,
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
        }
        print(json.dumps(obj, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _edges_text(edges) -> str:
    return "".join(f"({u},{v})" for u, v in edges)


def _per_graph(args: argparse.Namespace) -> int:
    worst = FOUND
    for src, g in _read_graphs(args):
        start = time.perf_counter()
        params = {"graph": src}
        if getattr(args, "k", None) is not None:
            params["k"] = args.k
        code = _run_one(args, g, params, start)
        worst = max(worst, code)
    return worst


def _run_one(args: argparse.Namespace, g: Graph, params: dict, start: float) -> int:
    cmd = args.command
    k = getattr(args, "k", None)
    if k is not None and k < 1:
        raise InputError("--k must be positive")

    if cmd == "ore-check":
        rep = ore_report(g, k)
        deficit = None if rep.deficit == float("inf") else rep.deficit
        text = (
            f"deficit={'inf' if deficit is None else deficit} "
            f"witness={rep.witness_pair} ore={'yes' if rep.is_ore_type else 'no'}"
        )
        result = {"is_ore_type": rep.is_ore_type, "deficit": deficit}
        _emit(args, cmd, params, result, rep.witness_pair, text, start)
        return FOUND if rep.is_ore_type else NOT_FOUND

    if cmd == "factor":
        fac = find_k_factor(g, k)
        if fac is None:
            _emit(args, cmd, params, False, None, "none", start)
            return NOT_FOUND
        edges = [list(e) for e in fac.edges]
        _emit(args, cmd, params, True, edges, f"k={k} factor: {_edges_text(fac.edges)}", start)
        return FOUND

    if cmd == "certificate":
        if args.extremal:
            ext = find_extremal_certificate(g, k)
            cert = None if ext is None else ext.base
        else:
            ext = None
            cert = find_tutte_certificate(g, k)
        if cert is None:
            _emit(args, cmd, params, False, None, "none", start)
            return NOT_FOUND
        witness = {
            "S": list(cert.S),
            "T": list(cert.T),
            "eta": cert.eta,
            "odd": [list(c) for c in cert.odd_components],
        }
        text = format_certificate(cert)
        if ext is not None:
            witness.update(
                u_size=ext.u_size,
                rest_size=ext.rest_size,
                excess_t_edges=list(ext.excess_t_edges),
                low_degree=list(ext.low_degree),
            )
            text += (
                f"U: {ext.u_size}\nrest: {ext.rest_size}\n"
                f"conclusions: {'hold' if ext.conclusions_hold else 'violated'}\n"
            )
        _emit(args, cmd, params, True, witness, text, start)
        return FOUND

    if cmd in ("decompose", "disjoint-pms"):
        try:
            if cmd == "decompose" and k is None:
                fac = one_factorization(g)
            elif cmd == "decompose":
                fac = decompose_via_factor(g, k)
            else:
                fac = k_disjoint_perfect_matchings(g, k)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if fac is None:
            _emit(args, cmd, params, False, None, "none", start)
            return NOT_FOUND
        witness = [[list(e) for e in m.edges] for m in fac.matchings]
        _emit(args, cmd, params, True, witness, format_factorization(fac), start)
        return FOUND

    raise AssertionError(cmd)


def _search(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    fn = search_win_counterexample if args.command == "search-win" else search_kfactor_counterexample
    try:
        report = fn(args.n, args.k, jobs=args.jobs, progress=sys.stderr)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    result = {
        "scanned": report.graphs_scanned,
        "ore": report.ore_graphs,
        "failures": len(report.failures),
    }
    _emit(args, args.command, {"n": args.n, "k": args.k}, result, report.failures, format_report(report), start)
    return FOUND if report.holds else NOT_FOUND


def _ledger(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    results = run_ledger(args.k_max, args.qp_k_max, args.m_range)
    lines = [format_result(r) for r in results]
    ok = all(r.passed for r in results)
    result = {r.check_name: {"passed": r.passed, "points": r.grid_points_tested} for r in results}
    witness = {r.check_name: r.violations[:5] for r in results if not r.passed}
    params = {"k_max": args.k_max, "qp_k_max": args.qp_k_max, "m_range": args.m_range}
    _emit(args, "ledger", params, result, witness or None, "\n".join(lines), start)
    return FOUND if ok else NOT_FOUND


def _enumerate_shard(spec) -> list[str]:
    n, k, degree, shard = spec
    if degree is not None:
        it = enumerate_regular_graphs(n, degree, shard)
    elif k is not None:
        it = enumerate_ore_graphs(n, k, shard)
    else:
        it = enumerate_graphs(n, shard)
    return [emit_graph6(g).decode() for g in it]


def _enumerate(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    jobs = max(1, args.jobs)
    specs = [(args.n, args.k, args.regular, (i, jobs)) for i in range(jobs)]
    try:
        if jobs == 1:
            parts = [_enumerate_shard(specs[0])]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_enumerate_shard, specs))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = sorted(line for part in parts for line in part)
    params = {"n": args.n, "k": args.k, "regular": args.regular}
    _emit(args, "enumerate", params, len(lines), lines, "\n".join(lines), start)
    return FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorium",
        description="k-factors, disjoint perfect matchings and Tutte certificates of small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str, k_required: bool = True):
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", nargs="?", help="graph6 string (default: --file or stdin)")
        p.add_argument("--file", help="file of graph6 lines or a DIMACS edge file")
        p.add_argument("--k", type=int, required=k_required)
        p.add_argument("--json", action="store_true", help="structured output")
        return p

    graph_cmd("ore-check", "degree-sum condition d(u)+d(v) >= n+k-2 on non-edges")
    graph_cmd("factor", "find a k-factor")
    cert = graph_cmd("certificate", "minimum-eta Tutte pair (S, T)")
    cert.add_argument("--extremal", action="store_true", help="apply the extremal selection rules")
    graph_cmd("decompose", "split a k-factor (or, without --k, the regular graph) into perfect matchings", k_required=False)
    graph_cmd("disjoint-pms", "k edge-disjoint perfect matchings")

    searches = {
        "search-win": "Ore-type graphs (even n) lacking k disjoint perfect matchings",
        "search-kfactor": "Ore-type graphs (n/2 <= k < n) lacking a k-factor",
    }
    for name, help_text in searches.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--jobs", type=int, default=default_jobs())
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("ledger", help="integer-grid checks of the proof's inequalities")
    p.add_argument("--k-max", type=int, default=500)
    p.add_argument("--qp-k-max", type=int, default=200)
    p.add_argument("--m-range", type=int, default=10**6)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("enumerate", help="isomorph-free graphs, one graph6 per line (sorted)")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, help="only Ore-type graphs for this k")
    group.add_argument("--regular", type=int, metavar="D", help="only D-regular graphs")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in ("search-win", "search-kfactor"):
            return _search(args)
        if args.command == "ledger":
            return _ledger(args)
        if args.command == "enumerate":
            return _enumerate(args)
        return _per_graph(args)
    except InputError as exc:
        print(f"factorium: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
