"""Isomorph-free generation of small graphs and the counterexample harness.

Generation is by canonical augmentation: a graph is grown one edge at a time
and a child is kept only when deleting its canonical last edge gives back a
graph isomorphic to the parent.  Restricted families (bounded degree, the
complement-side form of the degree-sum condition) are hereditary under edge
deletion, so the same tree restricted to the family reaches each member once.
"""

from __future__ import annotations

import os
import sys
import time
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO

from .canon import Canon, canonical_labeling
from .factor import find_f_factor, find_k_factor
from .factorization import k_disjoint_perfect_matchings
from .graph import Graph, bits, complement, complete_graph, emit_graph6, empty_graph, ore_report

__all__ = [
    "SearchReport",
    "enumerate_graphs",
    "enumerate_ore_graphs",
    "enumerate_regular_graphs",
    "search_win_counterexample",
    "search_kfactor_counterexample",
    "format_report",
    "MAX_ENUM_N",
]

MAX_ENUM_N = 10
MAX_ORE_N = 12
MAX_FILTERED_ORE_N = 8

EdgeTest = Callable[[tuple[int, ...], int, int], bool]
NodeTest = Callable[[Graph], bool]


def _canonical_last_edge(c: Canon) -> tuple[int, int]:
    code = c.code
    for j in range(len(code) - 1, 0, -1):
        low = code[j] & ((1 << j) - 1)
        if low:
            i = low.bit_length() - 1
            a, b = c.order[i], c.order[j]
            return (a, b) if a < b else (b, a)
    raise ValueError("graph has no edges")


def _pair_orbit_reps(n: int, gens, pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    if not gens:
        return pairs
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in gens:
        for i, (a, b) in enumerate(pairs):
            x, y = perm[a], perm[b]
            j = index.get((x, y) if x < y else (y, x))
            if j is not None:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [p for i, p in enumerate(pairs) if find(i) == i]


def _same_edge_orbit(gens, e: tuple[int, int], target: tuple[int, int]) -> bool:
    if e == target:
        return True
    seen = {e}
    frontier = [e]
    while frontier:
        a, b = frontier.pop()
        for perm in gens:
            x, y = perm[a], perm[b]
            f = (x, y) if x < y else (y, x)
            if f == target:
                return True
            if f not in seen:
                seen.add(f)
                frontier.append(f)
    return False


def _augmentation_tree(
    n: int,
    edge_ok: EdgeTest | None = None,
    node_ok: NodeTest | None = None,
    shard: tuple[int, int] = (0, 1),
    split_depth: int = 2,
) -> Iterator[Graph]:
    """Pre-order walk of the canonical augmentation tree.

    ``edge_ok(rows, u, v)`` admits adding ``uv``; ``node_ok`` prunes whole
    subtrees.  With ``shard=(i, c)`` only the subtrees rooted at depth
    ``split_depth`` whose DFS index is ``i`` mod ``c`` are walked; shallower
    nodes belong to shard 0.
    """
    index, count = shard
    counter = [0]
    root = empty_graph(n)

    def children(g: Graph, canon: Canon) -> Iterator[tuple[Graph, Canon]]:
        rows = g.rows
        pairs = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if not rows[u] >> v & 1 and (edge_ok is None or edge_ok(rows, u, v))
        ]
        seen: set[tuple[int, ...]] = set()
        for u, v in _pair_orbit_reps(n, canon.generators, pairs):
            child = g.add_edge(u, v)
            cc = canonical_labeling(child)
            if cc.code in seen:
                continue
            seen.add(cc.code)
            last = _canonical_last_edge(cc)
            if not _same_edge_orbit(cc.generators, (u, v), last):
                back = child.remove_edge(*last)
                if sorted(back.degrees()) != sorted(g.degrees()):
                    continue
                if canonical_labeling(back).code != canon.code:
                    continue
            if node_ok is not None and not node_ok(child):
                continue
            yield child, cc

    def walk(g: Graph, canon: Canon, depth: int) -> Iterator[Graph]:
        if depth == split_depth:
            mine = counter[0] % count == index
            counter[0] += 1
            if not mine:
                return
        if depth >= split_depth or index == 0:
            yield g
        for child, cc in children(g, canon):
            yield from walk(child, cc, depth + 1)

    if node_ok is not None and not node_ok(root):
        return
    yield from walk(root, canonical_labeling(root), 0)


def _check_n(n: int, limit: int) -> None:
    if not 0 <= n <= limit:
        raise ValueError(f"enumeration supports 0 <= n <= {limit}, got {n}")


def enumerate_graphs(n: int, shard: tuple[int, int] = (0, 1)) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices."""
    _check_n(n, MAX_ENUM_N)
    return _augmentation_tree(n, shard=shard)


def _complement_cap(n: int, k: int) -> EdgeTest:
    cap = n - k

    def ok(rows: tuple[int, ...], u: int, v: int) -> bool:
        du = rows[u].bit_count() + 1
        dv = rows[v].bit_count() + 1
        if du + dv > cap:
            return False
        for w in bits(rows[u]):
            if du + rows[w].bit_count() > cap:
                return False
        for w in bits(rows[v]):
            if dv + rows[w].bit_count() > cap:
                return False
        return True

    return ok


def _ore_via_complement(n: int, k: int, shard: tuple[int, int] = (0, 1)) -> Iterator[Graph]:
    # d(x)+d(y) >= n+k-2 on non-edges  <=>  dbar(x)+dbar(y) <= n-k on complement edges
    for h in _augmentation_tree(n, edge_ok=_complement_cap(n, k), shard=shard):
        yield complement(h)


def enumerate_ore_graphs(n: int, k: int, shard: tuple[int, int] = (0, 1)) -> Iterator[Graph]:
    """Isomorphism classes with ``d(x) + d(y) >= n + k - 2`` for every non-edge."""
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    _check_n(n, MAX_ORE_N)
    if 2 * k >= n:
        return _ore_via_complement(n, k, shard)
    if n > MAX_FILTERED_ORE_N:
        raise ValueError(
            f"k < n/2 uses filtered full enumeration, limited to n <= {MAX_FILTERED_ORE_N}"
        )
    return (g for g in enumerate_graphs(n, shard) if ore_report(g, k).is_ore_type)


def _bounded_degree(d: int) -> EdgeTest:
    def ok(rows: tuple[int, ...], u: int, v: int) -> bool:
        return rows[u].bit_count() < d and rows[v].bit_count() < d

    return ok


def _extends_to_regular(d: int) -> NodeTest:
    def ok(g: Graph) -> bool:
        need = [d - x for x in g.degrees()]
        open_rows = complement(g).rows
        # f-factor of the complement supplies exactly the missing edges
        return find_f_factor(g, need, allowed=open_rows) is not None

    return ok


def enumerate_regular_graphs(n: int, degree: int, shard: tuple[int, int] = (0, 1)) -> Iterator[Graph]:
    """One graph per isomorphism class of ``degree``-regular graphs on ``n`` vertices."""
    if (n * degree) % 2 or not 0 <= degree < max(n, 1):
        raise ValueError(f"no {degree}-regular graph on {n} vertices (parity or range)")
    _check_n(n, MAX_ENUM_N)
    d = min(degree, n - 1 - degree)
    flip = d != degree
    tree = _augmentation_tree(n, edge_ok=_bounded_degree(d), node_ok=_extends_to_regular(d), shard=shard)
    for g in tree:
        if g.num_edges * 2 == n * d:
            yield complement(g) if flip else g


# -- harness ------------------------------------------------------------------


@dataclass
class SearchReport:
    n: int
    k: int
    graphs_scanned: int = 0
    ore_graphs: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return not self.failures

    def merge(self, other: SearchReport) -> SearchReport:
        return SearchReport(
            self.n,
            self.k,
            self.graphs_scanned + other.graphs_scanned,
            self.ore_graphs + other.ore_graphs,
            sorted(set(self.failures) | set(other.failures)),
            max(self.elapsed, other.elapsed),
        )


def format_report(report: SearchReport) -> str:
    header = (
        f"n={report.n} k={report.k} scanned={report.graphs_scanned} "
        f"ore={report.ore_graphs} failures={len(report.failures)}"
    )
    return "\n".join([header, *report.failures]) + "\n"


def _scan(
    kind: str,
    n: int,
    k: int,
    shard: tuple[int, int],
    out: IO[str] | None = None,
    progress: IO[str] | None = None,
) -> SearchReport:
    start = time.perf_counter()
    report = SearchReport(n, k)
    if 2 * k >= n:
        graphs: Iterable[tuple[Graph, bool]] = ((g, True) for g in _ore_via_complement(n, k, shard))
    else:
        if n > MAX_FILTERED_ORE_N:
            raise ValueError(
                f"k < n/2 uses filtered full enumeration, limited to n <= {MAX_FILTERED_ORE_N}"
            )
        graphs = ((g, ore_report(g, k).is_ore_type) for g in enumerate_graphs(n, shard))
    for g, is_ore in graphs:
        report.graphs_scanned += 1
        if progress is not None and report.graphs_scanned % 1_000_000 == 0:
            print(f"[{kind} n={n} k={k}] scanned {report.graphs_scanned}", file=progress, flush=True)
        if not is_ore:
            continue
        report.ore_graphs += 1
        if kind == "win":
            ok = k_disjoint_perfect_matchings(g, k) is not None
        else:
            ok = find_k_factor(g, k) is not None
        if not ok:
            line = emit_graph6(g).decode()
            report.failures.append(line)
            if out is not None:
                print(line, file=out, flush=True)
    report.elapsed = time.perf_counter() - start
    return report


def _scan_job(args) -> SearchReport:
    return _scan(*args)


def _run_search(kind: str, n: int, k: int, jobs: int, out, progress) -> SearchReport:
    if jobs <= 1:
        return _scan(kind, n, k, (0, 1), out, progress)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_scan_job, [(kind, n, k, (i, jobs)) for i in range(jobs)]))
    report = parts[0]
    for p in parts[1:]:
        report = report.merge(p)
    if out is not None:
        for line in report.failures:
            print(line, file=out, flush=True)
    return report


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FACTORIUM_JOBS", "1")))
    except ValueError:
        return 1


def search_win_counterexample(
    n: int, k: int, jobs: int = 1, out: IO[str] | None = None, progress: IO[str] | None = None
) -> SearchReport:
    """Ore-type graphs (threshold ``n + k - 2``) lacking ``k`` disjoint perfect matchings."""
    if n % 2 or n < 2:
        raise ValueError(f"n must be even and positive, got {n}")
    if not 1 <= k <= n - 2:
        raise ValueError(f"need 1 <= k <= n-2, got k={k}, n={n}")
    _check_n(n, MAX_ORE_N)
    return _run_search("win", n, k, jobs, out, progress)


def search_kfactor_counterexample(
    n: int, k: int, jobs: int = 1, out: IO[str] | None = None, progress: IO[str] | None = None
) -> SearchReport:
    """Ore-type graphs (threshold ``n + k - 2``) with no k-factor, for ``n/2 <= k <= n-1``."""
    if n % 2 or n < 2:
        raise ValueError(f"n must be even and positive, got {n}")
    if not (2 * k >= n and k <= n - 1):
        raise ValueError(f"need n/2 <= k <= n-1, got k={k}, n={n}")
    _check_n(n, MAX_ORE_N)
    return _run_search("kfactor", n, k, jobs, out, progress)
