"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .graph import Graph, bits

__all__ = [
    "Matching",
    "max_matching",
    "perfect_matching",
    "perfect_matching_with_forced_edge",
    "iter_perfect_matchings",
    "maximum_mates",
]


@dataclass(frozen=True)
class Matching:
    """Pairwise vertex-disjoint edges, each stored as ``(u, v)`` with ``u < v``."""

    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Matching:
        return cls(tuple(sorted((min(u, v), max(u, v)) for u, v in pairs)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.edges)

    def __contains__(self, edge: object) -> bool:
        if not isinstance(edge, tuple) or len(edge) != 2:
            return False
        u, v = edge
        return (min(u, v), max(u, v)) in self.edges

    def covered(self) -> set[int]:
        return {x for e in self.edges for x in e}

    def is_valid_in(self, g: Graph) -> bool:
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen or not g.has_edge(u, v):
                return False
            seen.update((u, v))
        return True

    def is_perfect_in(self, g: Graph) -> bool:
        return self.is_valid_in(g) and 2 * len(self.edges) == g.n


def maximum_mates(adj: Sequence[Sequence[int]]) -> list[int]:
    """Blossom algorithm on adjacency lists; returns ``mate[v]`` or -1.

    Roots are scanned in ascending order and neighbour lists in their given
    order, so the result is deterministic.
    """
    n = len(adj)
    mate = [-1] * n
    # greedy warm start
    for v in range(n):
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1 and u != v:
                    mate[v], mate[u] = u, v
                    break

    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent = _augmenting_path(adj, mate, root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return mate


def _augmenting_path(
    adj: Sequence[Sequence[int]], mate: list[int], root: int
) -> tuple[int, list[int]]:
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    used[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    return to, parent
                used[mate[to]] = True
                queue.append(mate[to])
    return -1, parent


def _mates_to_matching(mate: list[int]) -> Matching:
    return Matching(tuple((v, u) for v, u in enumerate(mate) if v < u))


def max_matching(g: Graph) -> Matching:
    adj = [list(bits(r)) for r in g.rows]
    return _mates_to_matching(maximum_mates(adj))


def perfect_matching(g: Graph) -> Matching | None:
    if g.n % 2:
        return None
    m = max_matching(g)
    return m if 2 * len(m) == g.n else None


def perfect_matching_with_forced_edge(g: Graph, edge: tuple[int, int]) -> Matching | None:
    u, v = edge
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise ValueError(f"edge {edge} is not in the graph")
    if g.n % 2:
        return None
    drop = (1 << u) | (1 << v)
    adj = [
        [] if x in (u, v) else list(bits(r & ~drop)) for x, r in enumerate(g.rows)
    ]
    mate = maximum_mates(adj)
    mate[u], mate[v] = v, u
    if any(m == -1 for m in mate):
        return None
    return _mates_to_matching(mate)


def iter_perfect_matchings(g: Graph, avoid: int = 0) -> Iterator[Matching]:
    """Every perfect matching of ``g`` exactly once (lowest uncovered vertex first).

    ``avoid`` is a bitmask of vertices treated as already covered.
    """
    n = g.n
    rows = g.rows
    full = (1 << n) - 1
    chosen: list[tuple[int, int]] = []

    def rec(free: int) -> Iterator[Matching]:
        if not free:
            yield Matching(tuple(sorted(chosen)))
            return
        low = free & -free
        v = low.bit_length() - 1
        for u in bits(rows[v] & free):
            chosen.append((v, u))
            yield from rec(free & ~low & ~(1 << u))
            chosen.pop()

    yield from rec(full & ~avoid)
