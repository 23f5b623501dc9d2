"""Simple undirected graphs stored as adjacency bit rows.

Vertices are the integers ``0..n-1``.  Row ``v`` is an int whose bit ``u`` is
set when ``uv`` is an edge.  All set-valued outputs are sorted ascending.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

__all__ = [
    "Graph",
    "GraphFormatError",
    "OreReport",
    "parse_graph6",
    "emit_graph6",
    "parse_dimacs",
    "emit_dimacs",
    "read_graph",
    "complement",
    "ore_report",
    "vertex_connectivity",
    "local_connectivity",
    "components_after_removal",
    "bits",
    "mask_of",
    "empty_graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "complete_bipartite_graph",
    "petersen_graph",
]

GRAPH6_MAX_N = 62


class GraphFormatError(ValueError):
    """Raised when a graph6 or DIMACS payload cannot be decoded."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Iterable[int]):
        rows = tuple(rows)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{n - 1}")
            if r >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(r):
                if not rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> Graph:
        # Skips validation; callers guarantee a symmetric irreflexive relation.
        g = cls.__new__(cls)
        g.n = n
        g.rows = rows
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self) -> str:
        if self.n <= GRAPH6_MAX_N:
            return f"Graph({emit_graph6(self).decode()!r})"
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __reduce__(self):
        return (Graph._trusted, (self.n, self.rows))

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, r in enumerate(self.rows):
            out.extend((u, v) for v in bits(r >> (u + 1) << (u + 1)))
        return out

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(r | (1 << v) == full for v, r in enumerate(self.rows))

    def add_edge(self, u: int, v: int) -> Graph:
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._trusted(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> Graph:
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def relabel(self, perm: list[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            m = 0
            for u in bits(r):
                m |= 1 << perm[u]
            rows[perm[v]] = m
        return Graph._trusted(self.n, tuple(rows))

    def spanning_subgraph(self, edges: Iterable[tuple[int, int]]) -> Graph:
        sub = Graph.from_edges(self.n, edges)
        for u, r in enumerate(sub.rows):
            if r & ~self.rows[u]:
                raise ValueError("edge set is not contained in the host graph")
        return sub


# -- graph6 / DIMACS ---------------------------------------------------------


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 line (single-byte header, ``n <= 62``)."""
    if isinstance(text, str):
        text = text.encode("ascii", errors="replace")
    data = text.strip()
    start = 0
    if data.startswith(b">>graph6<<"):
        start = len(b">>graph6<<")
    if len(data) <= start:
        raise GraphFormatError("empty graph6 string", start)
    for off in range(start, len(data)):
        if not 63 <= data[off] <= 126:
            raise GraphFormatError(f"byte {data[off]!r} outside [63,126]", off)
    n = data[start] - 63
    if n == 63:
        raise GraphFormatError(
            f"multi-byte size header unsupported (n > {GRAPH6_MAX_N})", start
        )
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[start + 1 :]
    if len(body) != nbytes:
        raise GraphFormatError(
            f"expected {nbytes} data bytes for n={n}, got {len(body)}",
            start + 1 + min(len(body), nbytes),
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = 6 - nbits % 6
        if (body[-1] - 63) & ((1 << pad) - 1):
            raise GraphFormatError("nonzero padding bits", len(data) - 1)
    return Graph._trusted(n, tuple(rows))


def emit_graph6(g: Graph) -> bytes:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 output supports n <= {GRAPH6_MAX_N}, got n={n}")
    out = bytearray([n + 63])
    acc = 0
    k = 0
    rows = g.rows
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (rows[i] >> j & 1)
            k += 1
            if k == 6:
                out.append(acc + 63)
                acc = k = 0
    if k:
        out.append((acc << (6 - k)) + 63)
    return bytes(out)


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS edge format (``p edge n m`` then 1-indexed ``e u v``)."""
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: malformed problem line")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GraphFormatError(f"line {lineno}: bad edge {parts[1]} {parts[2]}")
            edges.append((u, v))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge' line")
    return Graph.from_edges(n, edges)


def emit_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.num_edges}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    """Decode a graph given either as graph6 or as a DIMACS document."""
    stripped = text.strip()
    if stripped.startswith(("p ", "c ", "c\n")) or "\np edge" in stripped:
        return parse_dimacs(text)
    return parse_graph6(stripped)


# -- primitives ---------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(
        g.n, tuple(~r & full & ~(1 << v) for v, r in enumerate(g.rows))
    )


@dataclass(frozen=True)
class OreReport:
    """Smallest slack of the degree-sum condition ``d(u)+d(v) >= n+k-2``.

    ``deficit`` is ``math.inf`` when the graph has no nonadjacent pair.
    """

    k: int
    deficit: float
    witness_pair: tuple[int, int] | None

    @property
    def is_ore_type(self) -> bool:
        return self.deficit >= 0


def ore_report(g: Graph, k: int) -> OreReport:
    n = g.n
    threshold = n + k - 2
    degs = g.degrees()
    best: float = math.inf
    witness = None
    full = (1 << n) - 1
    for u in range(n):
        non = ~g.rows[u] & full & ~((1 << (u + 1)) - 1)
        for v in bits(non):
            slack = degs[u] + degs[v] - threshold
            if slack < best:
                best = slack
                witness = (u, v)
    return OreReport(k=k, deficit=best, witness_pair=witness)


def local_connectivity(g: Graph, s: int, t: int, cap: int | None = None) -> int:
    """Maximum number of internally vertex-disjoint s-t paths (s, t nonadjacent).

    Unit-capacity max-flow on the vertex-split digraph.  Stops early once
    ``cap`` paths are found.
    """
    if g.has_edge(s, t):
        raise ValueError("local connectivity is defined for nonadjacent pairs")
    n = g.n
    # node 2v = v_in, 2v+1 = v_out
    residual: list[dict[int, int]] = [dict() for _ in range(2 * n)]
    for v in range(n):
        residual[2 * v][2 * v + 1] = 1
        residual[2 * v + 1].setdefault(2 * v, 0)
        for u in bits(g.rows[v]):
            residual[2 * v + 1][2 * u] = 1
            residual[2 * u].setdefault(2 * v + 1, 0)
    source, sink = 2 * s + 1, 2 * t
    limit = n if cap is None else cap
    flow = 0
    while flow < limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y, c in residual[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            residual[x][y] -= 1
            residual[y][x] += 1
            y = x
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity; ``n-1`` for complete graphs."""
    n = g.n
    if n < 2:
        return 0
    if g.is_complete():
        return n - 1
    best = min(g.min_degree(), n - 2)
    full = (1 << n) - 1
    # A minimum separator misses one of the first best+1 vertices, and every
    # vertex on the far side of it has a larger index.
    i = 0
    while i <= best and i < n:
        non = ~g.rows[i] & full & ~((1 << (i + 1)) - 1)
        for j in bits(non):
            best = min(best, local_connectivity(g, i, j, cap=best))
            if best == 0:
                return 0
        i += 1
    return best


def _components_of_mask(rows: tuple[int, ...] | list[int], mask: int) -> list[int]:
    comps = []
    while mask:
        seed = mask & -mask
        comp = frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= rows[v]
            frontier = grow & mask & ~comp
            comp |= frontier
        comps.append(comp)
        mask &= ~comp
    return comps


def components_after_removal(
    g: Graph, S: Iterable[int] = (), T: Iterable[int] = ()
) -> list[list[int]]:
    """Components of ``g - S - T``, each sorted, listed by minimum vertex."""
    sm, tm = mask_of(S), mask_of(T)
    if sm & tm:
        raise ValueError(f"S and T overlap on {sorted(bits(sm & tm))}")
    rest = ((1 << g.n) - 1) & ~(sm | tm)
    return [list(bits(c)) for c in _components_of_mask(g.rows, rest)]


# -- named graphs -------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
