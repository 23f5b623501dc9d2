"""Canonical labelling of small graphs.

Individualisation-refinement search: refine to an equitable ordered partition,
branch on the first non-singleton cell, and keep the leaf with the largest
(cell-size trace, relabelled adjacency) key.  Subtrees are cut when their trace
already falls below the best one, and automorphisms found between equal leaves
prune sibling branches in the same orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits

__all__ = ["Canon", "canonical_labeling", "canonical_form", "orbit_partition", "are_isomorphic"]


@dataclass(frozen=True)
class Canon:
    """``order[i]`` is the original vertex placed at canonical position ``i``."""

    code: tuple[int, ...]
    order: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    def graph(self) -> Graph:
        return Graph._trusted(len(self.code), self.code)


def _refine(rows, cells: list[list[int]], splitters: list[int]) -> list[list[int]]:
    """Equitable refinement driven by a stack of splitter cell indices."""
    cells = [c[:] for c in cells]
    queue = list(splitters)
    queued = set(queue)
    while queue:
        wi = queue.pop(0)
        queued.discard(wi)
        wmask = 0
        for v in cells[wi]:
            wmask |= 1 << v
        i = 0
        while i < len(cells):
            cell = cells[i]
            if len(cell) == 1:
                i += 1
                continue
            counts = [(rows[v] & wmask).bit_count() for v in cell]
            first = counts[0]
            if all(c == first for c in counts):
                i += 1
                continue
            groups: dict[int, list[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            pieces = [groups[c] for c in sorted(groups)]
            cells[i : i + 1] = pieces
            extra = len(pieces) - 1
            # shift queued indices past the split point
            queue = [j + extra if j > i else j for j in queue]
            queued = set(queue)
            if wi > i:
                wi += extra
            for j in range(i, i + len(pieces)):
                if j not in queued:
                    queue.append(j)
                    queued.add(j)
            i += len(pieces)
    return cells


class _Search:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.n
        self.best_key = None
        self.best_order: tuple[int, ...] | None = None
        self.best_path: list[int] = []
        self.first_key = None
        self.first_order: tuple[int, ...] | None = None
        self.first_path: list[int] = []
        self.best_trace: list[tuple[int, ...]] = []
        self.generators: list[tuple[int, ...]] = []

    def leaf_code(self, order: tuple[int, ...]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = self.rows
        code = []
        for v in order:
            m = 0
            for u in bits(rows[v]):
                m |= 1 << pos[u]
            code.append(m)
        return tuple(code)

    def run(self) -> Canon:
        cells = _refine(self.rows, [list(range(self.n))], [0]) if self.n else []
        self.visit(cells, [], [])
        return Canon(self.best_key[1], self.best_order, tuple(self.generators))

    def _stabilizer_orbit_rep(self, prefix: list[int], v: int, explored: list[int]) -> bool:
        gens = [p for p in self.generators if all(p[x] == x for x in prefix)]
        if not gens:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for p in gens:
                y = p[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(w in orbit for w in explored)

    def visit(self, cells: list[list[int]], prefix: list[int], trace: list[tuple[int, ...]]) -> int | None:
        depth = len(prefix)
        node_trace = tuple(len(c) for c in cells)
        trace = trace + [node_trace]
        if self.best_key is not None and trace < self.best_trace[: len(trace)]:
            return None
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self.leaf(tuple(c[0] for c in cells), prefix, trace)
        cell = cells[target]
        explored: list[int] = []
        for v in sorted(cell):
            if explored and self._stabilizer_orbit_rep(prefix, v, explored):
                continue
            explored.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            child = _refine(self.rows, child, [target])
            jump = self.visit(child, prefix + [v], trace)
            if jump is not None and jump < depth:
                return jump
        return None

    def leaf(self, order: tuple[int, ...], path: list[int], trace: list[tuple[int, ...]]) -> int | None:
        key = (tuple(trace), self.leaf_code(order))
        if self.first_key is None:
            self.first_key = self.best_key = key
            self.first_order = self.best_order = order
            self.first_path = self.best_path = list(path)
            self.best_trace = list(trace)
            return None
        if key == self.best_key:
            return self._automorphism(self.best_order, order, self.best_path, path)
        if key == self.first_key:
            return self._automorphism(self.first_order, order, self.first_path, path)
        if key > self.best_key:
            self.best_key = key
            self.best_order = order
            self.best_path = list(path)
            self.best_trace = list(trace)
        return None

    def _automorphism(self, ref_order, order, ref_path, path) -> int:
        perm = [0] * self.n
        for a, b in zip(ref_order, order):
            perm[a] = b
        self.generators.append(tuple(perm))
        common = 0
        for a, b in zip(ref_path, path):
            if a != b:
                break
            common += 1
        return common


def canonical_labeling(g: Graph) -> Canon:
    return _Search(g).run()


def canonical_form(g: Graph) -> tuple[int, ...]:
    return canonical_labeling(g).code


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def orbit_partition(n: int, generators) -> list[int]:
    """Union-find representative (smallest vertex) of each vertex's orbit."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in generators:
        for x in range(n):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]
