"""Edge-disjoint perfect matchings: 1-factorizations and k-matching packings."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .factor import find_k_factor, iter_k_factors
from .graph import Graph, bits
from .matching import Matching, iter_perfect_matchings

__all__ = [
    "Factorization",
    "one_factorization",
    "k_disjoint_perfect_matchings",
    "decompose_via_factor",
    "format_factorization",
    "parse_factorization",
]


@dataclass(frozen=True)
class Factorization:
    matchings: tuple[Matching, ...]

    def __len__(self) -> int:
        return len(self.matchings)

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)

    def union(self, n: int) -> Graph:
        return Graph.from_edges(n, [e for m in self.matchings for e in m])

    def is_valid_in(self, g: Graph) -> bool:
        """Perfect in ``g``, pairwise edge-disjoint."""
        seen: set[tuple[int, int]] = set()
        for m in self.matchings:
            if not m.is_perfect_in(g):
                return False
            if seen.intersection(m.edges):
                return False
            seen.update(m.edges)
        return True

    def covers(self, g: Graph) -> bool:
        return self.is_valid_in(g) and sum(map(len, self.matchings)) == g.num_edges


def _lowest_edge(rows: tuple[int, ...]) -> tuple[int, int] | None:
    for u, r in enumerate(rows):
        if r:
            return u, (r & -r).bit_length() - 1
    return None


def one_factorization(g: Graph) -> Factorization | None:
    """Split a regular graph of even order into perfect matchings.

    Each level takes a perfect matching through the lowest remaining edge,
    which fixes the order of the matchings and removes their permutations.
    """
    if g.n % 2:
        raise ValueError(f"1-factorization needs an even number of vertices, got {g.n}")
    if not g.is_regular():
        raise ValueError("1-factorization needs a regular graph")
    found: list[Matching] = []

    def rec(h: Graph) -> bool:
        e = _lowest_edge(h.rows)
        if e is None:
            return True
        u, v = e
        for m in iter_perfect_matchings(h, avoid=(1 << u) | (1 << v)):
            full = Matching.from_pairs(m.edges + ((u, v),))
            found.append(full)
            if rec(h.remove_edges(full.edges)):
                return True
            found.pop()
        return False

    return Factorization(tuple(found)) if rec(g) else None


def k_disjoint_perfect_matchings(g: Graph, k: int) -> Factorization | None:
    """``k`` pairwise edge-disjoint perfect matchings, not necessarily covering ``g``.

    Matchings are chosen in increasing order of the partner of vertex 0, so
    every unordered family is visited once.  A branch is dropped as soon as
    the residual graph has no ``(k - level)``-factor.
    """
    if g.n % 2:
        raise ValueError(f"perfect matchings need an even number of vertices, got {g.n}")
    if k < 1:
        raise ValueError("k must be positive")
    if g.n == 0:
        return Factorization(tuple(Matching(()) for _ in range(k)))
    chosen: list[Matching] = []

    def rec(h: Graph, need: int, min_partner: int) -> bool:
        if need == 0:
            return True
        if find_k_factor(h, need) is None:
            return False
        for a in bits(h.rows[0] >> min_partner << min_partner):
            for m in iter_perfect_matchings(h, avoid=1 | (1 << a)):
                full = Matching.from_pairs(m.edges + ((0, a),))
                chosen.append(full)
                if rec(h.remove_edges(full.edges), need - 1, a + 1):
                    return True
                chosen.pop()
        return False

    return Factorization(tuple(chosen)) if rec(g, k, 0) else None


def decompose_via_factor(g: Graph, k: int) -> Factorization | None:
    """First k-factor of ``g`` (in enumeration order) that splits into perfect matchings."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.n % 2:
        return None
    for factor in iter_k_factors(g, k):
        result = one_factorization(factor.as_graph(g.n))
        if result is not None:
            return result
    return None


def format_factorization(fac: Factorization) -> str:
    lines = []
    for i, m in enumerate(fac.matchings, 1):
        lines.append(f"M{i}: " + "".join(f"({u},{v})" for u, v in m.edges))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_factorization(text: str) -> Factorization:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        label, _, body = line.partition(":")
        if not label.strip().startswith("M"):
            raise ValueError(f"bad factorization line: {line!r}")
        pairs = []
        for chunk in body.replace(" ", "").split(")"):
            if chunk:
                u, v = chunk.lstrip("(").split(",")
                pairs.append((int(u), int(v)))
        out.append(Matching.from_pairs(pairs))
    return Factorization(tuple(out))
