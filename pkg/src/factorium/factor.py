"""k-factors and Tutte's obstruction pairs.

Existence is decided constructively through the classical vertex gadget that
turns an f-factor problem into a perfect-matching problem.  The dual side is
an exhaustive search over disjoint vertex pairs ``(S, T)`` evaluating

    eta(S, T) = k|S| - k|T| + sum_{x in T} d_{G-S}(x) - q(S, T)

where ``q`` counts the k-odd components of ``G - S - T``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Graph, _components_of_mask, bits, mask_of
from .matching import maximum_mates

__all__ = [
    "Factor",
    "TutteCertificate",
    "ExtremalCertificate",
    "SearchSizeError",
    "MAX_CERTIFICATE_N",
    "is_k_odd_component",
    "q_value",
    "eta",
    "tutte_gadget",
    "find_f_factor",
    "find_k_factor",
    "iter_k_factors",
    "find_tutte_certificate",
    "tutte_certificate_exists",
    "min_eta",
    "find_extremal_certificate",
    "verify_duality",
    "format_certificate",
    "parse_certificate",
]

MAX_CERTIFICATE_N = 16


class SearchSizeError(ValueError):
    """Exhaustive search requested on a graph that is too large."""


@dataclass(frozen=True)
class Factor:
    k: int
    edges: tuple[tuple[int, int], ...]

    def degrees(self, n: int) -> list[int]:
        deg = [0] * n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_valid_in(self, g: Graph) -> bool:
        if any(not g.has_edge(u, v) for u, v in self.edges):
            return False
        if len(set(self.edges)) != len(self.edges):
            return False
        return all(d == self.k for d in self.degrees(g.n))

    def as_graph(self, n: int) -> Graph:
        return Graph.from_edges(n, self.edges)


@dataclass(frozen=True)
class TutteCertificate:
    """A disjoint pair ``(S, T)`` with negative deficiency.

    ``eta`` is always negative.  When ``k*n`` is even it is at most -2, which
    is Tutte's form of the bound; ``meets_tutte_bound`` records whether that
    stronger inequality holds (it can fail only when ``k*n`` is odd).
    """

    k: int
    S: tuple[int, ...]
    T: tuple[int, ...]
    eta: int
    odd_components: tuple[tuple[int, ...], ...]

    @property
    def meets_tutte_bound(self) -> bool:
        return self.eta <= -2

    @property
    def U(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.odd_components for v in c))

    def check(self, g: Graph) -> bool:
        """Recompute ``eta`` and the odd components from scratch."""
        if set(self.S) & set(self.T):
            return False
        if eta(g, self.k, self.S, self.T) != self.eta:
            return False
        odd = _odd_components(g, self.k, mask_of(self.S), mask_of(self.T))
        return tuple(tuple(bits(c)) for c in odd) == self.odd_components


@dataclass(frozen=True)
class ExtremalCertificate:
    """The pair selected by minimum eta, then minimum ``|U|``, then maximum
    ``|V - S - T - U|``; remaining ties go to the smallest sorted ``S``, then ``T``.

    ``excess_t_edges`` lists vertices of ``U`` with at least ``k`` neighbours
    in ``T``; ``low_degree`` lists vertices of ``U`` with degree at most
    ``k`` in ``G - S``.  Both are expected to be empty.
    """

    base: TutteCertificate
    u_size: int
    rest_size: int
    excess_t_edges: tuple[int, ...] = field(default=())
    low_degree: tuple[int, ...] = field(default=())

    @property
    def conclusions_hold(self) -> bool:
        return not self.excess_t_edges and not self.low_degree

    @property
    def degenerate(self) -> bool:
        """True when U is empty or some odd component has fewer than 3 vertices."""
        comps = self.base.odd_components
        return not comps or any(len(c) < 3 for c in comps)


# -- eta and friends ----------------------------------------------------------


def _check_disjoint(S: int, T: int) -> None:
    if S & T:
        raise ValueError(f"S and T overlap on {sorted(bits(S & T))}")


def is_k_odd_component(g: Graph, k: int, T: Iterable[int], C: Iterable[int]) -> bool:
    tm = mask_of(T)
    cm = mask_of(C)
    e_ct = sum((g.rows[v] & tm).bit_count() for v in bits(cm))
    return (e_ct + k * cm.bit_count()) % 2 == 1


def _odd_components(g: Graph, k: int, S: int, T: int) -> list[int]:
    rest = ((1 << g.n) - 1) & ~(S | T)
    out = []
    for c in _components_of_mask(g.rows, rest):
        e_ct = sum((g.rows[v] & T).bit_count() for v in bits(c))
        if (e_ct + k * c.bit_count()) & 1:
            out.append(c)
    return out


def q_value(g: Graph, k: int, S: Iterable[int], T: Iterable[int]) -> int:
    sm, tm = mask_of(S), mask_of(T)
    _check_disjoint(sm, tm)
    return len(_odd_components(g, k, sm, tm))


def eta(g: Graph, k: int, S: Iterable[int], T: Iterable[int]) -> int:
    sm, tm = mask_of(S), mask_of(T)
    _check_disjoint(sm, tm)
    keep = ~sm
    deg_sum = sum((g.rows[x] & keep).bit_count() for x in bits(tm))
    q = len(_odd_components(g, k, sm, tm))
    return k * sm.bit_count() - k * tm.bit_count() + deg_sum - q


# -- constructive side: the gadget --------------------------------------------


@dataclass(frozen=True)
class _Gadget:
    adj: list[list[int]]
    # (u, v) -> (external node of u facing v, external node of v facing u)
    edge_nodes: dict[tuple[int, int], tuple[int, int]]


def _build_gadget(g: Graph, f: Sequence[int], allowed: Sequence[int] | None = None) -> _Gadget | None:
    rows = g.rows if allowed is None else allowed
    n = g.n
    ext: dict[tuple[int, int], int] = {}
    groups: list[tuple[list[int], list[int]]] = []
    size = 0
    for v in range(n):
        d = rows[v].bit_count()
        if f[v] < 0 or d < f[v]:
            return None
        externals = []
        for u in bits(rows[v]):
            ext[v, u] = size
            externals.append(size)
            size += 1
        internals = list(range(size, size + d - f[v]))
        size += d - f[v]
        groups.append((externals, internals))
    adj: list[list[int]] = [[] for _ in range(size)]
    for externals, internals in groups:
        for x in externals:
            adj[x].extend(internals)
        for y in internals:
            adj[y].extend(externals)
    edge_nodes = {}
    for v in range(n):
        for u in bits(rows[v] >> (v + 1) << (v + 1)):
            a, b = ext[v, u], ext[u, v]
            adj[a].append(b)
            adj[b].append(a)
            edge_nodes[v, u] = (a, b)
    return _Gadget(adj, edge_nodes)


def tutte_gadget(g: Graph, k: int) -> Graph | None:
    """The auxiliary graph whose perfect matchings encode the k-factors of ``g``.

    Per vertex ``v``: ``d(v)`` external nodes (one per incident edge, neighbours
    ascending) and ``d(v) - k`` internal nodes joined completely to them; each
    edge ``uv`` joins the two externals facing each other.  ``None`` when some
    degree is below ``k``.
    """
    gad = _build_gadget(g, [k] * g.n)
    if gad is None:
        return None
    return Graph.from_edges(
        len(gad.adj), [(x, y) for x, ys in enumerate(gad.adj) for y in ys if x < y]
    )


def find_f_factor(
    g: Graph, f: Sequence[int], allowed: Sequence[int] | None = None
) -> list[tuple[int, int]] | None:
    """Spanning subgraph with degree ``f[v]`` at each ``v``, using only ``allowed`` rows."""
    rows = g.rows if allowed is None else allowed
    if sum(f) % 2:
        return None
    gad = _build_gadget(g, f, rows)
    if gad is None:
        return None
    mate = maximum_mates(gad.adj)
    if any(m == -1 for m in mate):
        return None
    return [e for e, (a, b) in gad.edge_nodes.items() if mate[a] == b]


def find_k_factor(g: Graph, k: int) -> Factor | None:
    if k < 1:
        raise ValueError("k must be positive")
    if (k * g.n) % 2 or any(d < k for d in g.degrees()):
        return None
    edges = find_f_factor(g, [k] * g.n)
    return None if edges is None else Factor(k, tuple(sorted(edges)))


def iter_k_factors(g: Graph, k: int) -> Iterator[Factor]:
    """Every k-factor of ``g`` exactly once.

    Branches on the lowest undecided edge (take it or drop it) and prunes any
    branch whose residual f-factor problem is infeasible.
    """
    n = g.n
    if k < 1:
        raise ValueError("k must be positive")
    if find_k_factor(g, k) is None:
        return
    taken: list[tuple[int, int]] = []

    def rec(allowed: list[int], need: list[int]) -> Iterator[Factor]:
        u = next((v for v in range(n) if allowed[v]), None)
        if u is None:
            yield Factor(k, tuple(sorted(taken)))
            return
        v = (allowed[u] & -allowed[u]).bit_length() - 1
        allowed[u] &= ~(1 << v)
        allowed[v] &= ~(1 << u)
        if need[u] and need[v]:
            need[u] -= 1
            need[v] -= 1
            if find_f_factor(g, need, allowed) is not None:
                taken.append((min(u, v), max(u, v)))
                yield from rec(allowed[:], need[:])
                taken.pop()
            need[u] += 1
            need[v] += 1
        if find_f_factor(g, need, allowed) is not None:
            yield from rec(allowed[:], need[:])

    yield from rec(list(g.rows), [k] * n)


# -- dual side: exhaustive (S, T) search ----------------------------------------


@lru_cache(maxsize=32)
def _components_table(g: Graph) -> tuple[tuple[int, ...], ...]:
    # the same graph is usually searched for several k in a row
    return tuple(tuple(_components_of_mask(g.rows, r)) for r in range(1 << g.n))


class _PairSearch:
    """Shared tables for scanning all disjoint ``(S, T)`` of one graph.

    ``R = V - S - T`` is scanned instead of ``T``.  The components of ``G[R]``
    depend on ``R`` alone, so they are tabulated once.  The parity of a
    component ``C`` equals ``sum_{v in C} (d_{G-S}(v) + k)`` mod 2 because
    ``C`` has no edges to the rest of ``R``.
    """

    def __init__(self, g: Graph):
        if g.n > MAX_CERTIFICATE_N:
            raise SearchSizeError(
                f"exhaustive (S,T) search supports n <= {MAX_CERTIFICATE_N}, got {g.n}"
            )
        self.g = g
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.comps = _components_table(g)

    def scan_s(self, S: int, k: int):
        rows = self.g.rows
        M = self.full & ~S
        a = [0] * self.n
        parity = 0
        forced = 0
        lb = k * S.bit_count()
        for x in range(self.n):
            if not M >> x & 1:
                continue
            ax = (rows[x] & M).bit_count() - k
            a[x] = ax
            if ax & 1:
                parity |= 1 << x
            if ax < 0:
                forced |= 1 << x
            lb += ax if ax < -1 else -1
        return M, a, parity, forced, lb

    def iter_s(self, S: int, k: int, *, restrict: bool) -> Iterator[tuple[int, int, int]]:
        """Yield ``(R, eta, U mask)`` for every admissible ``R`` given ``S``.

        With ``restrict`` only ``T`` containing every ``x`` with
        ``d_{G-S}(x) < k`` is scanned; moving such an ``x`` from ``R`` into
        ``T`` never raises ``eta``, so the minimum is unaffected.
        """
        M, a, parity, forced, _ = self.scan_s(S, k)
        free = M & ~forced if restrict else M
        base = k * S.bit_count() + sum(a[x] for x in bits(M))
        comps = self.comps
        sums = {0: 0}
        R = 0
        while True:
            if R:
                low = R & -R
                s = sums[R ^ low] + a[low.bit_length() - 1]
                sums[R] = s
            else:
                s = 0
            q = 0
            umask = 0
            for c in comps[R]:
                if (c & parity).bit_count() & 1:
                    q += 1
                    umask |= c
            yield R, base - s - q, umask
            if R == free:
                return
            R = (R - free) & free


@lru_cache(maxsize=None)
def _all_subsets_by_size(n: int) -> tuple[int, ...]:
    return tuple(sorted(range(1 << n), key=lambda m: (m.bit_count(), m)))


def min_eta(g: Graph, k: int, search: _PairSearch | None = None) -> tuple[int, int, int]:
    """Global minimum of eta with an achieving ``(S mask, T mask)``."""
    search = search or _PairSearch(g)
    comps = search.comps
    best = None
    for S in _all_subsets_by_size(g.n):
        M, a, parity, forced, lb = search.scan_s(S, k)
        if best is not None and lb >= best[0]:
            continue
        # same walk as iter_s(restrict=True), inlined: this is the hot loop
        free = M & ~forced
        base = k * S.bit_count() + sum(a[x] for x in bits(M))
        sums = {0: 0}
        R = 0
        while True:
            if R:
                low = R & -R
                s = sums[R ^ low] + a[low.bit_length() - 1]
                sums[R] = s
            else:
                s = 0
            cs = comps[R]
            top = base - s
            # q <= number of components, so skip R that cannot improve
            if best is None or top - len(cs) < best[0]:
                q = 0
                for c in cs:
                    if (c & parity).bit_count() & 1:
                        q += 1
                if best is None or top - q < best[0]:
                    best = (top - q, S, M & ~R)
            if R == free:
                break
            R = (R - free) & free
    assert best is not None
    return best


def tutte_certificate_exists(g: Graph, k: int, max_eta: int = -1) -> bool:
    """Whether some disjoint pair has ``eta <= max_eta`` (early exit)."""
    search = _PairSearch(g)
    for S in _all_subsets_by_size(g.n):
        if search.scan_s(S, k)[4] > max_eta:
            continue
        for _, value, _ in search.iter_s(S, k, restrict=True):
            if value <= max_eta:
                return True
    return False


def _certificate(g: Graph, k: int, S: int, T: int, value: int) -> TutteCertificate:
    odd = _odd_components(g, k, S, T)
    return TutteCertificate(
        k=k,
        S=tuple(bits(S)),
        T=tuple(bits(T)),
        eta=value,
        odd_components=tuple(tuple(bits(c)) for c in odd),
    )


def _select_pair(search: _PairSearch, k: int, target: int, key):
    """Smallest ``key(S, T, umask, R)`` over all pairs with ``eta == target``."""
    best_key = None
    best = None
    for S in range(1 << search.n):
        if search.scan_s(S, k)[4] > target:
            continue
        M = search.full & ~S
        for R, value, umask in search.iter_s(S, k, restrict=False):
            if value != target:
                continue
            T = M & ~R
            cand = key(S, T, umask, R)
            if best_key is None or cand < best_key:
                best_key, best = cand, (S, T, umask, R)
    assert best is not None
    return best


def find_tutte_certificate(g: Graph, k: int) -> TutteCertificate | None:
    """A minimum-eta pair when that minimum is negative, else ``None``.

    Among minimum pairs the one with lexicographically smallest sorted ``S``,
    then sorted ``T``, is returned.
    """
    if k < 1:
        raise ValueError("k must be positive")
    search = _PairSearch(g)
    target = min_eta(g, k, search)[0]
    if target >= 0:
        return None
    S, T, _, _ = _select_pair(search, k, target, lambda S, T, u, R: (tuple(bits(S)), tuple(bits(T))))
    return _certificate(g, k, S, T, target)


def _extremal_conclusions(g: Graph, k: int, cert: TutteCertificate) -> tuple[tuple[int, ...], tuple[int, ...]]:
    sm, tm = mask_of(cert.S), mask_of(cert.T)
    excess, low = [], []
    for v in cert.U:
        if (g.rows[v] & tm).bit_count() > k - 1:
            excess.append(v)
        if (g.rows[v] & ~sm).bit_count() < k + 1:
            low.append(v)
    return tuple(excess), tuple(low)


def find_extremal_certificate(g: Graph, k: int) -> ExtremalCertificate | None:
    if k < 1:
        raise ValueError("k must be positive")
    search = _PairSearch(g)
    target = min_eta(g, k, search)[0]
    if target >= 0:
        return None

    def key(S: int, T: int, umask: int, R: int):
        return (umask.bit_count(), -(R & ~umask).bit_count(), tuple(bits(S)), tuple(bits(T)))

    S, T, umask, R = _select_pair(search, k, target, key)
    cert = _certificate(g, k, S, T, target)
    excess, low = _extremal_conclusions(g, k, cert)
    return ExtremalCertificate(cert, umask.bit_count(), (R & ~umask).bit_count(), excess, low)


def verify_duality(g: Graph, k: int) -> bool:
    """Exactly one of: a k-factor exists, a negative-eta pair exists."""
    has_factor = find_k_factor(g, k) is not None
    has_cert = tutte_certificate_exists(g, k, max_eta=-1)
    return has_factor != has_cert


# -- text form ----------------------------------------------------------------


def format_certificate(cert: TutteCertificate) -> str:
    def fmt(vs: Iterable[int]) -> str:
        return " ".join(str(v) for v in vs)

    odd = " ".join("{" + ",".join(str(v) for v in c) + "}" for c in cert.odd_components)
    return "\n".join(
        [
            f"S: {fmt(cert.S)}".rstrip(),
            f"T: {fmt(cert.T)}".rstrip(),
            f"eta: {cert.eta}",
            f"odd: {odd}".rstrip(),
        ]
    ) + "\n"


def parse_certificate(text: str, k: int) -> TutteCertificate:
    fields: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(":")
        fields[key.strip()] = value.strip()
    missing = {"S", "T", "eta", "odd"} - fields.keys()
    if missing:
        raise ValueError(f"certificate missing fields: {sorted(missing)}")
    odd = []
    for chunk in fields["odd"].split():
        inner = chunk.strip("{}")
        odd.append(tuple(int(v) for v in inner.split(",") if v))
    return TutteCertificate(
        k=k,
        S=tuple(int(v) for v in fields["S"].split()),
        T=tuple(int(v) for v in fields["T"].split()),
        eta=int(fields["eta"]),
        odd_components=tuple(odd),
    )
