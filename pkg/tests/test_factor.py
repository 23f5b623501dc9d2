import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorium.factor import (
    MAX_CERTIFICATE_N,
    SearchSizeError,
    TutteCertificate,
    eta,
    find_extremal_certificate,
    find_k_factor,
    find_tutte_certificate,
    format_certificate,
    is_k_odd_component,
    iter_k_factors,
    min_eta,
    parse_certificate,
    q_value,
    tutte_certificate_exists,
    tutte_gadget,
    verify_duality,
)
from factorium.graph import Graph, complete_graph, cycle_graph, emit_graph6, empty_graph
from factorium.matching import perfect_matching
from oracles import adjacency_sets, brute_k_factor, brute_min_eta, components, naive_eta


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


@st.composite
def graph_and_pair(draw, max_n=8):
    g = draw(graphs(max_n=max_n))
    labels = draw(st.lists(st.sampled_from("SRT"), min_size=g.n, max_size=g.n))
    S = {v for v, l in enumerate(labels) if l == "S"}
    T = {v for v, l in enumerate(labels) if l == "T"}
    return g, S, T


def brute_all_k_factors(g: Graph, k: int) -> set:
    edges = g.edges()
    out = set()
    for mask in range(1 << len(edges)):
        chosen = [e for i, e in enumerate(edges) if mask >> i & 1]
        deg = [0] * g.n
        for u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        if all(d == k for d in deg):
            out.add(tuple(chosen))
    return out


# -- k-odd components and eta ----------------------------------------------------


def test_k_odd_component_examples(k13, c6):
    assert is_k_odd_component(k13, 1, [], [1])
    assert is_k_odd_component(c6, 1, [3], [1, 2])
    # k even and an even number of edges into T: never odd
    assert not is_k_odd_component(c6, 2, [0, 3], [1, 2])
    assert not is_k_odd_component(c6, 2, [], [1, 2])


def test_eta_examples(k13, c6):
    assert eta(k13, 1, {0}, set()) == -2
    assert eta(k13, 1, set(), {0}) == 2
    assert eta(c6, 1, set(), set()) == -q_value(c6, 1, set(), set()) == 0
    assert eta(empty_graph(3), 1, set(), set()) == -3


def test_eta_rejects_overlap(k13):
    with pytest.raises(ValueError):
        eta(k13, 1, {0, 1}, {1})


@given(graph_and_pair(), st.integers(1, 4))
def test_eta_matches_naive_definition(gp, k):
    g, S, T = gp
    assert eta(g, k, S, T) == naive_eta(g, k, S, T)


@given(graph_and_pair(), st.integers(1, 4))
def test_eta_parity(gp, k):
    g, S, T = gp
    assert (eta(g, k, S, T) - k * g.n) % 2 == 0


@given(graph_and_pair(max_n=7), st.integers(1, 4))
def test_eta_empty_sets_is_minus_q(gp, k):
    g, _, _ = gp
    assert eta(g, k, (), ()) == -q_value(g, k, (), ())


# -- constructive side -----------------------------------------------------------


def test_find_k_factor_examples(c4, k4, k13):
    f = find_k_factor(c4, 2)
    assert f is not None and set(f.edges) == set(c4.edges())
    f = find_k_factor(k4, 3)
    assert f is not None and set(f.edges) == set(k4.edges())
    assert find_k_factor(k13, 1) is None


def test_find_k_factor_odd_kn_short_circuit():
    assert find_k_factor(complete_graph(5), 1) is None
    assert find_k_factor(complete_graph(5), 2) is not None


def test_find_k_factor_rejects_nonpositive_k(c4):
    with pytest.raises(ValueError):
        find_k_factor(c4, 0)


def test_gadget_size(petersen):
    for k in (1, 2, 3):
        gad = tutte_gadget(petersen, k)
        assert gad.n == sum(2 * petersen.degree(v) - k for v in range(10))
    assert tutte_gadget(cycle_graph(5), 3) is None


@pytest.mark.parametrize("n", range(1, 8))
def test_gadget_matches_brute_force(all_graphs, n):
    for g in all_graphs(n):
        for k in (1, 2, 3):
            expected = brute_k_factor(g, k)
            gad = tutte_gadget(g, k)
            via_gadget = gad is not None and perfect_matching(gad) is not None
            assert via_gadget == expected, (emit_graph6(g), k)
            f = find_k_factor(g, k)
            assert (f is not None) == expected
            if f is not None:
                assert f.is_valid_in(g)
                assert f.degrees(g.n) == [k] * g.n


@given(graphs(max_n=10), st.integers(1, 5))
@settings(max_examples=80)
def test_pull_back_soundness(g, k):
    f = find_k_factor(g, k)
    if f is not None:
        assert set(f.edges) <= set(g.edges())
        assert f.as_graph(g.n).is_regular(k)


@given(graphs(max_n=7), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_iter_k_factors_matches_brute_force(g, k):
    ours = [f.edges for f in iter_k_factors(g, k)]
    assert len(ours) == len(set(ours))
    assert set(ours) == brute_all_k_factors(g, k)


def test_iter_k_factors_petersen_cubic(petersen):
    assert [f.edges for f in iter_k_factors(petersen, 3)] == [tuple(petersen.edges())]
    # the Petersen graph has exactly six perfect matchings
    assert len(list(iter_k_factors(petersen, 1))) == 6


# -- dual side -------------------------------------------------------------------


def test_certificate_examples(k13, c4, k4):
    cert = find_tutte_certificate(k13, 1)
    assert cert.S == (0,) and cert.T == () and cert.eta == -2
    assert cert.odd_components == ((1,), (2,), (3,))
    assert cert.meets_tutte_bound and cert.check(k13)
    assert find_tutte_certificate(c4, 2) is None
    assert find_tutte_certificate(k4, 1) is None


def test_certificate_odd_order(c5):
    cert = find_tutte_certificate(c5, 1)
    assert cert is not None and cert.eta < 0
    assert cert.eta % 2 == 1
    assert cert.check(c5)


def test_certificate_size_limit():
    with pytest.raises(SearchSizeError):
        find_tutte_certificate(empty_graph(MAX_CERTIFICATE_N + 1), 1)


@given(graphs(max_n=6), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_min_eta_matches_exhaustive_oracle(g, k):
    value, S, T = min_eta(g, k)
    assert value == brute_min_eta(g, k)
    assert not S & T
    s = {v for v in range(g.n) if S >> v & 1}
    t = {v for v in range(g.n) if T >> v & 1}
    assert naive_eta(g, k, s, t) == value


@given(graphs(max_n=8), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_certificate_invariants(g, k):
    cert = find_tutte_certificate(g, k)
    if cert is None:
        assert min_eta(g, k)[0] >= 0
        return
    assert cert.check(g)
    assert cert.eta == min_eta(g, k)[0] < 0
    if (k * g.n) % 2 == 0:
        assert cert.eta <= -2
    for c in cert.odd_components:
        assert is_k_odd_component(g, k, cert.T, c)


@pytest.mark.parametrize("n", range(1, 7))
def test_duality_exhaustive_small(all_graphs, n):
    for g in all_graphs(n):
        for k in (1, 2, 3, 4):
            assert verify_duality(g, k), (emit_graph6(g), k)


def test_duality_examples(k13, c4):
    assert verify_duality(k13, 1)
    assert verify_duality(c4, 2)


def test_tutte_bound_threshold_on_even_kn(all_graphs):
    # for k*n even, a negative eta is automatically at most -2
    for n in (2, 4, 6):
        for g in all_graphs(n):
            for k in (1, 2, 3):
                assert tutte_certificate_exists(g, k, -1) == tutte_certificate_exists(g, k, -2)


def test_extremal_examples(k13, c4, c5):
    ext = find_extremal_certificate(k13, 1)
    base = ext.base
    assert base.eta == -2
    # with T = leaves every leaf moves out of the odd components
    assert base.S == (0,) and base.T == (1, 2, 3)
    assert ext.u_size == 0 and ext.rest_size == 0
    assert ext.degenerate
    assert find_extremal_certificate(c4, 2) is None
    ext5 = find_extremal_certificate(c5, 1)
    assert ext5.base.eta == -1 and not ext5.base.meets_tutte_bound


@given(graphs(max_n=7), st.integers(1, 3))
@settings(max_examples=50, deadline=None)
def test_extremal_selection_is_extremal(g, k):
    ext = find_extremal_certificate(g, k)
    if ext is None:
        assert find_k_factor(g, k) is not None and min_eta(g, k)[0] >= 0
        return
    base = ext.base
    adj = adjacency_sets(g)
    best = None
    # oracle: brute-force the selection order over all 3^n labellings
    for labels in itertools.product((0, 1, 2), repeat=g.n):
        S = {v for v, l in enumerate(labels) if l == 1}
        T = {v for v, l in enumerate(labels) if l == 2}
        val = naive_eta(g, k, S, T)
        c = TutteCertificate(k, tuple(sorted(S)), tuple(sorted(T)), val, ())
        cert_u = find_odd_u(g, adj, k, S, T)
        rest = g.n - len(S) - len(T) - cert_u
        key = (val, cert_u, -rest, c.S, c.T)
        if best is None or key < best:
            best = key
    assert (base.eta, ext.u_size, -ext.rest_size, base.S, base.T) == best
    for v in base.U:
        assert (v in ext.excess_t_edges) == (len(adj[v] & set(base.T)) > k - 1)
        assert (v in ext.low_degree) == (len(adj[v] - set(base.S)) < k + 1)


def find_odd_u(g, adj, k, S, T):
    rest = set(range(g.n)) - S - T
    total = 0
    for c in components(adj, rest):
        if (sum(1 for v in c for u in adj[v] if u in T) + k * len(c)) % 2:
            total += len(c)
    return total


def test_certificate_text_round_trip(k13, c5):
    for g, k in ((k13, 1), (c5, 1), (cycle_graph(7), 2)):
        cert = find_tutte_certificate(g, k)
        if cert is None:
            continue
        text = format_certificate(cert)
        assert parse_certificate(text, k) == cert
    assert format_certificate(find_tutte_certificate(k13, 1)) == "S: 0\nT:\neta: -2\nodd: {1} {2} {3}\n"


def test_parse_certificate_missing_field():
    with pytest.raises(ValueError):
        parse_certificate("S: 0\nT:\n", 1)


def test_duality_random_medium():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(6, 10)
        p = rng.choice([0.3, 0.5, 0.7])
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        for k in (1, 2, 3, 4):
            assert verify_duality(g, k)
