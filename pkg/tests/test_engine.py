import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detours.engine import (
    DP_CAP,
    count_detours,
    count_detours_dfs,
    count_detours_dp,
    detour_edge_counts,
    detour_order,
    detours_through_edge,
    directed_path_counts,
    edge_counts_dp,
    enumerate_detours,
    is_detour,
    omega,
)
from detours.errors import CapacityError, DomainError, EmissionLimitExceeded
from detours.families import bowtie, cycle
from detours.graph import Edge, Graph, add_edge, is_connected, min_degree
from oracles import all_labeled, brute_by_permutation, brute_detours, brute_edge_counts, random_graph, simple_paths


def graph_strategy(max_n=8):
    def build(n):
        pairs = list(itertools.combinations(range(n), 2))
        return st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)).map(
            lambda bits: Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])
        )

    return st.integers(1, max_n).flatmap(build)


@pytest.mark.parametrize(
    "edges, n, L, f",
    [
        ([(0, 1), (1, 2), (0, 2)], 3, 3, 3),
        ([(0, 1), (1, 2), (2, 3), (0, 3)], 4, 4, 4),
        ([(a, b) for a in range(4) for b in range(a + 1, 4)], 4, 4, 12),
        ([(0, 1), (1, 2)], 3, 3, 1),
        ([(0, 1)], 2, 2, 1),
    ],
)
def test_small_hand_values(edges, n, L, f):
    g = Graph.from_edges(n, edges)
    for engine in ("dp", "dfs"):
        rep = count_detours(g, engine)
        assert (rep.order, rep.count) == (L, f)


def test_cycle_has_n_detours():
    for n in range(3, 12):
        assert count_detours(cycle(n)).count == n
        assert count_detours(cycle(n), "dfs").count == n


def test_bowtie():
    rep = count_detours(bowtie())
    assert (rep.order, rep.count) == (5, 4)


def test_edgeless_and_single_vertex():
    assert (count_detours(Graph.empty(1)).order, count_detours(Graph.empty(1)).count) == (1, 1)
    for engine in ("dp", "dfs"):
        rep = count_detours(Graph.empty(4), engine)
        assert (rep.order, rep.count) == (1, 4)
    assert enumerate_detours(Graph.empty(3)).detours == [(0,), (1,), (2,)]


def test_directed_counts_match_brute_force():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 7), rng.random())
        counts = directed_path_counts(g)
        by_len = [0] * (g.n + 1)
        for p in simple_paths(g):
            by_len[len(p)] += 1
        assert list(counts) == by_len


def test_engines_match_permutation_oracle_on_all_graphs_n5():
    for g in all_labeled(5):
        want = brute_by_permutation(g)
        assert (count_detours_dp(g).order, count_detours_dp(g).count) == want
        assert (count_detours_dfs(g).order, count_detours_dfs(g).count) == want


def test_enumeration_matches_recursive_oracle():
    rng = random.Random(9)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.15, 0.7))
        rep = enumerate_detours(g)
        assert set(rep.detours) == brute_detours(g)
        assert len(rep.detours) == rep.count
        assert rep.detours == sorted(rep.detours)
        assert all(p[0] < p[-1] for p in rep.detours if len(p) > 1)


def test_edge_counts_match_oracle():
    rng = random.Random(13)
    for _ in range(150):
        g = random_graph(rng, rng.randint(2, 9), rng.uniform(0.2, 0.7))
        want = brute_edge_counts(g)
        got_dp = {tuple(e): c for e, c in edge_counts_dp(g).items()}
        got_dfs = {tuple(e): c for e, c in detour_edge_counts(g, "dfs").items()}
        assert got_dp == want
        assert got_dfs == want


def test_edge_counts_sum_to_edges_on_detours():
    rng = random.Random(17)
    for _ in range(50):
        g = random_graph(rng, rng.randint(3, 9), 0.5)
        rep = count_detours(g)
        if rep.order == 1:
            continue
        assert sum(edge_counts_dp(g).values()) == rep.count * (rep.order - 1)


def test_doubling_identity():
    # directed count of the detour order is exactly twice the undirected one
    rng = random.Random(19)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 10), rng.random())
        counts = directed_path_counts(g)
        rep = count_detours_dfs(g)
        if rep.order > 1:
            assert counts[rep.order] == 2 * rep.count


def test_detours_through_edge(M9):
    assert detours_through_edge(M9, (2, 6)) == 0
    assert detours_through_edge(M9, (8, 7), engine="dfs") == 9
    with pytest.raises(DomainError):
        detours_through_edge(M9, (0, 8))


def test_emission_limit(K4):
    assert len(enumerate_detours(K4, limit=12).detours) == 12
    with pytest.raises(EmissionLimitExceeded) as info:
        enumerate_detours(K4, limit=5)
    assert info.value.limit == 5
    with pytest.raises(EmissionLimitExceeded):
        enumerate_detours(Graph.empty(4), limit=3)


def test_dp_capacity():
    g = cycle(DP_CAP + 1)
    with pytest.raises(CapacityError):
        count_detours(g, "dp")
    rep = count_detours(g)  # auto falls back to dfs
    assert (rep.order, rep.count) == (DP_CAP + 1, DP_CAP + 1)


def test_unknown_engine(K4):
    with pytest.raises(DomainError):
        count_detours(K4, "magic")


def test_detour_order_large_sparse():
    assert detour_order(cycle(40)) == 40
    path = Graph.from_edges(64, [(v, v + 1) for v in range(63)])
    assert count_detours(path).count == 1


def test_is_detour(H9):
    assert is_detour(H9, (0, 1, 2, 3, 4, 5, 6, 7, 8))
    assert not is_detour(H9, (0, 1, 2, 3, 4))
    assert not is_detour(H9, (0, 2, 1, 3, 4, 5, 6, 7, 8))


def test_omega(H9):
    p = (0, 1, 2, 3, 4, 5, 6, 7, 8)
    # 1-4 and 4-7 are inner chords; 0-2 and 6-8 touch the endpoints
    assert omega(H9, p) == {Edge(1, 4), Edge(4, 7)}
    assert omega(bowtie(), enumerate_detours(bowtie()).detours[0]) == set()
    with pytest.raises(DomainError):
        omega(H9, (0, 1, 2))


def test_report_record(H9):
    rec = enumerate_detours(H9).to_record(H9)
    assert rec["graph6"] == "HxSGGSB"
    assert (rec["n"], rec["delta"], rec["kappa"], rec["L"], rec["f"]) == (9, 2, 1, 9, 9)
    assert len(rec["detours"]) == 9
    assert len(rec["edge_counts"]) == H9.edge_count


@settings(max_examples=150, deadline=None)
@given(graph_strategy(), st.data())
def test_adding_an_edge_never_shortens_detours(g, data):
    missing = [(a, b) for a, b in itertools.combinations(range(g.n), 2) if not g.has_edge(a, b)]
    if not missing:
        return
    e = data.draw(st.sampled_from(missing))
    assert detour_order(add_edge(g, e)) >= detour_order(g)


@settings(max_examples=150, deadline=None)
@given(graph_strategy(9))
def test_engines_agree_property(g):
    a, b = count_detours_dp(g), count_detours_dfs(g)
    assert (a.order, a.count) == (b.order, b.count)


@settings(max_examples=150, deadline=None)
@given(graph_strategy(9))
def test_order_bound_on_connected_graphs(g):
    if g.n < 2 or not is_connected(g):
        return
    assert detour_order(g) >= min(2 * min_degree(g) + 1, g.n)
