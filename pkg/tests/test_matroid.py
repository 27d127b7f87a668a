"""Matroid backings, minors, enumerations and the rank-axiom validator."""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matmor.errors import ElementOutOfRange, EnumerationBoundExceeded, ExchangeAxiomViolation, MatmorError
from matmor.generators import make_rng, random_graph, random_matroid
from matmor.graphs import Graph, graph_from_networkx
from matmor.matroid import (GraphicMatroid, LinearMatroid, UniformMatroid, bases, check_rank_axioms, circuits,
                            cocircuits, contract, cycle_matroid, delete, dual, flats, from_bases, from_rank_table,
                            gf_rank, independent_sets, is_weak_map, loops, parallel_indicator, parallel_pairs,
                            spanning_sets, truncate)
from matmor.utils import popcounts

FANO = [[(v >> k) & 1 for v in range(1, 8)] for k in range(3)]
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def test_uniform_rank():
    assert UniformMatroid(4, 2).rank([1, 2, 3]) == 2
    assert UniformMatroid(4, 2).rank([4]) == 1
    assert UniformMatroid(4, 2).is_independent([1, 4])
    assert not UniformMatroid(4, 2).is_independent([1, 2, 4])
    assert UniformMatroid(4, 2).is_spanning([2, 3])
    assert not UniformMatroid(4, 2).is_spanning([3])


def test_fano_line_has_rank_two():
    F7 = LinearMatroid(2, FANO)
    assert F7.full_rank == 3
    # columns 1, 2, 3 are 001, 010, 011
    assert F7.rank([1, 2, 3]) == 2
    assert F7.rank([1, 2, 4]) == 3
    assert len(bases(F7)) == 28


def test_triangle_cycle_matroid_is_u23():
    triangle = cycle_matroid(Graph(3, ((0, 1), (1, 2), (0, 2))))
    assert triangle.rank([1, 2, 3]) == 2
    assert triangle == UniformMatroid(3, 2)


def test_k7_and_heawood_ranks():
    K7 = Graph(7, tuple((u, v) for u in range(7) for v in range(u + 1, 7)))
    assert GraphicMatroid(K7).n == 21
    assert GraphicMatroid(K7).full_rank == 6
    heawood = graph_from_networkx(nx.heawood_graph())
    assert GraphicMatroid(heawood).n == 21
    assert GraphicMatroid(heawood).full_rank == 13


def test_from_bases_accepts_weak_map_pair(weak_map_pair):
    M, N = weak_map_pair
    assert M.full_rank == 2 and N.full_rank == 1
    assert loops(N) == [3]
    assert parallel_pairs(M) == [frozenset({2, 3})]


def test_from_bases_rejects_mixed_cardinalities():
    with pytest.raises(ExchangeAxiomViolation) as exc:
        from_bases(3, [[1, 2], [3]])
    assert exc.value.witness == {"B1": [3], "B2": [1, 2], "i": 3}


def test_from_bases_rejects_missing_exchange():
    with pytest.raises(ExchangeAxiomViolation):
        from_bases(4, [[1, 2], [3, 4]])


def test_from_bases_element_out_of_range():
    with pytest.raises(ElementOutOfRange):
        from_bases(2, [[1, 3]])


def test_rank_out_of_range_element():
    with pytest.raises(ElementOutOfRange):
        UniformMatroid(3, 1).rank([4])


def test_dual_of_uniform():
    assert dual(UniformMatroid(5, 2)) == UniformMatroid(5, 3)
    assert dual(dual(LinearMatroid(2, FANO))) == LinearMatroid(2, FANO)


def test_minors_of_uniform():
    U = UniformMatroid(4, 2)
    assert delete(U, 2) == UniformMatroid(3, 2)
    assert contract(U, 2) == UniformMatroid(3, 1)


def test_enumerations_of_u23():
    U = UniformMatroid(3, 2)
    assert circuits(U) == [frozenset({1, 2, 3})]
    assert cocircuits(U) == [frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})]
    assert flats(U) == [frozenset(), frozenset({1}), frozenset({2}), frozenset({3}), frozenset({1, 2, 3})]
    assert len(independent_sets(U)) == 7
    assert len(spanning_sets(U)) == 4


def test_parallel_indicator():
    assert parallel_indicator(UniformMatroid(3, 1), 1, 2) == 1
    assert parallel_indicator(UniformMatroid(3, 2), 1, 2) == 0
    assert parallel_indicator(UniformMatroid(3, 0), 1, 2) == 0
    with pytest.raises(MatmorError):
        parallel_indicator(UniformMatroid(3, 1), 2, 2)


def test_rank_axioms():
    assert check_rank_axioms(UniformMatroid(4, 2).rank_table())
    verdict = check_rank_axioms([1, 1])
    assert not verdict
    assert verdict.clause == "cardinality"
    assert verdict.witness["S"] == []


def test_rank_axioms_monotonicity_witness():
    # r({1}) = 1 but r({1, 2}) = 0
    verdict = check_rank_axioms([0, 1, 0, 0])
    assert verdict.clause == "monotonicity"
    assert verdict.witness == {"S1": [1], "S2": [1, 2]}


def test_from_rank_table_rejects_invalid():
    with pytest.raises(MatmorError):
        from_rank_table(2, [0, 1, 1, 0])


def test_weak_map_pair_passes_weak_map_check(weak_map_pair):
    M, N = weak_map_pair
    assert is_weak_map(M, N)
    assert not is_weak_map(N, M)


def test_enumeration_bound(monkeypatch):
    from matmor.config import settings as config_settings
    monkeypatch.setattr(config_settings, "max_n", 4)
    with pytest.raises(EnumerationBoundExceeded):
        UniformMatroid(5, 2).rank_table()


def test_gf_rank_over_gf3():
    assert gf_rank([[1, 2], [2, 1]], 3) == 1
    assert gf_rank([[1, 1], [1, 2]], 3) == 2


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_random_matroids_satisfy_rank_axioms(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 7)))
    assert check_rank_axioms(M.rank_table())
    assert check_rank_axioms(dual(M).rank_table())


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_dual_rank_formula(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 7)))
    D = dual(M)
    pc = popcounts(M.n).astype(np.int64)
    t = M.rank_table().astype(np.int64)
    assert np.array_equal(D.rank_table(), pc + t[::-1] - M.full_rank)
    assert D.full_rank == M.n - M.full_rank


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_contraction_rank_formula(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(2, 7)))
    i = int(rng.integers(1, M.n + 1))
    C, Dl = contract(M, i), delete(M, i)
    others = [j for j in range(1, M.n + 1) if j != i]
    subset = [j for j in others if rng.random() < 0.5]
    relabeled = [j if j < i else j - 1 for j in subset]
    assert Dl.rank(relabeled) == M.rank(subset)
    assert C.rank(relabeled) == M.rank(subset + [i]) - M.rank([i])


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_graphic_rank_matches_networkx(seed):
    rng = make_rng(seed)
    G = random_graph(rng, int(rng.integers(1, 8)))
    M = GraphicMatroid(G)
    table = M.rank_table()
    for mask in range(1 << G.n_edges):
        H = nx.MultiGraph()
        H.add_nodes_from(range(G.vertices))
        H.add_edges_from(G.edges[j] for j in range(G.n_edges) if (mask >> j) & 1)
        assert table[mask] == G.vertices - nx.number_connected_components(H)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_truncation_is_capped(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 7)))
    r = int(rng.integers(0, M.full_rank + 1))
    assert np.array_equal(truncate(M, r).rank_table(), np.minimum(M.rank_table(), r))


def test_fano_flats():
    F7 = LinearMatroid(2, FANO)
    lines = [F for F in flats(F7) if len(F) == 3 and F7.rank(F) == 2]
    assert len(lines) == 7
    assert len(flats(F7)) == 16


def test_contracting_a_loop_deletes_it(weak_map_pair):
    _, N = weak_map_pair
    assert contract(N, 3) == delete(N, 3)


def _shift(i: int, removed: int) -> int:
    return i if i < removed else i - 1


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_deletion_and_contraction_commute(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(2, 7)))
    i, j = (int(k) for k in rng.choice(np.arange(1, M.n + 1), size=2, replace=False))
    assert contract(delete(M, i), _shift(j, i)) == delete(contract(M, j), _shift(i, j))
    assert delete(delete(M, i), _shift(j, i)) == delete(delete(M, j), _shift(i, j))
    assert contract(contract(M, i), _shift(j, i)) == contract(contract(M, j), _shift(i, j))


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_loops_contract_like_deletion(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 7)))
    for i in loops(M):
        assert contract(M, i) == delete(M, i)
    # coloops
    for i in loops(dual(M)):
        assert contract(M, i) == delete(M, i)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_bases_round_trip(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 7)))
    family = bases(M)
    rebuilt = from_bases(M.n, family)
    assert rebuilt == M
    assert set(bases(rebuilt)) == set(family)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_graphic_rank_is_incidence_rank_over_gf2(seed):
    rng = make_rng(seed)
    G = random_graph(rng, int(rng.integers(1, 8)))
    M = GraphicMatroid(G)
    incidence = G.incidence_matrix() % 2
    for mask in range(1 << G.n_edges):
        columns = [j for j in range(G.n_edges) if (mask >> j) & 1]
        assert M.rank_mask(mask) == gf_rank(incidence[:, columns], 2)
