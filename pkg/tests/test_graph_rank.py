import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semrank import (
    EmptyGraphError,
    NonFiniteWeightError,
    WeightedGraph,
    pagerank,
    weighted_rank,
)

from oracles import exact_rank


def test_three_node_chain_scores():
    graph = WeightedGraph.directed_graph(3, {(0, 1): 1.0, (1, 2): 1.0})
    result = pagerank(graph)
    assert result.converged
    assert result.scores == pytest.approx([0.15, 0.2775, 0.385875], abs=1e-6)


def test_chain_matches_oracle_exactly():
    edges = {(0, 1): 1.0, (1, 2): 1.0}
    expected = exact_rank(3, edges, d=0.85)
    assert expected == pytest.approx([0.15, 0.2775, 0.385875], abs=1e-12)


def test_isolated_node_keeps_baseline_score():
    graph = WeightedGraph.directed_graph(1, {})
    result = pagerank(graph)
    assert result.scores[0] == pytest.approx(0.15, abs=1e-12)
    assert result.converged


def test_star_leaves_share_center_endorsement():
    graph = WeightedGraph.directed_graph(4, {(0, 1): 1.0, (0, 2): 1.0, (0, 3): 1.0})
    result = pagerank(graph, tol=1e-9, max_iter=500)
    # center has no in-edges; each leaf gets d * 1/3 of its 0.15
    assert result.scores[0] == pytest.approx(0.15, abs=1e-9)
    assert result.scores[1:] == pytest.approx([0.1925] * 3, abs=1e-9)


def test_dangling_nodes_contribute_nothing():
    # both sources point at a sink that never redistributes
    graph = WeightedGraph.directed_graph(3, {(0, 2): 1.0, (1, 2): 1.0})
    result = pagerank(graph, tol=1e-9, max_iter=500)
    expected = exact_rank(3, dict(graph.edges), d=0.85)
    assert result.scores == pytest.approx(expected, abs=1e-9)
    assert result.scores[2] == pytest.approx(0.15 + 0.85 * 2 * 0.15, abs=1e-9)


def test_all_fixture_graphs_match_linear_solution(fixture_graphs):
    for name, graph in fixture_graphs:
        expected = exact_rank(graph.node_count, dict(graph.edges), d=0.85)
        result = weighted_rank(graph, tol=1e-9, max_iter=1000)
        assert result.converged, name
        assert result.scores == pytest.approx(expected, abs=1e-6), name


def test_uniform_weights_reduce_to_pagerank(fixture_graphs):
    for name, graph in fixture_graphs:
        uniform = WeightedGraph(
            node_count=graph.node_count,
            edges={pair: 1.0 for pair in graph.edges},
            directed=graph.directed,
        )
        weighted = weighted_rank(uniform, tol=1e-10, max_iter=1000)
        plain = pagerank(uniform, tol=1e-10, max_iter=1000)
        assert weighted.scores == pytest.approx(plain.scores, abs=1e-9), name


def test_weight_scaling_leaves_scores_unchanged():
    edges = {(0, 1): 0.3, (1, 2): 1.2, (2, 0): 0.7}
    one = weighted_rank(WeightedGraph.directed_graph(3, edges), tol=1e-10, max_iter=1000)
    scaled = weighted_rank(
        WeightedGraph.directed_graph(3, {k: 10.0 * v for k, v in edges.items()}),
        tol=1e-10,
        max_iter=1000,
    )
    assert one.scores == pytest.approx(scaled.scores, abs=1e-9)


def test_non_convergence_reported_not_raised():
    graph = WeightedGraph.directed_graph(3, {(0, 1): 1.0, (1, 2): 1.0})
    result = pagerank(graph, max_iter=1)
    assert not result.converged
    assert result.iterations_used == 1
    assert result.residual > 1e-6


def test_residual_history_bookkeeping():
    graph = WeightedGraph.directed_graph(3, {(0, 1): 1.0, (1, 2): 1.0})
    result = pagerank(graph)
    assert len(result.residual_history) == result.iterations_used
    assert result.residual_history[-1] == result.residual


def test_rerun_is_bit_identical(fixture_graphs):
    for _, graph in fixture_graphs:
        first = weighted_rank(graph)
        second = weighted_rank(graph)
        assert np.array_equal(first.scores, second.scores)


def test_parameter_validation():
    graph = WeightedGraph.directed_graph(2, {(0, 1): 1.0})
    for bad_d in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValueError):
            pagerank(graph, d=bad_d)
    with pytest.raises(ValueError):
        pagerank(graph, tol=0.0)
    with pytest.raises(ValueError):
        pagerank(graph, max_iter=0)


def test_empty_graph_rejected():
    with pytest.raises(EmptyGraphError):
        pagerank(WeightedGraph.directed_graph(0, {}))
    with pytest.raises(EmptyGraphError):
        weighted_rank(WeightedGraph.directed_graph(0, {}))


def test_graph_construction_rejects_bad_edges():
    with pytest.raises(ValueError):
        WeightedGraph.directed_graph(2, {(0, 0): 1.0})  # self loop
    with pytest.raises(ValueError):
        WeightedGraph.directed_graph(2, {(0, 2): 1.0})  # out of range
    with pytest.raises(ValueError):
        WeightedGraph.directed_graph(2, {(0, 1): -0.5})  # negative
    with pytest.raises(NonFiniteWeightError):
        WeightedGraph.directed_graph(2, {(0, 1): float("nan")})
    with pytest.raises(NonFiniteWeightError):
        WeightedGraph.directed_graph(2, {(0, 1): float("inf")})


def test_zero_weight_edges_dropped():
    graph = WeightedGraph.directed_graph(3, {(0, 1): 0.0, (1, 2): 1.0})
    assert (0, 1) not in graph.edges
    assert (1, 2) in graph.edges


def test_undirected_graph_symmetrizes():
    graph = WeightedGraph.undirected_graph(3, {(0, 1): 0.4})
    assert graph.edges[(0, 1)] == 0.4
    assert graph.edges[(1, 0)] == 0.4
    with pytest.raises(ValueError):
        WeightedGraph.undirected_graph(3, {(0, 1): 0.4, (1, 0): 0.5})


@st.composite
def random_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    chosen = draw(
        st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
        if pairs
        else st.just([])
    )
    weights = draw(
        st.lists(
            st.floats(min_value=0.01, max_value=10.0),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    return WeightedGraph.directed_graph(n, dict(zip(chosen, weights)))


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_scores_never_drop_below_baseline(graph):
    result = weighted_rank(graph, tol=1e-9, max_iter=1000)
    assert np.all(result.scores >= 0.15 - 1e-12)


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_random_graphs_agree_with_oracle(graph):
    expected = exact_rank(graph.node_count, dict(graph.edges), d=0.85)
    result = weighted_rank(graph, tol=1e-10, max_iter=2000)
    assert result.scores == pytest.approx(expected, abs=1e-6)
