"""Damped power iteration over sparse graphs.

Two update rules share one loop: the unweighted recommendation score
(every out-edge of a node carries 1/out-degree of its source) and the
weighted one (each edge carries its weight over the source's total
out-weight). Updates are synchronous, so results are independent of node
order; dangling nodes contribute nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import EmptyGraphError, NonFiniteWeightError

DEFAULT_DAMPING = 0.85
DEFAULT_TOLERANCE = 1e-6
DEFAULT_MAX_ITER = 100


@dataclass(frozen=True)
class WeightedGraph:
    """Sparse graph; ``edges[(src, dst)]`` is the weight of src -> dst.

    Undirected graphs store both orientations with equal weight. Zero-weight
    edges are never stored, self-loops are forbidden.
    """

    node_count: int
    edges: dict[tuple[int, int], float]
    directed: bool

    @classmethod
    def directed_graph(cls, node_count: int, edges: Mapping[tuple[int, int], float]) -> "WeightedGraph":
        return cls(node_count, _validated(node_count, edges), directed=True)

    @classmethod
    def undirected_graph(cls, node_count: int, edges: Mapping[tuple[int, int], float]) -> "WeightedGraph":
        both = {}
        for (i, j), w in edges.items():
            if (j, i) in edges and edges[(j, i)] != w:
                raise ValueError(f"conflicting weights for undirected edge {i}-{j}")
            both[(i, j)] = w
            both[(j, i)] = w
        return cls(node_count, _validated(node_count, both), directed=False)


def _validated(node_count: int, edges: Mapping[tuple[int, int], float]) -> dict[tuple[int, int], float]:
    if node_count < 0:
        raise ValueError("node_count must be non-negative")
    clean: dict[tuple[int, int], float] = {}
    for (i, j), w in edges.items():
        if i == j:
            raise ValueError(f"self-loop at node {i}")
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise ValueError(f"edge ({i}, {j}) outside [0, {node_count})")
        w = float(w)
        if not np.isfinite(w):
            raise NonFiniteWeightError(f"edge ({i}, {j}) weight {w}")
        if w < 0:
            raise ValueError(f"edge ({i}, {j}) has negative weight {w}")
        if w > 0:
            clean[(i, j)] = w
    return clean


@dataclass(frozen=True)
class RankVector:
    """Power-iteration output: per-node scores plus convergence metadata."""

    scores: np.ndarray
    iterations_used: int
    converged: bool
    residual: float
    residual_history: tuple[float, ...]


def _power_iterate(
    node_count: int,
    srcs: np.ndarray,
    dsts: np.ndarray,
    coefficients: np.ndarray,
    d: float,
    tol: float,
    max_iter: int,
) -> RankVector:
    if not 0.0 < d < 1.0:
        raise ValueError("damping factor must lie in (0, 1)")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be positive")

    scores = np.ones(node_count, dtype=np.float64)
    history: list[float] = []
    converged = False
    iterations = 0
    residual = float("inf")
    for iterations in range(1, max_iter + 1):
        incoming = np.bincount(dsts, weights=coefficients * scores[srcs], minlength=node_count)
        updated = (1.0 - d) + d * incoming
        residual = float(np.max(np.abs(updated - scores))) if node_count else 0.0
        history.append(residual)
        scores = updated
        if residual <= tol:
            converged = True
            break
    return RankVector(
        scores=scores,
        iterations_used=iterations,
        converged=converged,
        residual=residual,
        residual_history=tuple(history),
    )


def _edge_arrays(graph: WeightedGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    items = sorted(graph.edges.items())
    srcs = np.array([i for (i, _), _ in items], dtype=np.intp)
    dsts = np.array([j for (_, j), _ in items], dtype=np.intp)
    weights = np.array([w for _, w in items], dtype=np.float64)
    return srcs, dsts, weights


def pagerank(
    graph: WeightedGraph,
    d: float = DEFAULT_DAMPING,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RankVector:
    """Unweighted ranking: each node splits its vote evenly over out-edges.

    Iterates S(i) = (1-d) + d * sum_{j in In(i)} S(j)/|Out(j)| from an
    initial score of 1.0 per node until the max absolute change is <= tol
    or max_iter is reached. Non-convergence is reported, not raised.
    """
    if graph.node_count == 0:
        raise EmptyGraphError("ranking requires at least one node")
    srcs, dsts, _ = _edge_arrays(graph)
    out_degree = np.bincount(srcs, minlength=graph.node_count).astype(np.float64)
    coefficients = 1.0 / out_degree[srcs] if len(srcs) else np.empty(0)
    return _power_iterate(graph.node_count, srcs, dsts, coefficients, d, tol, max_iter)


def weighted_rank(
    graph: WeightedGraph,
    d: float = DEFAULT_DAMPING,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RankVector:
    """Weighted ranking: votes split proportionally to edge weight.

    Iterates W(i) = (1-d) + d * sum_{j in In(i)} [w_ji / sum_k w_jk] * W(j)
    with the same initialization and stopping rule as ``pagerank``. With
    uniform weights this reduces exactly to the unweighted rule.
    """
    if graph.node_count == 0:
        raise EmptyGraphError("ranking requires at least one node")
    srcs, dsts, weights = _edge_arrays(graph)
    if len(weights) and not np.all(np.isfinite(weights)):
        raise NonFiniteWeightError("graph contains a non-finite edge weight")
    out_sum = np.bincount(srcs, weights=weights, minlength=graph.node_count)
    coefficients = weights / out_sum[srcs] if len(srcs) else np.empty(0)
    return _power_iterate(graph.node_count, srcs, dsts, coefficients, d, tol, max_iter)
