"""Exhaustive small-graph catalogues (one graph per isomorphism class).

Backed by the graph atlas shipped with networkx, which lists every graph on
at most seven vertices.
"""

from __future__ import annotations

from functools import lru_cache

import networkx as nx

from .errors import BadParams
from .graph import Graph, from_edge_list, is_connected, is_regular

ATLAS_MAX_N = 7


@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    return tuple(from_edge_list(g.number_of_nodes(), g.edges()) for g in nx.graph_atlas_g())


def all_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    if max_n > ATLAS_MAX_N:
        raise BadParams(f"exhaustive enumeration only up to n={ATLAS_MAX_N}")
    return [g for g in _atlas() if min_n <= g.n <= max_n]


def connected_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    return [g for g in all_graphs(max_n, min_n) if is_connected(g)]


def regular_connected_graphs(max_n: int, min_n: int = 2) -> list[Graph]:
    return [g for g in connected_graphs(max_n, min_n) if is_regular(g)]


def random_graph(rng, n: int, p: float) -> Graph:
    """Erdos-Renyi ``G(n, p)``."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_edge_list(n, pairs)


def random_connected_graph(rng, n: int, p: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    order = rng.permutation(n)
    pairs = {tuple(sorted((int(order[k]), int(order[rng.integers(k)])))) for k in range(1, n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                pairs.add((i, j))
    return from_edge_list(n, pairs)
