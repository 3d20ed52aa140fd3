"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own construction and
linear-algebra code: joins are rebuilt with networkx, pseudoinverses come from
an SVD, and Kemeny's constant from mean first passage times.
"""


import networkx as nx
import numpy as np
import pytest

from resjoin.graph import Graph, complete, cycle, from_edge_list, path

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def svd_resistance(L):
    """Resistance matrix from ``numpy.linalg.pinv`` (SVD based)."""
    P = np.linalg.pinv(np.asarray(L, dtype=float), rcond=1e-12, hermitian=True)
    d = np.diag(P)
    return d[:, None] + d[None, :] - 2 * P


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def nx_join(G1: Graph, G2=None, kind="central") -> nx.Graph:
    """Central graph / joins built straight from the definitions, same vertex order."""
    n1, m1 = G1.n, G1.m
    H = nx.Graph()
    H.add_nodes_from(range(n1 + m1 + (G2.n if G2 else 0)))
    for k, (p, q) in enumerate(G1.edges):
        H.add_edge(p, n1 + k)
        H.add_edge(q, n1 + k)
    H.add_edges_from(nx.complement(to_nx(G1)).edges())
    if G2 is not None:
        off = n1 + m1
        H.add_edges_from((off + i, off + j) for i, j in G2.edges)
        hubs = range(n1) if kind == "cvj" else range(n1, n1 + m1)
        H.add_edges_from((u, off + w) for u in hubs for w in range(G2.n))
    return H


def nx_resistance(H: nx.Graph):
    L = nx.laplacian_matrix(H, nodelist=sorted(H.nodes())).toarray().astype(float)
    return svd_resistance(L)


def mfpt_kemeny(A):
    """Kemeny's constant from mean first passage times of the simple random walk."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    P = A / A.sum(axis=1, keepdims=True)
    pi = A.sum(axis=1) / A.sum()
    M = np.zeros((n, n))
    for j in range(n):
        others = [i for i in range(n) if i != j]
        Q = P[np.ix_(others, others)]
        M[others, j] = np.linalg.solve(np.eye(n - 1) - Q, np.ones(n - 1))
    # sum_j pi_j m_ij is the same for every start vertex i
    values = M @ pi
    assert np.allclose(values, values[0])
    return float(values[0])


def nx_connected_graphs(max_n, min_n=1):
    return [from_edge_list(g.number_of_nodes(), g.edges()) for g in nx.graph_atlas_g()
            if min_n <= g.number_of_nodes() <= max_n and g.number_of_nodes() > 0
            and nx.is_connected(g)]


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def k2():
    return complete(2)


@pytest.fixture
def p3():
    return path(3)
