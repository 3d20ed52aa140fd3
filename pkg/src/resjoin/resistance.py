"""Resistance-distance engines.

Three routes produce the same matrix:

* ``oracle``: pseudoinverse of the full Laplacian;
* ``closed``: the closed forms for central graphs and the two central joins,
  which only invert ``n1 x n1`` and ``n2 x n2`` matrices;
* ``block``: the block {1}-inverse of the partitioned join Laplacian, with
  the Schur-complement pseudoinverse taken from the shifted-Laplacian identity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import linalg
from .errors import BadIndex, BadParams, Disconnected, NotRegular
from .graph import Graph, LabeledJoinGraph, construct, is_connected, is_regular


class Engine(enum.Enum):
    ORACLE = "oracle"
    CLOSED_FORM = "closed"
    BLOCK_INVERSE = "block"


@dataclass
class ResistanceReport:
    graph: Union[Graph, LabeledJoinGraph]
    R: np.ndarray
    engine: Engine
    oracle_deviation: Optional[float] = None

    @property
    def plain_graph(self) -> Graph:
        g = self.graph
        return g.graph if isinstance(g, LabeledJoinGraph) else g


def _plain(G) -> Graph:
    return G.graph if isinstance(G, LabeledJoinGraph) else G


def _require_connected(G: Graph, what: str = "graph") -> None:
    if not is_connected(G):
        raise Disconnected(f"{what} is not connected")


def _r_from_inverse(X: np.ndarray) -> np.ndarray:
    d = np.diag(X)
    R = d[:, None] + d[None, :] - 2 * X
    np.fill_diagonal(R, 0.0)
    return R


def oracle_matrix(G) -> np.ndarray:
    G = _plain(G)
    _require_connected(G)
    return _r_from_inverse(linalg.laplacian_pseudoinverse(G.laplacian()))


def resistance_oracle(G) -> ResistanceReport:
    """Resistance matrix from the Moore-Penrose inverse of ``L(G)``."""
    return ResistanceReport(G, oracle_matrix(G), Engine.ORACLE)


def _with_check(report: ResistanceReport, check: bool) -> ResistanceReport:
    if check:
        report.oracle_deviation = float(np.max(np.abs(report.R - oracle_matrix(report.graph))))
    return report


# -- closed forms ---------------------------------------------------------------


def _edge_endpoints(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    if G.m == 0:
        return np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    E = np.asarray(G.edges)
    return E[:, 0], E[:, 1]


def _edge_rows(R: np.ndarray, p: np.ndarray, q: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Edge vertex to any non-edge vertex: neighbours p, q of a degree-2 vertex."""
    r_pq = R[p, q]
    return 0.5 * (1.0 + R[np.ix_(p, cols)] + R[np.ix_(q, cols)] - 0.5 * r_pq[:, None])


def _edge_edge(R: np.ndarray, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    r_pq = R[p, q]
    cross = (R[np.ix_(p, p)] + R[np.ix_(p, q)] + R[np.ix_(q, p)] + R[np.ix_(q, q)])
    return 1.0 + 0.25 * (cross - r_pq[:, None] - r_pq[None, :])


def _fill_subdivision_blocks(R: np.ndarray, G1: Graph) -> None:
    """Fill edge-vertex rows of ``R`` from the G1/G2 blocks already in place.

    Used by both the central graph and the central vertex join, where every
    edge vertex has exactly its two endpoints as neighbours.
    """
    n1, m1 = G1.n, G1.m
    if m1 == 0:
        return
    p, q = _edge_endpoints(G1)
    E = slice(n1, n1 + m1)
    rest = np.r_[0:n1, n1 + m1:R.shape[0]]
    rows = _edge_rows(R, p, q, rest)
    R[E, rest] = rows
    R[rest, E] = rows.T
    R[E, E] = _edge_edge(R, p, q)
    np.fill_diagonal(R, 0.0)


def central_matrix(G: Graph) -> np.ndarray:
    """Closed-form resistance matrix of the central graph ``C(G)``."""
    _require_connected(G)
    if G.n < 2:
        raise BadParams("central graph closed form needs n >= 2")
    n, m = G.n, G.m
    N = linalg.spd_inverse(-0.5 * G.laplacian() + n * np.eye(n))
    R = np.zeros((n + m, n + m))
    R[:n, :n] = _r_from_inverse(N)
    _fill_subdivision_blocks(R, G)
    return R


def resistance_central(G: Graph, check: bool = False) -> ResistanceReport:
    R = central_matrix(G)
    return _with_check(ResistanceReport(construct("central", G), R, Engine.CLOSED_FORM), check)


def cvj_cross_offset(n1: int, n2: int) -> float:
    """Constant subtracted from G1-to-G2 resistances in the vertex join."""
    return 1.0 / (n1 * (n1 + n2))


def cvj_matrix(G1: Graph, G2: Graph) -> np.ndarray:
    """Closed-form resistance matrix of the central vertex join."""
    _require_connected(G1, "G1")
    if G2.n < 1:
        raise BadParams("G2 needs at least one vertex")
    n1, m1, n2 = G1.n, G1.m, G2.n
    N = linalg.spd_inverse(-0.5 * G1.laplacian() + (n1 + n2) * np.eye(n1))
    P = linalg.spd_inverse(n1 * np.eye(n2) + G2.laplacian())
    order = n1 + m1 + n2
    R = np.zeros((order, order))
    V1, W = slice(0, n1), slice(n1 + m1, order)
    R[V1, V1] = _r_from_inverse(N)
    R[W, W] = _r_from_inverse(P)
    cross = np.diag(N)[:, None] + np.diag(P)[None, :] - cvj_cross_offset(n1, n2)
    R[V1, W] = cross
    R[W, V1] = cross.T
    _fill_subdivision_blocks(R, G1)
    return R


def resistance_cvj(G1: Graph, G2: Graph, check: bool = False) -> ResistanceReport:
    R = cvj_matrix(G1, G2)
    return _with_check(ResistanceReport(construct("cvj", G1, G2), R, Engine.CLOSED_FORM), check)


def cej_parameters(G1: Graph, n2: int) -> tuple[float, float, int]:
    """``(a, b, d)`` such that the Schur complement is ``aI + bL - (a/n1)J``."""
    d = is_regular(G1)
    if d is None:
        raise NotRegular("G1 must be regular for the edge-join closed form")
    n1 = G1.n
    a = (n1 * (n2 + 2) + n2 * d) / (n2 + 2)
    b = -(n2 + 1) / (n2 + 2)
    return a, b, d


def cej_matrix(G1: Graph, G2: Graph) -> np.ndarray:
    """Closed-form resistance matrix of the central edge join (G1 regular)."""
    _require_connected(G1, "G1")
    a, b, d = cej_parameters(G1, G2.n)
    n1, m1, n2 = G1.n, G1.m, G2.n
    if m1 == 0 or n2 < 1:
        raise BadParams("edge join closed form needs m1 >= 1 and n2 >= 1")
    s = n2 + 2
    N = linalg.spd_inverse(a * np.eye(n1) + b * G1.laplacian())
    P = linalg.spd_inverse(m1 * np.eye(n2) + G2.laplacian())
    dN, dP = np.diag(N), np.diag(P)
    p, q = _edge_endpoints(G1)

    order = n1 + m1 + n2
    R = np.zeros((order, order))
    V1, E, W = slice(0, n1), slice(n1, n1 + m1), slice(n1 + m1, order)

    R[V1, V1] = _r_from_inverse(N)
    R[W, W] = _r_from_inverse(P)
    cross = dN[:, None] + dP[None, :] + (n1 * s - 2 * d) / (n1 * d * (n1 * s + n2 * d))
    R[V1, W] = cross
    R[W, V1] = cross.T

    r_pq = R[p, q]
    # (Q^T N Q)_ii = r_pq + 4 N_pq
    own = r_pq + 4 * N[p, q]
    qnq = N[np.ix_(p, p)] + N[np.ix_(p, q)] + N[np.ix_(q, p)] + N[np.ix_(q, q)]
    R[E, E] = 2 / s + (own[:, None] + own[None, :] - 2 * qnq) / s**2

    qn = N[p, :] + N[q, :]  # (Q^T N)_ij
    ev = (own[:, None] / s**2 + dN[None, :] - 2 / s * qn
          + (2 * m1 + n2) / (2 * m1 * s) - n2**2 / (a * n1 * s**2))
    R[E, V1] = ev
    R[V1, E] = ev.T

    ew = own[:, None] / s**2 + dP[None, :] + (m1 - 1) / (m1 * s) - 4 / (a * n1 * s**2)
    R[E, W] = ew
    R[W, E] = ew.T

    np.fill_diagonal(R, 0.0)
    return R


def resistance_cej(G1: Graph, G2: Graph, check: bool = False) -> ResistanceReport:
    R = cej_matrix(G1, G2)
    return _with_check(ResistanceReport(construct("cej", G1, G2), R, Engine.CLOSED_FORM), check)


# -- block {1}-inverse -------------------------------------------------------------


def block_one_inverse(Gj: LabeledJoinGraph) -> linalg.BlockOneInverse:
    """{1}-inverse of ``L(Gj)`` partitioned after the original vertices of G1."""
    G1 = Gj.g1
    _require_connected(G1, "G1")
    n1 = G1.n
    L = Gj.graph.laplacian()
    L1G = G1.laplacian()
    if Gj.kind == "central":
        m_pinv = linalg.shifted_laplacian_pseudoinverse(-0.5, n1, L1G)
    elif Gj.kind == "cvj":
        m_pinv = linalg.shifted_laplacian_pseudoinverse(-0.5, n1 + Gj.n2, L1G)
    elif Gj.kind == "cej":
        a, b, _ = cej_parameters(G1, Gj.n2)
        m_pinv = linalg.shifted_laplacian_pseudoinverse(b, a, L1G)
    else:
        raise BadParams(f"unknown construction {Gj.kind!r}")
    return linalg.one_inverse_blocks(L[:n1, :n1], L[:n1, n1:], L[n1:, n1:], m_pinv=m_pinv)


def resistance_block(Gj: LabeledJoinGraph, check: bool = False) -> ResistanceReport:
    X = block_one_inverse(Gj).assemble()
    R = linalg.resistance_from_inverse(X)
    return _with_check(ResistanceReport(Gj, R, Engine.BLOCK_INVERSE), check)


# -- local recursion --------------------------------------------------------------


def local_recursion(G: Graph, R, i: int, j: int) -> float:
    """Right-hand side of the neighbour recursion for ``r_ij``.

    ``(1/d_i) * (1 + sum_{k~i} r_kj - (1/d_i) * sum_{k<l, k,l~i} r_kl)``; the
    inner double sum runs over unordered neighbour pairs.
    """
    n = G.n
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise BadIndex(f"need distinct vertices in range, got ({i}, {j})")
    nb = list(G.neighbors[i])
    if not nb:
        raise BadIndex(f"vertex {i} is isolated")
    R = np.asarray(R, dtype=float)
    d = len(nb)
    block = R[np.ix_(nb, nb)]
    pair_sum = np.triu(block, 1).sum()
    return float((1.0 + R[nb, j].sum() - pair_sum / d) / d)


def local_recursion_matrix(G: Graph, R) -> np.ndarray:
    """Vectorised :func:`local_recursion` for every ``(i, j)``; diagonal left at 0."""
    R = np.asarray(R, dtype=float)
    A = G.adjacency()
    d = A.sum(axis=1)
    if np.any(d == 0):
        raise BadIndex("graph has an isolated vertex")
    pair = 0.5 * np.einsum("ik,kl,il->i", A, R, A)
    out = (1.0 + A @ R - (pair / d)[:, None]) / d[:, None]
    np.fill_diagonal(out, 0.0)
    return out


# -- dispatch ---------------------------------------------------------------------


def compute(kind: str, G1: Graph, G2: Optional[Graph] = None, engine: str = "auto",
            check: bool = False) -> ResistanceReport:
    """Resistance matrix of ``construct(kind, G1, G2)`` with the requested engine.

    ``auto`` uses the closed form when its preconditions hold, else the oracle.
    """
    if engine == "auto":
        engine = "closed"
        if kind == "cej" and is_regular(G1) is None:
            engine = "oracle"
    if engine == "oracle":
        return resistance_oracle(construct(kind, G1, G2))
    if engine == "block":
        return resistance_block(construct(kind, G1, G2), check)
    if engine == "closed":
        if kind == "central":
            return resistance_central(G1, check)
        if kind == "cvj":
            return resistance_cvj(G1, G2, check)
        if kind == "cej":
            return resistance_cej(G1, G2, check)
        raise BadParams(f"unknown construction {kind!r}")
    raise BadParams(f"unknown engine {engine!r}")
