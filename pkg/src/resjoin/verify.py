"""Verification sweep over exhaustive small graphs and random instances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .catalog import all_graphs, connected_graphs, random_connected_graph, random_graph, \
    regular_connected_graphs
from .graph import Graph, central, central_edge_join, central_vertex_join
from .indices import (
    ReportedValue,
    discrepancy_ledger,
    foster_check,
    kemeny,
    kemeny_spectral,
    kirchhoff_from_resistance,
    kirchhoff_one_inverse,
    kirchhoff_trace,
)
from .resistance import (
    block_one_inverse,
    local_recursion_matrix,
    oracle_matrix,
    resistance_cej,
    resistance_central,
    resistance_cvj,
)

ENGINE_TOL = 1e-8
IDENTITY_TOL = 1e-9
METRIC_SLACK = 1e-10


@dataclass
class Check:
    name: str
    tol: float
    count: int = 0
    worst: float = 0.0
    failures: list[str] = field(default_factory=list)

    def record(self, value: float, label: str = "") -> None:
        self.count += 1
        value = float(value)
        if math.isnan(value) or value > self.tol:
            self.failures.append(f"{label}: {value:.3g}")
        if not math.isnan(value):
            self.worst = max(self.worst, value)
        else:
            self.worst = float("nan")

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<42} n={self.count:<6} worst={self.worst:.3g}  "
                f"tol={self.tol:g}")


@dataclass
class VerifyResult:
    checks: list[Check]
    ledger: list[ReportedValue]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def worst(self, prefix: str) -> float:
        return max((c.worst for c in self.checks if c.name.startswith(prefix)), default=0.0)


def metric_violation(R: np.ndarray) -> float:
    """Largest breach of zero diagonal, symmetry, positivity or the triangle inequality."""
    R = np.asarray(R)
    n = R.shape[0]
    worst = float(np.max(np.abs(np.diag(R)))) if n else 0.0
    worst = max(worst, float(np.max(np.abs(R - R.T))) if n else 0.0)
    if n > 1:
        if np.min(R[~np.eye(n, dtype=bool)]) <= 0:
            return float("inf")
        tri = R[:, None, :] - R[:, :, None] - R[None, :, :]  # [i,k,j] = r_ij - r_ik - r_kj
        worst = max(worst, float(np.max(tri)))
    return worst


def _maxdiff(A, B) -> float:
    return float(np.max(np.abs(np.asarray(A) - np.asarray(B)))) if np.size(A) else 0.0


def _recursion_residual(G: Graph, R: np.ndarray) -> float:
    rhs = local_recursion_matrix(G, R)
    return _maxdiff(rhs, R)


def run_verify(max_n: int = 6, max_n1: int = 5, max_n2: int = 4,
               max_n1_regular: Optional[int] = None, max_n_index: int = 7,
               n_random: int = 200, tol: float = ENGINE_TOL, seed: int = 0) -> VerifyResult:
    """Run every invariant suite; failures are collected, never raised."""
    if max_n1_regular is None:
        max_n1_regular = max_n1 + 1
    checks: dict[str, Check] = {}

    def check(name: str, t: float) -> Check:
        if name not in checks:
            checks[name] = Check(name, t)
        return checks[name]

    def audit(label: str, H: Graph, R: np.ndarray) -> None:
        check("metric axioms on R", METRIC_SLACK).record(metric_violation(R), label)
        check("foster residual", IDENTITY_TOL).record(foster_check(H, R), label)
        check("local recursion", IDENTITY_TOL).record(_recursion_residual(H, R), label)

    def count_law(label: str, ok: bool) -> None:
        check("graph: construction counts and degree laws", 0).record(0 if ok else 1, label)

    # central graphs
    for G in connected_graphs(max_n, min_n=2):
        label = f"C(G) n={G.n} edges={G.edges}"
        Cg = central(G)
        count_law(label, Cg.graph.n == G.n + G.m
                  and Cg.graph.m == G.m + G.n * (G.n - 1) // 2)
        oracle = oracle_matrix(Cg)
        closed = resistance_central(G).R
        check("central: closed vs oracle", tol).record(_maxdiff(closed, oracle), label)
        X = block_one_inverse(Cg).assemble()
        block = linalg.resistance_from_inverse(X)
        check("central: block vs oracle", tol).record(_maxdiff(block, oracle), label)
        check("Kf {1}-inverse variant", tol).record(
            abs(kirchhoff_one_inverse(X) - kirchhoff_from_resistance(oracle)), label)
        audit(label, Cg.graph, closed)
        audit(label, Cg.graph, block)

    rng = np.random.default_rng(seed + 1)
    for t in range(max(1, n_random // 2)):
        G = random_connected_graph(rng, int(rng.integers(2, 11)), float(rng.uniform(0.05, 0.6)))
        label = f"random C(G) #{t} n={G.n}"
        closed = resistance_central(G).R
        check("central: closed vs oracle", tol).record(
            _maxdiff(closed, oracle_matrix(central(G))), label)
        audit(label, central(G).graph, closed)

    # central vertex joins
    g2s = all_graphs(max_n2, min_n=1)
    for G1 in connected_graphs(max_n1, min_n=1):
        for G2 in g2s:
            label = f"cvj G1={G1.edges}/{G1.n} G2={G2.edges}/{G2.n}"
            J = central_vertex_join(G1, G2)
            deg = J.graph.degrees
            n1, m1 = G1.n, G1.m
            count_law(label, all(deg[i] == n1 - 1 + G2.n for i in range(n1))
                      and all(deg[n1 + k] == 2 for k in range(m1))
                      and all(deg[n1 + m1 + w] == n1 + G2.degrees[w] for w in range(G2.n)))
            oracle = oracle_matrix(J)
            closed = resistance_cvj(G1, G2).R
            block = linalg.resistance_from_inverse(block_one_inverse(J).assemble())
            check("cvj: closed vs oracle", tol).record(_maxdiff(closed, oracle), label)
            check("cvj: block vs closed", tol).record(_maxdiff(block, closed), label)
            audit(label, J.graph, closed)

    # central edge joins
    for G1 in regular_connected_graphs(max_n1_regular):
        for G2 in g2s:
            label = f"cej G1={G1.edges}/{G1.n} G2={G2.edges}/{G2.n}"
            J = central_edge_join(G1, G2)
            deg = J.graph.degrees
            n1, m1 = G1.n, G1.m
            count_law(label, all(deg[i] == n1 - 1 for i in range(n1))
                      and all(deg[n1 + k] == 2 + G2.n for k in range(m1))
                      and all(deg[n1 + m1 + w] == m1 + G2.degrees[w] for w in range(G2.n)))
            oracle = oracle_matrix(J)
            closed = resistance_cej(G1, G2).R
            block = linalg.resistance_from_inverse(block_one_inverse(J).assemble())
            check("cej: closed vs oracle", tol).record(_maxdiff(closed, oracle), label)
            check("cej: block vs closed", tol).record(_maxdiff(block, closed), label)
            audit(label, J.graph, closed)

    # lemma-level identities on plain graphs
    for G in connected_graphs(max_n_index, min_n=2):
        label = f"G n={G.n} edges={G.edges}"
        R = oracle_matrix(G)
        check("Kf(R) = n tr L+", tol).record(
            abs(kirchhoff_from_resistance(R) - kirchhoff_trace(G)), label)
        check("kemeny: definition vs spectral", tol).record(
            abs(kemeny(G, R) - kemeny_spectral(G)), label)
        audit(label, G, R)

    _random_suites(check, n_random, seed)

    return VerifyResult(list(checks.values()), discrepancy_ledger())


def _random_suites(check, n_random: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    for t in range(n_random):
        n = int(rng.integers(2, 41))
        G = random_connected_graph(rng, n, float(rng.uniform(0.02, 0.4)))
        L = G.laplacian()
        X = linalg.laplacian_pseudoinverse(L)
        res = linalg.penrose_residuals(L, X)
        check("penrose: laplacian pseudoinverse", IDENTITY_TOL).record(max(res.values()), f"#{t}")

        H = random_graph(rng, int(rng.integers(1, 41)), float(rng.uniform(0.0, 0.4)))
        LH = H.laplacian()
        mu = np.linalg.eigvalsh(LH) if H.n else np.zeros(0)
        while True:
            a = float(rng.uniform(0.1, 1.0) * rng.choice([-1, 1]))
            b = float(rng.uniform(1.0, 5.0) * rng.choice([-1, 1]))
            if np.min(np.abs(a * mu + b)) > 0.5:
                break
        S = a * LH + b * np.eye(H.n) - (b / H.n) * np.ones((H.n, H.n))
        res = linalg.penrose_residuals(S, linalg.shifted_laplacian_pseudoinverse(a, b, LH))
        check("penrose: shifted pseudoinverse", IDENTITY_TOL).record(max(res.values()), f"#{t}")

        incid = G.incidence()
        ok = (np.array_equal(incid @ incid.T, G.adjacency() + G.degree_matrix())
              and np.array_equal(L, G.degree_matrix() - G.adjacency()))
        check("graph: QQ^T = A + D, L = D - A", 0).record(0 if ok else 1, f"#{t}")

    for t in range(max(1, n_random // 2)):
        n = int(rng.integers(3, 31))
        G = random_connected_graph(rng, n, float(rng.uniform(0.05, 0.4)))
        perm = rng.permutation(n)
        L = G.laplacian()[np.ix_(perm, perm)]
        k = int(rng.integers(1, n))
        blocks = linalg.one_inverse_blocks(L[:k, :k], L[:k, k:], L[k:, k:])
        X = blocks.assemble()
        check("one-inverse blocks: LXL = L", IDENTITY_TOL).record(_maxdiff(L @ X @ L, L), f"#{t}")
        R_pinv = linalg.resistance_from_inverse(linalg.laplacian_pseudoinverse(L))
        check("{1}-inverse vs pseudoinverse resistances", IDENTITY_TOL).record(
            _maxdiff(linalg.resistance_from_inverse(X), R_pinv), f"#{t}")
