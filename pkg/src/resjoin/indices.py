"""Kirchhoff index, Kemeny's constant and checks against published formulas.

Ground truth is always a sum over a resistance matrix.  The expanded
closed-form expressions for Kirchhoff indices are evaluated term by term as
printed and reported next to the computed value, together with their
deviation; they are never used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .errors import BadParams, Disconnected, NotRegular
from .graph import (
    Graph,
    central,
    complete,
    complete_bipartite,
    components,
    cycle,
    is_connected,
    is_regular,
)
from .resistance import block_one_inverse, cej_parameters, compute, oracle_matrix

# Values printed in the worked example for C4 and K2.
PRINTED_KF_CVJ_C4_K2 = 30.15
PRINTED_KF_CEJ_C4_K2 = 25.5


def _require_connected(G: Graph) -> None:
    if not is_connected(G):
        raise Disconnected("graph is not connected")


def kirchhoff_from_resistance(R) -> float:
    """Sum of ``r_ij`` over unordered pairs."""
    R = np.asarray(R, dtype=float)
    return float(np.triu(R, 1).sum())


def kirchhoff_trace(G: Graph) -> float:
    """``n * tr(L+)``."""
    _require_connected(G)
    return G.n * float(np.trace(linalg.laplacian_pseudoinverse(G.laplacian())))


def kirchhoff_one_inverse(X) -> float:
    """``n * tr(X) - e^T X e`` for a {1}-inverse ``X`` of a connected Laplacian."""
    X = np.asarray(X, dtype=float)
    return X.shape[0] * float(np.trace(X)) - float(X.sum())


def kemeny(G: Graph, R=None) -> float:
    """``(1/4m) * sum over ordered pairs of d_i d_j r_ij``."""
    _require_connected(G)
    if G.m == 0:
        raise Disconnected("Kemeny's constant needs at least one edge")
    R = oracle_matrix(G) if R is None else np.asarray(R, dtype=float)
    d = np.asarray(G.degrees, dtype=float)
    return float(d @ R @ d) / (4 * G.m)


def kemeny_spectral(G: Graph) -> float:
    """``sum_{k>=2} 1/(1 - lambda_k)`` over eigenvalues of the transition matrix."""
    _require_connected(G)
    if G.m == 0:
        raise Disconnected("Kemeny's constant needs at least one edge")
    s = 1.0 / np.sqrt(np.asarray(G.degrees, dtype=float))
    # D^-1 A is similar to D^-1/2 A D^-1/2
    lam = np.sort(np.linalg.eigvalsh(s[:, None] * G.adjacency() * s[None, :]))[::-1]
    return float(np.sum(1.0 / (1.0 - lam[1:])))


@dataclass(frozen=True)
class KemenyCentral:
    by_definition: float
    by_corollary: float  # weights as printed
    by_corollary_swapped: float  # vertex-class weights restored to actual degree products

    @property
    def difference(self) -> float:
        return self.by_corollary - self.by_definition


def kemeny_central(G: Graph) -> KemenyCentral:
    """Kemeny's constant of ``C(G)`` by definition and by the printed corollary.

    The corollary's mixed sum is read in the single orientation
    (edge vertex, original vertex) in which it is written; the other two sums
    run over ordered pairs.
    """
    _require_connected(G)
    Cg = central(G)
    H = Cg.graph
    R = compute("central", G).R
    n, m = G.n, G.m
    V, E = slice(0, n), slice(n, n + m)
    vv = R[V, V].sum()
    ev = R[E, V].sum()
    ee = R[E, E].sum()
    denom = 4 * m + 2 * n * (n - 1)
    printed = (4 * vv + 2 * (n - 1) * ev + (n - 1) ** 2 * ee) / denom
    swapped = ((n - 1) ** 2 * vv + 2 * 2 * (n - 1) * ev + 4 * ee) / denom
    return KemenyCentral(kemeny(H, R), float(printed), float(swapped))


def foster_check(G: Graph, R) -> float:
    """``|sum over edges of r_ij - (n - 1)|``."""
    R = np.asarray(R, dtype=float)
    if G.m == 0:
        return float(abs(G.n - 1))
    E = np.asarray(G.edges)
    return float(abs(R[E[:, 0], E[:, 1]].sum() - (G.n - 1)))


# -- published closed forms, evaluated verbatim --------------------------------------


@dataclass(frozen=True)
class ReportedValue:
    tag: str
    reported: float
    computed: float
    note: str = ""

    @property
    def deviation(self) -> float:
        return self.reported - self.computed

    def as_dict(self) -> dict:
        return {"tag": self.tag, "reported": self.reported, "computed": self.computed,
                "deviation": self.deviation, "note": self.note}


def _central_matrix(G: Graph) -> np.ndarray:
    return linalg.spd_inverse(-0.5 * G.laplacian() + G.n * np.eye(G.n))


def kf_central_theorem(G: Graph) -> float:
    """Expanded Kirchhoff index of ``C(G)`` exactly as printed.

    The ``alpha^T tr(.) alpha`` term is read as the quadratic form
    ``alpha^T N alpha`` with ``alpha`` the degree vector.
    """
    _require_connected(G)
    n, m = G.n, G.m
    N = _central_matrix(G)
    alpha = np.asarray(G.degrees, dtype=float)
    edge_sum = sum(4 * N[i, j] for i, j in G.edges)
    return float((m + n) * np.trace(N) - 0.25 * alpha @ N @ alpha
                 + m * (m + n - 1) / 2 - (2 * m + n) / n
                 + (m + n) * (n - 1) / 4 + (m + n) / 4 * edge_sum)


def kf_central_regular(G: Graph) -> float:
    """Kirchhoff index of ``C(G)`` for ``d``-regular ``G``, printed corollary."""
    d = is_regular(G)
    if d is None:
        raise NotRegular("G must be regular")
    n = G.n
    N = _central_matrix(G)
    Q = G.incidence()
    return float(n * (d + 2) / 2 * np.trace(N) + n * (d + 2) / 8 * np.trace(Q.T @ N @ Q)
                 - d * (d + n) / 4 + n * n * d * (d + 2) / 8 - (d + 1))


def central_kf_bound(G: Graph) -> tuple[float, bool]:
    """Printed maximum-degree upper bound on ``Kf(C(G))`` and whether it holds."""
    _require_connected(G)
    n, m = G.n, G.m
    delta = max(G.degrees)
    N = _central_matrix(G)
    bound = ((m + n) * (delta + 2) / 2 * np.trace(N)
             + (m * (2 * m + n + 1) + 8) / 2 - n * (n + 1) / 2
             - 4 * m * (m + 2 * n) / (2 * n * n))
    computed = kirchhoff_from_resistance(compute("central", G).R)
    return float(bound), bool(computed <= bound + 1e-9)


def kf_central_cycle_example(n: int) -> float:
    """Printed ``Kf(C(C_n))``."""
    s = sum(1.0 / ((n - 1) + math.cos(2 * math.pi * k / n)) for k in range(1, n + 1))
    return 4 * n * s + n * n - 3


def kf_central_kbip_example(n: int) -> float:
    """Printed ``Kf(C(K_{n,n}))``, both cubic terms kept as written."""
    return (120 * n**4 + 168 * n**3 - 157 * n**3 - 164 * n + 488) / 120


def kf_cvj_theorem(G1: Graph, G2: Graph) -> float:
    _require_connected(G1)
    n1, m1, n2 = G1.n, G1.m, G2.n
    N = linalg.spd_inverse(-0.5 * G1.laplacian() + (n1 + n2) * np.eye(n1))
    P = linalg.spd_inverse(n1 * np.eye(n2) + G2.laplacian())
    Q = G1.incidence()
    alpha = np.asarray(G1.degrees, dtype=float)
    inner = (np.trace(N) + np.trace(P) + 0.25 * np.trace(Q.T @ N @ Q)
             + m1 / 2 - (m1 + n1) / (n1 * (n1 + n2)))
    return float((m1 + n1 + n2) * inner - 0.25 * alpha @ N @ alpha
                 + m1**2 / (n1 * (n1 + n2)) - m1 / 2 - n2 / n1)


def kf_cej_theorem(G1: Graph, G2: Graph) -> float:
    """Printed edge-join Kirchhoff index; ``nan`` when ``G2`` has no edges (1/m2 term)."""
    _require_connected(G1)
    a, b, _ = cej_parameters(G1, G2.n)
    n1, m1, n2, m2 = G1.n, G1.m, G2.n, G2.m
    if m2 == 0:
        return float("nan")
    s = n2 + 2
    N = linalg.spd_inverse(a * np.eye(n1) + b * G1.laplacian())
    P = linalg.spd_inverse(m1 * np.eye(n2) + G2.laplacian())
    Q = G1.incidence()
    alpha = np.asarray(G1.degrees, dtype=float)
    M_pinv = N - np.full((n1, n1), 1.0 / (a * n1))
    inner = (np.trace(N) + np.trace(P) - 4 * m1 / (a * n1 * s**2)
             + np.trace(Q.T @ N @ Q) / s**2 + (2 * m1 + n2) / (2 * s)
             + n2 / (2 * m1) - 1 / a)
    return float((m1 + n1 + n2) * inner - (m1 + 2 * n2) / 2
                 - n2 * s / (2 * m2) - alpha @ M_pinv @ alpha / s**2)


def reported_kirchhoff(kind: str, G1: Graph, G2: Optional[Graph] = None) -> ReportedValue:
    """Theorem-level expanded Kirchhoff index against the resistance-matrix sum."""
    computed = kirchhoff_from_resistance(compute(kind, G1, G2).R)
    if kind == "central":
        return ReportedValue("theorem:kf_central", kf_central_theorem(G1), computed)
    if kind == "cvj":
        return ReportedValue("theorem:kf_cvj", kf_cvj_theorem(G1, G2), computed)
    if kind == "cej":
        note = "undefined: G2 has no edges" if G2.m == 0 else ""
        return ReportedValue("theorem:kf_cej", kf_cej_theorem(G1, G2), computed, note)
    raise BadParams(f"unknown construction {kind!r}")


def _is_bipartite(G: Graph) -> bool:
    color = [-1] * G.n
    for comp in components(G):
        color[comp[0]] = 0
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for v in G.neighbors[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _is_cycle(G: Graph) -> bool:
    return G.n >= 3 and is_regular(G) == 2 and is_connected(G)


def _is_balanced_complete_bipartite(G: Graph) -> bool:
    # K_{k,k} is the only k-regular bipartite graph on 2k vertices
    return (G.n >= 2 and G.n % 2 == 0 and is_regular(G) == G.n // 2
            and _is_bipartite(G))


def _is_c4_k2(G1: Graph, G2: Optional[Graph]) -> bool:
    return (G2 is not None and G1.n == 4 and _is_cycle(G1)
            and G2.n == 2 and G2.m == 1)


def reported_entries(kind: str, G1: Graph, G2: Optional[Graph] = None) -> list[ReportedValue]:
    """Every published formula or printed value that applies to this input."""
    entries = []
    if kind == "cej" and is_regular(G1) is None:
        return entries  # no published formula without regularity
    theorem = reported_kirchhoff(kind, G1, G2)
    entries.append(theorem)
    computed = theorem.computed
    if kind == "central":
        d = is_regular(G1)
        if d is not None:
            entries.append(ReportedValue("corollary:kf_central_regular",
                                         kf_central_regular(G1), computed))
        if _is_cycle(G1):
            entries.append(ReportedValue(f"example:kf_central_cycle(n={G1.n})",
                                         kf_central_cycle_example(G1.n), computed))
        if _is_balanced_complete_bipartite(G1):
            k = G1.n // 2
            entries.append(ReportedValue(f"example:kf_central_kbip(n={k})",
                                         kf_central_kbip_example(k), computed))
    elif _is_c4_k2(G1, G2):
        printed = PRINTED_KF_CVJ_C4_K2 if kind == "cvj" else PRINTED_KF_CEJ_C4_K2
        entries.append(ReportedValue(f"example:printed_kf_{kind}(C4,K2)", printed, computed,
                                     "value printed in the worked example"))
    return entries


# -- report ---------------------------------------------------------------------


@dataclass
class IndexReport:
    kind: str
    order: int
    size: int
    kirchhoff_from_R: float
    kirchhoff_trace: float
    kemeny: float
    kemeny_spectral: float
    foster_residual: float
    engine: str
    kirchhoff_one_inverse: Optional[float] = None
    reported: list[ReportedValue] = field(default_factory=list)
    bound_check: Optional[tuple[float, bool]] = None
    kemeny_central: Optional[KemenyCentral] = None

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "order": self.order,
            "size": self.size,
            "engine": self.engine,
            "kirchhoff_from_R": self.kirchhoff_from_R,
            "kirchhoff_trace": self.kirchhoff_trace,
            "kirchhoff_one_inverse": self.kirchhoff_one_inverse,
            "kemeny": self.kemeny,
            "kemeny_spectral": self.kemeny_spectral,
            "foster_residual": self.foster_residual,
            "reported": [r.as_dict() for r in self.reported],
            "bound_check": None,
            "kemeny_central": None,
        }
        if self.bound_check is not None:
            out["bound_check"] = {"bound": self.bound_check[0], "holds": self.bound_check[1]}
        if self.kemeny_central is not None:
            kc = self.kemeny_central
            out["kemeny_central"] = {
                "by_definition": kc.by_definition,
                "by_corollary": kc.by_corollary,
                "by_corollary_swapped": kc.by_corollary_swapped,
                "difference": kc.difference,
            }
        return out


def index_report(kind: str, G1: Graph, G2: Optional[Graph] = None,
                 engine: str = "auto") -> IndexReport:
    """Compute every index for ``construct(kind, G1, G2)``."""
    rep = compute(kind, G1, G2, engine)
    Gj = rep.graph
    H = Gj.graph
    R = rep.R
    one_inv = None
    if kind != "cej" or is_regular(G1) is not None:
        one_inv = kirchhoff_one_inverse(block_one_inverse(Gj).assemble())
    out = IndexReport(
        kind=kind,
        order=H.n,
        size=H.m,
        engine=rep.engine.value,
        kirchhoff_from_R=kirchhoff_from_resistance(R),
        kirchhoff_trace=kirchhoff_trace(H),
        kirchhoff_one_inverse=one_inv,
        kemeny=kemeny(H, R),
        kemeny_spectral=kemeny_spectral(H),
        foster_residual=foster_check(H, R),
        reported=reported_entries(kind, G1, G2),
    )
    if kind == "central":
        out.bound_check = central_kf_bound(G1)
        out.kemeny_central = kemeny_central(G1)
    return out


def discrepancy_ledger() -> list[ReportedValue]:
    """Published values that disagree with the resistance-matrix computation."""
    c3, c4, k2 = cycle(3), cycle(4), complete(2)
    kf = lambda kind, g1, g2=None: kirchhoff_from_resistance(compute(kind, g1, g2).R)
    kbip = complete_bipartite(2, 2)
    kc = kemeny_central(c4)
    return [
        ReportedValue("theorem:kf_central@C3", kf_central_theorem(c3), kf("central", c3),
                      "expanded Kf(C(G)) formula"),
        ReportedValue("example:kf_central_cycle@n=3", kf_central_cycle_example(3),
                      kf("central", c3), "printed Kf(C(C_n))"),
        ReportedValue("example:kf_central_kbip@n=2", kf_central_kbip_example(2),
                      kf("central", kbip), "printed Kf(C(K_{n,n})), verbatim"),
        ReportedValue("corollary:kemeny_central@C4", kc.by_corollary, kc.by_definition,
                      "printed weights 4 / 2(n-1) / (n-1)^2 are swapped relative to degrees"),
        ReportedValue("theorem:kf_cej@(C4,K2)", kf_cej_theorem(c4, k2), kf("cej", c4, k2),
                      "expanded Kf of the edge join"),
        ReportedValue("example:printed_kf_cvj(C4,K2)", PRINTED_KF_CVJ_C4_K2,
                      kf("cvj", c4, k2), "printed scalar"),
        ReportedValue("example:printed_kf_cej(C4,K2)", PRINTED_KF_CEJ_C4_K2,
                      kf("cej", c4, k2), "printed scalar"),
    ]
