"""Simple undirected graphs, standard families and the central constructions.

Vertex order in every construction is fixed: original vertices of ``G1``
first, then one subdivision vertex per edge of ``G1`` (canonical edge
order), then the vertices of ``G2``.  The matrix engines rely on it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, TextIO

import numpy as np

from .errors import BadParams, DuplicateEdge, IndexOutOfRange, LoopEdge, ParseError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` holds pairs ``(i, j)`` with ``i < j`` in lexicographic order.
    Use :func:`from_edge_list` to build one from arbitrary pairs.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise BadParams(f"vertex count must be non-negative, got {self.n}")
        prev = None
        for e in self.edges:
            i, j = e
            if i == j:
                raise LoopEdge(f"loop at vertex {i}")
            if not (0 <= i < j < self.n):
                raise IndexOutOfRange(f"edge {e} not canonical for n={self.n}")
            if prev is not None and e <= prev:
                raise DuplicateEdge(f"edges not strictly sorted at {e}")
            prev = e

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(v)) for v in nbrs)

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self._edge_set

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        if self.edges:
            idx = np.asarray(self.edges)
            A[idx[:, 0], idx[:, 1]] = 1.0
            A[idx[:, 1], idx[:, 0]] = 1.0
        return A

    def degree_matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.degrees, dtype=float))

    def laplacian(self) -> np.ndarray:
        return laplacian(self)

    def incidence(self) -> np.ndarray:
        return incidence(self)


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical :class:`Graph`, rejecting loops and repeated edges."""
    if n < 0:
        raise BadParams(f"vertex count must be non-negative, got {n}")
    seen = set()
    for pair in pairs:
        i, j = (int(x) for x in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise LoopEdge(f"loop at vertex {i}")
        e = (i, j) if i < j else (j, i)
        if e in seen:
            raise DuplicateEdge(f"edge {e} given twice")
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


def path(n: int) -> Graph:
    if n < 1:
        raise BadParams("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise BadParams("complete graph needs n >= 1")
    return Graph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise BadParams("complete bipartite graph needs p, q >= 1")
    return Graph(p + q, tuple((i, p + j) for i in range(p) for j in range(q)))


def empty(n: int) -> Graph:
    if n < 0:
        raise BadParams("empty graph needs n >= 0")
    return Graph(n, ())


_FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "empty": empty,
}


def generate(family: str, *params: int) -> Graph:
    """Generate a standard graph, e.g. ``generate("cycle", 4)``."""
    try:
        build = _FAMILIES[family]
    except KeyError:
        raise BadParams(f"unknown family {family!r}") from None
    try:
        return build(*(int(p) for p in params))
    except TypeError as exc:
        raise BadParams(f"bad parameters for {family}: {params}") from exc


def laplacian(G: Graph) -> np.ndarray:
    """L = D - A."""
    return G.degree_matrix() - G.adjacency()


def incidence(G: Graph) -> np.ndarray:
    """Vertex-edge 0/1 incidence matrix; ``Q @ Q.T == A + D``."""
    Q = np.zeros((G.n, G.m))
    for k, (i, j) in enumerate(G.edges):
        Q[i, k] = 1.0
        Q[j, k] = 1.0
    return Q


def components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    # the empty graph on zero vertices is not considered connected
    return G.n > 0 and len(components(G)) == 1


def is_regular(G: Graph) -> Optional[int]:
    """Return the common degree if ``G`` is regular, else ``None``."""
    if G.n == 0:
        return None
    degs = set(G.degrees)
    return degs.pop() if len(degs) == 1 else None


# -- labelled constructions ---------------------------------------------------


class VertexKind(enum.Enum):
    G1_VERTEX = "g1"
    EDGE_VERTEX = "edge"
    G2_VERTEX = "g2"


class VertexLabel(NamedTuple):
    kind: VertexKind
    source: int  # vertex index in G1/G2, or edge index in G1.edges


@dataclass(frozen=True)
class LabeledJoinGraph:
    """A constructed graph together with where each vertex came from."""

    graph: Graph
    classes: tuple[VertexLabel, ...]
    kind: str  # "central" | "cvj" | "cej"
    g1: Graph
    g2: Optional[Graph] = None

    @property
    def n1(self) -> int:
        return self.g1.n

    @property
    def m1(self) -> int:
        return self.g1.m

    @property
    def n2(self) -> int:
        return 0 if self.g2 is None else self.g2.n

    def block_slices(self) -> tuple[slice, slice, slice]:
        """Index ranges of the G1, edge-vertex and G2 blocks."""
        n1, m1 = self.n1, self.m1
        return slice(0, n1), slice(n1, n1 + m1), slice(n1 + m1, n1 + m1 + self.n2)

    def vertices_of(self, kind: VertexKind) -> list[int]:
        return [v for v, lab in enumerate(self.classes) if lab.kind is kind]


def _central_edges(G: Graph) -> list[tuple[int, int]]:
    n = G.n
    edges = []
    for k, (p, q) in enumerate(G.edges):
        edges.append((p, n + k))
        edges.append((q, n + k))
    edges.extend(e for e in combinations(range(n), 2) if not G.has_edge(*e))
    return edges


def _labels(G1: Graph, G2: Optional[Graph]) -> tuple[VertexLabel, ...]:
    labels = [VertexLabel(VertexKind.G1_VERTEX, i) for i in range(G1.n)]
    labels += [VertexLabel(VertexKind.EDGE_VERTEX, k) for k in range(G1.m)]
    if G2 is not None:
        labels += [VertexLabel(VertexKind.G2_VERTEX, w) for w in range(G2.n)]
    return tuple(labels)


def central(G: Graph) -> LabeledJoinGraph:
    """Central graph C(G): subdivide every edge, join non-adjacent pairs."""
    H = from_edge_list(G.n + G.m, _central_edges(G))
    return LabeledJoinGraph(H, _labels(G, None), "central", G)


def _join(G1: Graph, G2: Graph, kind: str) -> LabeledJoinGraph:
    n1, m1 = G1.n, G1.m
    off = n1 + m1
    edges = _central_edges(G1)
    edges += [(off + i, off + j) for i, j in G2.edges]
    hubs = range(n1) if kind == "cvj" else range(n1, n1 + m1)
    edges += [(u, off + w) for u in hubs for w in range(G2.n)]
    H = from_edge_list(off + G2.n, edges)
    return LabeledJoinGraph(H, _labels(G1, G2), kind, G1, G2)


def central_vertex_join(G1: Graph, G2: Graph) -> LabeledJoinGraph:
    """C(G1) plus G2, every original vertex of G1 joined to all of G2."""
    return _join(G1, G2, "cvj")


def central_edge_join(G1: Graph, G2: Graph) -> LabeledJoinGraph:
    """C(G1) plus G2, every subdivision vertex joined to all of G2."""
    return _join(G1, G2, "cej")


CONSTRUCTIONS = {
    "central": lambda g1, g2=None: central(g1),
    "cvj": central_vertex_join,
    "cej": central_edge_join,
}


def construct(kind: str, G1: Graph, G2: Optional[Graph] = None) -> LabeledJoinGraph:
    if kind not in CONSTRUCTIONS:
        raise BadParams(f"unknown construction {kind!r}")
    if kind != "central" and G2 is None:
        raise BadParams(f"{kind} needs a second graph")
    if kind == "central" and G2 is not None:
        raise BadParams("central takes a single graph")
    return CONSTRUCTIONS[kind](G1, G2)


# -- edge-list text format -----------------------------------------------------


def write_edge_list(G: Graph, fh: TextIO) -> None:
    fh.write(f"{G.n} {G.m}\n")
    for i, j in G.edges:
        fh.write(f"{i} {j}\n")


def format_edge_list(G: Graph) -> str:
    return f"{G.n} {G.m}\n" + "".join(f"{i} {j}\n" for i, j in G.edges)


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"i j"``.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = [ln.split() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r[0].startswith("#")]
    if not rows:
        raise ParseError("empty edge list")
    try:
        head = [int(x) for x in rows[0]]
        pairs = [tuple(int(x) for x in r) for r in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from None
    if len(head) != 2:
        raise ParseError("header must be 'n m'")
    n, m = head
    if any(len(p) != 2 for p in pairs):
        raise ParseError("edge lines must hold exactly two indices")
    if len(pairs) != m:
        raise ParseError(f"header announces {m} edges, found {len(pairs)}")
    return from_edge_list(n, pairs)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())
