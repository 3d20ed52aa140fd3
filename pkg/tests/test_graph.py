import io
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resjoin.errors import BadParams, DuplicateEdge, IndexOutOfRange, LoopEdge, ParseError
from resjoin.graph import (
    Graph,
    VertexKind,
    central,
    central_edge_join,
    central_vertex_join,
    complete,
    complete_bipartite,
    cycle,
    empty,
    format_edge_list,
    from_edge_list,
    generate,
    incidence,
    is_connected,
    is_regular,
    laplacian,
    parse_edge_list,
    path,
    write_edge_list,
)

from conftest import nx_join, to_nx


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return from_edge_list(n, chosen)


class TestFromEdgeList:
    def test_k2(self):
        G = from_edge_list(2, [(0, 1)])
        assert G.degrees == (1, 1)

    def test_c4_canonical(self):
        G = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert G.edges == ((0, 1), (0, 3), (1, 2), (2, 3))
        assert G.degrees == (2, 2, 2, 2)

    def test_loop(self):
        with pytest.raises(LoopEdge):
            from_edge_list(3, [(0, 0)])

    def test_duplicate(self):
        with pytest.raises(DuplicateEdge):
            from_edge_list(3, [(0, 1), (1, 0)])

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            from_edge_list(3, [(0, 3)])

    def test_direct_constructor_validates(self):
        with pytest.raises(DuplicateEdge):
            Graph(3, ((1, 2), (0, 1)))
        with pytest.raises(IndexOutOfRange):
            Graph(3, ((2, 1),))

    @given(graphs())
    def test_invariants(self, G):
        assert all(i < j for i, j in G.edges)
        assert list(G.edges) == sorted(set(G.edges))
        assert sum(G.degrees) == 2 * G.m


class TestGenerate:
    def test_cycle(self):
        G = generate("cycle", 4)
        assert G.m == 4 and is_regular(G) == 2

    def test_complete_bipartite_is_c4(self):
        G = generate("complete_bipartite", 2, 2)
        assert G.m == 4 and is_regular(G) == 2
        assert nx.is_isomorphic(to_nx(G), nx.cycle_graph(4))

    def test_complete(self):
        assert generate("complete", 3).m == 3
        assert complete(6).m == 15

    @pytest.mark.parametrize("family,params", [("cycle", (2,)), ("complete_bipartite", (0, 2)),
                                               ("nope", (3,)), ("cycle", (1, 2))])
    def test_bad_params(self, family, params):
        with pytest.raises(BadParams):
            generate(family, *params)


class TestMatrices:
    def test_laplacian_k2(self):
        np.testing.assert_array_equal(laplacian(complete(2)), [[1, -1], [-1, 1]])

    def test_laplacian_c4_spectrum(self):
        eig = np.linalg.eigvalsh(laplacian(cycle(4)))
        np.testing.assert_allclose(eig, [0, 2, 2, 4], atol=1e-12)

    def test_laplacian_edgeless(self):
        np.testing.assert_array_equal(laplacian(empty(3)), np.zeros((3, 3)))

    def test_incidence_k2(self):
        np.testing.assert_array_equal(incidence(complete(2)), [[1], [1]])

    def test_incidence_c4(self):
        G = cycle(4)
        Q = incidence(G)
        assert Q.shape == (4, 4)
        np.testing.assert_array_equal(Q.sum(axis=1), 2)
        np.testing.assert_array_equal(Q @ Q.T, G.adjacency() + G.degree_matrix())

    def test_incidence_p3(self):
        Q = incidence(path(3))
        assert Q.shape == (3, 2)
        np.testing.assert_array_equal(Q[1], [1, 1])

    @settings(max_examples=200)
    @given(graphs(max_n=10))
    def test_incidence_laplacian_consistency(self, G):
        Q = incidence(G)
        A, D = G.adjacency(), G.degree_matrix()
        np.testing.assert_array_equal(Q @ Q.T, A + D)
        np.testing.assert_array_equal(laplacian(G), D - A)
        if G.m:
            np.testing.assert_array_equal(Q.sum(axis=0), 2)
        L = laplacian(G)
        np.testing.assert_allclose(L.sum(axis=1), 0)
        nullity = int(np.sum(np.linalg.eigvalsh(L) < 1e-9))
        assert nullity == nx.number_connected_components(to_nx(G))


class TestPredicates:
    def test_c4(self):
        assert is_connected(cycle(4)) and is_regular(cycle(4)) == 2

    def test_two_disjoint_edges(self):
        assert not is_connected(from_edge_list(4, [(0, 1), (2, 3)]))

    def test_p3(self):
        assert is_connected(path(3)) and is_regular(path(3)) is None


class TestCentral:
    def test_k2_gives_p3(self):
        H = central(complete(2)).graph
        assert (H.n, H.m) == (3, 2)
        assert nx.is_isomorphic(to_nx(H), nx.path_graph(3))

    def test_c3_gives_c6(self):
        H = central(cycle(3)).graph
        assert (H.n, H.m) == (6, 6)
        assert nx.is_isomorphic(to_nx(H), nx.cycle_graph(6))

    def test_c4(self):
        H = central(cycle(4)).graph
        assert (H.n, H.m) == (8, 10)

    def test_structure(self):
        G = complete_bipartite(2, 3)
        Cg = central(G)
        H = Cg.graph
        for k, (p, q) in enumerate(G.edges):
            assert set(H.neighbors[G.n + k]) == {p, q}
        for i, j in combinations(range(G.n), 2):
            assert H.has_edge(i, j) == (not G.has_edge(i, j))
        assert Cg.vertices_of(VertexKind.EDGE_VERTEX) == list(range(G.n, G.n + G.m))
        assert [lab.source for lab in Cg.classes[G.n:]] == list(range(G.m))

    def test_matches_independent_build(self):
        G = from_edge_list(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        assert set(central(G).graph.edges) == {tuple(sorted(e)) for e in nx_join(G).edges()}

    def test_counts_exhaustive(self):
        for g in nx.graph_atlas_g():
            n = g.number_of_nodes()
            if n < 2 or n > 6 or not nx.is_connected(g):
                continue
            G = from_edge_list(n, g.edges())
            H = central(G).graph
            assert H.n == n + G.m
            assert H.m == G.m + n * (n - 1) // 2


class TestJoins:
    def test_cvj_c4_k2(self):
        J = central_vertex_join(cycle(4), complete(2))
        assert (J.graph.n, J.graph.m) == (10, 19)

    def test_cvj_k2_k1(self):
        J = central_vertex_join(complete(2), complete(1))
        H = J.graph
        assert H.n == 4
        assert set(H.neighbors[3]) == {0, 1}
        assert set(H.neighbors[2]) == {0, 1}

    def test_cvj_c3_k1(self):
        H = central_vertex_join(cycle(3), empty(1)).graph
        assert (H.n, H.m) == (7, 9)

    def test_cej_c4_k2(self):
        H = central_edge_join(cycle(4), complete(2)).graph
        assert (H.n, H.m) == (10, 19)

    def test_cej_k2_k1(self):
        H = central_edge_join(complete(2), complete(1)).graph
        assert H.n == 4
        assert H.neighbors[3] == (2,)
        assert sorted(H.degrees) == [1, 1, 1, 3]

    def test_cej_c3_k1(self):
        H = central_edge_join(cycle(3), complete(1)).graph
        assert (H.n, H.m) == (7, 9)

    @settings(max_examples=60)
    @given(graphs(max_n=5), graphs(max_n=4), st.sampled_from(["cvj", "cej"]))
    def test_degree_laws(self, G1, G2, kind):
        J = (central_vertex_join if kind == "cvj" else central_edge_join)(G1, G2)
        deg = J.graph.degrees
        n1, m1, n2 = G1.n, G1.m, G2.n
        assert set(J.graph.edges) == {tuple(sorted(e)) for e in nx_join(G1, G2, kind).edges()}
        for v, lab in enumerate(J.classes):
            if lab.kind is VertexKind.G1_VERTEX:
                assert deg[v] == n1 - 1 + (n2 if kind == "cvj" else 0)
            elif lab.kind is VertexKind.EDGE_VERTEX:
                assert deg[v] == 2 + (0 if kind == "cvj" else n2)
            else:
                assert deg[v] == (n1 if kind == "cvj" else m1) + G2.degrees[lab.source]


class TestEdgeListFormat:
    def test_roundtrip(self):
        G = complete_bipartite(2, 3)
        buf = io.StringIO()
        write_edge_list(G, buf)
        assert buf.getvalue() == format_edge_list(G)
        assert parse_edge_list(buf.getvalue()) == G

    def test_parse_canonicalizes(self):
        G = parse_edge_list("4 4\n1 0\n2 1\n3 2\n0 3\n")
        assert G == cycle(4)

    @pytest.mark.parametrize("text", ["", "3\n", "3 2\n0 1\n", "3 1\n0 x\n", "3 1\n0 1 2\n"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_edge_list(text)

    def test_parse_rejects_loops(self):
        with pytest.raises(LoopEdge):
            parse_edge_list("2 1\n1 1\n")

    @given(graphs())
    def test_roundtrip_property(self, G):
        assert parse_edge_list(format_edge_list(G)) == G
