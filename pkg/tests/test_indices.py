import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resjoin.catalog import connected_graphs, random_connected_graph, regular_connected_graphs
from resjoin.errors import Disconnected, NotRegular
from resjoin.graph import (
    central,
    central_edge_join,
    complete,
    complete_bipartite,
    cycle,
    empty,
    path,
)
from resjoin.indices import (
    central_kf_bound,
    discrepancy_ledger,
    foster_check,
    index_report,
    kemeny,
    kemeny_central,
    kemeny_spectral,
    kf_central_cycle_example,
    kf_central_kbip_example,
    kf_central_regular,
    kf_central_theorem,
    kf_cej_theorem,
    kf_cvj_theorem,
    kirchhoff_from_resistance,
    kirchhoff_trace,
    reported_kirchhoff,
)
from resjoin.resistance import compute, resistance_oracle

from conftest import mfpt_kemeny, nx_join, nx_resistance, svd_resistance, to_nx


def kf(kind, G1, G2=None):
    return kirchhoff_from_resistance(compute(kind, G1, G2).R)


class TestKirchhoff:
    def test_k2(self):
        assert kirchhoff_from_resistance(resistance_oracle(complete(2)).R) == pytest.approx(1.0)
        assert kirchhoff_trace(complete(2)) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 9])
    def test_cycles(self, n):
        expected = (n**3 - n) / 12
        assert kirchhoff_trace(cycle(n)) == pytest.approx(expected)
        assert kirchhoff_from_resistance(svd_resistance(cycle(n).laplacian())) \
            == pytest.approx(expected)

    def test_c4_trace(self):
        assert kirchhoff_trace(cycle(4)) == pytest.approx(5.0)

    def test_central_c3(self):
        assert kf("central", cycle(3)) == pytest.approx(17.5)

    def test_cvj_c4_k2(self):
        assert kf("cvj", cycle(4), complete(2)) == pytest.approx(30.166667, abs=1e-6)

    def test_cej_c4_k2(self):
        assert kf("cej", cycle(4), complete(2)) == pytest.approx(25.595238, abs=1e-6)

    def test_complete_graph(self):
        # Kf(K_n) = n - 1
        for n in range(2, 8):
            assert kirchhoff_trace(complete(n)) == pytest.approx(n - 1)

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            kirchhoff_trace(empty(3))

    def test_exhaustive_trace_identity(self):
        for G in connected_graphs(7, min_n=2):
            R = svd_resistance(G.laplacian())
            assert abs(kirchhoff_from_resistance(R) - kirchhoff_trace(G)) <= 1e-8


class TestKemeny:
    def test_k2(self):
        assert abs(kemeny(complete(2)) - 0.5) <= 1e-12

    def test_c4(self):
        assert kemeny(cycle(4)) == pytest.approx(2.5)
        assert kemeny_spectral(cycle(4)) == pytest.approx(2.5)

    def test_k3(self):
        assert kemeny(complete(3)) == pytest.approx(4 / 3)
        assert kemeny_spectral(complete(3)) == pytest.approx(4 / 3)

    def test_p3_mfpt(self):
        G = path(3)
        assert kemeny(G) == pytest.approx(mfpt_kemeny(G.adjacency()))

    def test_single_vertex(self):
        with pytest.raises(Disconnected):
            kemeny(empty(1))

    def test_against_mfpt(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            G = random_connected_graph(rng, int(rng.integers(2, 12)), 0.3)
            assert kemeny(G) == pytest.approx(mfpt_kemeny(G.adjacency()), abs=1e-9)

    def test_exhaustive_spectral(self):
        for G in connected_graphs(7, min_n=2):
            assert abs(kemeny(G) - kemeny_spectral(G)) <= 1e-8


class TestKemenyCentral:
    def test_c3_is_c6(self):
        assert kemeny_central(cycle(3)).by_definition == pytest.approx(kemeny(cycle(6)))

    def test_k2_is_p3(self):
        kc = kemeny_central(complete(2))
        assert kc.by_definition == pytest.approx(mfpt_kemeny(path(3).adjacency()))

    def test_c4_values(self):
        kc = kemeny_central(cycle(4))
        assert kc.by_definition == pytest.approx(7.7666667, abs=1e-6)
        assert kc.by_corollary == pytest.approx(6.3333333, abs=1e-6)
        assert kc.difference == pytest.approx(kc.by_corollary - kc.by_definition)

    def test_swapped_weights_recover_definition(self):
        for G in connected_graphs(6, min_n=2):
            kc = kemeny_central(G)
            assert kc.by_corollary_swapped == pytest.approx(kc.by_definition, abs=1e-9)
            H = nx_join(G)
            assert kc.by_definition == pytest.approx(
                mfpt_kemeny(nx.to_numpy_array(H, nodelist=sorted(H))), abs=1e-8)


class TestFoster:
    def test_k2(self):
        assert foster_check(complete(2), resistance_oracle(complete(2)).R) == pytest.approx(0)

    def test_central_c4(self):
        H = central(cycle(4)).graph
        R = compute("central", cycle(4)).R
        assert sum(R[i, j] for i, j in H.edges) == pytest.approx(7.0, abs=1e-9)
        assert foster_check(H, R) <= 1e-9

    def test_cej_c4_k2(self):
        H = central_edge_join(cycle(4), complete(2)).graph
        R = compute("cej", cycle(4), complete(2)).R
        assert sum(R[i, j] for i, j in H.edges) == pytest.approx(9.0, abs=1e-9)

    def test_detects_wrong_matrix(self):
        G = cycle(4)
        assert foster_check(G, 2 * resistance_oracle(G).R) == pytest.approx(3.0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 15), st.integers(0, 2**32 - 1))
    def test_random(self, n, seed):
        G = random_connected_graph(np.random.default_rng(seed), n, 0.3)
        assert foster_check(G, nx_resistance(to_nx(G))) <= 1e-9


class TestPrintedFormulas:
    def test_central_theorem_c3(self):
        assert kf_central_theorem(cycle(3)) == pytest.approx(14.5)

    def test_cycle_example_n3(self):
        assert kf_central_cycle_example(3) == pytest.approx(26.0)

    def test_kbip_example(self):
        assert kf_central_kbip_example(2) == pytest.approx(18.0666667, abs=1e-6)
        assert kf("central", complete_bipartite(2, 2)) == pytest.approx(26.0)
        assert kf_central_kbip_example(3) == pytest.approx(10013 / 120)
        assert kf("central", complete_bipartite(3, 3)) == pytest.approx(91.3333333, abs=1e-6)

    def test_regular_corollary_exact(self):
        for G in regular_connected_graphs(7):
            assert kf_central_regular(G) == pytest.approx(kf("central", G), abs=1e-8)

    def test_regular_corollary_requires_regular(self):
        with pytest.raises(NotRegular):
            kf_central_regular(path(3))

    def test_cvj_theorem_exact(self):
        from resjoin.catalog import all_graphs
        for G1 in connected_graphs(4, min_n=2):
            for G2 in all_graphs(3):
                assert kf_cvj_theorem(G1, G2) == pytest.approx(kf("cvj", G1, G2), abs=1e-8)

    def test_cej_theorem_c4_k2(self):
        assert kf_cej_theorem(cycle(4), complete(2)) == pytest.approx(22.5952381, abs=1e-6)

    def test_cej_theorem_undefined_without_g2_edges(self):
        assert math.isnan(kf_cej_theorem(cycle(4), empty(2)))

    def test_reported_kirchhoff(self):
        r = reported_kirchhoff("central", cycle(3))
        assert (r.reported, r.computed) == (pytest.approx(14.5), pytest.approx(17.5))
        assert r.deviation == pytest.approx(-3.0)
        r = reported_kirchhoff("cvj", cycle(4), complete(2))
        assert r.deviation == pytest.approx(0, abs=1e-9)
        r = reported_kirchhoff("cej", cycle(4), complete(2))
        assert r.computed == pytest.approx(25.595238, abs=1e-6)

    @pytest.mark.parametrize("G", [cycle(3), cycle(4), complete(4)], ids=["C3", "C4", "K4"])
    def test_bound(self, G):
        bound, holds = central_kf_bound(G)
        assert holds == (kf("central", G) <= bound + 1e-9)

    def test_bound_c3(self):
        bound, holds = central_kf_bound(cycle(3))
        assert bound == pytest.approx(27.0)
        assert holds


class TestIndexReport:
    def test_central(self):
        rep = index_report("central", cycle(4))
        assert rep.order == 8 and rep.size == 10
        assert rep.kirchhoff_from_R == pytest.approx(rep.kirchhoff_trace, abs=1e-8)
        assert rep.kirchhoff_one_inverse == pytest.approx(rep.kirchhoff_trace, abs=1e-8)
        assert rep.kemeny == pytest.approx(rep.kemeny_spectral, abs=1e-8)
        assert rep.foster_residual <= 1e-9
        assert rep.bound_check is not None and rep.kemeny_central is not None
        d = rep.as_dict()
        assert d["bound_check"]["holds"] == rep.bound_check[1]
        assert d["kemeny_central"]["difference"] == pytest.approx(rep.kemeny_central.difference)

    def test_printed_scalars_logged(self):
        for kind, printed, exact in [("cvj", 30.15, 30.166667), ("cej", 25.5, 25.595238)]:
            rep = index_report(kind, cycle(4), complete(2))
            assert rep.kirchhoff_from_R == pytest.approx(exact, abs=1e-6)
            entry = [r for r in rep.reported if r.reported == printed]
            assert len(entry) == 1
            assert abs(entry[0].deviation) < 0.2

    def test_irregular_cej(self):
        rep = index_report("cej", path(3), complete(2))
        assert rep.engine == "oracle"
        assert rep.kirchhoff_one_inverse is None
        assert rep.foster_residual <= 1e-9


def test_ledger_contents():
    ledger = {r.tag: r for r in discrepancy_ledger()}
    assert ledger["theorem:kf_central@C3"].deviation == pytest.approx(-3.0)
    assert ledger["example:kf_central_cycle@n=3"].deviation == pytest.approx(8.5)
    assert ledger["example:kf_central_kbip@n=2"].computed == pytest.approx(26.0)
    kc = ledger["corollary:kemeny_central@C4"]
    assert kc.computed == pytest.approx(kemeny(central(cycle(4)).graph))
    assert ledger["theorem:kf_cej@(C4,K2)"].deviation == pytest.approx(-3.0)
    for tag in ("example:printed_kf_cvj(C4,K2)", "example:printed_kf_cej(C4,K2)"):
        assert abs(ledger[tag].deviation) < 0.2
