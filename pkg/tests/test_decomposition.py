import pytest

from arbor.connectivity import is_partition_connected
from arbor.decomposition import (
    barat_gerbner_cover,
    bipartite_t_decompose,
    bounds_report,
    check_chain,
    equitable_factorization,
    factorization_problems,
    leaf_count_bound,
    leaf_partite_select,
    merker_f,
    partition_connected_equitable_factorization,
    simple_t_decompose,
    star_decompose,
    thm37_l,
)
from arbor.errors import Infeasible, PreconditionViolated
from arbor.factors import nested_factor_chain
from arbor.graph import BipartitionedGraph, Factor, Multigraph, TreePattern, path_pattern, star_pattern
from arbor.oracle import exact_t_decomposition, verify_decomposition
from arbor.oracle.generate import circulant

from oracles import decomposable_brute

K4 = Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
SPIDER = TreePattern.from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def kmn(a, b, mult=1):
    g = Multigraph(a + b, tuple((i, a + j, mult) for i in range(a) for j in range(b)))
    return BipartitionedGraph.from_sets(g, range(a))


class TestLeafPartite:
    def test_path(self):
        assert leaf_partite_select(path_pattern(3)) == ("A", [2])

    def test_star(self):
        assert leaf_partite_select(star_pattern(4)) == ("B", [])

    def test_spider(self):
        assert leaf_partite_select(SPIDER) == ("A", [3])

    def test_leaf_bound(self):
        assert len(SPIDER.leaves) >= leaf_count_bound(SPIDER) == 3 + 2 - 2


class TestEquitable:
    def test_strict_k12_times_nine(self):
        # (3mb, 0) = (9, 0): nine 2-edge spanning trees use all 18 copies
        g = Multigraph(3, ((0, 1, 9), (0, 2, 9)))
        bg = BipartitionedGraph.from_sets(g, [0])
        parts = equitable_factorization(bg, 3, [2])
        assert factorization_problems(bg, 3, [2], parts) == []
        assert parts[1].degree(0) == 12
        assert all(parts[1].degree(y) % 2 == 0 for y in bg.ys)

    def test_relaxed_six_connected_host(self):
        bg = kmn(1, 2, 6)
        assert is_partition_connected(bg.graph, 6, 0)
        parts = equitable_factorization(bg, 3, [2], strict=False)
        assert factorization_problems(bg, 3, [2], parts) == []
        assert parts[1].degree(0) == 8

    def test_nonleaf_degree_one(self):
        with pytest.raises(PreconditionViolated, match="at least 2"):
            equitable_factorization(kmn(1, 2, 9), 3, [1])

    def test_condition_on_degrees(self):
        with pytest.raises(PreconditionViolated):
            equitable_factorization(kmn(1, 2, 9), 3, [3])

    def test_degree_identity(self):
        bg = kmn(2, 2, 9)
        parts = equitable_factorization(bg, 3, [2], strict=False)
        for v in range(4):
            assert sum(p.degree(v) for p in parts) == bg.graph.degree(v)

    def test_min_degree_floor(self):
        bg = kmn(2, 3, 6)
        parts = equitable_factorization(bg, 3, [2], 1, strict=False)
        assert factorization_problems(bg, 3, [2], parts, min_degree=1) == []


class TestPartitionConnectedEquitable:
    def test_lambda_zero(self):
        bg = BipartitionedGraph.from_sets(Multigraph(2, ((0, 1, 27),)), [0])
        parts, certs = partition_connected_equitable_factorization(bg, 3, [2], 0, 0)
        assert factorization_problems(bg, 3, [2], parts) == []

    def test_excluded_degrees(self):
        with pytest.raises(PreconditionViolated):
            partition_connected_equitable_factorization(kmn(1, 1, 8), 2, [1], 0, 0)

    def test_lambda_one(self):
        # (3m^2 + m^2 * lambda, 0) = (36, 0) for m = 3
        bg = BipartitionedGraph.from_sets(Multigraph(2, ((0, 1, 36),)), [0])
        parts, certs = partition_connected_equitable_factorization(bg, 3, [2], 1, 0)
        assert factorization_problems(bg, 3, [2], parts) == []
        assert [p.degree(0) for p in parts] == [12, 24]
        for p, cert in zip(parts, certs):
            assert cert.problems() == [] and cert.trees[0].copies <= p.copies


class TestStars:
    def test_two_stars_at_one_vertex(self):
        bg = kmn(1, 6)
        cert = star_decompose(bg, 3)
        assert len(cert) == 2
        assert verify_decomposition(bg.graph, star_pattern(3), cert)

    def test_star_itself(self):
        bg = kmn(1, 4)
        assert len(star_decompose(bg, 4)) == 1

    def test_indivisible(self):
        with pytest.raises(PreconditionViolated, match="divisible"):
            star_decompose(kmn(1, 5), 3)

    def test_parallel_copies_split_across_stars(self):
        bg = kmn(1, 3, 2)
        cert = star_decompose(bg, 3)
        assert verify_decomposition(bg.graph, star_pattern(3), cert)


class TestCover:
    def test_empty_inside(self):
        bg = kmn(2, 2, 27)
        chain = nested_factor_chain(bg, 3)
        pieces, residual, _ = barat_gerbner_cover(bg, [], chain, path_pattern(3), check_pre=False)
        assert pieces == [] and residual.copies == chain[0].copies

    def test_single_edge_pattern(self):
        g = Multigraph(4, ((0, 1, 2), (0, 2, 1), (1, 3, 1)))
        bg = BipartitionedGraph.from_sets(g, [0, 1])
        inside = bg.inside_copies(0)
        h1 = Factor(g, bg.crossing_copies())
        pieces, residual, _ = barat_gerbner_cover(bg, inside, [h1], path_pattern(1))
        assert sorted(c for _, used in pieces for c in used) == sorted(inside)
        assert residual.copies == h1.copies

    def test_path_on_two_edges(self):
        g = Multigraph(3, ((0, 1, 1), (1, 2, 1)))
        bg = BipartitionedGraph.from_sets(g, [0, 1])
        h1 = Factor(g, {1})
        pieces, residual, _ = barat_gerbner_cover(bg, {0}, [h1, Factor(g)], path_pattern(2),
                                                 check_pre=False)
        assert len(pieces) == 1
        emb, used = pieces[0]
        assert sorted(used) == [0, 1] and residual.copies == frozenset()

    def test_chain_checked(self):
        bg = kmn(2, 2, 2)
        chain = [Factor.full(bg.graph)] * 3
        assert check_chain(chain, 3)
        with pytest.raises(PreconditionViolated):
            barat_gerbner_cover(bg, [], chain, path_pattern(3))


class TestBipartitePipeline:
    def test_star_branch(self):
        bg = kmn(3, 3)
        cert = bipartite_t_decompose(bg, star_pattern(3), conn=0, outdeg=0)
        assert verify_decomposition(bg.graph, star_pattern(3), cert)
        assert any(r.get("stage") == "star_decompose" for r in cert.provenance)

    def test_doubled_k33_path(self):
        bg = kmn(3, 3, 2)
        t = path_pattern(3)
        cert = bipartite_t_decompose(bg, t, conn=2, outdeg=0)
        assert verify_decomposition(bg.graph, t, cert)
        assert exact_t_decomposition(bg.graph, t) is not None

    def test_indivisible(self):
        with pytest.raises(PreconditionViolated, match="divisible"):
            bipartite_t_decompose(kmn(2, 2), path_pattern(3), conn=0, outdeg=0)


class TestSimplePipeline:
    def test_k4_path(self):
        cert = simple_t_decompose(K4, path_pattern(3), "exact")
        assert len(cert) == 2 and verify_decomposition(K4, path_pattern(3), cert)

    def test_c6_two_path(self):
        g = circulant(6, [1])
        cert = simple_t_decompose(g, path_pattern(2), "exact")
        assert len(cert) == 3

    def test_k4_claw_matches_brute_force(self):
        t = star_pattern(3)
        expected = decomposable_brute(K4, t.edges, t.vertex_count)
        if expected:
            assert verify_decomposition(K4, t, simple_t_decompose(K4, t, "exact"))
        else:
            with pytest.raises(Infeasible):
                simple_t_decompose(K4, t, "exact")

    def test_pipeline_on_circulant(self):
        g = circulant(12, [1, 2, 3, 4, 5])
        t = path_pattern(3)
        cert = simple_t_decompose(g, t, "pipeline", conn=2, outdeg=0)
        assert verify_decomposition(g, t, cert)

    def test_auto_falls_back_and_says_so(self):
        g = circulant(7, [1, 2, 3])
        t = path_pattern(3)
        cert = simple_t_decompose(g, t, "auto", conn=2, outdeg=0)
        assert verify_decomposition(g, t, cert)
        stages = [r.get("stage") for r in cert.provenance]
        assert "exact" in stages

    def test_deterministic(self):
        g = circulant(12, [1, 3, 5])
        t = path_pattern(3)
        a = simple_t_decompose(g, t, "pipeline", conn=2, outdeg=1, seed=4)
        b = simple_t_decompose(g, t, "pipeline", conn=2, outdeg=1, seed=4)
        assert a.to_json() == b.to_json()


class TestBounds:
    def test_m3(self):
        r = bounds_report(path_pattern(3))
        assert r.bt_exponential == 14348907 == 3 ** 15
        assert r.new_edge_conn == 450
        doc = r.to_json()
        assert doc["bt_exponential"] == "14348907" and doc["new_edge_conn"] == "450"

    @pytest.mark.parametrize("lam, k", [(0, 1), (1, 1), (3, 2), (10, 10)])
    def test_merker_m2(self, lam, k):
        assert merker_f(2, lam, k) == 64 * lam + 48 * k

    def test_sandwich_m2(self):
        assert 8 <= merker_f(2, 1, 1) == 112 <= 512

    def test_new_f_and_thm37(self):
        r = bounds_report(4, lam=2)
        assert r.new_f == 16 * 5
        assert thm37_l(2) == 2 * 8 * 10 ** 100 + 2 * 8 * 3
        assert r.new_min_degree == 4 ** 800
