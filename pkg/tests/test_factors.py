import random
from fractions import Fraction

import pytest

from arbor.connectivity import is_partition_connected
from arbor.errors import InvalidParams, PreconditionViolated
from arbor.factors import (
    DegreePlan,
    FactorSystem,
    hoffman_factor,
    modulo_factor,
    modulo_factor_problems,
    multi_modulo_decompose,
    multi_modulo_problems,
    nested_factor_chain,
    semi_regular_split,
)
from arbor.graph import BipartitionedGraph, Factor, Multigraph
from arbor.oracle.generate import circulant, doubled

from oracles import modulo_factor_exists, random_bipartite_graph


def kmn(a, b, mult=1):
    g = Multigraph(a + b, tuple((i, a + j, mult) for i in range(a) for j in range(b)))
    return BipartitionedGraph.from_sets(g, range(a))


def first_copies(g: Multigraph) -> Factor:
    """One copy of every bundle."""
    return Factor(g, {g.bundle_copies(b)[0] for b in range(len(g.bundles))})


class TestHoffman:
    def test_c4_half(self):
        bg = BipartitionedGraph.two_coloring(circulant(4, [1]))
        assert hoffman_factor(bg, Fraction(1, 2)).degrees() == [1, 1, 1, 1]

    def test_zero(self):
        assert len(hoffman_factor(kmn(2, 3, 2), Fraction(0))) == 0

    def test_k33_third(self):
        assert hoffman_factor(kmn(3, 3), Fraction(1, 3)).degrees() == [1] * 6

    def test_requires_bipartite(self):
        g = Multigraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(PreconditionViolated, match="does not cross"):
            hoffman_factor(BipartitionedGraph.from_sets(g, [0]), Fraction(1, 2))

    def test_window_random(self):
        rng = random.Random(1)
        for _ in range(100):
            g = random_bipartite_graph(rng, rng.randint(1, 6), rng.randint(1, 6), max_mult=4)
            bg = BipartitionedGraph.from_sets(g, range(g.vertex_count // 2))
            if not bg.is_strict:
                continue
            eps = Fraction(rng.randint(0, 6), 6)
            f = hoffman_factor(bg, eps)
            for d, dg in zip(f.degrees(), g.degrees()):
                assert abs(d - eps * dg) < 1


class TestModulo:
    def test_k22_mod_one(self):
        bg = kmn(2, 2)
        g = bg.graph
        empty = Factor(g)
        h = modulo_factor(bg, [1, 1, 0, 0], 1, empty, empty, empty)
        assert [h.degree(v) for v in bg.xs] == [1, 1]

    def test_doubled_k33_with_connector(self):
        bg = kmn(3, 3, 2)
        g = bg.graph
        t = first_copies(g)
        f = [3, 3, 3, 1, 0, 0]
        empty = Factor(g)
        assert modulo_factor_exists(g, bg.side, f, 2, frozenset(), frozenset(), t.copies)
        h = modulo_factor(bg, f, 2, empty, empty, t)
        assert modulo_factor_problems(bg, f, 2, empty, empty, t, h) == []
        assert [h.degree(v) % 2 for v in bg.ys] == [1, 0, 0]

    def test_window_violation(self):
        bg = kmn(2, 2, 2)
        g = bg.graph
        forced = Factor(g, {0, 1, 2, 3})
        with pytest.raises(PreconditionViolated, match="X-vertex 0"):
            modulo_factor(bg, [1, 4, 0, 0], 1, forced, Factor(g), Factor(g))

    def test_congruence_precondition(self):
        bg = kmn(2, 2)
        e = Factor(bg.graph)
        with pytest.raises(PreconditionViolated, match="congruent"):
            modulo_factor(bg, [1, 0, 0, 0], 2, e, e, e)

    def test_connector_connectivity_checked(self):
        bg = kmn(2, 2, 2)
        g = bg.graph
        t = Factor(g, {0})
        with pytest.raises(PreconditionViolated, match="edge-connected"):
            modulo_factor(bg, [2, 2, 0, 0], 2, Factor(g), Factor(g), t)

    def test_problems_detects_bad_factor(self):
        bg = kmn(2, 2)
        e = Factor(bg.graph)
        issues = modulo_factor_problems(bg, [1, 1, 0, 0], 1, e, e, e, e)
        assert any("d_H(0)" in s for s in issues)


class TestMultiModulo:
    def test_b1_is_modulo_plus_complement(self):
        bg = kmn(3, 3, 3)
        g = bg.graph
        e = Factor(g)
        t = first_copies(g)
        f = [4, 4, 4, 0, 0, 0]
        plan = DegreePlan((2,), (tuple(f),))
        system = FactorSystem((e, e), (t,))
        parts = multi_modulo_decompose(bg, plan, system)
        assert len(parts) == 2
        assert multi_modulo_problems(bg, plan, system, parts) == []
        h = modulo_factor(bg, f, 2, e, e, t)
        assert parts[1].degrees()[:3] == h.degrees()[:3] == f[:3]
        assert parts[0].copies == g.all_copies - parts[1].copies

    def test_b2_mod_one(self):
        bg = kmn(3, 3, 3)
        g = bg.graph
        e = Factor(g)
        plan = DegreePlan((1, 1), ((3, 2, 4, 0, 0, 0), (2, 4, 1, 0, 0, 0)))
        system = FactorSystem((e, e, e), (e, e))
        parts = multi_modulo_decompose(bg, plan, system)
        assert multi_modulo_problems(bg, plan, system, parts) == []
        for v in range(6):
            assert sum(p.degree(v) for p in parts) == g.degree(v)

    def test_precondition_names_index(self):
        bg = kmn(2, 2)
        e = Factor(bg.graph)
        plan = DegreePlan((1, 1), ((1, 1, 0, 0), (2, 2, 0, 0)))
        with pytest.raises(PreconditionViolated, match="index 2"):
            multi_modulo_decompose(bg, plan, FactorSystem((e, e, e), (e, e)))

    def test_plan_json(self):
        plan = DegreePlan((2, 3), ((1, 2), (0, 3)))
        assert DegreePlan.from_json(plan.to_json()) == plan
        with pytest.raises(InvalidParams):
            DegreePlan((2,), ())


class TestSplit:
    def test_m1(self):
        bg = kmn(2, 2, 2)
        g1, g2 = semi_regular_split(bg, 1, 0, 0)
        assert g1.copies | g2.copies == bg.graph.all_copies and g1.isdisjoint(g2)

    def test_doubled_c6(self):
        bg = BipartitionedGraph.two_coloring(doubled(circulant(6, [1])))
        g1, g2 = semi_regular_split(bg, 2, 0, 0, check_pre=False)
        assert all(g1.degree(v) % 2 == 0 for v in bg.xs)
        assert all(g2.degree(v) % 2 == 0 for v in bg.ys)
        assert g1.copies | g2.copies == bg.graph.all_copies

    def test_doubled_c6_fails_its_connectivity_precondition(self):
        # a doubled 6-cycle has 12 copies; (4, 0) needs 4 * 5 = 20
        bg = BipartitionedGraph.two_coloring(doubled(circulant(6, [1])))
        with pytest.raises(PreconditionViolated):
            semi_regular_split(bg, 2, 0, 0)

    def test_indivisible(self):
        bg = BipartitionedGraph.two_coloring(circulant(6, [1]))
        with pytest.raises(PreconditionViolated, match="divisible"):
            semi_regular_split(bg, 4, 0, 0)

    def test_with_connectivity(self):
        g = doubled(circulant(8, [1, 3]), 3)
        bg = BipartitionedGraph.two_coloring(g)
        g1, g2 = semi_regular_split(bg, 2, 1, 0)
        for part in (g1, g2):
            assert is_partition_connected(g, 1, 0, part.copies)
        assert all(g1.degree(v) % 2 == 0 for v in bg.xs)
        assert all(g2.degree(v) % 2 == 0 for v in bg.ys)


class TestChain:
    def test_m1(self):
        bg = kmn(2, 2)
        chain = nested_factor_chain(bg, 1)
        assert len(chain) == 1 and chain[0].copies == bg.graph.all_copies

    @pytest.mark.parametrize("m", [2, 3])
    def test_regular_exact(self, m):
        d = (m + 1) ** m
        bg = BipartitionedGraph.from_sets(Multigraph(2, ((0, 1, d),)), [0])
        chain = nested_factor_chain(bg, m)
        for i, h in enumerate(chain, start=1):
            assert set(h.degrees()) == {(m + 1) ** (m - i + 1)}

    def test_random_m3(self):
        rng = random.Random(6)
        for _ in range(20):
            g = random_bipartite_graph(rng, 3, 3, p=0.9, max_mult=30)
            bg = BipartitionedGraph.from_sets(g, range(3))
            chain = nested_factor_chain(bg, 3)
            for a, b in zip(chain, chain[1:]):
                assert b.copies <= a.copies
                for da, db in zip(a.degrees(), b.degrees()):
                    assert da // 4 <= db <= -(-da // 4)
                    assert 3 * db <= da
