import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arbor.errors import EmptyOrFullSet, FormatError, HostMismatch, NotATree
from arbor.graph import (
    BipartitionedGraph,
    Factor,
    Multigraph,
    TreePattern,
    factor_complement,
    parse_graph,
    parse_rational,
    parse_tree,
    path_pattern,
    serialize_graph,
    star_pattern,
    tree_bipartition,
)

K4 = Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
C4 = Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@st.composite
def multigraphs(draw, max_n=7, max_mult=3):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    mults = draw(st.lists(st.integers(1, max_mult), min_size=len(chosen), max_size=len(chosen)))
    return Multigraph(n, tuple((u, v, m) for (u, v), m in zip(chosen, mults)))


class TestParse:
    def test_doubled_edge(self):
        g = parse_graph("graph 3\nedge 0 1 1\nedge 1 2 2\n")
        assert g.degrees() == [1, 3, 2]
        assert g.copy_count == 3

    def test_single_vertex(self):
        g = parse_graph(b"graph 1\n")
        assert g.vertex_count == 1 and g.copy_count == 0
        assert g.min_degree() == 0

    def test_loop_rejected_with_line(self):
        with pytest.raises(FormatError, match="loop") as info:
            parse_graph("graph 2\nedge 0 0 1\n")
        assert "line 2" in str(info.value)

    @pytest.mark.parametrize("text, needle", [
        ("edge 0 1 1\n", "before graph"),
        ("graph 2\nedge 0 2 1\n", "out of range"),
        ("graph 2\nedge 0 1 1\nedge 1 0 2\n", "duplicate"),
        ("graph 2\nedge 0 1 0\n", "positive"),
        ("graph 2\nedge 0 x 1\n", "non-integer"),
        ("graph 2\nvertex 0\n", "unknown directive"),
        ("# nothing\n", "missing graph"),
        (b"graph 2\n\xff\n", "UTF-8"),
    ])
    def test_format_errors(self, text, needle):
        with pytest.raises(FormatError, match=needle):
            parse_graph(text)

    def test_comments_and_default_multiplicity(self):
        g = parse_graph("# a comment\ngraph 2\n\nedge 1 0\n")
        assert g.bundles == ((0, 1, 1),)

    def test_serialize_sorted(self):
        g = Multigraph(3, ((2, 1, 1), (1, 0, 2)))
        assert serialize_graph(g) == "graph 3\nedge 0 1 2\nedge 1 2 1\n"

    @given(multigraphs())
    def test_round_trip(self, g):
        text = serialize_graph(g)
        assert parse_graph(text) == g
        assert serialize_graph(parse_graph(text)) == text


class TestDegreesAndCuts:
    def test_degree_examples(self):
        assert Multigraph(2, ((0, 1, 2),)).degree(0) == 2
        assert Multigraph(3, ((0, 1, 1),)).degree(2) == 0
        assert all(K4.degree(v) == 3 for v in range(4))

    def test_cut_examples(self):
        assert C4.cut_size({0}) == 2
        assert C4.cut_size({0, 1}) == 2
        assert K4.cut_size({0, 1}) == 4

    @pytest.mark.parametrize("a", [set(), {0, 1, 2, 3}])
    def test_cut_rejects_trivial_sets(self, a):
        with pytest.raises(EmptyOrFullSet):
            K4.cut_size(a)

    @given(multigraphs(), st.data())
    def test_cut_symmetric_and_handshake(self, g, data):
        assert sum(g.degrees()) == 2 * g.copy_count
        if g.vertex_count >= 2:
            a = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=1,
                                  max_size=g.vertex_count - 1))
            rest = set(range(g.vertex_count)) - a
            assert g.cut_size(a) == g.cut_size(rest)

    def test_copy_addressing(self):
        g = Multigraph(3, ((0, 1, 2), (1, 2, 3)))
        assert [g.copy_id(i) for i in range(5)] == [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2)]
        assert all(g.copy_index(g.copy_id(i)) == i for i in range(5))


class TestFactors:
    def test_complement_examples(self):
        assert factor_complement(K4, Factor(K4)).copies == K4.all_copies
        assert factor_complement(K4, Factor.full(K4)).copies == frozenset()
        matching = Factor(K4, {K4.find_bundle(0, 1), K4.find_bundle(2, 3)})
        rest = factor_complement(K4, matching)
        assert len(rest) == 4 and rest.degrees() == [2, 2, 2, 2]

    def test_host_mismatch(self):
        with pytest.raises(HostMismatch):
            factor_complement(C4, Factor(K4, {0}))

    @given(multigraphs(), st.randoms(use_true_random=False))
    def test_complement_degrees(self, g, rnd):
        f = Factor(g, {i for i in range(g.copy_count) if rnd.random() < 0.5})
        c = factor_complement(g, f)
        assert f.isdisjoint(c)
        assert [a + b for a, b in zip(f.degrees(), c.degrees())] == g.degrees()

    def test_restrict_keeps_vertices(self):
        sub, back = K4.restrict({0, 5})
        assert sub.vertex_count == 4 and sub.copy_count == 2
        assert sorted(back) == [0, 5]


class TestTreePattern:
    def test_path_bipartition(self):
        assert tree_bipartition(path_pattern(3)) == (frozenset({0, 2}), frozenset({1, 3}))

    def test_star_bipartition(self):
        a, b = tree_bipartition(star_pattern(4))
        assert a == {0} and b == {1, 2, 3, 4}

    def test_single_edge(self):
        assert tree_bipartition(path_pattern(1)) == (frozenset({0}), frozenset({1}))

    def test_profiles(self):
        spider = TreePattern.from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        assert spider.m == 6
        assert spider.nonleaf_degrees("A") == [3]
        assert spider.nonleaf_degrees("B") == [2, 2, 2]
        assert spider.leaves == {2, 4, 6}
        assert sum(spider.degree_list) == 2 * spider.m

    @pytest.mark.parametrize("text", [
        "graph 3\nedge 0 1 1\nedge 1 2 1\nedge 0 2 1\n",
        "graph 4\nedge 0 1 1\nedge 2 3 1\n",
        "graph 2\nedge 0 1 2\n",
        "graph 1\n",
    ])
    def test_invalid_trees(self, text):
        with pytest.raises(NotATree):
            parse_tree(text)


def test_two_coloring_and_override():
    bg = BipartitionedGraph.two_coloring(C4)
    assert bg.xs == [0, 2] and bg.is_strict
    forced = BipartitionedGraph.from_sets(C4, [0, 1])
    assert not forced.is_strict
    assert forced.inside_copies(0) == {C4.find_bundle(0, 1)}


def test_parse_rational():
    assert parse_rational("1/3") == pytest.approx(1 / 3)
    for bad in ("3/2", "-1", "x", "1/0"):
        with pytest.raises(Exception):
            parse_rational(bad)


def test_random_factor_degrees_match_copies():
    rng = random.Random(3)
    g = Multigraph(5, ((0, 1, 3), (1, 2, 1), (2, 3, 2), (3, 4, 1), (0, 4, 2)))
    for _ in range(20):
        f = Factor(g, {i for i in range(g.copy_count) if rng.random() < 0.4})
        assert sum(f.degrees()) == 2 * len(f)
