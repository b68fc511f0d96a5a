import json
import random

import pytest

from arbor.certificate import DecompositionCertificate
from arbor.connectivity import edge_connectivity
from arbor.errors import FormatError, InvalidParams, NotATree, SizeCapExceeded
from arbor.graph import Multigraph, TreePattern, path_pattern, star_pattern
from arbor.oracle import (
    brute_force_partition_connectivity,
    canonical_tree_code,
    exact_t_decomposition,
    free_trees,
    generate,
    verify_decomposition,
)
from arbor.oracle.generate import circulant, doubled
from arbor.oracle.trees import free_tree_codes_by_prufer

from oracles import copies_of, decomposable_brute, random_multigraph

K4 = Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
CENSUS = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


def relabel(t: TreePattern, rng) -> TreePattern:
    perm = list(range(t.vertex_count))
    rng.shuffle(perm)
    return TreePattern.from_edges([(perm[a], perm[b]) for a, b in t.edges])


class TestExact:
    def test_k4_path(self):
        cert = exact_t_decomposition(K4, path_pattern(3))
        assert len(cert) == 2 and verify_decomposition(K4, path_pattern(3), cert)

    def test_star_host_none(self):
        assert exact_t_decomposition(Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3)]),
                                     path_pattern(3)) is None

    def test_c6(self):
        assert len(exact_t_decomposition(circulant(6, [1]), path_pattern(2))) == 3

    def test_indivisible_is_none(self):
        assert exact_t_decomposition(circulant(7, [1]), path_pattern(2)) is None

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            exact_t_decomposition(circulant(20, [1, 2]), path_pattern(2), cap=30)

    def test_deterministic(self):
        g = circulant(8, [1, 2])
        a = exact_t_decomposition(g, path_pattern(4))
        b = exact_t_decomposition(g, path_pattern(4))
        assert a.to_json() == b.to_json()

    def test_agrees_with_independent_enumeration(self):
        rng = random.Random(21)
        trees = [t for n in (3, 4, 5) for t in free_trees(n)]
        checked = none = 0
        while checked < 120:
            g = random_multigraph(rng, rng.randint(3, 6), p=0.6, max_mult=2)
            t = rng.choice(trees)
            if not 0 < g.copy_count <= 12 or g.copy_count % t.m:
                continue
            checked += 1
            cert = exact_t_decomposition(g, t)
            expected = decomposable_brute(g, t.edges, t.vertex_count)
            assert (cert is not None) == expected
            if cert is None:
                none += 1
            else:
                assert verify_decomposition(g, t, cert)
        assert 0 < none < checked


class TestBrute:
    def test_k4(self):
        assert not brute_force_partition_connectivity(K4, 1, 1).yes

    def test_doubled_c4(self):
        ans = brute_force_partition_connectivity(doubled(circulant(4, [1])), 1, 1)
        assert ans.yes and len(ans.oriented) >= 4

    def test_tree(self):
        tree = Multigraph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        assert brute_force_partition_connectivity(tree, 1, 0).yes
        assert not brute_force_partition_connectivity(tree, 2, 0).yes

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            brute_force_partition_connectivity(doubled(K4, 4), 1, 0)


class TestTrees:
    def test_path_vs_claw(self):
        assert canonical_tree_code(path_pattern(3)) != canonical_tree_code(star_pattern(3))

    def test_spider_relabelings(self):
        spider = TreePattern.from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        other = TreePattern.from_edges([(6, 5), (5, 0), (6, 3), (3, 1), (6, 2), (2, 4)])
        assert canonical_tree_code(spider) == canonical_tree_code(other)

    @pytest.mark.parametrize("n", sorted(CENSUS))
    def test_census(self, n):
        trees = free_trees(n)
        assert len(trees) == CENSUS[n]
        assert len({canonical_tree_code(t) for t in trees}) == CENSUS[n]

    @pytest.mark.parametrize("n", range(2, 8))
    def test_prufer_cross_check(self, n):
        assert free_tree_codes_by_prufer(n) == {canonical_tree_code(t) for t in free_trees(n)}

    def test_relabel_invariance(self):
        rng = random.Random(0)
        pool = [t for n in range(2, 11) for t in free_trees(n)]
        for _ in range(1000):
            t = rng.choice(pool)
            assert canonical_tree_code(relabel(t, rng)) == canonical_tree_code(t)

    def test_not_a_tree(self):
        with pytest.raises(NotATree):
            canonical_tree_code(circulant(4, [1]))


class TestGenerate:
    def test_circulant(self):
        g = generate("circulant", {"n": 8, "offsets": [1, 2]}, 0)
        assert set(g.degrees()) == {4}
        assert edge_connectivity(g)[0] == 4

    def test_doubled(self):
        g = generate("doubled", {"base": circulant(4, [1]), "times": 2}, 0)
        assert {mult for _, _, mult in g.bundles} == {2}

    def test_random_bipartite_divisible(self):
        for seed in range(10):
            g = generate("random_bipartite", {"nx": 3, "ny": 3, "m": 3}, seed)
            assert all(g.degree(x) % 3 == 0 and g.degree(x) > 0 for x in range(3))

    def test_seeded(self):
        a = generate("random_regularish", {"n": 8, "d": 3}, 5)
        assert a == generate("random_regularish", {"n": 8, "d": 3}, 5)

    def test_bad_model(self):
        with pytest.raises(InvalidParams):
            generate("lattice", {}, 0)


class TestVerify:
    def setup_method(self):
        self.t = path_pattern(3)
        self.cert = exact_t_decomposition(K4, self.t)

    def mutate(self, fn):
        doc = json.loads(json.dumps(self.cert.to_json()))
        fn(doc)
        return DecompositionCertificate.from_json(doc)

    def test_accepts_valid(self):
        assert verify_decomposition(K4, self.t, self.cert).ok

    def test_moved_edge(self):
        def move(doc):
            doc["copies"][0]["edges"].append(doc["copies"][1]["edges"].pop())
        v = verify_decomposition(K4, self.t, self.mutate(move))
        assert not v and v.clause == "partition" and v.copy == 0
        assert v.reason.startswith("partition violation at copy 0")

    def test_collapsed_embedding(self):
        def squash(doc):
            emb = doc["copies"][0]["embedding"]
            emb[1] = emb[0]
        v = verify_decomposition(K4, self.t, self.mutate(squash))
        assert v.clause == "injectivity" and v.copy == 0

    def test_dropped_copy(self):
        v = verify_decomposition(K4, self.t, self.mutate(lambda d: d["copies"].pop()))
        assert v.clause == "partition" and v.copy is None

    def test_wrong_pattern(self):
        v = verify_decomposition(K4, star_pattern(3), self.cert)
        assert v.clause == "format"

    def test_malformed_json(self):
        with pytest.raises(FormatError):
            DecompositionCertificate.from_json({"copies": 3})

    def test_round_trip(self):
        back = DecompositionCertificate.from_json(json.loads(json.dumps(self.cert.to_json())))
        assert back == self.cert


def test_copy_helper_matches_flat_order():
    g = Multigraph(3, ((0, 1, 2), (1, 2, 1)))
    assert copies_of(g) == list(g.ends)
