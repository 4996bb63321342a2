"""Tests for the annealing bisection, Method D and search-space sizes"""

import itertools
import unittest

from fcnet.annealing import bell_number, hierarchical_search_space, method_d, sa_bisect, warm_start_sides
from fcnet.errors import ConfigError, DataError
from fcnet.modularity import level_score
from fcnet.models import AnnealingSchedule, Clustering, MethodId, SignedGraph

from .fixtures import (
    EXAMPLE1_CLUSTERS,
    complete_graph,
    example1_graph,
    exhaustive_best,
    exhaustive_best_bisection,
    two_triangles,
    unit_graph,
)

FAST = AnnealingSchedule(temp_steps=80, samples_per_temp=100)


def three_triangles():
    edges = []
    for base in (0, 3, 6):
        edges += [(base, base + 1), (base, base + 2), (base + 1, base + 2)]
    return unit_graph(9, edges)


def two_camps():
    """Two positive K4s with every cross pair negative"""
    edges = []
    for camp in ((0, 1, 2, 3), (4, 5, 6, 7)):
        edges += [(i, j, 1.0, 1) for i, j in itertools.combinations(camp, 2)]
    edges += [(i, j, 1.0, -1) for i in range(4) for j in range(4, 8)]
    return SignedGraph(8, edges)


class TestSearchSpace(unittest.TestCase):
    """Test Bell numbers and hierarchical search-space sizes"""

    def test_bell_numbers(self):
        self.assertEqual([bell_number(n) for n in range(1, 8)], [1, 2, 5, 15, 52, 203, 877])
        self.assertEqual(bell_number(9), 21147)

    def test_sixteen_vertices(self):
        sizes = hierarchical_search_space(16)
        self.assertEqual(sizes.best_case, 32902)
        self.assertEqual(sizes.worst_case, 65519)
        self.assertEqual(sizes.bell_reference, 10480142147)

    def test_too_small(self):
        with self.assertRaises(ConfigError):
            hierarchical_search_space(1)


class TestSaBisect(unittest.TestCase):
    """Test the annealing bisection of one cluster"""

    def test_example1_finds_best_bisection(self):
        g = example1_graph()
        best, clustering = exhaustive_best_bisection(g)
        schedule = AnnealingSchedule(temp_steps=200, samples_per_temp=200)
        for seed in range(10):
            result = sa_bisect(g, range(9), schedule, seed=seed)
            self.assertAlmostEqual(result.q_s, best, delta=1e-12)
            self.assertEqual(Clustering.from_groups(9, result.sides), clustering)

    def test_two_triangles(self):
        result = sa_bisect(two_triangles(), range(6), FAST, seed=4)
        self.assertEqual(result.sides, ([0, 1, 2], [3, 4, 5]))
        self.assertAlmostEqual(result.q_s, 0.5, places=12)

    def test_trace_is_non_decreasing(self):
        result = sa_bisect(example1_graph(), range(9), FAST, seed=7)
        self.assertEqual(len(result.trace), FAST.temp_steps)
        self.assertTrue(all(a <= b for a, b in zip(result.trace, result.trace[1:])))
        self.assertAlmostEqual(result.trace[-1], result.q_s, delta=1e-9)

    def test_patience_stops_early(self):
        schedule = AnnealingSchedule(temp_steps=400, samples_per_temp=50, patience=10)
        result = sa_bisect(two_triangles(bridge=True), range(6), schedule, seed=2)
        self.assertLess(len(result.trace), 400)
        self.assertTrue(all(q == result.trace[-1] for q in result.trace[-10:]))
        self.assertEqual(Clustering.from_groups(6, result.sides), Clustering([0, 0, 0, 1, 1, 1]))

    def test_patience_must_be_positive(self):
        with self.assertRaises(ConfigError):
            AnnealingSchedule(patience=0)

    def test_single_edge(self):
        result = sa_bisect(unit_graph(2, [(0, 1)]), [0, 1], FAST, seed=0)
        self.assertEqual(result.sides, ([0], [1]))
        self.assertEqual(result.trace, [])

    def test_frozen_clusters(self):
        g = example1_graph()
        result = sa_bisect(g, [5, 6, 7, 8], FAST, seed=1, clustering=EXAMPLE1_CLUSTERS)
        expected = level_score(g, EXAMPLE1_CLUSTERS.split(2, result.sides[1]))
        self.assertAlmostEqual(result.q_s, expected, delta=1e-12)
        self.assertEqual(sorted(result.sides[0] + result.sides[1]), [5, 6, 7, 8])

    def test_deterministic(self):
        a = sa_bisect(example1_graph(), range(9), FAST, seed=11)
        b = sa_bisect(example1_graph(), range(9), FAST, seed=11)
        self.assertEqual(a.sides, b.sides)
        self.assertEqual(a.trace, b.trace)

    def test_invalid_input(self):
        with self.assertRaises(DataError):
            sa_bisect(example1_graph(), [3], FAST)
        with self.assertRaises(DataError):
            sa_bisect(two_triangles(), range(6), FAST, initial=[0] * 6)


class TestWarmStartSides(unittest.TestCase):
    """Test the initial bipartitions taken from the other methods"""

    def assert_triangles(self, sides):
        self.assertEqual(Clustering(sides), Clustering([0, 0, 0, 1, 1, 1]))

    def test_fiedler(self):
        self.assert_triangles(warm_start_sides(two_triangles(bridge=True), range(6), "fiedler"))

    def test_girvan_newman(self):
        self.assert_triangles(warm_start_sides(two_triangles(bridge=True), range(6), "girvan-newman"))

    def test_spectral(self):
        self.assert_triangles(warm_start_sides(two_triangles(), range(6), "spectral", seed=3))

    def test_restricted_to_cluster(self):
        g = three_triangles()
        members = [3, 4, 5, 6, 7, 8]
        for warm_start in ("girvan-newman", "spectral"):
            self.assert_triangles(warm_start_sides(g, members, warm_start))
        self.assertIsNone(warm_start_sides(g, members, "fiedler"))

    def test_no_split_available(self):
        self.assertIsNone(warm_start_sides(two_triangles(), range(6), "random"))
        self.assertIsNone(warm_start_sides(SignedGraph(4), range(4), "spectral"))
        self.assertIsNone(warm_start_sides(three_triangles(), range(9), "girvan-newman"))


class TestMethodD(unittest.TestCase):
    """Test the hierarchical annealing method"""

    def test_example1_reaches_exhaustive_maximum(self):
        g = example1_graph()
        best, _ = exhaustive_best(g)
        report = method_d(g, seed=0)
        self.assertEqual(report.method, MethodId.D)
        self.assertAlmostEqual(report.chosen_q_s, best, delta=1e-12)
        self.assertEqual(report.chosen_clustering, EXAMPLE1_CLUSTERS)

    def test_quality_gate(self):
        for g in (example1_graph(), two_triangles(), two_triangles(bridge=True), three_triangles(), two_camps()):
            best, _ = exhaustive_best(g, max_clusters=8)
            for seed in range(10):
                report = method_d(g, FAST, seed=seed)
                self.assertGreaterEqual(report.chosen_q_s, 0.999 * best)

    def test_complete_graph_stays_whole(self):
        report = method_d(complete_graph(6), FAST, seed=0)
        self.assertEqual(report.chosen_clustering.k, 1)
        self.assertTrue(all(q < 0 for q in report.q_s_trace[1:]))

    def test_levels(self):
        g = example1_graph()
        report = method_d(g, FAST, seed=2, max_clusters=5)
        self.assertEqual([level.k for level in report.dendrogram], [1, 2, 3, 4, 5])
        self.assertTrue(report.dendrogram.is_refinement_chain())
        for level in report.dendrogram:
            self.assertAlmostEqual(level.q_s, level_score(g, level.clustering), delta=1e-12)
        self.assertEqual(report.dendrogram.levels[1].split, (1, 1, 2))

    def test_deterministic_per_seed(self):
        a = method_d(example1_graph(), FAST, seed=3, keep_trace=True)
        b = method_d(example1_graph(), FAST, seed=3, keep_trace=True)
        self.assertEqual(a.q_s_trace, b.q_s_trace)
        self.assertEqual(a.extras, b.extras)
        self.assertIn("1,2,3,4,5,6,7,8,9", a.extras["annealing"])

    def test_warm_starts(self):
        g = two_triangles(bridge=True)
        for warm_start in ("fiedler", "girvan-newman", "spectral"):
            report = method_d(g, FAST, seed=0, warm_start=warm_start)
            self.assertEqual(report.chosen_clustering, Clustering([0, 0, 0, 1, 1, 1]), warm_start)
            self.assertAlmostEqual(report.chosen_q_s, level_score(g, report.chosen_clustering), delta=1e-12)

    def test_warm_starts_on_example1(self):
        g = example1_graph()
        best, _ = exhaustive_best_bisection(g)
        for warm_start in ("fiedler", "girvan-newman", "spectral"):
            report = method_d(g, FAST, seed=1, warm_start=warm_start, max_clusters=2)
            self.assertGreaterEqual(report.dendrogram.levels[1].q_s, 0.999 * best, warm_start)

    def test_invalid_warm_start(self):
        with self.assertRaises(ConfigError):
            method_d(two_triangles(), FAST, warm_start="greedy")

    def test_edgeless_graph(self):
        report = method_d(SignedGraph(3), FAST, seed=0)
        self.assertTrue(report.notes)
        self.assertEqual(report.chosen_q_s, 0.0)


if __name__ == "__main__":
    unittest.main()
