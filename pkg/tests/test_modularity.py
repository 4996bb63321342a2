"""Tests for Girvan-Newman modularity and signed modularity"""

import unittest

import numpy as np

from fcnet.errors import DataError
from fcnet.models import Clustering, SignedGraph
from fcnet.modularity import (
    girvan_newman_modularity,
    level_score,
    mixing_matrix,
    sign_masses,
    signed_modularity,
)

from .fixtures import (
    EXAMPLE1_CLUSTERS,
    EXAMPLE1_NEGATIVE,
    EXAMPLE1_POSITIVE,
    example1_graph,
    random_clustering,
    random_signed_graph,
    two_triangles,
    unit_graph,
)


def disjoint_cliques(k, size=3):
    edges = []
    for c in range(k):
        base = c * size
        edges += [(base + i, base + j) for i in range(size) for j in range(i + 1, size)]
    return unit_graph(k * size, edges), Clustering([v // size for v in range(k * size)])


def q_by_enumeration(edges, labels):
    """Direct evaluation from (i, j, w) edges with 1-based ids"""
    total = sum(w for _, _, w in edges)
    k = max(labels) + 1
    intra = [0.0] * k
    ends = [0.0] * k
    for i, j, w in edges:
        ci, cj = labels[i - 1], labels[j - 1]
        if ci == cj:
            intra[ci] += w
            ends[ci] += w
        else:
            ends[ci] += w
            ends[cj] += w
    return sum(intra[c] / total - (ends[c] / total) ** 2 for c in range(k))


class TestMixingMatrix(unittest.TestCase):
    """Test the E matrix convention"""

    def test_disjoint_triangles(self):
        e = mixing_matrix(two_triangles(), Clustering([0, 0, 0, 1, 1, 1])).values
        np.testing.assert_allclose(e, [[0.5, 0.0], [0.0, 0.5]])

    def test_complete_bipartite_full_inter_mass(self):
        g = unit_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        e = mixing_matrix(g, Clustering([0, 0, 1, 1])).values
        np.testing.assert_allclose(e, [[0.0, 1.0], [1.0, 0.0]])

    def test_single_cluster(self):
        e = mixing_matrix(two_triangles(bridge=True), Clustering.single(6)).values
        np.testing.assert_allclose(e, [[1.0]])

    def test_rejects_negative_edges(self):
        with self.assertRaises(DataError):
            mixing_matrix(example1_graph(), EXAMPLE1_CLUSTERS)


class TestGirvanNewmanModularity(unittest.TestCase):
    """Test q identities"""

    def test_equal_components(self):
        for k in range(2, 6):
            g, c = disjoint_cliques(k)
            self.assertAlmostEqual(girvan_newman_modularity(g, c), 1.0 - 1.0 / k, places=12)

    def test_bipartite_parts(self):
        g = unit_graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        self.assertAlmostEqual(girvan_newman_modularity(g, Clustering([0, 0, 1, 1, 1])), -2.0, places=12)

    def test_single_cluster_is_zero(self):
        self.assertAlmostEqual(girvan_newman_modularity(two_triangles(True), Clustering.single(6)), 0.0, places=12)

    def test_formulas_agree(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            n = int(rng.integers(2, 10))
            g = random_signed_graph(rng, n, negative=0.0)
            c = random_clustering(rng, n)
            self.assertAlmostEqual(
                girvan_newman_modularity(g, c, "trace"), girvan_newman_modularity(g, c, "sum"), delta=1e-12
            )

    def test_empty_graph(self):
        with self.assertRaises(DataError):
            girvan_newman_modularity(SignedGraph(3), Clustering.single(3))


class TestSignedModularity(unittest.TestCase):
    """Test q_s laws"""

    def test_example1_by_enumeration(self):
        labels = [0] * 5 + [1] * 4
        pos = [(i, j, t / 10.0) for i, j, t in EXAMPLE1_POSITIVE]
        neg = [(i, j, t / 10.0) for i, j, t in EXAMPLE1_NEGATIVE]
        m_pos, m_neg = sum(w for *_, w in pos), sum(w for *_, w in neg)
        expected = (m_pos * q_by_enumeration(pos, labels) - m_neg * q_by_enumeration(neg, labels)) / (m_pos + m_neg)
        self.assertAlmostEqual(signed_modularity(example1_graph(), EXAMPLE1_CLUSTERS), expected, places=12)

    def test_antisymmetry(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            n = int(rng.integers(2, 10))
            g = random_signed_graph(rng, n)
            c = random_clustering(rng, n)
            self.assertAlmostEqual(signed_modularity(g.negated(), c), -signed_modularity(g, c), delta=1e-12)

    def test_equals_q_without_negative_edges(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            n = int(rng.integers(2, 9))
            g = random_signed_graph(rng, n, negative=0.0)
            c = random_clustering(rng, n)
            self.assertAlmostEqual(signed_modularity(g, c), girvan_newman_modularity(g, c), delta=1e-12)

    def test_bounds(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            n = int(rng.integers(2, 10))
            g = random_signed_graph(rng, n, negative=float(rng.uniform()))
            q = signed_modularity(g, random_clustering(rng, n))
            self.assertGreaterEqual(q, -2.0 - 1e-12)
            self.assertLessEqual(q, 2.0 + 1e-12)

    def test_scale_invariance(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            n = int(rng.integers(2, 9))
            g = random_signed_graph(rng, n)
            scaled = SignedGraph.from_signed_matrix(g.signed_matrix * 0.37)
            c = random_clustering(rng, n)
            self.assertAlmostEqual(signed_modularity(scaled, c), signed_modularity(g, c), delta=1e-12)

    def test_count_weighting(self):
        g = example1_graph()
        self.assertEqual(sign_masses(g, "count"), (13.0, 5.0))
        q = signed_modularity(g, EXAMPLE1_CLUSTERS, "count")
        self.assertGreaterEqual(q, -2.0)
        self.assertLessEqual(q, 2.0)

    def test_empty_graph(self):
        with self.assertRaises(DataError):
            signed_modularity(SignedGraph(4), Clustering.single(4))
        self.assertEqual(level_score(SignedGraph(4), Clustering.single(4)), 0.0)


if __name__ == "__main__":
    unittest.main()
