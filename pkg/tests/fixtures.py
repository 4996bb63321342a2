"""Shared graphs and brute-force oracles for the test suite"""

import itertools
from typing import Dict, Iterator, List, Tuple

import numpy as np

from fcnet.models import Clustering, ConnectivityMatrix, MatrixKind, SignedGraph
from fcnet.modularity import level_score

# Example 1 off-diagonal matrix, 1-based vertex pairs, entries in tenths
EXAMPLE1_POSITIVE = [
    (1, 2, 1), (1, 4, 8), (2, 3, 6), (2, 4, 7), (2, 5, 3), (2, 8, 8), (3, 4, 5),
    (4, 5, 1), (6, 7, 7), (6, 8, 9), (7, 8, 6), (7, 9, 5), (8, 9, 6),
]
EXAMPLE1_NEGATIVE = [(1, 5, 2), (1, 9, 1), (3, 5, 6), (4, 7, 7), (6, 9, 1)]
EXAMPLE1_LAPLACIAN_DIAGONAL = [12, 25, 17, 28, 12, 17, 25, 29, 13]
EXAMPLE1_CLUSTERS = Clustering([0] * 5 + [1] * 4)


def example1_matrix() -> np.ndarray:
    """9x9 signed matrix with unit diagonal"""
    m = np.eye(9)
    for sign, edges in ((1, EXAMPLE1_POSITIVE), (-1, EXAMPLE1_NEGATIVE)):
        for i, j, tenths in edges:
            m[i - 1, j - 1] = m[j - 1, i - 1] = sign * tenths / 10.0
    return m


def example1_connectivity() -> ConnectivityMatrix:
    return ConnectivityMatrix(example1_matrix(), MatrixKind.CORRELATION)


def example1_graph() -> SignedGraph:
    m = example1_matrix()
    np.fill_diagonal(m, 0.0)
    return SignedGraph.from_signed_matrix(m)


def unit_graph(n: int, edges, sign: int = 1) -> SignedGraph:
    """Unit-weight graph from 0-based pairs"""
    return SignedGraph(n, [(min(i, j), max(i, j), 1.0, sign) for i, j in edges])


def two_triangles(bridge: bool = False) -> SignedGraph:
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    if bridge:
        edges.append((2, 3))
    return unit_graph(6, edges)


def complete_graph(n: int) -> SignedGraph:
    return unit_graph(n, itertools.combinations(range(n), 2))


def random_signed_graph(rng: np.random.Generator, n: int, p: float = 0.5, negative: float = 0.3) -> SignedGraph:
    """Erdos-Renyi edges with uniform weights; each edge negative with probability `negative`"""
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = float(rng.uniform(0.05, 1.0))
            sign = -1 if rng.random() < negative else 1
            edges.append((i, j, w, sign))
    if not edges:
        edges.append((0, 1, 0.5, 1))
    return SignedGraph(n, edges)


def random_connected_graph(
    rng: np.random.Generator, n: int, p: float = 0.4, weighted: bool = True, negative: float = 0.0
) -> SignedGraph:
    """A random spanning tree plus extra random edges"""
    order = rng.permutation(n)
    pairs = set()
    for pos in range(1, n):
        parent = order[int(rng.integers(pos))]
        pairs.add((int(min(parent, order[pos])), int(max(parent, order[pos]))))
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            pairs.add((i, j))
    edges = []
    for i, j in sorted(pairs):
        w = float(rng.uniform(0.1, 1.0)) if weighted else 1.0
        sign = -1 if rng.random() < negative else 1
        edges.append((i, j, w, sign))
    return SignedGraph(n, edges)


def relabeled(g: SignedGraph, perm: List[int]) -> SignedGraph:
    """Vertex i of the result is vertex perm[i] of g"""
    return SignedGraph.from_signed_matrix(g.signed_matrix[np.ix_(perm, perm)])


def relabeled_clustering(c: Clustering, perm: List[int]) -> Clustering:
    return Clustering(c.labels0[list(perm)].tolist())


def random_clustering(rng: np.random.Generator, n: int, k_max: int = 4) -> Clustering:
    return Clustering(rng.integers(0, k_max, n).tolist())


def set_partitions(n: int) -> Iterator[List[int]]:
    """Every partition of range(n) as a restricted-growth label list"""
    labels = [0] * n

    def grow(pos: int, top: int):
        if pos == n:
            yield list(labels)
            return
        for label in range(top + 2):
            labels[pos] = label
            yield from grow(pos + 1, max(top, label))

    if n == 0:
        return
    yield from grow(1, 0)


def exhaustive_best(g: SignedGraph, max_clusters: int = None, weighting: str = "weight") -> Tuple[float, Clustering]:
    """Max q_s over all partitions (optionally capped at max_clusters clusters)"""
    best = None
    for labels in set_partitions(g.n):
        if max_clusters is not None and max(labels) + 1 > max_clusters:
            continue
        c = Clustering(labels)
        q = level_score(g, c, weighting)
        if best is None or q > best[0]:
            best = (q, c)
    return best


def exhaustive_best_bisection(g: SignedGraph, weighting: str = "weight") -> Tuple[float, Clustering]:
    best = None
    for mask in range(1, 2 ** (g.n - 1)):
        labels = [(mask >> v) & 1 for v in range(g.n)]
        c = Clustering(labels)
        q = level_score(g, c, weighting)
        if best is None or q > best[0]:
            best = (q, c)
    return best


def brute_force_betweenness(g: SignedGraph, weighted: bool = True) -> Dict[Tuple[int, int], float]:
    """Edge betweenness from all-pairs distances and shortest-path counts"""
    n = g.n
    length = np.full((n, n), np.inf)
    np.fill_diagonal(length, 0.0)
    for i, j, w, _ in g.edges:
        length[i, j] = length[j, i] = 1.0 / w if weighted else 1.0
    dist = length.copy()
    for k in range(n):
        dist = np.minimum(dist, dist[:, [k]] + dist[[k], :])

    def on_path(d_su: float, step: float, d_vt: float, d_st: float) -> bool:
        return abs(d_su + step + d_vt - d_st) <= 1e-9 * max(1.0, d_st)

    sigma = np.zeros((n, n))
    for s in range(n):
        sigma[s, s] = 1.0
        for v in sorted(range(n), key=lambda x: dist[s, x]):
            if v == s or not np.isfinite(dist[s, v]):
                continue
            sigma[s, v] = sum(
                sigma[s, u] for u in range(n)
                if np.isfinite(length[u, v]) and u != v and on_path(dist[s, u], length[u, v], 0.0, dist[s, v])
            )

    scores = {}
    for i, j, _, _ in g.edges:
        total = 0.0
        for s, t in itertools.combinations(range(n), 2):
            if not np.isfinite(dist[s, t]):
                continue
            for u, v in ((i, j), (j, i)):
                if on_path(dist[s, u], length[u, v], dist[v, t], dist[s, t]):
                    total += sigma[s, u] * sigma[v, t] / sigma[s, t]
        scores[(i, j)] = total
    return scores
