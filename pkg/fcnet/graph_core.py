"""Signed graph construction and the matrices derived from it"""

from typing import Iterable, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

from .errors import DataError
from .models import Clustering, ConnectivityMatrix, SignedGraph


def from_connectivity(matrix: ConnectivityMatrix, threshold: float = 0.0) -> SignedGraph:
    """One edge per off-diagonal pair with |value| > threshold.

    The diagonal is ignored and exact zeros never become edges.
    """
    if not 0.0 <= threshold < 1.0:
        raise DataError(f"threshold must be in [0, 1), got {threshold}")
    values = np.array(matrix.values, dtype=np.float64)
    np.fill_diagonal(values, 0.0)
    values[np.abs(values) <= threshold] = 0.0
    return SignedGraph.from_signed_matrix(values)


def adjacency(g: SignedGraph) -> np.ndarray:
    """Unsigned weighted adjacency A = |S|"""
    return np.abs(g.signed_matrix)


def signed_adjacency(g: SignedGraph) -> np.ndarray:
    """Signed weighted adjacency S with s_ij = sigma * w"""
    return np.array(g.signed_matrix)


def degrees(g: SignedGraph) -> np.ndarray:
    return adjacency(g).sum(axis=1)


def laplacian(g: SignedGraph) -> np.ndarray:
    """L = D - A over unsigned weights"""
    a = adjacency(g)
    return np.diag(a.sum(axis=1)) - a


def normalized_laplacian(g: SignedGraph) -> np.ndarray:
    """D^-1/2 L D^-1/2; undefined when a vertex is isolated"""
    d = degrees(g)
    isolated = np.flatnonzero(d == 0)
    if isolated.size:
        raise DataError(
            f"normalized Laplacian undefined: vertex {isolated[0] + 1} is isolated"
        )
    inv_sqrt = 1.0 / np.sqrt(d)
    norm = laplacian(g) * np.outer(inv_sqrt, inv_sqrt)
    return (norm + norm.T) / 2.0


def split_signs(g: SignedGraph) -> Tuple[SignedGraph, SignedGraph]:
    """(G+, G-): positive edges, and negative edges with unsigned weights"""
    s = g.signed_matrix
    return (
        SignedGraph.from_signed_matrix(np.where(s > 0, s, 0.0)),
        SignedGraph.from_signed_matrix(np.where(s < 0, -s, 0.0)),
    )


def connected_components(g: SignedGraph) -> Clustering:
    """Components over all edges regardless of sign"""
    _, labels = _csgraph_components(csr_matrix(adjacency(g)), directed=False)
    return Clustering(labels)


def induced_subgraph(g: SignedGraph, vertices: Iterable[int]) -> SignedGraph:
    """Subgraph on `vertices`, relabelled 0..len-1 in the given order"""
    idx = np.asarray(list(vertices), dtype=np.int64)
    return SignedGraph.from_signed_matrix(g.signed_matrix[np.ix_(idx, idx)])
