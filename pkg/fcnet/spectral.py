"""Method B: spectral coordinates of the signed adjacency matrix + k-means"""

import logging
from typing import List

import numpy as np

from .errors import DataError
from .graph_core import signed_adjacency
from .linalg import eig_symmetric, kmeans
from .modularity import level_score
from .models import Clustering, DendrogramLevel, MethodId, MethodReport, SignedGraph
from .seeding import derive_seed

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-9


def _coordinates(vectors: np.ndarray, k: int) -> np.ndarray:
    points = np.array(vectors[:, :k])
    # each point flipped so its largest-magnitude coordinate is positive
    lead = np.argmax(np.abs(points), axis=1)
    signs = np.where(points[np.arange(len(points)), lead] < 0, -1.0, 1.0)
    return points * signs[:, None]


def spectral_coordinates(g: SignedGraph, k: int) -> np.ndarray:
    """n points in k dimensions from the eigenvectors of S for its k largest eigenvalues"""
    if not 1 <= k <= g.n:
        raise DataError(f"spectral dimension must be between 1 and {g.n}, got {k}")
    eig = eig_symmetric(signed_adjacency(g)).descending()
    return _coordinates(eig.eigenvectors, k)


def method_b(
    g: SignedGraph,
    k_max: int = 8,
    seed: int = 0,
    weighting: str = "weight",
    keep_coordinates: bool = False,
) -> MethodReport:
    """k-means on k-dimensional spectral coordinates for k = 1..min(k_max, n)"""
    if k_max < 1:
        raise DataError(f"k_max must be >= 1, got {k_max}")
    eig = eig_symmetric(signed_adjacency(g)).descending()
    values = eig.eigenvalues
    notes: List[str] = []
    if g.m == 0:
        notes.append("graph has no edges; signed modularity recorded as 0")

    levels = []
    coordinates = {}
    for k in range(1, min(k_max, g.n) + 1):
        points = _coordinates(eig.eigenvectors, k)
        if k < g.n and abs(values[k - 1] - values[k]) < DEGENERACY_TOL:
            msg = f"k={k}: eigenvalue {values[k - 1]:.6g} is repeated; coordinates depend on the eigenbasis"
            logger.warning(msg)
            notes.append(msg)
        if k == 1:
            clustering = Clustering.single(g.n)
        else:
            clustering = Clustering(kmeans(points, k, derive_seed(seed, "B", k)).labels)
        levels.append(DendrogramLevel(clustering, level_score(g, clustering, weighting)))
        if keep_coordinates:
            coordinates[k] = points.tolist()

    extras = {"eigenvalues": values.tolist()}
    if keep_coordinates:
        extras["coordinates"] = coordinates
    return MethodReport.from_levels(MethodId.B, levels, notes, extras)
