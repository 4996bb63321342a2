"""Method A: recursive Fiedler bisection with the min normalized-connectivity rule"""

import logging
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from .errors import DataError
from .graph_core import connected_components, induced_subgraph, laplacian, normalized_laplacian
from .linalg import eig_symmetric
from .modularity import level_score
from .models import Clustering, DendrogramLevel, MethodId, MethodReport, SignedGraph

logger = logging.getLogger(__name__)


def normalized_algebraic_connectivity(g: SignedGraph) -> float:
    """Second-smallest eigenvalue of the normalized Laplacian"""
    if g.n < 2:
        raise DataError("normalized algebraic connectivity needs at least 2 vertices")
    return float(eig_symmetric(normalized_laplacian(g)).eigenvalues[1])


def fiedler_bisect(g: SignedGraph) -> Tuple[List[int], List[int]]:
    """Split by the sign of the Fiedler vector: V1 = {x <= 0}, V2 = {x > 0}"""
    if g.n < 2:
        raise DataError("Fiedler bisection needs at least 2 vertices")
    if connected_components(g).k > 1:
        raise DataError("Fiedler bisection needs a connected graph; split by components first")
    x = eig_symmetric(laplacian(g)).eigenvectors[:, 1]
    return [int(v) for v in np.flatnonzero(x <= 0)], [int(v) for v in np.flatnonzero(x > 0)]


def _plan_split(g: SignedGraph, cluster: List[int]) -> Tuple[float, List[int]]:
    """(alpha-bar, side to split off) for one cluster of size >= 2"""
    sub = induced_subgraph(g, cluster)
    components = connected_components(sub)
    if components.k > 1:
        # disconnected: largest component (ties -> lowest vertex) against the rest
        groups = components.groups()
        largest = set(max(groups, key=lambda grp: (len(grp), -grp[0])))
        rest = [cluster[v] for v in range(len(cluster)) if v not in largest]
        return 0.0, rest
    alpha = normalized_algebraic_connectivity(sub)
    v1, v2 = fiedler_bisect(sub)
    side = v2 if 0 in v1 else v1
    return alpha, [cluster[v] for v in side]


def method_a(g: SignedGraph, weighting: str = "weight") -> MethodReport:
    """Bisect the cluster with minimum alpha-bar until every vertex stands alone.

    Works on |weights|; every level is scored with signed modularity
    against the original signed graph.
    """
    notes: List[str] = []
    if g.m == 0:
        notes.append("graph has no edges; signed modularity recorded as 0")

    clustering = Clustering.single(g.n)
    levels = [DendrogramLevel(clustering, level_score(g, clustering, weighting))]
    plans: Dict[FrozenSet[int], Tuple[float, List[int]]] = {}

    while clustering.k < g.n:
        best = None
        for cid, members in enumerate(clustering.groups(), start=1):
            if len(members) < 2:
                continue
            key = frozenset(members)
            if key not in plans:
                plans[key] = _plan_split(g, members)
            alpha = plans[key][0]
            if best is None or alpha < best[0]:
                best = (alpha, cid)
        alpha, parent = best
        side = plans[frozenset(clustering.members(parent))][1]
        child = clustering.split(parent, side)
        child_a = child.cluster_of(clustering.members(parent)[0])
        child_b = child.cluster_of(side[0])
        logger.debug("Method A: split cluster %d (alpha-bar %.6g) -> %d clusters", parent, alpha, child.k)
        clustering = child
        levels.append(
            DendrogramLevel(clustering, level_score(g, clustering, weighting), (parent, child_a, child_b))
        )

    return MethodReport.from_levels(MethodId.A, levels, notes)
