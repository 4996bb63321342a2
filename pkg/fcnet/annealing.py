"""Method D: hierarchical simulated-annealing bisection on signed modularity"""

import logging
import math
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, DataError
from .fiedler import fiedler_bisect
from .girvan_newman import method_c
from .graph_core import connected_components, induced_subgraph
from .modularity import level_score, sign_masses, sign_parts
from .models import (
    SA_WARM_STARTS,
    AnnealingSchedule,
    Clustering,
    DendrogramLevel,
    MethodId,
    MethodReport,
    SearchSpaceSizes,
    SignedGraph,
)
from .seeding import derive_seed
from .spectral import method_b

logger = logging.getLogger(__name__)

IMPROVEMENT_TOL = 1e-12


def bell_number(n: int) -> int:
    """Number of set partitions of n elements (Bell triangle)"""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def hierarchical_search_space(n: int) -> SearchSpaceSizes:
    """Bisection search-space sizes for best (halving) and worst (peeling) hierarchies.

    For n not a power of two the best case sums over k while n // 2^k >= 2.
    """
    if n < 2:
        raise ConfigError(f"search space needs n >= 2, got {n}")
    best = 0
    k = 0
    while n // 2 ** k >= 2:
        best += 2 ** (n // 2 ** k - 1) - 1
        k += 1
    worst = sum(2 ** (n - 1 - k) - 1 for k in range(n))
    return SearchSpaceSizes(n, bell_number(n), best, worst)


class Bisection:
    """Result of one annealing bisection"""

    def __init__(self, sides: Tuple[List[int], List[int]], q_s: float, trace: List[float]):
        self.sides = sides
        self.q_s = q_s
        self.trace = trace

    def __repr__(self) -> str:
        return f"Bisection(sizes=({len(self.sides[0])}, {len(self.sides[1])}), q_s={self.q_s:.6f})"


def _term(inner: float, degree: float, total: float) -> float:
    # cluster contribution e_ii - a_i^2 with a_i = (degree - inner) / total
    if total == 0.0:
        return 0.0
    return inner / total - ((degree - inner) / total) ** 2


class _SplitState:
    """Both sides of a subset split, with incremental signed-modularity moves.

    Only the two sides' terms change when a vertex moves, so the global q_s
    of the full clustering differs from `value` by a constant.
    """

    def __init__(self, g: SignedGraph, vertices: Sequence[int], weighting: str, side: List[int]):
        idx = np.asarray(vertices)
        a_pos, a_neg = sign_parts(g)
        m_pos, m_neg = sign_masses(g, weighting)
        mass = m_pos + m_neg
        self.coef = (m_pos / mass, m_neg / mass) if mass > 0 else (0.0, 0.0)
        self.factor = (self.coef[0], -self.coef[1])
        # all-positive graphs skip the negative terms
        self.signs = (0, 1) if self.coef[1] > 0 else (0,)
        self.total = (a_pos.sum() / 2.0, a_neg.sum() / 2.0)
        self.adj = (a_pos[np.ix_(idx, idx)], a_neg[np.ix_(idx, idx)])
        self.deg = (a_pos[idx].sum(axis=1).tolist(), a_neg[idx].sum(axis=1).tolist())
        self.side = list(side)
        self.size = [self.side.count(0), self.side.count(1)]

        members = [np.array([s == 0 for s in self.side], dtype=float), np.array([s == 1 for s in self.side], dtype=float)]
        # link[sign][side][v]: weight from v into that side
        self.link = [[adj @ members[0], adj @ members[1]] for adj in self.adj]
        self.inner = [[float(members[s] @ self.link[sign][s]) / 2.0 for s in (0, 1)] for sign in (0, 1)]
        self.degree = [[float(np.dot(members[s], self.deg[sign])) for s in (0, 1)] for sign in (0, 1)]
        self.terms = [[_term(self.inner[sign][s], self.degree[sign][s], self.total[sign]) for s in (0, 1)] for sign in (0, 1)]

    @property
    def value(self) -> float:
        return self.coef[0] * sum(self.terms[0]) - self.coef[1] * sum(self.terms[1])

    def propose(self, v: int) -> Tuple[float, list]:
        """Change in q_s if v switches side, plus the updated bookkeeping"""
        src = self.side[v]
        dst = 1 - src
        moved = [None, None]
        delta = 0.0
        for sign in self.signs:
            link = self.link[sign]
            inner, degree, total = self.inner[sign], self.degree[sign], self.total[sign]
            in_src = inner[src] - link[src].item(v)
            in_dst = inner[dst] + link[dst].item(v)
            deg_src = degree[src] - self.deg[sign][v]
            deg_dst = degree[dst] + self.deg[sign][v]
            t_src = _term(in_src, deg_src, total)
            t_dst = _term(in_dst, deg_dst, total)
            change = t_src + t_dst - self.terms[sign][src] - self.terms[sign][dst]
            moved[sign] = (in_src, in_dst, deg_src, deg_dst, t_src, t_dst)
            delta += self.factor[sign] * change
        return delta, moved

    def commit(self, v: int, moved: list):
        src = self.side[v]
        dst = 1 - src
        for sign in self.signs:
            in_src, in_dst, deg_src, deg_dst, t_src, t_dst = moved[sign]
            self.inner[sign][src], self.inner[sign][dst] = in_src, in_dst
            self.degree[sign][src], self.degree[sign][dst] = deg_src, deg_dst
            self.terms[sign][src], self.terms[sign][dst] = t_src, t_dst
            row = self.adj[sign][v]
            self.link[sign][src] -= row
            self.link[sign][dst] += row
        self.side[v] = dst
        self.size[src] -= 1
        self.size[dst] += 1


def _global_labels(n: int, vertices: Sequence[int], clustering: Optional[Clustering]) -> List[int]:
    if clustering is None:
        labels = [0] * n
        for v in vertices:
            labels[v] = 1
        return labels
    return list(clustering.labels0)


def sa_bisect(
    g: SignedGraph,
    vertices: Sequence[int],
    schedule: Optional[AnnealingSchedule] = None,
    seed: int = 0,
    clustering: Optional[Clustering] = None,
    initial: Optional[Sequence[int]] = None,
    weighting: str = "weight",
) -> Bisection:
    """Split `vertices` in two, maximizing global q_s with every other cluster frozen.

    `initial` optionally gives a starting side (0/1) per vertex; otherwise
    the start is a random non-trivial bipartition drawn from `seed`.
    """
    vertices = sorted(int(v) for v in vertices)
    n_sub = len(vertices)
    if n_sub < 2:
        raise DataError(f"annealing bisection needs at least 2 vertices, got {n_sub}")
    schedule = schedule or AnnealingSchedule()
    rng = np.random.default_rng(seed)

    if initial is not None:
        side = [int(s) for s in initial]
        if len(side) != n_sub or set(side) != {0, 1}:
            raise DataError("initial bipartition must assign both sides non-empty")
    else:
        side = rng.integers(0, 2, n_sub).tolist()
        if len(set(side)) == 1:
            flip = int(rng.integers(n_sub))
            side[flip] = 1 - side[flip]

    state = _SplitState(g, vertices, weighting, side)
    current = state.value
    best = current
    best_side = list(state.side)
    trace: List[float] = []

    if n_sub > 2:
        samples = schedule.samples_per_temp
        stale = 0
        for temperature in schedule.temperatures():
            start = best
            picks = rng.random(samples).tolist()
            draws = rng.random(samples).tolist()
            for pick, draw in zip(picks, draws):
                if state.size[0] > 1 and state.size[1] > 1:
                    v = int(pick * n_sub)
                else:
                    big = 0 if state.size[0] > 1 else 1
                    eligible = [u for u in range(n_sub) if state.side[u] == big]
                    v = eligible[int(pick * len(eligible))]
                delta, moved = state.propose(v)
                if delta > 0 or draw < math.exp(delta / temperature):
                    state.commit(v, moved)
                    current += delta
                    if current > best + IMPROVEMENT_TOL:
                        best = current
                        best_side = list(state.side)
            trace.append(best)
            stale = stale + 1 if best == start else 0
            if schedule.patience is not None and stale >= schedule.patience:
                logger.debug("annealing stopped after %d of %d temperatures", len(trace), schedule.temp_steps)
                break

    sides = (
        [vertices[i] for i in range(n_sub) if best_side[i] == best_side[0]],
        [vertices[i] for i in range(n_sub) if best_side[i] != best_side[0]],
    )
    labels = _global_labels(g.n, vertices, clustering)
    fresh = max(labels) + 1
    for v in sides[1]:
        labels[v] = fresh
    q_s = level_score(g, Clustering(labels), weighting)
    offset = q_s - best
    return Bisection(sides, q_s, [t + offset for t in trace])


def _fiedler_start(sub: SignedGraph, seed: int) -> Optional[List[int]]:
    if connected_components(sub).k > 1:
        return None
    _, right = fiedler_bisect(sub)
    right = set(right)
    return [1 if v in right else 0 for v in range(sub.n)]


def _two_cluster_level(report: MethodReport) -> Optional[List[int]]:
    for level in report.dendrogram:
        if level.k == 2:
            return level.clustering.labels0.tolist()
    return None


def _girvan_newman_start(sub: SignedGraph, seed: int) -> Optional[List[int]]:
    return _two_cluster_level(method_c(sub))


def _spectral_start(sub: SignedGraph, seed: int) -> Optional[List[int]]:
    return _two_cluster_level(method_b(sub, k_max=2, seed=seed))


WARM_STARTS = {
    "fiedler": _fiedler_start,
    "girvan-newman": _girvan_newman_start,
    "spectral": _spectral_start,
}


def warm_start_sides(g: SignedGraph, members: Sequence[int], warm_start: str, seed: int = 0) -> Optional[List[int]]:
    """Initial side (0/1) per member from another method's 2-cluster split of the cluster.

    None means no such split exists (edgeless or wrongly fragmented cluster)
    and the annealing starts from a random bipartition instead.
    """
    if warm_start == "random":
        return None
    sub = induced_subgraph(g, members)
    if sub.m == 0:
        return None
    return WARM_STARTS[warm_start](sub, seed)


def method_d(
    g: SignedGraph,
    schedule: Optional[AnnealingSchedule] = None,
    seed: int = 0,
    max_clusters: int = 8,
    weighting: str = "weight",
    warm_start: str = "random",
    keep_trace: bool = False,
) -> MethodReport:
    """Grow levels 1..min(max_clusters, n) by committing the best annealed split"""
    if warm_start not in SA_WARM_STARTS:
        raise ConfigError(f"warm start must be one of {', '.join(SA_WARM_STARTS)}, got '{warm_start}'")
    schedule = schedule or AnnealingSchedule()
    notes: List[str] = []
    if g.m == 0:
        notes.append("graph has no edges; signed modularity recorded as 0")

    clustering = Clustering.single(g.n)
    levels = [DendrogramLevel(clustering, level_score(g, clustering, weighting))]
    # a cluster's best bisection does not depend on how the rest is clustered
    bisections: Dict[FrozenSet[int], Bisection] = {}
    target = min(max_clusters, g.n)

    while clustering.k < target:
        best = None
        for cid, members in enumerate(clustering.groups(), start=1):
            if len(members) < 2:
                continue
            key = frozenset(members)
            if key not in bisections:
                cluster_seed = derive_seed(seed, "D", *members)
                initial = warm_start_sides(g, members, warm_start, cluster_seed)
                bisections[key] = sa_bisect(g, members, schedule, cluster_seed, clustering, initial, weighting)
            candidate = clustering.split(cid, bisections[key].sides[1])
            q = level_score(g, candidate, weighting)
            if best is None or q > best[0] + IMPROVEMENT_TOL:
                best = (q, cid, candidate, bisections[key])
        if best is None:
            break
        q, parent, candidate, bisection = best
        split = (parent, candidate.cluster_of(bisection.sides[0][0]), candidate.cluster_of(bisection.sides[1][0]))
        logger.debug("Method D: split cluster %d -> %d clusters, q_s %.6f", parent, candidate.k, q)
        clustering = candidate
        levels.append(DendrogramLevel(clustering, q, split))

    extras = {}
    if keep_trace:
        extras["annealing"] = {
            ",".join(str(v + 1) for v in sorted(key)): b.trace for key, b in sorted(
                bisections.items(), key=lambda item: sorted(item[0])
            )
        }
    return MethodReport.from_levels(MethodId.D, levels, notes, extras)
