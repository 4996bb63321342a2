"""Girvan-Newman modularity and signed modularity"""

from typing import Tuple

import numpy as np

from .errors import DataError
from .models import Clustering, MixingMatrix, SignedGraph

WEIGHTINGS = ("weight", "count")


def _block_sums(weights: np.ndarray, labels0: np.ndarray, k: int) -> np.ndarray:
    """Sum of weights[u, v] over u in cluster i, v in cluster j"""
    onehot = np.zeros((len(labels0), k))
    onehot[np.arange(len(labels0)), labels0] = 1.0
    return onehot.T @ weights @ onehot


def _mixing_values(weights: np.ndarray, labels0: np.ndarray, k: int) -> np.ndarray:
    """E with intra mass counted once and inter mass counted fully in e_ij and e_ji"""
    total = weights.sum() / 2.0
    blocks = _block_sums(weights, labels0, k)
    e = blocks / total
    e[np.diag_indices(k)] = np.diag(blocks) / (2.0 * total)
    return e


def _check_positive(g: SignedGraph):
    if g.m == 0:
        raise DataError("modularity is undefined for a graph without edges")
    if np.any(g.signed_matrix < 0):
        raise DataError("Girvan-Newman modularity needs an all-positive graph; use signed_modularity")


def mixing_matrix(g: SignedGraph, c: Clustering) -> MixingMatrix:
    """Cluster-level edge-mass fractions of an all-positive graph"""
    _check_positive(g)
    return MixingMatrix(_mixing_values(g.signed_matrix, c.labels0, c.k))


def _q_from_weights(weights: np.ndarray, labels0: np.ndarray, k: int) -> float:
    e = _mixing_values(weights, labels0, k)
    a = e.sum(axis=1)
    return float(np.trace(e) - a @ a)


def girvan_newman_modularity(g: SignedGraph, c: Clustering, formula: str = "trace") -> float:
    """q = tr(E) - ||E^2||  (formula='trace') or sum_i e_ii - a_i^2 (formula='sum')"""
    e = mixing_matrix(g, c).values
    if formula == "trace":
        return float(np.trace(e) - (e @ e).sum())
    if formula == "sum":
        a = e.sum(axis=1)
        return float(sum(e[i, i] - a[i] ** 2 for i in range(e.shape[0])))
    raise ValueError(f"unknown modularity formula '{formula}'")


def sign_parts(g: SignedGraph) -> Tuple[np.ndarray, np.ndarray]:
    """Unsigned adjacency matrices (A+, A-) of the positive and negative parts"""
    s = g.signed_matrix
    return np.where(s > 0, s, 0.0), np.where(s < 0, -s, 0.0)


def sign_masses(g: SignedGraph, weighting: str = "weight") -> Tuple[float, float]:
    """(m+, m-) as total weight or as edge count"""
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got '{weighting}'")
    a_pos, a_neg = sign_parts(g)
    if weighting == "weight":
        return float(a_pos.sum() / 2.0), float(a_neg.sum() / 2.0)
    return float(np.count_nonzero(a_pos) / 2), float(np.count_nonzero(a_neg) / 2)


def signed_modularity(g: SignedGraph, c: Clustering, weighting: str = "weight") -> float:
    """q_s = (m+ q+ - m- q-) / (m+ + m-); an empty sign part contributes 0"""
    if g.m == 0:
        raise DataError("signed modularity is undefined for a graph without edges")
    a_pos, a_neg = sign_parts(g)
    m_pos, m_neg = sign_masses(g, weighting)
    labels0 = c.labels0
    q_pos = _q_from_weights(a_pos, labels0, c.k) if m_pos > 0 else 0.0
    q_neg = _q_from_weights(a_neg, labels0, c.k) if m_neg > 0 else 0.0
    return (m_pos * q_pos - m_neg * q_neg) / (m_pos + m_neg)


def level_score(g: SignedGraph, c: Clustering, weighting: str = "weight") -> float:
    """signed_modularity, with 0 for an edgeless graph"""
    if g.m == 0:
        return 0.0
    return signed_modularity(g, c, weighting)
