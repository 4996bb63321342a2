"""Dense symmetric eigensolver and k-means"""

import logging
import warnings
from typing import Any

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from .errors import ConvergenceError, DataError

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100
OFF_TOL = 1e-12
SIGN_TOL = 1e-12


class EigenDecomposition:
    """Eigenpairs in ascending eigenvalue order; column j pairs with value j"""

    def __init__(self, eigenvalues: np.ndarray, eigenvectors: np.ndarray, sweeps: int = 0):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.sweeps = sweeps

    def descending(self) -> "EigenDecomposition":
        """Same eigenpairs ordered lambda_1 >= lambda_2 >= ..."""
        return EigenDecomposition(self.eigenvalues[::-1], self.eigenvectors[:, ::-1], self.sweeps)

    def __repr__(self) -> str:
        return f"EigenDecomposition(n={len(self.eigenvalues)}, sweeps={self.sweeps})"


def canonical_sign(vectors: np.ndarray, tol: float = SIGN_TOL) -> np.ndarray:
    """Flip each column so its first entry with |x| > tol is positive"""
    out = np.array(vectors, dtype=np.float64)
    for j in range(out.shape[1]):
        nonzero = np.flatnonzero(np.abs(out[:, j]) > tol)
        if nonzero.size and out[nonzero[0], j] < 0:
            out[:, j] = -out[:, j]
    return out


def eig_symmetric(m: Any) -> EigenDecomposition:
    """Cyclic Jacobi eigendecomposition of a dense symmetric matrix.

    Sweeps visit the upper triangle in row-major order and stop once the
    off-diagonal Frobenius norm drops below 1e-12 * ||M||_F.
    """
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DataError(f"eigensolver needs a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DataError("eigensolver input contains non-finite entries")
    if np.max(np.abs(a - a.T)) > 1e-12:
        raise DataError("eigensolver input is not symmetric")
    a = (a + a.T) / 2.0
    n = a.shape[0]
    v = np.eye(n)
    target = OFF_TOL * np.linalg.norm(a)

    def off_norm() -> float:
        return float(np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0)))

    sweeps = 0
    while off_norm() > target:
        if sweeps == MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p = v[:, p].copy()
                v[:, p] = c * vec_p - s * v[:, q]
                v[:, q] = s * vec_p + c * v[:, q]

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    logger.debug("Jacobi converged after %d sweep(s) for n=%d", sweeps, n)
    return EigenDecomposition(values[order], canonical_sign(v[:, order]), sweeps)


class KMeansResult:
    """Labels, centroids and within-cluster sum of squares of the best restart"""

    def __init__(self, labels: np.ndarray, centroids: np.ndarray, wcss: float):
        self.labels = labels
        self.centroids = centroids
        self.wcss = wcss

    def __repr__(self) -> str:
        return f"KMeansResult(k={self.centroids.shape[0]}, wcss={self.wcss:.6g})"


def kmeans(
    points: Any,
    k: int,
    seed: int,
    n_init: int = 50,
    max_iter: int = 100,
) -> KMeansResult:
    """Lloyd k-means with k-means++ seeding; best of n_init restarts by WCSS"""
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if not 1 <= k <= x.shape[0]:
        raise DataError(f"k must be between 1 and {x.shape[0]}, got {k}")
    model = KMeans(
        n_clusters=k,
        init="k-means++",
        n_init=n_init,
        max_iter=max_iter,
        random_state=seed % (2 ** 32),
    )
    with warnings.catch_warnings():
        # fewer distinct points than k is expected for tightly clustered coordinates
        warnings.simplefilter("ignore", ConvergenceWarning)
        labels = model.fit_predict(x)
    return KMeansResult(np.asarray(labels), model.cluster_centers_, float(model.inertia_))
