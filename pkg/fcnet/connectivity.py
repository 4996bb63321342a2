"""Correlation and coherency matrices, anticorrelation index"""

import logging
from typing import List, Union

import numpy as np
from scipy import signal

from .errors import DataError
from .models import AnticorrelationMode, ConnectivityMatrix, MatrixKind, SpectralConfig

logger = logging.getLogger(__name__)


def _check_window(window: np.ndarray) -> np.ndarray:
    arr = np.asarray(window, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise DataError(f"window must be a samples x channels block with >= 2 channels, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DataError(f"window needs at least 2 samples, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise DataError("window contains non-finite samples")
    return arr


def _dead_channel_warnings(dead: np.ndarray, what: str, window_index: int) -> List[str]:
    warnings = []
    for ch in np.flatnonzero(dead):
        msg = f"window {window_index}: channel {ch + 1} has zero {what}; its entries are set to 0"
        logger.warning(msg)
        warnings.append(msg)
    return warnings


def correlation_matrix(window: np.ndarray, window_index: int = 0) -> ConnectivityMatrix:
    """Zero-lag Pearson correlation between every pair of channels"""
    arr = _check_window(window)
    centered = arr - arr.mean(axis=0)
    norms = np.sqrt(np.einsum("ij,ij->j", centered, centered))
    dead = norms == 0
    safe = np.where(dead, 1.0, norms)
    values = (centered.T @ centered) / np.outer(safe, safe)
    values = np.clip((values + values.T) / 2.0, -1.0, 1.0)
    values[dead, :] = 0.0
    values[:, dead] = 0.0
    np.fill_diagonal(values, 1.0)
    return ConnectivityMatrix(
        values,
        MatrixKind.CORRELATION,
        window_index,
        _dead_channel_warnings(dead, "variance", window_index),
    )


def coherency_matrix(
    window: np.ndarray,
    cfg: SpectralConfig,
    sample_rate: float,
    window_index: int = 0,
) -> ConnectivityMatrix:
    """Band-averaged magnitude-squared coherence |P_ij|^2 / (P_ii P_jj).

    Cross-spectral densities come from Hann-tapered, mean-removed segments
    averaged with the configured overlap.
    """
    arr = _check_window(window)
    n_samples, n_channels = arr.shape
    cfg.validate(n_samples, sample_rate)
    nperseg = cfg.resolve_segment_length(n_samples)
    noverlap = int(nperseg * cfg.overlap_fraction)
    step = nperseg - noverlap
    n_segments = (n_samples - noverlap) // step
    if n_segments < 2:
        raise DataError(
            f"only {n_segments} spectral segment(s) fit in {n_samples} samples; "
            f"use a smaller segment length than {nperseg}"
        )

    series = (arr - arr.mean(axis=0)).T
    cross = None
    for i in range(n_channels):
        freqs, p_i = signal.csd(
            series[i][None, :],
            series,
            fs=sample_rate,
            window="hann",
            nperseg=nperseg,
            noverlap=noverlap,
            detrend="constant",
            axis=-1,
        )
        if cross is None:
            cross = np.empty((n_channels, n_channels, len(freqs)), dtype=np.complex128)
        cross[i] = p_i

    band = (freqs >= cfg.band_low) & (freqs <= cfg.band_high)
    if not band.any():
        raise DataError(
            f"no frequency bins fall in {cfg.band_low}-{cfg.band_high} Hz at "
            f"segment length {nperseg}; use a longer segment"
        )
    cross = cross[:, :, band]
    power = np.real(np.einsum("iif->if", cross))
    dead = np.all(power <= 0, axis=1)
    safe = np.where(power > 0, power, 1.0)
    msc = np.abs(cross) ** 2 / (safe[:, None, :] * safe[None, :, :])
    values = np.clip(msc.mean(axis=2), 0.0, 1.0)
    values = (values + values.T) / 2.0
    values[dead, :] = 0.0
    values[:, dead] = 0.0
    np.fill_diagonal(values, 1.0)
    return ConnectivityMatrix(
        values,
        MatrixKind.COHERENCY,
        window_index,
        _dead_channel_warnings(dead, "power in band", window_index),
    )


def anticorrelation_index(
    matrix: ConnectivityMatrix,
    mode: Union[str, AnticorrelationMode] = AnticorrelationMode.WEIGHTED,
) -> float:
    """Share of negative mass (weighted) or negative count among nonzero off-diagonals"""
    if matrix.kind != MatrixKind.CORRELATION:
        raise DataError("the anticorrelation index is defined for correlation matrices only")
    mode = AnticorrelationMode(mode)
    iu, ju = np.triu_indices(matrix.n, 1)
    vals = matrix.values[iu, ju]
    vals = vals[vals != 0]
    if vals.size == 0:
        return 0.0
    negative = vals < 0
    if mode == AnticorrelationMode.WEIGHTED:
        return float(np.abs(vals[negative]).sum() / np.abs(vals).sum())
    return float(np.count_nonzero(negative) / vals.size)
