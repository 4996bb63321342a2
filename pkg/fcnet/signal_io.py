"""Recording loaders, synthetic generator and windowing"""

import csv
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from scipy import signal

from .errors import DataError
from .models import (
    MultichannelRecording,
    RecordingFormat,
    SyntheticSpec,
    WindowSpec,
)

logger = logging.getLogger(__name__)


def load_recording(
    path: Union[str, Path],
    fmt: Union[str, RecordingFormat] = RecordingFormat.CSV,
    channels: Optional[int] = None,
    header: bool = False,
    sample_rate: float = 1000.0,
) -> MultichannelRecording:
    """Load a recording from CSV (rows = samples) or interleaved raw float32"""
    path = Path(path)
    fmt = RecordingFormat(fmt)
    if not path.is_file():
        raise DataError(f"recording file not found: {path}")

    if fmt == RecordingFormat.CSV:
        data = _read_csv(path, header)
    else:
        if not channels:
            raise DataError("raw-f32 recordings need the channel count")
        data = _read_raw_f32(path, channels)

    recording = MultichannelRecording(data, sample_rate)
    logger.debug("Loaded %r from %s", recording, path)
    return recording


def _read_csv(path: Path, header: bool) -> np.ndarray:
    rows: List[List[float]] = []
    width = None
    with open(path, "r", newline="") as f:
        reader = csv.reader(f)
        for line_no, row in enumerate(reader, start=1):
            if header and line_no == 1:
                continue
            if not row or all(not cell.strip() for cell in row):
                continue
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise DataError(f"{path}: row {line_no} has {len(row)} columns, expected {width}")
            values = []
            for col_no, cell in enumerate(row, start=1):
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(f"{path}: cannot parse '{cell.strip()}' at row {line_no}, column {col_no}")
                if not np.isfinite(value):
                    raise DataError(f"{path}: non-finite value '{cell.strip()}' at row {line_no}, column {col_no}")
                values.append(value)
            rows.append(values)

    if not rows:
        raise DataError(f"{path}: no samples found")
    if width < 2:
        raise DataError(f"{path}: recording needs at least 2 channels, got {width}")
    return np.array(rows, dtype=np.float64)


def _read_raw_f32(path: Path, channels: int) -> np.ndarray:
    if channels < 2:
        raise DataError(f"recording needs at least 2 channels, got {channels}")
    raw = path.read_bytes()
    frame = 4 * channels
    if len(raw) == 0 or len(raw) % frame:
        raise DataError(
            f"{path}: byte length {len(raw)} is not a positive multiple of 4 x {channels} channels"
        )
    data = np.frombuffer(raw, dtype="<f4").astype(np.float64).reshape(-1, channels)
    bad = np.argwhere(~np.isfinite(data))
    if bad.size:
        row, col = bad[0]
        raise DataError(f"{path}: non-finite sample at row {row + 1}, column {col + 1}")
    return data


def save_recording(
    recording: MultichannelRecording,
    path: Union[str, Path],
    fmt: Union[str, RecordingFormat] = RecordingFormat.CSV,
):
    """Write a recording in one of the formats load_recording reads"""
    path = Path(path)
    fmt = RecordingFormat(fmt)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == RecordingFormat.CSV:
        np.savetxt(path, recording.data, delimiter=",", fmt="%.17g")
    else:
        path.write_bytes(recording.data.astype("<f4").tobytes())


def window_recording(recording: MultichannelRecording, spec: WindowSpec) -> List[np.ndarray]:
    """Consecutive non-overlapping windows; a short trailing remainder is dropped"""
    size = spec.window_size
    if size > recording.n_samples:
        raise DataError(
            f"window size {size} exceeds recording length {recording.n_samples}"
        )
    count = recording.n_samples // size
    dropped = recording.n_samples - count * size
    if dropped:
        logger.info("Dropping %d trailing samples shorter than one window", dropped)
    return [recording.data[w * size:(w + 1) * size] for w in range(count)]


def generate_synthetic(spec: SyntheticSpec, seed: int) -> MultichannelRecording:
    """Planted-community recording, a pure function of (spec, seed).

    Channel i of community c is
        strength * latent_c + drive_strength * drive + noise_level * noise_i
    where latents, drive and noise are independent unit-variance Gaussian
    series. With anticorrelated_pairs, communities are paired in label order
    (0, 1), (2, 3), ... and the second of each pair mixes the negated latent of
    the first into its own with weight anticorrelation_strength.
    """
    spec.validate()
    rng = np.random.default_rng(seed)
    labels = spec.communities
    latents = rng.standard_normal((len(labels), spec.n_samples))
    drive = rng.standard_normal(spec.n_samples)
    noise = rng.standard_normal((spec.n_samples, spec.n_channels))

    if spec.latent_band is not None:
        sos = signal.butter(
            4, spec.latent_band, btype="bandpass", fs=spec.sample_rate, output="sos"
        )
        latents = signal.sosfiltfilt(sos, latents, axis=1)
        std = latents.std(axis=1, keepdims=True)
        latents = latents / np.where(std > 0, std, 1.0)

    if spec.anticorrelated_pairs:
        rho = spec.anticorrelation_strength
        mixed = latents.copy()
        for lead in range(0, len(labels) - 1, 2):
            mixed[lead + 1] = -rho * latents[lead] + np.sqrt(1.0 - rho ** 2) * latents[lead + 1]
        latents = mixed

    row_of = {label: row for row, label in enumerate(labels)}
    community_rows = np.array([row_of[c] for c in spec.community_assignment])
    data = (
        spec.shared_signal_strength * latents[community_rows].T
        + spec.drive_strength * drive[:, None]
        + spec.noise_level * noise
    )
    return MultichannelRecording(data, spec.sample_rate)
