"""End-to-end orchestration: recording -> windows -> methods -> files"""

import copy
import logging
import os
from collections import Counter
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .errors import DataError, PipelineError
from .models import PipelineConfig, WindowResult, WindowSpec
from .plots import emit_plots
from .signal_io import load_recording, window_recording
from .storage import ResultStore, load_cluster_map, load_manifest, load_modularity_trace
from .worker import WindowFailure, process_window

logger = logging.getLogger(__name__)


class PipelineRun:
    """Sorted window results and the files written for them"""

    def __init__(self, results: List[WindowResult], files: List[str], out_dir: str):
        self.results = results
        self.files = files
        self.out_dir = out_dir

    def __repr__(self) -> str:
        return f"PipelineRun(windows={len(self.results)}, files={len(self.files)}, out_dir={self.out_dir})"


def _outcomes(tasks: list, workers: int):
    """Yield outcomes in task order, serially or from a process pool"""
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield process_window(task)
        return
    with Pool(processes=min(workers, len(tasks))) as pool:
        for outcome in pool.imap(process_window, tasks, chunksize=1):
            yield outcome


def run_pipeline(cfg: PipelineConfig) -> PipelineRun:
    """Analyse every window for every selected matrix kind and write all outputs.

    The first failed window (in kind, window order) stops the run; a partial
    manifest is written and PipelineError raised.
    """
    cfg.validate()
    recording = load_recording(cfg.input_path, cfg.input_format, cfg.channels, cfg.header, cfg.sample_rate)
    windows = window_recording(recording, WindowSpec(cfg.window_size))
    logger.info("%d windows of %d samples, %d channels", len(windows), cfg.window_size, recording.n_channels)

    tasks = [(cfg, index, kind.value, window) for kind in cfg.kinds for index, window in enumerate(windows)]
    store = ResultStore(cfg.output_dir)
    results: List[WindowResult] = []
    failure: Optional[WindowFailure] = None
    for outcome in _outcomes(tasks, cfg.workers):
        if isinstance(outcome, WindowFailure):
            failure = outcome
            break
        results.append(outcome)

    results.sort(key=lambda r: r.sort_key)
    if failure is not None:
        manifest = store.write_manifest(cfg, results, failure.to_dict())
        raise PipelineError(
            failure.message,
            failure.window_index,
            failure.kind.value,
            failure.stage,
            exit_code=failure.exit_code,
            manifest_path=manifest,
        )

    store.emit_cluster_map(results)
    store.emit_modularity_trace(results)
    store.emit_anticorrelation_trace(results)
    store.emit_dendrograms(results, include_extras=cfg.verbose_traces)
    if cfg.save_matrices:
        store.emit_matrices(results)
    if cfg.dump_coords:
        store.emit_coordinates(results)
    if cfg.plots:
        for path in emit_plots(results, cfg.output_dir):
            store.written.append(os.path.relpath(path, cfg.output_dir).replace(os.sep, "/"))
    store.write_manifest(cfg, results)
    return PipelineRun(results, sorted(store.written), cfg.output_dir)


def _stats(values: Sequence[float]) -> Dict[str, float]:
    arr = np.asarray(values, dtype=float)
    return {
        "mean": float(arr.mean()),
        "variance": float(arr.var()),
        "min": float(arr.min()),
        "max": float(arr.max()),
    }


def run_sweep(cfg: PipelineConfig, window_sizes: Sequence[int]) -> List[Dict[str, Any]]:
    """Run the pipeline once per window size (outputs under <out>/ws<size>)"""
    if not window_sizes:
        raise DataError("window-size sweep needs at least one size")
    rows = []
    for size in window_sizes:
        sized = copy.copy(cfg)
        sized.window_size = size
        sized.output_dir = os.path.join(cfg.output_dir, f"ws{size}")
        run = run_pipeline(sized)
        for kind in cfg.kinds:
            group = [r for r in run.results if r.kind == kind]
            for method in cfg.methods:
                values = [r.reports[method].chosen_q_s for r in group]
                rows.append({
                    "window_size": size,
                    "kind": kind.value,
                    "method": method.value,
                    "windows": len(values),
                    **_stats(values),
                })
    return rows


def summarize_run(out_dir: str) -> List[Dict[str, Any]]:
    """Per kind and method: q_s statistics and chosen-k histogram of a finished run"""
    manifest = load_manifest(out_dir)
    if manifest.get("status") != "complete":
        raise DataError(f"run in {out_dir} did not complete; see its manifest")
    rows = []
    for kind in manifest["config"]["kinds"]:
        trace = load_modularity_trace(out_dir, kind)
        for method in manifest["config"]["methods"]:
            clusters = load_cluster_map(out_dir, kind, method)
            ks = Counter(len(set(column)) for column in clusters.values())
            rows.append({
                "kind": kind,
                "method": method,
                "windows": len(trace[method]),
                **_stats(trace[method]),
                "chosen_k": " ".join(f"{k}:{count}" for k, count in sorted(ks.items())),
            })
    return rows
