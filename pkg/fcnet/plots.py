"""Schematic SVG renderings of the emitted traces and cluster maps"""

import logging
import os
from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import DataError, OutputError  # noqa: E402
from .models import MatrixKind, WindowResult  # noqa: E402

logger = logging.getLogger(__name__)

# fixed ids and no timestamp so reruns give identical files
plt.rcParams["svg.hashsalt"] = "fcnet"
SVG_METADATA = {"Date": None}


def _save(fig, path: str, written: List[str]):
    try:
        fig.savefig(path, format="svg", metadata=SVG_METADATA)
    except OSError as e:
        raise OutputError(path, str(e))
    finally:
        plt.close(fig)
    written.append(path)


def emit_plots(results: Sequence[WindowResult], out_dir: str) -> List[str]:
    """Modularity and anticorrelation line plots plus one cluster heat map per kind and method"""
    if not results:
        raise DataError("no window results to plot")
    plot_dir = os.path.join(out_dir, "plots")
    try:
        os.makedirs(plot_dir, exist_ok=True)
    except OSError as e:
        raise OutputError(plot_dir, str(e))

    written: List[str] = []
    ordered = sorted(results, key=lambda r: r.sort_key)
    for kind in MatrixKind:
        group = [r for r in ordered if r.kind == kind]
        if not group:
            continue
        windows = [r.window_index for r in group]
        methods = sorted({m for r in group for m in r.reports}, key=lambda m: m.value)

        fig, ax = plt.subplots(figsize=(8, 3))
        for method in methods:
            ax.plot(windows, [r.reports[method].chosen_q_s for r in group], marker="o", label=method.value)
        ax.set_xlabel("window")
        ax.set_ylabel("signed modularity")
        ax.set_title(f"{kind.value}: chosen q_s per window")
        ax.legend(loc="best")
        _save(fig, os.path.join(plot_dir, f"modularity_{kind.value}.svg"), written)

        for method in methods:
            grid = np.array([[r.reports[method].chosen_clustering.cluster_of(v) for r in group] for v in range(group[0].n)])
            fig, ax = plt.subplots(figsize=(8, 4))
            image = ax.imshow(grid, aspect="auto", interpolation="nearest", cmap="tab10")
            ax.set_xlabel("window")
            ax.set_ylabel("vertex")
            ax.set_xticks(range(len(windows)))
            ax.set_xticklabels([str(w) for w in windows])
            ax.set_yticks(range(group[0].n))
            ax.set_yticklabels([str(v + 1) for v in range(group[0].n)])
            ax.set_title(f"{kind.value}: method {method.value} clusters")
            fig.colorbar(image, ax=ax, label="cluster")
            _save(fig, os.path.join(plot_dir, f"clusters_{kind.value}_{method.value}.svg"), written)

    correlation = [r for r in ordered if r.kind == MatrixKind.CORRELATION]
    if correlation:
        fig, ax = plt.subplots(figsize=(8, 3))
        windows = [r.window_index for r in correlation]
        for mode in ("weighted", "count"):
            ax.plot(windows, [r.anticorrelation[mode] for r in correlation], marker="o", label=mode)
        ax.set_xlabel("window")
        ax.set_ylabel("anticorrelation index")
        ax.set_ylim(0, 1)
        ax.legend(loc="best")
        _save(fig, os.path.join(plot_dir, "anticorrelation.svg"), written)

    logger.debug("wrote %d plots to %s", len(written), plot_dir)
    return written
