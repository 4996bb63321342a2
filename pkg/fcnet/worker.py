"""Per-window processing: matrix, graph and the selected methods"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .annealing import method_d
from .connectivity import anticorrelation_index, coherency_matrix, correlation_matrix
from .errors import FcnetError
from .fiedler import method_a
from .girvan_newman import method_c
from .graph_core import from_connectivity
from .models import (
    AnticorrelationMode,
    MatrixKind,
    MethodId,
    MethodReport,
    PipelineConfig,
    SignedGraph,
    WindowResult,
)
from .seeding import derive_seed
from .spectral import method_b

logger = logging.getLogger(__name__)


class WindowFailure:
    """Where and why one window failed"""

    def __init__(self, window_index: int, kind: MatrixKind, stage: str, message: str, exit_code: int = 1):
        self.window_index = window_index
        self.kind = MatrixKind(kind)
        self.stage = stage
        self.message = message
        self.exit_code = exit_code

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window_index": self.window_index,
            "kind": self.kind.value,
            "stage": self.stage,
            "message": self.message,
            "exit_code": self.exit_code,
        }

    def __repr__(self) -> str:
        return f"WindowFailure(window_index={self.window_index}, kind={self.kind.value}, stage={self.stage})"


class WindowWorker:
    """Runs the full per-window analysis for one PipelineConfig"""

    def __init__(self, cfg: PipelineConfig):
        self.cfg = cfg

    @staticmethod
    def tag(window_index: int, kind: MatrixKind) -> str:
        return f"window-{window_index}/{MatrixKind(kind).value}"

    def method_seed(self, window_index: int, method: MethodId) -> int:
        return derive_seed(self.cfg.seed, window_index, method.value)

    def run_method(self, method: MethodId, g: SignedGraph, window_index: int) -> MethodReport:
        cfg = self.cfg
        seed = self.method_seed(window_index, method)
        if method == MethodId.A:
            return method_a(g, cfg.modularity_weighting)
        if method == MethodId.B:
            return method_b(g, cfg.k_max, seed, cfg.modularity_weighting, keep_coordinates=cfg.dump_coords)
        if method == MethodId.C:
            return method_c(g, cfg.weighted_betweenness, cfg.modularity_weighting)
        return method_d(
            g,
            cfg.schedule,
            seed,
            max_clusters=cfg.k_max,
            weighting=cfg.modularity_weighting,
            warm_start=cfg.sa_warm_start,
            keep_trace=cfg.verbose_traces,
        )

    def process(self, window_index: int, kind: MatrixKind, window: np.ndarray):
        """WindowResult on success, WindowFailure naming the stage otherwise"""
        cfg = self.cfg
        kind = MatrixKind(kind)
        tag = self.tag(window_index, kind)
        stage = "matrix"
        try:
            if kind == MatrixKind.CORRELATION:
                matrix = correlation_matrix(window, window_index)
            else:
                matrix = coherency_matrix(window, cfg.spectral, cfg.sample_rate, window_index)
            anticorrelation: Optional[Dict[str, float]] = None
            if kind == MatrixKind.CORRELATION:
                stage = "anticorrelation"
                anticorrelation = {
                    mode.value: anticorrelation_index(matrix, mode) for mode in AnticorrelationMode
                }

            stage = "graph"
            g = from_connectivity(matrix, cfg.threshold)
            logger.debug("[%s] graph with %d vertices, %d edges", tag, g.n, g.m)

            reports = {}
            for method in cfg.methods:
                stage = f"method-{method.value}"
                report = self.run_method(method, g, window_index)
                for note in report.notes:
                    logger.info("[%s] method %s: %s", tag, method.value, note)
                logger.debug(
                    "[%s] method %s chose k=%d, q_s=%.6f", tag, method.value,
                    report.chosen_clustering.k, report.chosen_q_s,
                )
                reports[method] = report

            return WindowResult(
                window_index,
                kind,
                g.n,
                reports,
                anticorrelation=anticorrelation,
                matrix=matrix if cfg.save_matrices else None,
            )
        except FcnetError as e:
            logger.warning("[%s] failed at stage '%s': %s", tag, stage, e)
            return WindowFailure(window_index, kind, stage, str(e), e.exit_code)
        except Exception as e:
            logger.warning("[%s] unexpected error at stage '%s': %s", tag, stage, e)
            return WindowFailure(window_index, kind, stage, f"{type(e).__name__}: {e}", 1)


def process_window(task: Tuple[PipelineConfig, int, str, np.ndarray]):
    """Entry point for pool workers"""
    cfg, window_index, kind, window = task
    return WindowWorker(cfg).process(window_index, kind, window)
