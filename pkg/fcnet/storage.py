"""Result files: cluster maps, traces, dendrograms and the run manifest"""

import csv
import io
import json
import logging
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .errors import DataError, OutputError
from .models import MatrixKind, MethodId, PipelineConfig, WindowResult

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"


def _num(value: float) -> str:
    # shortest round-trip decimal
    return repr(float(value))


def _by_kind(results: Iterable[WindowResult]) -> Dict[MatrixKind, List[WindowResult]]:
    grouped: Dict[MatrixKind, List[WindowResult]] = {}
    for result in sorted(results, key=lambda r: r.sort_key):
        grouped.setdefault(result.kind, []).append(result)
    return grouped


def _methods(results: Sequence[WindowResult]) -> List[MethodId]:
    present = {m for r in results for m in r.reports}
    return sorted(present, key=lambda m: m.value)


class ResultStore:
    """Writes every artifact of a run under one output directory"""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.written: List[str] = []
        try:
            os.makedirs(out_dir, exist_ok=True)
        except OSError as e:
            raise OutputError(out_dir, str(e))

    def path(self, relative: str) -> str:
        return os.path.join(self.out_dir, relative)

    def _write_text(self, relative: str, text: str) -> str:
        full = self.path(relative)
        try:
            os.makedirs(os.path.dirname(full), exist_ok=True)
            with open(full, "w", newline="") as f:
                f.write(text)
        except OSError as e:
            raise OutputError(full, str(e))
        self.written.append(relative.replace(os.sep, "/"))
        logger.debug("wrote %s", full)
        return full

    def _write_csv(self, relative: str, header: List[str], rows: Iterable[List[Any]]) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return self._write_text(relative, buf.getvalue())

    def _write_json(self, relative: str, data: Any) -> str:
        return self._write_text(relative, json.dumps(data, indent=2) + "\n")

    def emit_cluster_map(self, results: Sequence[WindowResult]) -> List[str]:
        """One CSV per kind and method: rows are vertices, columns are windows"""
        if not results:
            raise DataError("no window results to write")
        paths = []
        for kind, group in _by_kind(results).items():
            for method in _methods(group):
                header = ["vertex"] + [f"w{r.window_index}" for r in group]
                rows = []
                for v in range(group[0].n):
                    rows.append([v + 1] + [r.reports[method].chosen_clustering.cluster_of(v) for r in group])
                paths.append(self._write_csv(f"clusters_{kind.value}_{method.value}.csv", header, rows))
        return paths

    def emit_modularity_trace(self, results: Sequence[WindowResult]) -> List[str]:
        """One CSV per kind: chosen q_s per window and method"""
        if not results:
            raise DataError("no window results to write")
        paths = []
        for kind, group in _by_kind(results).items():
            methods = _methods(group)
            rows = [[r.window_index] + [_num(r.reports[m].chosen_q_s) for m in methods] for r in group]
            paths.append(
                self._write_csv(f"modularity_{kind.value}.csv", ["window"] + [m.value for m in methods], rows)
            )
        return paths

    def emit_anticorrelation_trace(self, results: Sequence[WindowResult]) -> Optional[str]:
        """Weighted and count anticorrelation per correlation window"""
        if not results:
            raise DataError("no window results to write")
        group = _by_kind(results).get(MatrixKind.CORRELATION)
        if not group:
            return None
        rows = [
            [r.window_index, _num(r.anticorrelation["weighted"]), _num(r.anticorrelation["count"])]
            for r in group
        ]
        return self._write_csv("anticorrelation.csv", ["window", "weighted", "count"], rows)

    def emit_dendrograms(self, results: Sequence[WindowResult], include_extras: bool = False) -> List[str]:
        if not results:
            raise DataError("no window results to write")
        return [
            self._write_json(f"dendrograms/{r.kind.value}_w{r.window_index:04d}.json", r.to_dict(include_extras))
            for r in sorted(results, key=lambda r: r.sort_key)
        ]

    def emit_matrices(self, results: Sequence[WindowResult]) -> List[str]:
        return [
            self._write_json(f"matrices/{r.kind.value}_w{r.window_index:04d}.json", r.matrix.to_dict())
            for r in sorted(results, key=lambda r: r.sort_key)
            if r.matrix is not None
        ]

    def emit_coordinates(self, results: Sequence[WindowResult]) -> List[str]:
        """Method B spectral coordinates, one CSV per window and k"""
        paths = []
        for r in sorted(results, key=lambda r: r.sort_key):
            report = r.reports.get(MethodId.B)
            if report is None or "coordinates" not in report.extras:
                continue
            for k, points in sorted(report.extras["coordinates"].items()):
                header = ["vertex"] + [f"x{d + 1}" for d in range(k)]
                rows = [[v + 1] + [_num(x) for x in point] for v, point in enumerate(points)]
                paths.append(self._write_csv(f"coords/{r.kind.value}_w{r.window_index:04d}_k{k}.csv", header, rows))
        return paths

    def write_manifest(
        self,
        cfg: PipelineConfig,
        results: Sequence[WindowResult],
        failure: Optional[Dict[str, Any]] = None,
    ) -> str:
        """Run description; `failure` marks a partial run"""
        windows = sorted({r.window_index for r in results})
        manifest = {
            "status": "partial" if failure else "complete",
            "config": cfg.to_dict(),
            "windows_completed": {
                kind.value: [r.window_index for r in group] for kind, group in _by_kind(results).items()
            },
            "window_count": len(windows),
            "files": sorted(self.written),
            "failure": failure,
        }
        return self._write_json(MANIFEST, manifest)


def load_manifest(out_dir: str) -> Dict[str, Any]:
    path = os.path.join(out_dir, MANIFEST)
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise DataError(f"no {MANIFEST} in {out_dir}; is this an fcnet output directory?")
    except (OSError, json.JSONDecodeError) as e:
        raise DataError(f"cannot read {path}: {e}")


def load_modularity_trace(out_dir: str, kind: str) -> Dict[str, List[float]]:
    """Column name -> values for modularity_{kind}.csv"""
    path = os.path.join(out_dir, f"modularity_{kind}.csv")
    try:
        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}")
    columns: Dict[str, List[float]] = {}
    for row in rows:
        for key, value in row.items():
            columns.setdefault(key, []).append(float(value))
    return columns


def load_cluster_map(out_dir: str, kind: str, method: str) -> Dict[str, List[int]]:
    """Window column -> cluster ids per vertex"""
    path = os.path.join(out_dir, f"clusters_{kind}_{method}.csv")
    try:
        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}")
    columns: Dict[str, List[int]] = {}
    for row in rows:
        for key, value in row.items():
            if key != "vertex":
                columns.setdefault(key, []).append(int(value))
    return columns
