"""Domain models and data structures"""

import json
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, DataError

SYMMETRY_TOL = 1e-12
SA_WARM_STARTS = ("random", "fiedler", "girvan-newman", "spectral")


class RecordingFormat(str, Enum):
    """On-disk recording format"""
    CSV = "csv"
    RAW_F32 = "raw-f32"


class MatrixKind(str, Enum):
    """Connectivity estimator"""
    CORRELATION = "correlation"
    COHERENCY = "coherency"


class MethodId(str, Enum):
    """Community detection method"""
    A = "A"  # Fiedler bisection
    B = "B"  # spectral coordinates + k-means
    C = "C"  # Girvan-Newman edge betweenness
    D = "D"  # simulated annealing on signed modularity


class AnticorrelationMode(str, Enum):
    """How the anticorrelation index aggregates negative edges"""
    WEIGHTED = "weighted"
    COUNT = "count"


def _first_nonfinite(data: np.ndarray) -> Optional[Tuple[int, int]]:
    bad = np.argwhere(~np.isfinite(data))
    if bad.size == 0:
        return None
    row, col = bad[0]
    return int(row), int(col)


class MultichannelRecording:
    """Sampled signals, one column per contact point"""

    def __init__(self, data: Any, sample_rate: float):
        arr = np.array(data, dtype=np.float64)
        if arr.ndim != 2:
            raise DataError(f"recording must be a samples x channels matrix, got {arr.ndim} dimension(s)")
        if not sample_rate > 0:
            raise DataError(f"sample rate must be positive, got {sample_rate}")
        if arr.shape[1] < 2:
            raise DataError(f"recording needs at least 2 channels, got {arr.shape[1]}")
        loc = _first_nonfinite(arr)
        if loc is not None:
            raise DataError(f"non-finite sample {arr[loc]} at row {loc[0] + 1}, column {loc[1] + 1}")
        arr.setflags(write=False)
        self._data = arr
        self.sample_rate = float(sample_rate)

    @property
    def data(self) -> np.ndarray:
        """Read-only samples x channels array"""
        return self._data

    @property
    def n_channels(self) -> int:
        """Number of channels"""
        return self._data.shape[1]

    @property
    def n_samples(self) -> int:
        """Number of samples per channel"""
        return self._data.shape[0]

    def __repr__(self) -> str:
        return (
            f"MultichannelRecording(n_channels={self.n_channels}, "
            f"n_samples={self.n_samples}, sample_rate={self.sample_rate})"
        )


class WindowSpec:
    """Non-overlapping window length in samples"""

    def __init__(self, window_size: int):
        if int(window_size) != window_size or window_size < 2:
            raise ConfigError(f"window size must be an integer >= 2, got {window_size}")
        self.window_size = int(window_size)

    def __repr__(self) -> str:
        return f"WindowSpec(window_size={self.window_size})"


class SyntheticSpec:
    """Planted-community recording parameters"""

    def __init__(
        self,
        n_channels: int,
        n_samples: int,
        sample_rate: float,
        community_assignment: Sequence[int],
        shared_signal_strength: float,
        anticorrelated_pairs: bool = False,
        noise_level: float = 0.3,
        anticorrelation_strength: float = 0.5,
        drive_strength: float = 0.0,
        latent_band: Optional[Tuple[float, float]] = None,
    ):
        self.n_channels = int(n_channels)
        self.n_samples = int(n_samples)
        self.sample_rate = float(sample_rate)
        self.community_assignment = tuple(int(c) for c in community_assignment)
        self.shared_signal_strength = float(shared_signal_strength)
        self.anticorrelated_pairs = bool(anticorrelated_pairs)
        self.noise_level = float(noise_level)
        self.anticorrelation_strength = float(anticorrelation_strength)
        self.drive_strength = float(drive_strength)
        self.latent_band = tuple(float(b) for b in latent_band) if latent_band else None
        self.validate()

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], **kwargs) -> "SyntheticSpec":
        """Build a spec whose communities are consecutive channel blocks"""
        assignment = [label for label, size in enumerate(sizes) for _ in range(size)]
        return cls(n_channels=len(assignment), community_assignment=assignment, **kwargs)

    @property
    def communities(self) -> List[int]:
        """Distinct community labels, sorted"""
        return sorted(set(self.community_assignment))

    def validate(self):
        """Raise ConfigError on inconsistent parameters"""
        if self.n_channels < 2:
            raise ConfigError(f"synthetic recording needs at least 2 channels, got {self.n_channels}")
        if self.n_samples < 2:
            raise ConfigError(f"synthetic recording needs at least 2 samples, got {self.n_samples}")
        if not self.sample_rate > 0:
            raise ConfigError(f"sample rate must be positive, got {self.sample_rate}")
        if len(self.community_assignment) != self.n_channels:
            raise ConfigError(
                f"community labels cover {len(self.community_assignment)} channels, expected {self.n_channels}"
            )
        if any(c < 0 for c in self.community_assignment):
            raise ConfigError("community labels must be non-negative")
        if not 0.0 <= self.shared_signal_strength <= 1.0:
            raise ConfigError(f"shared signal strength must be in [0, 1], got {self.shared_signal_strength}")
        if not 0.0 <= self.anticorrelation_strength <= 1.0:
            raise ConfigError(f"anticorrelation strength must be in [0, 1], got {self.anticorrelation_strength}")
        if self.noise_level < 0 or self.drive_strength < 0:
            raise ConfigError("noise level and drive strength must be non-negative")
        if self.noise_level == 0 and self.shared_signal_strength == 0 and self.drive_strength == 0:
            raise ConfigError("at least one of strength, drive or noise must be positive")
        if self.latent_band is not None:
            low, high = self.latent_band
            if not 0 < low < high < self.sample_rate / 2:
                raise ConfigError(f"latent band must satisfy 0 < low < high < {self.sample_rate / 2}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert spec to dictionary"""
        return {
            "n_channels": self.n_channels,
            "n_samples": self.n_samples,
            "sample_rate": self.sample_rate,
            "community_assignment": list(self.community_assignment),
            "shared_signal_strength": self.shared_signal_strength,
            "anticorrelated_pairs": self.anticorrelated_pairs,
            "noise_level": self.noise_level,
            "anticorrelation_strength": self.anticorrelation_strength,
            "drive_strength": self.drive_strength,
            "latent_band": list(self.latent_band) if self.latent_band else None,
        }


class SpectralConfig:
    """Averaged-periodogram settings for coherency"""

    def __init__(
        self,
        segment_length: Optional[int] = None,
        overlap_fraction: float = 0.5,
        band_low: float = 1.0,
        band_high: float = 100.0,
    ):
        self.segment_length = int(segment_length) if segment_length else None
        self.overlap_fraction = float(overlap_fraction)
        self.band_low = float(band_low)
        self.band_high = float(band_high)

    def resolve_segment_length(self, window_size: int) -> int:
        """Segment length, defaulting to an eighth of the window"""
        return self.segment_length or window_size // 8

    def validate(self, window_size: int, sample_rate: float):
        """Check segment, overlap and band against one window"""
        seg = self.resolve_segment_length(window_size)
        if seg < 2:
            raise ConfigError(f"segment length must be >= 2 samples, got {seg}")
        if seg > window_size:
            raise ConfigError(f"segment length {seg} exceeds window size {window_size}")
        if not 0.0 <= self.overlap_fraction < 1.0:
            raise ConfigError(f"overlap fraction must be in [0, 1), got {self.overlap_fraction}")
        if not 0 < self.band_low < self.band_high <= sample_rate / 2:
            raise ConfigError(
                f"band must satisfy 0 < low < high <= {sample_rate / 2} Hz, "
                f"got {self.band_low}:{self.band_high}"
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary"""
        return {
            "segment_length": self.segment_length,
            "overlap_fraction": self.overlap_fraction,
            "band_low": self.band_low,
            "band_high": self.band_high,
        }


class ConnectivityMatrix:
    """Per-window symmetric connectivity matrix"""

    def __init__(
        self,
        values: Any,
        kind: MatrixKind,
        window_index: int = 0,
        warnings: Optional[List[str]] = None,
    ):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DataError(f"connectivity matrix must be square, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DataError("connectivity matrix contains non-finite entries")
        if np.max(np.abs(arr - arr.T), initial=0.0) > SYMMETRY_TOL:
            raise DataError("connectivity matrix is not symmetric")
        self.kind = kind if isinstance(kind, MatrixKind) else MatrixKind(kind)
        low = -1.0 if self.kind == MatrixKind.CORRELATION else 0.0
        if arr.size and (arr.min() < low - SYMMETRY_TOL or arr.max() > 1.0 + SYMMETRY_TOL):
            raise DataError(f"{self.kind.value} entries must lie in [{low:g}, 1]")
        arr.setflags(write=False)
        self._values = arr
        self.window_index = int(window_index)
        self.warnings = list(warnings or [])

    @property
    def values(self) -> np.ndarray:
        """Read-only n x n matrix"""
        return self._values

    @property
    def n(self) -> int:
        """Number of channels"""
        return self._values.shape[0]

    def to_dict(self) -> Dict[str, Any]:
        """Convert matrix to dictionary (row-major values)"""
        return {
            "kind": self.kind.value,
            "window_index": self.window_index,
            "n": self.n,
            "values": [float(v) for v in self._values.ravel()],
        }

    def to_json(self) -> str:
        """Convert matrix to JSON string"""
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        """n rows x n columns, 17 significant digits"""
        lines = [",".join(format(float(v), ".17g") for v in row) for row in self._values]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConnectivityMatrix":
        """Create matrix from dictionary"""
        n = int(data["n"])
        values = np.array(data["values"], dtype=np.float64).reshape(n, n)
        return cls(values, MatrixKind(data["kind"]), data.get("window_index", 0))

    def __repr__(self) -> str:
        return f"ConnectivityMatrix(kind={self.kind.value}, n={self.n}, window_index={self.window_index})"


Edge = Tuple[int, int, float, int]


class SignedGraph:
    """Signed weighted undirected graph G = (V, E, W, Sigma).

    Vertices are 0-based internally; serialized ids are 1-based.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[float]] = ()):
        if n < 1:
            raise DataError(f"graph needs at least one vertex, got {n}")
        signed = np.zeros((n, n), dtype=np.float64)
        seen = set()
        for edge in edges:
            i, j, w, sigma = int(edge[0]), int(edge[1]), float(edge[2]), int(edge[3])
            if not 0 <= i < j < n:
                raise DataError(f"edge ({i}, {j}) must satisfy 0 <= i < j < {n}")
            if (i, j) in seen:
                raise DataError(f"duplicate edge ({i}, {j})")
            if not 0.0 < w <= 1.0:
                raise DataError(f"edge ({i}, {j}) weight {w} outside (0, 1]")
            if sigma not in (1, -1):
                raise DataError(f"edge ({i}, {j}) sign must be +1 or -1, got {sigma}")
            seen.add((i, j))
            signed[i, j] = signed[j, i] = sigma * w
        signed.setflags(write=False)
        self.n = int(n)
        self._signed = signed

    @classmethod
    def from_signed_matrix(cls, signed: Any) -> "SignedGraph":
        """One edge per nonzero upper-triangle entry; the diagonal is ignored"""
        arr = np.asarray(signed, dtype=np.float64)
        iu, ju = np.triu_indices(arr.shape[0], 1)
        vals = arr[iu, ju]
        keep = vals != 0
        edges = [
            (int(i), int(j), abs(float(v)), 1 if v > 0 else -1)
            for i, j, v in zip(iu[keep], ju[keep], vals[keep])
        ]
        return cls(arr.shape[0], edges)

    @property
    def signed_matrix(self) -> np.ndarray:
        """Read-only n x n matrix of signed weights"""
        return self._signed

    @property
    def edges(self) -> List[Edge]:
        """Edges (i, j, w, sign) with i < j, row-major"""
        iu, ju = np.nonzero(np.triu(self._signed, 1))
        return [
            (int(i), int(j), abs(float(self._signed[i, j])), 1 if self._signed[i, j] > 0 else -1)
            for i, j in zip(iu, ju)
        ]

    @property
    def m(self) -> int:
        """Number of edges"""
        return int(np.count_nonzero(np.triu(self._signed, 1)))

    @property
    def total_weight(self) -> float:
        """Sum of unsigned edge weights"""
        return float(np.abs(np.triu(self._signed, 1)).sum())

    def negated(self) -> "SignedGraph":
        """The same graph with every sign flipped (-G)"""
        return SignedGraph.from_signed_matrix(-self._signed)

    def to_dict(self) -> Dict[str, Any]:
        """Convert graph to dictionary with 1-based ids"""
        return {
            "n": self.n,
            "edges": [[i + 1, j + 1, w, sigma] for i, j, w, sigma in self.edges],
        }

    def to_json(self) -> str:
        """Convert graph to JSON string"""
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SignedGraph":
        """Create graph from dictionary with 1-based ids"""
        edges = [(e[0] - 1, e[1] - 1, e[2], e[3]) for e in data["edges"]]
        return cls(int(data["n"]), edges)

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, m={self.m})"


class Clustering:
    """Vertex partition with canonical cluster ids 1..k.

    Ids are assigned in order of each cluster's smallest vertex, so equal
    partitions compare equal regardless of the labels they were built from.
    """

    def __init__(self, labels: Sequence[Any]):
        labels = list(labels)
        if not labels:
            raise DataError("clustering needs at least one vertex")
        mapping: Dict[Any, int] = {}
        assignment = np.empty(len(labels), dtype=np.int64)
        for v, label in enumerate(labels):
            if label not in mapping:
                mapping[label] = len(mapping) + 1
            assignment[v] = mapping[label]
        assignment.setflags(write=False)
        self._assignment = assignment
        self.k = len(mapping)

    @classmethod
    def from_groups(cls, n: int, groups: Iterable[Iterable[int]]) -> "Clustering":
        """Create clustering from disjoint vertex groups covering 0..n-1"""
        labels: List[Optional[int]] = [None] * n
        for gid, group in enumerate(groups):
            for v in group:
                if labels[v] is not None:
                    raise DataError(f"vertex {v} assigned to more than one cluster")
                labels[v] = gid
        missing = [v for v, label in enumerate(labels) if label is None]
        if missing:
            raise DataError(f"vertices {missing} are not assigned to any cluster")
        return cls(labels)

    @classmethod
    def single(cls, n: int) -> "Clustering":
        """All n vertices in one cluster"""
        return cls([0] * n)

    @property
    def assignment(self) -> np.ndarray:
        """Read-only 1-based cluster id per vertex"""
        return self._assignment

    @property
    def n(self) -> int:
        """Number of vertices"""
        return len(self._assignment)

    @property
    def labels0(self) -> np.ndarray:
        """0-based cluster labels"""
        return self._assignment - 1

    def members(self, cluster_id: int) -> List[int]:
        """Sorted vertices of one cluster"""
        return [int(v) for v in np.flatnonzero(self._assignment == cluster_id)]

    def groups(self) -> List[List[int]]:
        """Members of clusters 1..k"""
        return [self.members(c) for c in range(1, self.k + 1)]

    def cluster_of(self, vertex: int) -> int:
        """Cluster id of a vertex"""
        return int(self._assignment[vertex])

    def refines(self, coarser: "Clustering") -> bool:
        """True when every cluster here lies inside one cluster of `coarser`"""
        return all(len({coarser.cluster_of(v) for v in group}) == 1 for group in self.groups())

    def split(self, cluster_id: int, side: Iterable[int]) -> "Clustering":
        """Move `side` (a proper subset of one cluster) into a new cluster"""
        labels = list(self._assignment)
        side = list(side)
        members = set(self.members(cluster_id))
        if not side or not set(side) < members:
            raise DataError(f"split side must be a proper non-empty subset of cluster {cluster_id}")
        for v in side:
            labels[v] = self.k + 1
        return Clustering(labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return np.array_equal(self._assignment, other._assignment)

    def __hash__(self) -> int:
        return hash(tuple(self._assignment.tolist()))

    def to_dict(self) -> Dict[str, Any]:
        """Convert clustering to dictionary"""
        return {"k": self.k, "assignment": [int(c) for c in self._assignment]}

    def __repr__(self) -> str:
        groups = "|".join(",".join(str(v + 1) for v in g) for g in self.groups())
        return f"Clustering(k={self.k}, {groups})"


class MixingMatrix:
    """Cluster-level edge-mass fractions E = [e_ij]"""

    def __init__(self, values: Any):
        arr = np.array(values, dtype=np.float64)
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        """Read-only k x k matrix"""
        return self._values

    @property
    def marginals(self) -> np.ndarray:
        """Row sums a_i"""
        return self._values.sum(axis=1)

    def __repr__(self) -> str:
        return f"MixingMatrix(k={self._values.shape[0]})"


class DendrogramLevel:
    """One clustering in a method's level list"""

    def __init__(
        self,
        clustering: Clustering,
        q_s: float,
        split: Optional[Tuple[int, int, int]] = None,
    ):
        self.clustering = clustering
        self.q_s = float(q_s)
        self.split = split

    @property
    def k(self) -> int:
        """Number of clusters at this level"""
        return self.clustering.k

    def to_dict(self) -> Dict[str, Any]:
        """Convert level to dictionary"""
        return {
            "k": self.k,
            "assignment": [int(c) for c in self.clustering.assignment],
            "split": list(self.split) if self.split else None,
            "q_s": self.q_s,
        }


class Dendrogram:
    """Ordered list of levels; top-down methods refine level by level"""

    def __init__(self, levels: Sequence[DendrogramLevel]):
        if not levels:
            raise DataError("dendrogram needs at least one level")
        self.levels = list(levels)

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self) -> Iterator[DendrogramLevel]:
        return iter(self.levels)

    def is_refinement_chain(self) -> bool:
        """True when each level refines the one before"""
        return all(
            later.clustering.refines(earlier.clustering)
            for earlier, later in zip(self.levels, self.levels[1:])
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert levels to dictionary"""
        return {"levels": [level.to_dict() for level in self.levels]}


class MethodReport:
    """One method's levels and the max-q_s clustering chosen among them"""

    def __init__(
        self,
        method: MethodId,
        dendrogram: Dendrogram,
        chosen_index: int,
        notes: Optional[List[str]] = None,
        extras: Optional[Dict[str, Any]] = None,
    ):
        self.method = method if isinstance(method, MethodId) else MethodId(method)
        self.dendrogram = dendrogram
        self.chosen_index = int(chosen_index)
        self.notes = list(notes or [])
        self.extras = dict(extras or {})

    @classmethod
    def from_levels(
        cls,
        method: MethodId,
        levels: Sequence[DendrogramLevel],
        notes: Optional[List[str]] = None,
        extras: Optional[Dict[str, Any]] = None,
        tol: float = 1e-12,
    ) -> "MethodReport":
        """Choose the max-q_s level; near-ties (within tol) go to fewest clusters"""
        best = max(level.q_s for level in levels)
        candidates = [i for i, level in enumerate(levels) if level.q_s >= best - tol]
        chosen = min(candidates, key=lambda i: (levels[i].k, i))
        return cls(method, Dendrogram(levels), chosen, notes, extras)

    @property
    def chosen_level(self) -> DendrogramLevel:
        """Level with the chosen clustering"""
        return self.dendrogram.levels[self.chosen_index]

    @property
    def chosen_clustering(self) -> Clustering:
        """Max-q_s clustering"""
        return self.chosen_level.clustering

    @property
    def chosen_q_s(self) -> float:
        """Signed modularity of the chosen clustering"""
        return self.chosen_level.q_s

    @property
    def q_s_trace(self) -> List[float]:
        """q_s of every level, in order"""
        return [level.q_s for level in self.dendrogram]

    def to_dict(self, include_extras: bool = False) -> Dict[str, Any]:
        """Convert report to dictionary"""
        data = {
            "method": self.method.value,
            "chosen_level": self.chosen_index + 1,
            "chosen_k": self.chosen_clustering.k,
            "chosen_q_s": self.chosen_q_s,
            "chosen_assignment": [int(c) for c in self.chosen_clustering.assignment],
            "q_s_trace": self.q_s_trace,
            "notes": self.notes,
            **self.dendrogram.to_dict(),
        }
        if include_extras:
            data["extras"] = self.extras
        return data

    def __repr__(self) -> str:
        return (
            f"MethodReport(method={self.method.value}, levels={len(self.dendrogram)}, "
            f"chosen_k={self.chosen_clustering.k}, chosen_q_s={self.chosen_q_s:.6f})"
        )


class AnnealingSchedule:
    """Geometric cooling schedule for the annealing bisection.

    With `patience` set, a bisection stops after that many consecutive
    temperatures without improving its best value; None runs every step.
    """

    def __init__(
        self,
        temp_steps: int = 400,
        samples_per_temp: int = 500,
        t_initial: float = 1.0,
        t_final: float = 1e-3,
        patience: Optional[int] = None,
    ):
        self.temp_steps = int(temp_steps)
        self.samples_per_temp = int(samples_per_temp)
        self.t_initial = float(t_initial)
        self.t_final = float(t_final)
        self.patience = int(patience) if patience is not None else None
        if self.temp_steps < 1 or self.samples_per_temp < 1:
            raise ConfigError("annealing steps and samples per temperature must be positive")
        if self.patience is not None and self.patience < 1:
            raise ConfigError(f"annealing patience must be >= 1, got {self.patience}")
        if not 0 < self.t_final < self.t_initial:
            raise ConfigError(
                f"annealing temperatures must satisfy 0 < t_final < t_initial, "
                f"got {self.t_final} and {self.t_initial}"
            )

    @property
    def decay(self) -> float:
        """Ratio between consecutive temperatures"""
        return (self.t_final / self.t_initial) ** (1.0 / self.temp_steps)

    def temperatures(self) -> Iterator[float]:
        """Yield temp_steps geometric temperatures from t_initial"""
        decay = self.decay
        for step in range(self.temp_steps):
            yield self.t_initial * decay ** step

    def to_dict(self) -> Dict[str, Any]:
        """Convert schedule to dictionary"""
        return {
            "temp_steps": self.temp_steps,
            "samples_per_temp": self.samples_per_temp,
            "t_initial": self.t_initial,
            "t_final": self.t_final,
            "patience": self.patience,
        }


class SearchSpaceSizes:
    """Sizes of the flat and hierarchical bisection search spaces"""

    def __init__(self, n: int, bell_reference: int, best_case: int, worst_case: int):
        self.n = n
        self.bell_reference = bell_reference
        self.best_case = best_case
        self.worst_case = worst_case

    def to_dict(self) -> Dict[str, int]:
        """Convert sizes to dictionary"""
        return {
            "n": self.n,
            "bell_reference": self.bell_reference,
            "best_case": self.best_case,
            "worst_case": self.worst_case,
        }

    def __repr__(self) -> str:
        return (
            f"SearchSpaceSizes(n={self.n}, best_case={self.best_case}, "
            f"worst_case={self.worst_case}, bell_reference={self.bell_reference})"
        )


def _split_list(value: Any) -> List[str]:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return [str(part).strip() for part in value]


def _parse_band(value: Any) -> Tuple[float, float]:
    if isinstance(value, str):
        parts = value.split(":")
        if len(parts) != 2:
            raise ConfigError(f"band must look like LOW:HIGH, got '{value}'")
        try:
            return float(parts[0]), float(parts[1])
        except ValueError:
            raise ConfigError(f"band must look like LOW:HIGH, got '{value}'")
    low, high = value
    return float(low), float(high)


class PipelineConfig:
    """Validated settings for one end-to-end run"""

    def __init__(
        self,
        input_path: str,
        input_format: RecordingFormat = RecordingFormat.CSV,
        window_size: int = 10000,
        kinds: Sequence[MatrixKind] = (MatrixKind.CORRELATION,),
        methods: Sequence[MethodId] = (MethodId.A, MethodId.B, MethodId.C, MethodId.D),
        output_dir: str = "fcnet_out",
        channels: Optional[int] = None,
        header: bool = False,
        sample_rate: float = 1000.0,
        spectral: Optional[SpectralConfig] = None,
        threshold: float = 0.0,
        schedule: Optional[AnnealingSchedule] = None,
        anticorr_mode: AnticorrelationMode = AnticorrelationMode.WEIGHTED,
        seed: int = 0,
        plots: bool = False,
        workers: int = 1,
        k_max: int = 8,
        weighted_betweenness: bool = True,
        modularity_weighting: str = "weight",
        sa_warm_start: str = "random",
        save_matrices: bool = False,
        dump_coords: bool = False,
        verbose_traces: bool = False,
    ):
        self.input_path = str(input_path)
        self.input_format = RecordingFormat(input_format)
        self.window_size = window_size
        self.kinds = [MatrixKind(k) for k in kinds]
        self.methods = [MethodId(m) for m in methods]
        self.output_dir = str(output_dir)
        self.channels = channels
        self.header = bool(header)
        self.sample_rate = float(sample_rate)
        self.spectral = spectral or SpectralConfig()
        self.threshold = float(threshold)
        self.schedule = schedule or AnnealingSchedule()
        self.anticorr_mode = AnticorrelationMode(anticorr_mode)
        self.seed = int(seed)
        self.plots = bool(plots)
        self.workers = int(workers)
        self.k_max = int(k_max)
        self.weighted_betweenness = bool(weighted_betweenness)
        self.modularity_weighting = modularity_weighting
        self.sa_warm_start = sa_warm_start
        self.save_matrices = bool(save_matrices)
        self.dump_coords = bool(dump_coords)
        self.verbose_traces = bool(verbose_traces)
        self.validate()

    def validate(self):
        """Raise ConfigError on invalid settings"""
        if not self.methods:
            raise ConfigError("at least one method must be selected")
        if not self.kinds:
            raise ConfigError("at least one matrix kind must be selected")
        WindowSpec(self.window_size)
        self.window_size = int(self.window_size)
        if self.input_format == RecordingFormat.RAW_F32 and not self.channels:
            raise ConfigError("raw-f32 input requires --channels")
        if not 0.0 <= self.threshold < 1.0:
            raise ConfigError(f"threshold must be in [0, 1), got {self.threshold}")
        if not self.sample_rate > 0:
            raise ConfigError(f"sample rate must be positive, got {self.sample_rate}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.k_max < 1:
            raise ConfigError(f"k_max must be >= 1, got {self.k_max}")
        if self.modularity_weighting not in ("weight", "count"):
            raise ConfigError(f"modularity weighting must be 'weight' or 'count', got '{self.modularity_weighting}'")
        if self.sa_warm_start not in SA_WARM_STARTS:
            raise ConfigError(
                f"annealing warm start must be one of {', '.join(SA_WARM_STARTS)}, got '{self.sa_warm_start}'"
            )
        if MatrixKind.COHERENCY in self.kinds:
            self.spectral.validate(self.window_size, self.sample_rate)

    @classmethod
    def from_mapping(cls, settings: Dict[str, Any]) -> "PipelineConfig":
        """Build from flat config keys (see ConfigManager.DEFAULT_CONFIG)"""
        try:
            kinds = _split_list(settings.get("kinds", "correlation"))
            if kinds == ["both"]:
                kinds = [MatrixKind.CORRELATION.value, MatrixKind.COHERENCY.value]
            band = _parse_band(settings.get("band", "1:100"))
            spectral = SpectralConfig(
                segment_length=settings.get("segment_len") or None,
                overlap_fraction=settings.get("overlap", 0.5),
                band_low=band[0],
                band_high=band[1],
            )
            schedule = AnnealingSchedule(
                temp_steps=settings.get("sa_steps", 400),
                samples_per_temp=settings.get("sa_samples", 500),
                t_initial=settings.get("sa_t0", 1.0),
                t_final=settings.get("sa_tf", 1e-3),
                patience=settings.get("sa_patience"),
            )
            return cls(
                input_path=settings["input"],
                input_format=settings.get("format", "csv"),
                window_size=settings.get("window_size", 10000),
                kinds=[MatrixKind(k) for k in kinds],
                methods=[MethodId(m.upper()) for m in _split_list(settings.get("methods", "A,B,C,D"))],
                output_dir=settings.get("out", "fcnet_out"),
                channels=settings.get("channels") or None,
                header=settings.get("header", False),
                sample_rate=settings.get("sample_rate", 1000.0),
                spectral=spectral,
                threshold=settings.get("threshold", 0.0),
                schedule=schedule,
                anticorr_mode=settings.get("anticorr_mode", "weighted"),
                seed=settings.get("seed", 0),
                plots=settings.get("plots", False),
                workers=settings.get("workers", 1),
                k_max=settings.get("k_max", 8),
                weighted_betweenness=settings.get("betweenness", "weighted") == "weighted",
                modularity_weighting=settings.get("modularity_weighting", "weight"),
                sa_warm_start=settings.get("sa_warm_start", "random"),
                save_matrices=settings.get("save_matrices", False),
                dump_coords=settings.get("dump_coords", False),
                verbose_traces=settings.get("verbose_traces", False),
            )
        except KeyError as e:
            raise ConfigError(f"missing required setting {e}")
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(str(e))

    def to_dict(self) -> Dict[str, Any]:
        """Settings recorded in the manifest (no worker count or output directory)"""
        return {
            "input": self.input_path,
            "format": self.input_format.value,
            "channels": self.channels,
            "header": self.header,
            "sample_rate": self.sample_rate,
            "window_size": self.window_size,
            "kinds": [k.value for k in self.kinds],
            "methods": [m.value for m in self.methods],
            "threshold": self.threshold,
            "spectral": self.spectral.to_dict(),
            "schedule": self.schedule.to_dict(),
            "anticorr_mode": self.anticorr_mode.value,
            "seed": self.seed,
            "k_max": self.k_max,
            "betweenness": "weighted" if self.weighted_betweenness else "unweighted",
            "modularity_weighting": self.modularity_weighting,
            "sa_warm_start": self.sa_warm_start,
        }


class WindowResult:
    """Everything computed for one window and one matrix kind"""

    def __init__(
        self,
        window_index: int,
        kind: MatrixKind,
        n: int,
        reports: Dict[MethodId, MethodReport],
        anticorrelation: Optional[Dict[str, float]] = None,
        matrix: Optional[ConnectivityMatrix] = None,
    ):
        for method, report in reports.items():
            if report.chosen_clustering.n != n:
                raise DataError(f"method {method.value} report has order {report.chosen_clustering.n}, expected {n}")
        self.window_index = int(window_index)
        self.kind = MatrixKind(kind)
        self.n = int(n)
        self.reports = dict(reports)
        self.anticorrelation = anticorrelation
        self.matrix = matrix

    @property
    def sort_key(self) -> Tuple[str, int]:
        """(kind, window index) output order"""
        return self.kind.value, self.window_index

    def to_dict(self, include_extras: bool = False) -> Dict[str, Any]:
        """Convert result to dictionary"""
        return {
            "window_index": self.window_index,
            "kind": self.kind.value,
            "n": self.n,
            "anticorrelation": self.anticorrelation,
            "methods": {
                method.value: report.to_dict(include_extras)
                for method, report in sorted(self.reports.items(), key=lambda item: item[0].value)
            },
        }

    def __repr__(self) -> str:
        return f"WindowResult(window_index={self.window_index}, kind={self.kind.value}, methods={len(self.reports)})"
