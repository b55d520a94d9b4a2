"""Experiment configuration: YAML file over documented defaults.

The default configuration is the trajectory-reproduction preset: a seeded
random 16x16 PSD matrix with six nonzero eigenvalues, a 6-qubit phase
register, and amplification runs with the plain QFT mode and bias values
1 and 20.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

DATASET_KINDS = ("random_psd", "blobs", "moons", "csv")
GRAPH_KINDS = ("full", "epsilon", "knn")
TARGETS = ("laplacian", "normalized_laplacian", "gram", "matrix")
VARIANTS = ("unnormalized", "normalized", "row_normalized")
MODES = ("qft", "biased")


@dataclass(frozen=True)
class DatasetSpec:
    kind: str = "random_psd"
    # random_psd
    dim: int = 16
    rank: int = 6
    eig_min: float = 0.3
    eig_max: float = 1.0
    # csv
    path: str | None = None
    # blobs
    sizes: tuple = (8, 8)
    centers: tuple = ((1.0, 0.0), (0.0, 1.0))
    noise: float = 0.1
    # moons
    n: int = 16

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise ValueError(f"dataset.kind must be one of {DATASET_KINDS}, got {self.kind!r}")
        if self.kind == "csv" and not self.path:
            raise ValueError("dataset.kind = csv requires dataset.path")
        if not 1 <= self.rank <= self.dim:
            raise ValueError(f"dataset.rank must lie in [1, dim], got {self.rank}")
        if not 0.0 < self.eig_min <= self.eig_max:
            raise ValueError("dataset eigenvalue range must satisfy 0 < eig_min <= eig_max")


@dataclass(frozen=True)
class GraphSpec:
    kind: str = "full"
    sigma: float = 1.0
    squared_norm: bool = False
    eps: float = 1.0
    k: int = 3

    def __post_init__(self):
        if self.kind not in GRAPH_KINDS:
            raise ValueError(f"graph.kind must be one of {GRAPH_KINDS}, got {self.kind!r}")
        if self.sigma <= 0 or self.eps <= 0 or self.k < 1:
            raise ValueError("graph parameters must be positive")


@dataclass(frozen=True)
class PeaSpec:
    m: int = 6
    mode: str = "biased"
    kappa: float = 1.0
    standard_grover: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"pea.m must be >= 1, got {self.m}")
        if self.kappa < 0:
            raise ValueError(f"pea.kappa must be >= 0, got {self.kappa}")
        if self.mode not in MODES:
            raise ValueError(f"pea.mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class AmplifySpec:
    max_iter: int = 40
    stop_tol: float | None = None

    def __post_init__(self):
        if self.max_iter < 0:
            raise ValueError(f"amplify.max_iter must be >= 0, got {self.max_iter}")
        if self.stop_tol is not None and not 0.0 <= self.stop_tol <= 0.5:
            raise ValueError(f"amplify.stop_tol must lie in [0, 0.5], got {self.stop_tol}")


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    dataset: DatasetSpec = field(default_factory=DatasetSpec)
    graph: GraphSpec = field(default_factory=GraphSpec)
    target: str = "matrix"
    gram_centered: bool = False
    k: int | str = "auto"
    k_max: int = 8
    variant: str = "unnormalized"
    pea: PeaSpec = field(default_factory=PeaSpec)
    amplify: AmplifySpec = field(default_factory=AmplifySpec)
    runs: tuple = (("qft", 0.0), ("biased", 1.0), ("biased", 20.0))
    candidates: str | tuple = "auto"
    scrambled: int = 1
    overlap_min: float = 0.25
    overlap_max: float = 0.9
    out_dir: str = "qspectral_out"

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.k != "auto" and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"k must be 'auto' or a positive integer, got {self.k!r}")
        if self.k_max < 2:
            raise ValueError(f"k_max must be >= 2, got {self.k_max}")
        if not 0.0 < self.overlap_min <= self.overlap_max <= 1.0:
            raise ValueError("overlap window must satisfy 0 < min <= max <= 1")
        if self.scrambled < 0:
            raise ValueError(f"scrambled must be >= 0, got {self.scrambled}")
        for run in self.runs:
            mode, kappa = run
            if mode not in MODES or float(kappa) < 0:
                raise ValueError(f"invalid run spec {run!r}")


def _build(cls, data: dict, context: str):
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown {context} keys: {sorted(unknown)}")
    converted = {}
    for key, value in data.items():
        if isinstance(value, list):
            value = tuple(tuple(v) if isinstance(v, list) else v for v in value)
        converted[key] = value
    return cls(**converted)


def load_config(path=None, seed: int | None = None, out_dir: str | None = None) -> ExperimentConfig:
    """Load configuration from YAML, falling back to the preset defaults.

    ``seed`` and ``out_dir`` override whatever the file specifies (these come
    from the command line).
    """
    data: dict = {}
    if path is not None:
        text = Path(path).read_text()
        loaded = yaml.safe_load(text)
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ValueError(f"{path}: top level must be a mapping")
        data = loaded

    sections = {
        "dataset": DatasetSpec,
        "graph": GraphSpec,
        "pea": PeaSpec,
        "amplify": AmplifySpec,
    }
    kwargs = {}
    for key, value in data.items():
        if key in sections:
            if not isinstance(value, dict):
                raise ValueError(f"config section {key!r} must be a mapping")
            kwargs[key] = _build(sections[key], value, key)
        elif key == "runs":
            runs = []
            for entry in value:
                if isinstance(entry, dict):
                    runs.append((entry.get("mode", "biased"), float(entry.get("kappa", 0.0))))
                else:
                    runs.append((entry[0], float(entry[1])))
            kwargs["runs"] = tuple(runs)
        elif key == "candidates" and isinstance(value, list):
            kwargs["candidates"] = tuple(tuple(int(i) for i in group) for group in value)
        else:
            kwargs[key] = value

    if seed is not None:
        kwargs["seed"] = int(seed)
    if out_dir is not None:
        kwargs["out_dir"] = str(out_dir)
    return _build(ExperimentConfig, kwargs, "top-level")
