"""Classical reference pipeline: Lloyd's k-means, spectral clustering,
eigengap selection, cluster indicators, and the trace objective.

These routines double as the correctness oracle for the quantum path, so
they favor clarity and verifiability over speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import graph as graphmod
from . import numerics
from .errors import DegenerateTargetError


@dataclass
class ClusterAssignment:
    """Result of a clustering run: labels, centroids and diagnostics."""

    labels: np.ndarray
    k: int
    centroids: np.ndarray
    objective: float
    n_iter: int
    objective_history: list[float] = field(default_factory=list)
    reseeds: list[tuple[int, int]] = field(default_factory=list)  # (iteration, cluster)

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=int)
        present = np.unique(self.labels)
        if not np.array_equal(present, np.arange(self.k)):
            raise ValueError(f"labels must use every cluster id 0..{self.k - 1}, got {present}")


@dataclass(frozen=True)
class IndicatorVector:
    """Unit vector that is constant on one cluster and zero elsewhere."""

    members: tuple[int, ...]
    dim: int

    def __post_init__(self):
        members = tuple(sorted(set(int(i) for i in self.members)))
        if not members:
            raise ValueError("indicator must have at least one member")
        if members[0] < 0 or members[-1] >= self.dim:
            raise ValueError(f"members {members} out of range for dim {self.dim}")
        object.__setattr__(self, "members", members)

    def vector(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[list(self.members)] = 1.0 / np.sqrt(len(self.members))
        return v

    @property
    def name(self) -> str:
        return "ind_" + "-".join(str(i) for i in self.members)


def indicators_from_labels(labels, k: int) -> list[IndicatorVector]:
    labels = np.asarray(labels, dtype=int)
    return [IndicatorVector(tuple(np.flatnonzero(labels == c)), labels.size) for c in range(k)]


def _farthest_point_init(points: np.ndarray, k: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = np.sum((points - points[chosen[0]]) ** 2, axis=1)
    while len(chosen) < k:
        nxt = int(np.argmax(d2))
        chosen.append(nxt)
        d2 = np.minimum(d2, np.sum((points - points[nxt]) ** 2, axis=1))
    return points[chosen].copy()


def kmeans(points, k: int, init: int | np.ndarray = 0, max_iter: int = 200) -> ClusterAssignment:
    """Lloyd's algorithm.

    ``init`` is either a seed for the greedy farthest-point initializer or an
    explicit (k, d) centroid array.  An empty cluster is re-seeded at the
    point farthest from its assigned centroid, and the event is recorded.
    """
    pts = graphmod.as_points(points)
    n = pts.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= N={n}, got {k}")
    if isinstance(init, (int, np.integer)):
        centroids = _farthest_point_init(pts, k, int(init))
    else:
        centroids = np.array(init, dtype=float)
        if centroids.shape != (k, pts.shape[1]):
            raise ValueError(f"explicit centroids must have shape {(k, pts.shape[1])}")

    labels = np.full(n, -1, dtype=int)
    history: list[float] = []
    reseeds: list[tuple[int, int]] = []
    n_iter = 0
    for it in range(1, max_iter + 1):
        n_iter = it
        d2 = np.sum((pts[:, None, :] - centroids[None, :, :]) ** 2, axis=-1)
        new_labels = np.argmin(d2, axis=1)  # ties resolve to the lower cluster id
        for c in range(k):
            if not np.any(new_labels == c):
                worst = int(np.argmax(d2[np.arange(n), new_labels]))
                new_labels[worst] = c
                centroids[c] = pts[worst]
                d2[:, c] = np.sum((pts - pts[worst]) ** 2, axis=1)
                reseeds.append((it, c))
        history.append(float(np.sum((pts - centroids[new_labels]) ** 2)))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            centroids[c] = pts[labels == c].mean(axis=0)
    objective = float(np.sum((pts - centroids[labels]) ** 2))
    return ClusterAssignment(labels, k, centroids, objective, n_iter, history, reseeds)


def eigengap_select(eigenvalues, k_max: int) -> int:
    """Cluster count with the largest eigengap |lambda_k - lambda_{k+1}|.

    ``eigenvalues`` must be sorted ascending; k is 1-indexed and searched over
    1 <= k < min(k_max, len(eigenvalues)); ties pick the smallest k.
    """
    w = np.asarray(eigenvalues, dtype=float)
    upper = min(int(k_max), w.size)
    if upper < 2:
        raise ValueError("need at least two eigenvalues and k_max >= 2")
    gaps = np.abs(np.diff(w[:upper]))
    return int(np.argmax(gaps)) + 1


def spectral_cluster(
    g,
    k: int,
    variant: str = "unnormalized",
    init: int | np.ndarray = 0,
    max_iter: int = 200,
) -> ClusterAssignment:
    """Cluster by k-means on the rows of the k lowest Laplacian eigenvectors.

    Variants: ``unnormalized`` uses D - W; ``normalized`` the symmetric
    normalized Laplacian; ``row_normalized`` additionally scales each
    eigenvector row to unit length before k-means.
    """
    if k < 2:
        raise ValueError(f"need k >= 2 clusters, got {k}")
    if variant == "unnormalized":
        L = graphmod.laplacian(g)
    elif variant in ("normalized", "row_normalized"):
        L = graphmod.normalized_laplacian(g)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    w, V = numerics.hermitian_eig(L)
    rows = V[:, :k].real.copy()
    if variant == "row_normalized":
        norms = np.linalg.norm(rows, axis=1)
        nz = norms > 1e-12
        rows[nz] /= norms[nz, None]
    return kmeans(rows, k, init=init, max_iter=max_iter)


def default_zero_tol(H) -> float:
    """Threshold below which an eigenvalue counts as zero: 1e-8 * ||H||_1."""
    return 1e-8 * max(numerics.matrix_1norm(H), 1e-300)


def nonzero_eigenvectors(H, zero_tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues above the zero threshold and their eigenvectors."""
    if zero_tol is None:
        zero_tol = default_zero_tol(H)
    w, V = numerics.hermitian_eig(H)
    keep = np.abs(w) > zero_tol
    return w[keep], V[:, keep]


def projector_target(H, y, zero_tol: float | None = None) -> tuple[np.ndarray, float]:
    """Project y onto the span of nonzero-eigenvalue eigenvectors of H.

    Returns the normalized projection and its pre-normalization norm (the
    ground-truth success amplitude).  Raises if the projection vanishes.
    """
    y = numerics.as_vector(y)
    _, V = nonzero_eigenvectors(H, zero_tol)
    if V.shape[1] == 0:
        raise DegenerateTargetError("operator has no nonzero eigenvalues")
    proj = V @ (V.conj().T @ y)
    amplitude = float(np.linalg.norm(proj))
    if amplitude <= 1e-12:
        raise DegenerateTargetError("input lies in the null space of the operator")
    return proj / amplitude, amplitude


def trace_objective(indicators: Sequence[IndicatorVector] | np.ndarray, V) -> float:
    """Sum of <y_j| V V^dag |y_j> over the given orthonormal columns y_j."""
    if isinstance(indicators, np.ndarray):
        Y = np.asarray(indicators, dtype=complex)
    else:
        Y = np.column_stack([ind.vector() for ind in indicators]).astype(complex)
    V = np.asarray(V, dtype=complex)
    if Y.shape[0] != V.shape[0]:
        raise ValueError(f"dimension mismatch: {Y.shape[0]} vs {V.shape[0]}")
    return float(np.linalg.norm(V.conj().T @ Y, "fro") ** 2)
