"""Seeded synthetic inputs: point clouds, structured random operators,
and input vectors with a guaranteed component in the amplifiable subspace.
"""

from __future__ import annotations

import numpy as np

from .classical import IndicatorVector, default_zero_tol, nonzero_eigenvectors


def gaussian_blobs(sizes, centers, noise: float = 0.1, seed: int = 0):
    """Isotropic Gaussian blobs; returns (points, labels)."""
    centers = np.asarray(centers, dtype=float)
    if len(sizes) != centers.shape[0]:
        raise ValueError("one center per blob size required")
    rng = np.random.default_rng(seed)
    points, labels = [], []
    for c, (size, center) in enumerate(zip(sizes, centers)):
        points.append(center + noise * rng.normal(size=(size, centers.shape[1])))
        labels.extend([c] * size)
    return np.vstack(points), np.asarray(labels, dtype=int)


def two_moons(n: int, noise: float = 0.05, seed: int = 0):
    """Two interleaved half-circles; returns (points, labels)."""
    rng = np.random.default_rng(seed)
    n1 = n // 2
    n2 = n - n1
    t1 = np.pi * rng.random(n1)
    t2 = np.pi * rng.random(n2)
    upper = np.column_stack([np.cos(t1), np.sin(t1)])
    lower = np.column_stack([1.0 - np.cos(t2), 0.5 - np.sin(t2)])
    pts = np.vstack([upper, lower]) + noise * rng.normal(size=(n, 2))
    labels = np.array([0] * n1 + [1] * n2, dtype=int)
    return pts, labels


def random_psd_matrix(dim: int = 16, rank: int = 6, seed: int = 0,
                      eig_range: tuple[float, float] = (0.3, 1.0)) -> np.ndarray:
    """Random PSD matrix with exactly ``rank`` nonzero eigenvalues.

    The eigenbasis is Haar-random (QR of a Gaussian matrix with sign fix);
    nonzero eigenvalues are drawn uniformly from ``eig_range``, which keeps
    the spectrum resolvable by a moderate phase register.
    """
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must satisfy 1 <= rank <= dim={dim}, got {rank}")
    lo, hi = eig_range
    if not 0.0 < lo <= hi:
        raise ValueError(f"eigenvalue range must be positive, got {eig_range}")
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(A)
    Q = Q * np.sign(np.diag(R))
    lam = np.zeros(dim)
    lam[:rank] = rng.uniform(lo, hi, size=rank)
    H = (Q * lam) @ Q.T
    return (H + H.T) / 2.0


def random_range_input(H, seed: int = 0, overlap_sq: tuple[float, float] = (0.25, 0.9),
                       zero_tol: float | None = None, max_tries: int = 10_000) -> np.ndarray:
    """Random real unit vector whose squared projection onto the nonzero
    eigenspace of H falls inside ``overlap_sq`` (rejection sampling)."""
    if zero_tol is None:
        zero_tol = default_zero_tol(H)
    _, V = nonzero_eigenvectors(H, zero_tol)
    if V.shape[1] == 0:
        raise ValueError("operator has no nonzero eigenvalues")
    rng = np.random.default_rng(seed)
    lo, hi = overlap_sq
    for _ in range(max_tries):
        y = rng.normal(size=H.shape[0])
        y /= np.linalg.norm(y)
        p = float(np.linalg.norm(V.conj().T @ y) ** 2)
        if lo <= p <= hi:
            return y
    raise RuntimeError(f"no input with overlap in {overlap_sq} found in {max_tries} tries")


def scrambled_indicators(indicators, seed: int = 0) -> list[IndicatorVector]:
    """Same-size indicators over a random permutation of all member points."""
    rng = np.random.default_rng(seed)
    dim = indicators[0].dim
    pool = [i for ind in indicators for i in ind.members]
    perm = rng.permutation(pool)
    out, start = [], 0
    for ind in indicators:
        size = len(ind.members)
        out.append(IndicatorVector(tuple(int(i) for i in perm[start:start + size]), dim))
        start += size
    return out
