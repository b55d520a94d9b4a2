"""Extracting clustering information from amplified states.

Similarity of a candidate vector to the amplified output is measured by
mapping the candidate onto |0> with a Householder reflection and reading the
probability of |0>; the classical projector route provides the oracle value.
An approximate whole-register readout through exp(i * sum_i X_i) is also
provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import numerics
from .classical import IndicatorVector, nonzero_eigenvectors
from .encoding import EvolutionOperator, make_evolution
from .qpea import PeaConfig, amplify
from .registers import RegisterState


@dataclass(frozen=True)
class SimilarityReport:
    y_id: str
    similarity: float
    method: str  # householder | direct
    rank: int | None = None

    def __post_init__(self):
        if not -1e-10 <= self.similarity <= 1.0 + 1e-10:
            raise ValueError(f"similarity {self.similarity} outside [0, 1]")


def householder_similarity(psi, y, verbatim_reflection: bool = False) -> float:
    """P(|0>) after reflecting the candidate y onto |0>, i.e. |<y|psi>|^2.

    The reflection axis is (y - e0) normalized (identity when y = e0), which
    maps y to the zero state exactly.  ``verbatim_reflection`` applies
    I - 2|y><y| instead, for comparison; that operator does not generally move
    y onto |0>.
    """
    psi = numerics.as_vector(psi)
    y = numerics.as_vector(y)
    if psi.size != y.size:
        raise ValueError(f"dimension mismatch: {psi.size} vs {y.size}")
    for name, v in (("psi", psi), ("y", y)):
        if not numerics.is_normalized(v, 1e-8):
            raise ValueError(f"{name} must be unit norm")
    if verbatim_reflection:
        reflected = psi - 2.0 * np.vdot(y, psi) * y
        return float(min(1.0, abs(reflected[0]) ** 2))
    e0 = np.zeros(y.size, dtype=complex)
    e0[0] = 1.0
    phase = np.exp(1j * np.angle(y[0])) if abs(y[0]) > 1e-14 else 1.0
    w = y - phase * e0
    wnorm = np.linalg.norm(w)
    if wnorm < 1e-14:
        reflected = psi
    else:
        w = w / wnorm
        reflected = psi - 2.0 * np.vdot(w, psi) * w
    return float(min(1.0, abs(reflected[0]) ** 2))


def register_similarity(state: RegisterState, y) -> float:
    """Householder similarity measured on the system register of a full state.

    Equals <y| rho |y> for the reduced system density matrix rho, i.e. the
    probability of reading |0> on the system register after the mapping
    reflection, with the phase register traced out.
    """
    y = numerics.as_vector(y)
    mat = state.as_matrix()
    if mat.shape[1] != y.size:
        raise ValueError(f"system dim {mat.shape[1]} does not match candidate dim {y.size}")
    return float(min(1.0, np.sum(np.abs(mat @ y.conj()) ** 2)))


def direct_similarity(H, y, zero_tol: float | None = None) -> float:
    """Classical oracle <y| V V^dag |y> over the nonzero eigenspace of H."""
    y = numerics.as_vector(y)
    _, V = nonzero_eigenvectors(H, zero_tol)
    return float(min(1.0, np.linalg.norm(V.conj().T @ y) ** 2))


def x_sum_exponential(n: int) -> np.ndarray:
    """exp(i * sum_i X_i) = tensor power of cos(1) I + i sin(1) X."""
    if n < 1:
        raise ValueError(f"need n >= 1 qubits, got {n}")
    single = np.array(
        [[np.cos(1.0), 1j * np.sin(1.0)], [1j * np.sin(1.0), np.cos(1.0)]], dtype=complex
    )
    out = np.array([[1.0]], dtype=complex)
    for _ in range(n):
        out = np.kron(out, single)
    return out


def approx_cluster_readout(
    cfg: PeaConfig,
    evo: EvolutionOperator,
    max_iter: int = 40,
    stop_tol: float | None = 0.05,
    run_pipeline: Callable[[np.ndarray], RegisterState] | None = None,
) -> np.ndarray:
    """Approximate clustering readout through the X-sum exponential.

    Starts the system register in the uniform superposition, applies
    exp(i sum X), runs the amplified pipeline, applies the exponential again,
    and returns the resulting computational-basis distribution of the system
    register.  The argmax is the approximate cluster index.  ``run_pipeline``
    replaces the amplification stage (used for calibration tests).
    """
    n = evo.n_qubits
    mixer = x_sum_exponential(n)
    plus = np.full(2**n, 1.0 / np.sqrt(2**n), dtype=complex)
    y_in = mixer @ plus
    if run_pipeline is None:
        state, _ = amplify(cfg, evo, y_in, max_iter=max_iter, stop_tol=stop_tol)
    else:
        state = run_pipeline(y_in)
    mat = state.as_matrix() @ mixer.T
    dist = np.sum(np.abs(mat) ** 2, axis=0)
    return dist / dist.sum()


def _candidate_pairs(candidates) -> list[tuple[str, np.ndarray]]:
    pairs = []
    for i, cand in enumerate(candidates):
        if isinstance(cand, IndicatorVector):
            pairs.append((cand.name, cand.vector().astype(complex)))
        elif isinstance(cand, tuple) and len(cand) == 2:
            pairs.append((str(cand[0]), numerics.as_vector(cand[1])))
        else:
            pairs.append((f"cand{i}", numerics.as_vector(cand)))
    return pairs


def rank_indicators(
    H,
    candidates: Sequence,
    cfg: PeaConfig,
    max_iter: int = 60,
    stop_tol: float | None = 0.05,
    evo: EvolutionOperator | None = None,
) -> list[SimilarityReport]:
    """Run the amplified pipeline per candidate and sort by measured similarity.

    Candidates may be IndicatorVector instances, (name, vector) pairs, or bare
    unit vectors.  Each candidate is amplified under the stopping rule and its
    Householder similarity against the final system register is recorded;
    reports come back sorted descending with 1-based ranks.
    """
    if evo is None:
        evo = make_evolution(H, cfg.m)
    reports = []
    for name, y in _candidate_pairs(candidates):
        state, _ = amplify(cfg, evo, y, max_iter=max_iter, stop_tol=stop_tol)
        reports.append(SimilarityReport(name, register_similarity(state, y), "householder"))
    order = sorted(range(len(reports)), key=lambda i: -reports[i].similarity)
    return [
        SimilarityReport(reports[i].y_id, reports[i].similarity, reports[i].method, rank + 1)
        for rank, i in enumerate(order)
    ]
