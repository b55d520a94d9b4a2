"""Seeded experiment presets shared by the command line, the scripts, and the
acceptance suite: the rank-deficient figure instance and trajectory sweeps
over estimation modes and bias values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datasets import random_psd_matrix, random_range_input
from .encoding import EvolutionOperator, make_evolution
from .qpea import PeaConfig, Trajectory, amplify

# (mode, kappa) runs matching the published trajectory sweep
DEFAULT_RUNS: tuple[tuple[str, float], ...] = (("qft", 0.0), ("biased", 1.0), ("biased", 20.0))


@dataclass(frozen=True)
class TraceResult:
    mode: str
    kappa: float
    trajectory: Trajectory

    @property
    def label(self) -> str:
        kap = int(self.kappa) if float(self.kappa).is_integer() else self.kappa
        return f"{self.mode}_{kap}"


def figure_instance(seed: int, dim: int = 16, rank: int = 6,
                    eig_range: tuple[float, float] = (0.3, 1.0),
                    overlap_sq: tuple[float, float] = (0.25, 0.9)):
    """Seeded (H, y) pair for the trajectory experiments.

    H is a random PSD matrix of the given rank; y is a random real unit input
    with squared overlap onto the nonzero eigenspace inside ``overlap_sq``.
    """
    H = random_psd_matrix(dim, rank, seed, eig_range)
    y = random_range_input(H, seed + 10_007, overlap_sq)
    return H, y


def trace_suite(
    H,
    y,
    m: int = 6,
    runs=DEFAULT_RUNS,
    max_iter: int = 40,
    standard_grover: bool = True,
    stop_tol: float | None = None,
    evo: EvolutionOperator | None = None,
) -> list[TraceResult]:
    """Amplification trajectories for each (mode, kappa) run on one instance."""
    if evo is None:
        evo = make_evolution(H, m)
    out = []
    for mode, kappa in runs:
        cfg = PeaConfig(m=m, kappa=float(kappa), mode=mode, standard_grover=standard_grover)
        _, traj = amplify(cfg, evo, y, max_iter=max_iter, stop_tol=stop_tol)
        out.append(TraceResult(mode, float(kappa), traj))
    return out


def summary_rows(results: list[TraceResult]) -> list[tuple]:
    """Per-run summary: initial success, first/peak fidelity iterations."""
    rows = []
    for res in results:
        traj = res.trajectory
        rows.append(
            (
                res.mode,
                float(res.kappa),
                float(traj.success_prob[0]),
                int(traj.first_fidelity_peak()),
                int(traj.peak_fidelity_iteration),
                float(traj.peak_fidelity),
                -1 if traj.stopped_at is None else int(traj.stopped_at),
            )
        )
    return rows


SUMMARY_HEADER = [
    "mode",
    "kappa",
    "initial_success_prob",
    "first_peak_iteration",
    "peak_fidelity_iteration",
    "peak_fidelity",
    "stopped_at",
]
