"""Phase estimation and amplitude amplification on two-register statevectors.

The phase register can be driven either by the textbook QFT route or by a
single reflection about a biased superposition vector; the bias coefficient
trades initial success probability against the number of amplification
iterations.  Amplification applies the iterate

    Q = U_pea * R_zero * U_pea * R_mark

verbatim; since the estimation circuit is not self-inverse, a
``standard_grover`` switch replaces the inner (first-acting) application with
its adjoint, which restores the textbook two-plane rotation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .classical import projector_target
from .encoding import EvolutionOperator, _controlled_power_raw
from .registers import RegisterState


# ---------------------------------------------------------------------------
# phase-register vectors and reflections


def bias_vector(m: int, kappa: float) -> np.ndarray:
    """Biased superposition (kappa, 1, ..., 1) / sqrt(kappa^2 + 2^m - 1)."""
    if m < 1:
        raise ValueError(f"need m >= 1 phase qubits, got {m}")
    if kappa < 0:
        raise ValueError(f"bias coefficient must be nonnegative, got {kappa}")
    M = 2**m
    f = np.ones(M, dtype=complex)
    f[0] = kappa
    return f / np.sqrt(kappa**2 + M - 1)


def marking_vector(m: int) -> np.ndarray:
    """Uniform superposition over the 2^m - 1 nonzero phase states."""
    M = 2**m
    f = np.ones(M, dtype=complex)
    f[0] = 0.0
    return f / np.sqrt(M - 1)


def _with_system(mat: np.ndarray, n: int) -> np.ndarray:
    return np.kron(mat, np.eye(2**n, dtype=complex)) if n > 0 else mat


def bias_reflection(m: int, kappa: float, n: int = 0) -> np.ndarray:
    """Reflection about the bias vector, extended by identity on n system qubits."""
    return _with_system(numerics.proj_reflection(bias_vector(m, kappa)), n)


def marking_reflection(m: int, n: int = 0) -> np.ndarray:
    """Reflection about the uniform nonzero-phase vector (the marking operator)."""
    return _with_system(numerics.proj_reflection(marking_vector(m)), n)


def zero_reflection(m: int, n: int) -> np.ndarray:
    """Reflection about |0...0> on all m + n qubits."""
    dim = 2 ** (m + n)
    R = np.eye(dim, dtype=complex)
    R[0, 0] = -1.0
    return R


def qft_matrix(m: int) -> np.ndarray:
    M = 2**m
    j = np.arange(M)
    return np.exp(2j * np.pi * np.outer(j, j) / M) / np.sqrt(M)


def hadamard_wall(m: int) -> np.ndarray:
    H1 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    out = np.array([[1.0]], dtype=complex)
    for _ in range(m):
        out = np.kron(out, H1)
    return out


def prepare_unitary(y) -> np.ndarray:
    """Unitary W with W|0> = |y> exactly.

    For real y with y[0] != 1 this is the Householder reflection about
    (y - e0) normalized; a complex leading amplitude is absorbed by a phase
    gate on |0> so the mapping stays exact.
    """
    y = numerics.as_vector(y)
    if not numerics.is_normalized(y, 1e-10):
        raise ValueError("input state must be unit norm")
    N = y.size
    e0 = np.zeros(N, dtype=complex)
    e0[0] = 1.0
    phase = np.exp(1j * np.angle(y[0])) if abs(y[0]) > 1e-14 else 1.0
    w = y - phase * e0
    wnorm = np.linalg.norm(w)
    if wnorm < 1e-14:
        R = np.eye(N, dtype=complex)
    else:
        w = w / wnorm
        R = np.eye(N, dtype=complex) - 2.0 * np.outer(w, w.conj())
    if phase != 1.0:
        R = R.copy()
        R[:, 0] *= phase
    return R


# ---------------------------------------------------------------------------
# configuration and state functionals


@dataclass(frozen=True)
class PeaConfig:
    """Phase-estimation settings: register width, mode, bias, Grover variant."""

    m: int
    kappa: float = 0.0
    mode: str = "qft"  # qft | biased
    standard_grover: bool = False
    input_prep: np.ndarray | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"need m >= 1 phase qubits, got {self.m}")
        if self.kappa < 0:
            raise ValueError(f"bias coefficient must be nonnegative, got {self.kappa}")
        if self.mode not in ("qft", "biased"):
            raise ValueError(f"unknown mode {self.mode!r}")


def success_probability(state: RegisterState) -> float:
    """Probability of measuring the phase register outside |0...0>."""
    return float(1.0 - state.phase_distribution()[0])


def marked_projection_probability(state: RegisterState) -> float:
    """Squared amplitude along the uniform nonzero-phase vector."""
    f2 = marking_vector(state.m)
    return float(np.sum(np.abs(f2.conj() @ state.as_matrix()) ** 2))


def qubit_marginal(state: RegisterState, q: int) -> tuple[float, float]:
    """Computational-basis marginal (P0, P1) of one qubit, msb-first indexing."""
    nq = state.m + state.n
    if not 0 <= q < nq:
        raise ValueError(f"qubit index {q} outside register of {nq} qubits")
    probs = np.abs(state.amplitudes) ** 2
    probs = probs.reshape([2] * nq)
    p0 = float(np.sum(np.take(probs, 0, axis=q)))
    p1 = float(np.sum(np.take(probs, 1, axis=q)))
    return p0, p1


def stagnation_kappa(m: int, p0: float = 0.5) -> float:
    """Bias value sqrt(2^m) at which amplification stalls.

    At this bias the marked amplitude kappa/mu sits at the mean amplitude
    (sqrt(p0) + sqrt(1 - p0)) / 2 of the register, so the
    inversion-about-the-mean neither grows nor shrinks it.
    """
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must be a probability, got {p0}")
    return float(np.sqrt(2**m))


# ---------------------------------------------------------------------------
# the estimation pipeline


class _Pipeline:
    """Matrix-free appliers for the estimation unitary on (2^m, 2^n) arrays."""

    def __init__(self, cfg: PeaConfig, evo: EvolutionOperator, y: np.ndarray):
        self.cfg, self.evo = cfg, evo
        self.m = cfg.m
        self.n = evo.n_qubits
        if 2**self.n != evo.dim:
            raise ValueError(f"evolution dimension {evo.dim} is not a power of two")
        y = numerics.as_vector(y)
        if y.size != evo.dim:
            raise ValueError(f"input dim {y.size} does not match operator dim {evo.dim}")
        self.y = y
        self.W = prepare_unitary(y)
        if cfg.mode == "qft":
            self.first = hadamard_wall(self.m)
            self.last = qft_matrix(self.m).conj().T
        else:
            self.first = bias_reflection(self.m, cfg.kappa)
            self.last = self.first.conj().T  # the reflection is self-adjoint
        self.f2 = marking_vector(self.m)

    def _ladder(self, mat: np.ndarray, sign: int) -> np.ndarray:
        for q in range(self.m):
            mat = _controlled_power_raw(mat, self.evo, self.m - 1 - q, q, self.m, sign)
        return mat

    def forward(self, mat: np.ndarray) -> np.ndarray:
        mat = mat @ self.W.T
        mat = self.first @ mat
        mat = self._ladder(mat, +1)
        return self.last @ mat

    def adjoint(self, mat: np.ndarray) -> np.ndarray:
        mat = self.last.conj().T @ mat
        mat = self._ladder(mat, -1)
        mat = self.first.conj().T @ mat
        return mat @ self.W.conj()

    def mark(self, mat: np.ndarray) -> np.ndarray:
        r = self.f2.conj() @ mat
        return mat - 2.0 * np.outer(self.f2, r)

    def zero_flip(self, mat: np.ndarray) -> np.ndarray:
        out = mat.copy()
        out[0, 0] = -out[0, 0]
        return out

    def iterate(self, mat: np.ndarray) -> np.ndarray:
        mat = self.mark(mat)
        mat = self.adjoint(mat) if self.cfg.standard_grover else self.forward(mat)
        mat = self.zero_flip(mat)
        return self.forward(mat)

    def initial(self) -> np.ndarray:
        mat = np.zeros((2**self.m, 2**self.n), dtype=complex)
        mat[0, 0] = 1.0
        return self.forward(mat)

    def to_state(self, mat: np.ndarray) -> RegisterState:
        return RegisterState(mat.reshape(-1), self.m, self.n)


def phase_estimation(cfg: PeaConfig, evo: EvolutionOperator, y=None) -> RegisterState:
    """Run one pass of (biased) phase estimation on input |y>.

    Prepares |0>|0>, loads y on the system register, drives the phase register
    (Hadamard wall + inverse QFT in ``qft`` mode, the bias reflection and its
    adjoint in ``biased`` mode) around the controlled-power ladder, and
    returns the output register state.
    """
    if y is None:
        y = cfg.input_prep
    if y is None:
        raise ValueError("no input state given (pass y or set cfg.input_prep)")
    pipe = _Pipeline(cfg, evo, y)
    return pipe.to_state(pipe.initial())


# ---------------------------------------------------------------------------
# amplification


@dataclass
class Trajectory:
    """Per-iteration record of one amplification run.

    Iteration 0 is the state right after the first estimation pass, before
    any amplification iterate is applied.
    """

    iterations: np.ndarray
    success_prob: np.ndarray
    marked_prob: np.ndarray
    fidelity: np.ndarray
    qubit0_p0: np.ndarray
    phase_marginals: np.ndarray  # (T, m) P0 of each phase qubit
    stopped_at: int | None = None
    mode: str = ""
    kappa: float = 0.0

    def __len__(self) -> int:
        return self.iterations.size

    @property
    def peak_fidelity_iteration(self) -> int:
        return int(np.argmax(self.fidelity))

    @property
    def peak_fidelity(self) -> float:
        return float(np.max(self.fidelity))

    def first_fidelity_peak(self) -> int:
        """First running-maximum iteration that the next step falls below."""
        f = self.fidelity
        best = -np.inf
        for t in range(len(f) - 1):
            if f[t] >= best and f[t] > f[t + 1]:
                return t
            best = max(best, f[t])
        return len(f) - 1


def amplify(
    cfg: PeaConfig,
    evo: EvolutionOperator,
    y,
    max_iter: int = 40,
    stop_tol: float | None = 0.05,
    stop_qubit: int = 0,
) -> tuple[RegisterState, Trajectory]:
    """Amplify the nonzero-eigenvalue component of the estimation output.

    Applies the iterate Q up to ``max_iter`` times, recording success
    probability, marked-vector projection, fidelity against the normalized
    projection of y onto the nonzero eigenspace, and the first phase qubit's
    marginal.  When ``stop_tol`` is set, iteration stops once the designated
    phase qubit is within ``stop_tol`` of the equal-superposition marginal.
    Raises before iterating if y has no component in the nonzero eigenspace.
    """
    if max_iter < 0:
        raise ValueError(f"max_iter must be >= 0, got {max_iter}")
    target, _ = projector_target(evo.hamiltonian, y, evo.zero_tol)
    pipe = _Pipeline(cfg, evo, y)
    m = cfg.m

    rows: list[tuple] = []

    def record(mat: np.ndarray):
        state = pipe.to_state(mat)
        marginals = [qubit_marginal(state, q)[0] for q in range(m)]
        rows.append(
            (
                success_probability(state),
                marked_projection_probability(state),
                float(np.sum(np.abs(mat @ target.conj()) ** 2)),
                marginals[0],
                marginals,
            )
        )

    mat = pipe.initial()
    record(mat)
    stopped_at = None
    for t in range(1, max_iter + 1):
        mat = pipe.iterate(mat)
        record(mat)
        if stop_tol is not None:
            p0 = rows[-1][3] if stop_qubit == 0 else qubit_marginal(pipe.to_state(mat), stop_qubit)[0]
            if abs(p0 - 0.5) <= stop_tol:
                stopped_at = t
                break

    arr = lambda i: np.array([r[i] for r in rows])
    traj = Trajectory(
        iterations=np.arange(len(rows)),
        success_prob=arr(0),
        marked_prob=arr(1),
        fidelity=arr(2),
        qubit0_p0=arr(3),
        phase_marginals=np.array([r[4] for r in rows]),
        stopped_at=stopped_at,
        mode=cfg.mode,
        kappa=cfg.kappa,
    )
    return pipe.to_state(mat), traj


# ---------------------------------------------------------------------------
# dense builders (tests and inspection; small registers only)


def ladder_matrix(evo: EvolutionOperator, m: int, sign: int = 1) -> np.ndarray:
    """Dense controlled-power ladder: block p applies U^p to the system."""
    M, N = 2**m, evo.dim
    out = np.zeros((M * N, M * N), dtype=complex)
    V = evo.eigenvectors
    for p in range(M):
        block = (V * np.exp(2j * np.pi * sign * evo.eigenphases * p)) @ V.conj().T
        out[p * N:(p + 1) * N, p * N:(p + 1) * N] = block
    return out


def bpea_matrix(cfg: PeaConfig, evo: EvolutionOperator, y) -> np.ndarray:
    """Dense estimation unitary, input preparation included."""
    n = evo.n_qubits
    W = prepare_unitary(numerics.as_vector(y))
    if cfg.mode == "qft":
        first, last = hadamard_wall(cfg.m), qft_matrix(cfg.m).conj().T
    else:
        first = bias_reflection(cfg.m, cfg.kappa)
        last = first.conj().T
    eye_n = np.eye(2**n, dtype=complex)
    A = np.kron(first, eye_n) @ np.kron(np.eye(2**cfg.m, dtype=complex), W)
    A = ladder_matrix(evo, cfg.m) @ A
    return np.kron(last, eye_n) @ A


def iteration_matrix(cfg: PeaConfig, evo: EvolutionOperator, y) -> np.ndarray:
    """Dense amplification iterate Q for the given configuration."""
    A = bpea_matrix(cfg, evo, y)
    inner = A.conj().T if cfg.standard_grover else A
    n = evo.n_qubits
    Us = zero_reflection(cfg.m, n)
    Uf2 = marking_reflection(cfg.m, n)
    return A @ Us @ inner @ Uf2
