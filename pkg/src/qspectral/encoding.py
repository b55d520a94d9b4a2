"""Data-matrix encodings for phase estimation.

Provides the outer-product (Gram) matrix of a point set, its decomposition
into a weighted sum of Householder reflections, the linearized surrogate
I - iH/k, and unitary evolution operators whose eigenphases carry the
eigenvalues of H into the phase-estimation register.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import numerics
from .classical import default_zero_tol
from .errors import PhaseResolutionError
from .registers import RegisterState


@dataclass(frozen=True)
class HouseholderSum:
    """Weighted sum of rank-one projectors written via Householder reflections.

    ``reconstruct()`` returns sum_j c_j |x_j><x_j| which must equal the source
    matrix; each reflection I - 2|x_j><x_j| is unitary by construction.
    """

    reflectors: np.ndarray  # (L, dim) unit rows
    coefficients: np.ndarray  # (L,) nonnegative weights
    dim: int

    def __post_init__(self):
        refl = np.asarray(self.reflectors, dtype=complex)
        coef = np.asarray(self.coefficients, dtype=float)
        if refl.ndim != 2 or refl.shape[1] != self.dim or refl.shape[0] != coef.size:
            raise ValueError("reflectors and coefficients have inconsistent shapes")
        norms = np.linalg.norm(refl, axis=1)
        if np.max(np.abs(norms - 1.0), initial=0.0) > 1e-10:
            raise ValueError("reflector rows must be unit vectors")
        if np.min(coef, initial=0.0) < 0.0:
            raise ValueError("coefficients must be nonnegative")
        refl, coef = refl.copy(), coef.copy()
        refl.flags.writeable = False
        coef.flags.writeable = False
        object.__setattr__(self, "reflectors", refl)
        object.__setattr__(self, "coefficients", coef)

    def __len__(self) -> int:
        return self.coefficients.size

    def reflection_matrix(self, j: int) -> np.ndarray:
        return numerics.proj_reflection(self.reflectors[j])

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for c, x in zip(self.coefficients, self.reflectors):
            out += c * np.outer(x, x.conj())
        return out


def gram_matrix(points, centered: bool = False) -> np.ndarray:
    """Sum of outer products of the data rows, optionally mean-centered.

    For an (L, N) array X of row vectors this is X^T X: symmetric, positive
    semidefinite, of order N.
    """
    X = np.asarray(points, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d data array, got shape {X.shape}")
    if centered:
        X = X - X.mean(axis=0)
    H = X.T @ X
    return (H + H.T) / 2.0


def points_gram(points, centered: bool = False) -> np.ndarray:
    """Pairwise inner-product matrix of the points (order N).

    This is the clustering-facing orientation of :func:`gram_matrix`: the
    operator acts on the point-index space where cluster indicators live, and
    its Householder terms are the feature columns (``householder_decompose``
    of the transposed, optionally centered, data matrix).
    """
    X = np.asarray(points, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d data array, got shape {X.shape}")
    if centered:
        X = X - X.mean(axis=0)
    return gram_matrix(X.T)


def householder_decompose(points, strict_unit_rows: bool = False) -> HouseholderSum:
    """Decompose the outer-product sum of the data rows into reflections.

    Every row x contributes -(1/2)[(I - 2|x^><x^|) - I] * ||x||^2, so the
    reconstruction equals the uncentered :func:`gram_matrix`.  Rows of zero
    norm carry no weight and are dropped with a warning.  With
    ``strict_unit_rows`` all rows must already be unit vectors (then every
    coefficient is exactly 1).
    """
    X = np.asarray(points, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d data array, got shape {X.shape}")
    norms = np.linalg.norm(X, axis=1)
    keep = norms > 0.0
    if not np.any(keep):
        raise ValueError("all rows are zero; nothing to decompose")
    if not np.all(keep):
        warnings.warn(f"dropping {int(np.sum(~keep))} zero rows", stacklevel=2)
        X, norms = X[keep], norms[keep]
    if strict_unit_rows and np.max(np.abs(norms - 1.0)) > 1e-10:
        raise ValueError("strict mode requires unit-norm rows")
    reflectors = X / norms[:, None]
    coefficients = norms**2
    if strict_unit_rows:
        coefficients = np.ones_like(coefficients)
    return HouseholderSum(reflectors, coefficients, X.shape[1])


def linearize(H) -> tuple[np.ndarray, float]:
    """Linear surrogate (I - iH/k, k) with k = 10 * ||H||_1.

    The choice of k bounds every |eigenvalue|/k by 0.1, so the eigenvalue
    phases of the surrogate approximate eigenvalue/k to third order.
    """
    H = numerics.as_matrix(H)
    k = 10.0 * numerics.matrix_1norm(H)
    if k == 0.0:
        raise ValueError("zero matrix cannot be linearized (k = 0)")
    Htilde = np.eye(H.shape[0], dtype=complex) - 1j * H / k
    return Htilde, k


@dataclass(frozen=True)
class EvolutionOperator:
    """Unitary whose eigenphases encode the spectrum of a Hermitian matrix.

    Backends: ``exact_exponential`` is U = exp(2*pi*i*t*H) with eigenphase
    t*lambda_j; ``linearized`` unitarizes I - iH/k so the eigenphase is
    -arctan(lambda_j/k)/(2*pi).  Eigenvalues within ``zero_tol`` of zero are
    pinned to phase exactly 0 in both backends.
    """

    unitary: np.ndarray
    backend: str
    time: float | None  # phase scaling t (exact backend)
    scale: float | None  # divisor k (linearized backend)
    hamiltonian: np.ndarray
    eigenvalues: np.ndarray  # of the Hamiltonian, ascending
    eigenvectors: np.ndarray
    eigenphases: np.ndarray  # signed; equal mod 1 to the phases of U
    zero_tol: float

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    @property
    def n_qubits(self) -> int:
        return int(round(np.log2(self.dim)))

    def nonzero_mask(self) -> np.ndarray:
        return np.abs(self.eigenvalues) > self.zero_tol


def make_evolution(
    H,
    m: int,
    backend: str = "exact_exponential",
    zero_tol: float | None = None,
    t: float | None = None,
    phase_cap: float | None = None,
) -> EvolutionOperator:
    """Build the evolution unitary fed to phase estimation.

    For the exact backend the time scaling ``t`` is chosen automatically so
    that all eigenphases lie in [0, 1) and every nonzero eigenphase is at
    least 2/2**m (two phase bins away from zero, on both ends of the
    interval); pass ``t`` explicitly to override, in which case only the
    [0, 1) window is enforced.
    """
    H = numerics.as_matrix(H)
    if m < 1:
        raise ValueError(f"need at least one phase qubit, got m={m}")
    if zero_tol is None:
        zero_tol = default_zero_tol(H)
    w, V = numerics.hermitian_eig(H)
    nz = np.abs(w) > zero_tol
    M = 2**m

    if backend == "exact_exponential":
        if t is None:
            if not np.any(nz):
                t = 1.0
            else:
                if w[0] < -zero_tol:
                    raise PhaseResolutionError(
                        f"automatic time scaling needs a PSD operator; "
                        f"smallest eigenvalue is {w[0]:.6g}"
                    )
                cap = (1.0 - 2.0 / M) if phase_cap is None else float(phase_cap)
                if cap < 2.0 / M:
                    raise PhaseResolutionError(
                        f"m={m} leaves no resolvable phase window (cap {cap:.4g} < {2.0 / M:.4g})"
                    )
                lam_max = float(w[-1])
                lam_min = float(np.min(np.abs(w[nz])))
                t = cap / lam_max
                if t * lam_min < 2.0 / M - 1e-12:
                    raise PhaseResolutionError(
                        f"eigenvalue {lam_min:.6g} maps to phase {t * lam_min:.6g} "
                        f"< 2/2^m = {2.0 / M:.6g}; not separable from the zero bin"
                    )
        phases = np.where(nz, t * w, 0.0)
        if np.any(phases < 0.0) or np.any(phases >= 1.0):
            bad = phases[(phases < 0.0) | (phases >= 1.0)][0]
            raise PhaseResolutionError(f"eigenphase {bad:.6g} outside [0, 1) at t={t:.6g}")
        scale = None
    elif backend == "linearized":
        _, k = linearize(H)
        phases = np.where(nz, -np.arctan(w / k) / (2.0 * np.pi), 0.0)
        t, scale = None, k
    else:
        raise ValueError(f"unknown backend {backend!r}")

    U = (V * np.exp(2j * np.pi * phases)) @ V.conj().T
    return EvolutionOperator(
        unitary=U,
        backend=backend,
        time=t,
        scale=scale,
        hamiltonian=H,
        eigenvalues=w,
        eigenvectors=V,
        eigenphases=phases,
        zero_tol=zero_tol,
    )


def _controlled_power_raw(mat: np.ndarray, evo: EvolutionOperator, j: int, control_qubit: int,
                          m: int, sign: int = 1) -> np.ndarray:
    """Apply U^(2^j) (or its inverse) to the rows whose control bit is set.

    ``mat`` is the (2^m, 2^n) register matrix; ``control_qubit`` indexes phase
    qubits from the most significant.  The power is taken in the eigenbasis:
    doubling the phase j times is exact repeated squaring.
    """
    if not 0 <= control_qubit < m:
        raise ValueError(f"control qubit {control_qubit} outside phase register of {m} qubits")
    if j < 0:
        raise ValueError(f"power exponent must be nonnegative, got {j}")
    phases = sign * evo.eigenphases * float(2**j)
    V = evo.eigenvectors
    mask = (np.arange(mat.shape[0]) >> (m - 1 - control_qubit)) & 1 == 1
    out = mat.copy()
    out[mask] = ((mat[mask] @ V.conj()) * np.exp(2j * np.pi * phases)) @ V.T
    return out


def controlled_power_apply(evo: EvolutionOperator, j: int, state: RegisterState,
                           control_qubit: int) -> RegisterState:
    """Apply controlled-U^(2^j) to the system register of a two-register state."""
    if 2**state.n != evo.dim:
        raise ValueError(f"system register of {state.n} qubits does not match dim {evo.dim}")
    mat = _controlled_power_raw(state.as_matrix().copy(), evo, j, control_qubit, state.m)
    return RegisterState(mat.reshape(-1), state.m, state.n)


def gate_count_estimate(L: int, N: int, m: int, simple_unitaries: bool = False) -> int:
    """Gate-count bound 2^m * L * N (or 2^m * L * ceil(log2 N) for simple terms)."""
    if L < 1 or N < 1 or m < 0:
        raise ValueError("L, N must be >= 1 and m >= 0")
    per_term = int(np.ceil(np.log2(N))) if simple_unitaries else N
    return (2**m) * L * per_term
