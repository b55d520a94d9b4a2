"""Dense complex linear algebra kernel.

Everything else in the package is built on (and verified against) these
routines: Hermitian eigendecomposition, the induced 1-norm, tensor and outer
products, Householder-style reflections, and state fidelity.  All functions
are pure and operate on plain numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

OP_TOL = 1e-10   # default tolerance for operator identities (unitarity etc.)
VEC_TOL = 1e-12  # default tolerance for vector norms


def as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a nonempty 1-d vector, got shape {v.shape}")
    return v


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.size == 0:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {A.shape}")
    return A


def is_normalized(v, tol: float = VEC_TOL) -> bool:
    return abs(np.linalg.norm(v) - 1.0) <= tol


def is_hermitian(A, tol: float = VEC_TOL) -> bool:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    return float(np.max(np.abs(A - A.conj().T))) <= tol * scale


def is_unitary(A, tol: float = OP_TOL) -> bool:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0])))) <= tol


def matrix_1norm(A) -> float:
    """Induced 1-norm: maximum absolute column sum."""
    A = as_matrix(A)
    return float(np.max(np.abs(A).sum(axis=0)))


def hermitian_eig(A, tol: float = OP_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues sorted
    ascending and orthonormal eigenvectors as columns.  The input must be
    Hermitian (checked); the residual ``A V - V diag(w)`` is verified against
    ``tol * max(1, ||A||_1)`` after the solve.
    """
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got {A.shape}")
    if not is_hermitian(A):
        raise ValueError("matrix is not Hermitian within tolerance")
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver did not converge: {exc}") from exc
    scale = max(1.0, matrix_1norm(A))
    residual = float(np.max(np.abs(A @ V - V * w)))
    if residual > tol * scale:
        raise ConvergenceError(
            f"eigendecomposition residual {residual:.3e} exceeds {tol:.1e} * {scale:.3e}"
        )
    return w, V


def kron(A, B) -> np.ndarray:
    """Tensor (Kronecker) product."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def outer(u, v) -> np.ndarray:
    """|u><v| outer product (second argument is conjugated)."""
    return np.outer(as_vector(u), as_vector(v).conj())


def proj_reflection(u, tol: float = VEC_TOL) -> np.ndarray:
    """Reflection I - 2|u><u| about the hyperplane orthogonal to unit u."""
    u = as_vector(u)
    if not is_normalized(u, tol):
        raise ValueError(f"reflection axis must be unit norm, got {np.linalg.norm(u):.6g}")
    return np.eye(u.size, dtype=complex) - 2.0 * np.outer(u, u.conj())


def fidelity(a, b) -> float:
    """Squared overlap |<a|b>|^2 of two normalized pure states."""
    a, b = as_vector(a), as_vector(b)
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    for name, v in (("a", a), ("b", b)):
        if not is_normalized(v, 1e-8):
            raise ValueError(f"state {name} is not normalized")
    return float(min(1.0, abs(np.vdot(a, b)) ** 2))
