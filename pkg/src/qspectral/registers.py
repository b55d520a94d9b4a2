"""Two-register statevector container.

States live on (phase ⊗ system) qubit registers; the phase register is the
most significant block, so flat index = p * 2**n + s.  Qubit indices count
from the most significant qubit: qubit 0 is the top phase qubit, qubits
m..m+n-1 belong to the system register.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10


@dataclass(frozen=True)
class RegisterState:
    amplitudes: np.ndarray
    m: int  # phase qubits
    n: int  # system qubits

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ValueError(f"invalid register sizes m={self.m}, n={self.n}")
        if amps.size != 2 ** (self.m + self.n):
            raise ValueError(f"expected {2 ** (self.m + self.n)} amplitudes, got {amps.size}")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {np.linalg.norm(amps):.12g} is not 1")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def as_matrix(self) -> np.ndarray:
        """(2**m, 2**n) view: rows are phase-register basis states."""
        return self.amplitudes.reshape(2**self.m, 2**self.n)

    def phase_distribution(self) -> np.ndarray:
        """Probability of each phase-register basis state."""
        mat = self.as_matrix()
        return np.sum(np.abs(mat) ** 2, axis=1)

    def system_distribution(self) -> np.ndarray:
        """Probability of each system-register basis state."""
        mat = self.as_matrix()
        return np.sum(np.abs(mat) ** 2, axis=0)

    def reduced_system_density(self) -> np.ndarray:
        """Reduced density matrix of the system register."""
        mat = self.as_matrix()
        return mat.T @ mat.conj()


def zero_state(m: int, n: int) -> RegisterState:
    amps = np.zeros(2 ** (m + n), dtype=complex)
    amps[0] = 1.0
    return RegisterState(amps, m, n)
