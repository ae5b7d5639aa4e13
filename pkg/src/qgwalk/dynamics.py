"""Single-particle evolution by spectral decomposition of the Hamiltonian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import jacobi_eigh
from .errors import DimensionMismatch
from .series import ProbabilitySeries, TimeGrid


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def phases(self, times) -> np.ndarray:
        """``exp(-i w_k t)`` with shape ``(len(times), n)``."""
        return np.exp(-1j * np.outer(np.atleast_1d(times), self.eigenvalues))


def decompose(H) -> SpectralDecomposition:
    w, V = jacobi_eigh(H)
    w.flags.writeable = False
    V.flags.writeable = False
    return SpectralDecomposition(w, V)


def _check_dim(dec: SpectralDecomposition, psi: np.ndarray):
    if psi.shape != (dec.n,):
        raise DimensionMismatch(f"state of shape {psi.shape} for a {dec.n}-site graph")


def _check_site(dec: SpectralDecomposition, i: int):
    if not 0 <= i < dec.n:
        raise DimensionMismatch(f"site {i} outside 0..{dec.n - 1}")


def basis_state(n: int, i: int) -> np.ndarray:
    psi = np.zeros(n, dtype=complex)
    psi[i] = 1.0
    return psi


def propagate(dec: SpectralDecomposition, psi0, times) -> np.ndarray:
    """States at each of ``times``, stacked as rows of a ``(len(times), n)`` array."""
    psi0 = np.asarray(psi0, dtype=complex)
    _check_dim(dec, psi0)
    V = dec.eigenvectors
    coeff = V.T @ psi0
    return (dec.phases(times) * coeff) @ V.T


def evolve(dec: SpectralDecomposition, psi0, t: float) -> np.ndarray:
    """``exp(-iHt) psi0``."""
    return propagate(dec, psi0, [t])[0]


def _amplitudes(dec, src, dst, times):
    _check_site(dec, src)
    _check_site(dec, dst)
    V = dec.eigenvectors
    return dec.phases(times) @ (V[dst] * V[src])


def transition_probability(dec: SpectralDecomposition, src: int, dst: int, t: float) -> float:
    """``|<dst| exp(-iHt) |src>|**2``."""
    amp = _amplitudes(dec, src, dst, [t])[0]
    return min(float(abs(amp) ** 2), 1.0)


def probability_series(
    dec: SpectralDecomposition, src: int, dst: int, grid: TimeGrid
) -> ProbabilitySeries:
    amp = _amplitudes(dec, src, dst, grid.times)
    return ProbabilitySeries(grid, np.minimum(np.abs(amp) ** 2, 1.0))


def energy(H, psi) -> float:
    return float(np.real(np.vdot(psi, np.asarray(H) @ psi)))
