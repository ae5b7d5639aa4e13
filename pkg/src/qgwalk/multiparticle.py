"""Two non-interacting identical particles: bosons and spin-polarised fermions.

A pair state is kept in factorised form, two single-particle orbitals ``a``
and ``b`` plus a statistics tag, representing

    |psi> = (a (x) b  +/-  b (x) a) / N,     N**2 = 2 (1 +/- |<a|b>|**2).

Without interactions each orbital evolves on its own under the one-particle
Hamiltonian, so pair dynamics costs two single-particle propagations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dynamics import SpectralDecomposition, basis_state, propagate
from .errors import DimensionLimit, DimensionMismatch, PauliViolation
from .expm import expm_taylor
from .series import ProbabilitySeries, TimeGrid

ORACLE_MAX_SITES = 16


class Statistics(enum.Enum):
    BOSON = 1
    FERMION = -1

    @property
    def sign(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Statistics":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown statistics {text!r}") from None


BOSON = Statistics.BOSON
FERMION = Statistics.FERMION


@dataclass(frozen=True, eq=False)
class PairState:
    a: np.ndarray
    b: np.ndarray
    statistics: Statistics

    def __post_init__(self):
        a = np.array(self.a, dtype=complex)
        b = np.array(self.b, dtype=complex)
        if a.ndim != 1 or a.shape != b.shape:
            raise DimensionMismatch(f"orbital shapes {a.shape} and {b.shape} differ")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        norm2 = 2.0 * (np.vdot(a, a).real * np.vdot(b, b).real
                       + self.statistics.sign * abs(np.vdot(a, b)) ** 2)
        if norm2 <= 1e-24:
            raise PauliViolation("orbitals are linearly dependent; fermion pair vanishes")
        object.__setattr__(self, "norm", float(np.sqrt(norm2)))

    @property
    def n(self) -> int:
        return len(self.a)

    def amplitudes(self) -> np.ndarray:
        """Tensor-basis amplitudes ``M[i, j] = <i, j|psi>``."""
        P = np.outer(self.a, self.b)
        return (P + self.statistics.sign * P.T) / self.norm


def pair_dimension(n_sites: int, stats: Statistics) -> int:
    """Dimension of the symmetric (boson) or antisymmetric (fermion) pair space."""
    if n_sites < 1:
        raise ValueError(f"n_sites must be >= 1, got {n_sites}")
    return n_sites * (n_sites + stats.sign) // 2


def initial_pair(i: int, j: int, stats: Statistics, n: int = 10) -> PairState:
    """Particles localised on dots ``i`` and ``j`` of an ``n``-dot graph."""
    if i == j and stats is FERMION:
        raise PauliViolation(f"two fermions cannot both occupy site {i}")
    for k in (i, j):
        if not 0 <= k < n:
            raise DimensionMismatch(f"site {k} outside 0..{n - 1}")
    return PairState(basis_state(n, i), basis_state(n, j), stats)


def pair_amplitude(state: PairState, i: int, j: int) -> complex:
    a, b, sign = state.a, state.b, state.statistics.sign
    return complex((a[i] * b[j] + sign * (a[j] * b[i])) / state.norm)


def evolve_pair_many(dec: SpectralDecomposition, pair0: PairState, times):
    """Evolved orbitals at each time, as two ``(len(times), n)`` arrays."""
    if pair0.n != dec.n:
        raise DimensionMismatch(f"{pair0.n}-site pair on a {dec.n}-site graph")
    return propagate(dec, pair0.a, times), propagate(dec, pair0.b, times)


def evolve_pair(dec: SpectralDecomposition, pair0: PairState, t: float) -> PairState:
    A, B = evolve_pair_many(dec, pair0, [t])
    return PairState(A[0], B[0], pair0.statistics)


def as_subset(subset: Iterable[int], n: int) -> np.ndarray:
    idx = np.array(sorted(set(int(k) for k in subset)), dtype=int)
    if idx.size and (idx[0] < 0 or idx[-1] >= n):
        raise DimensionMismatch(f"subset {idx.tolist()} not within 0..{n - 1}")
    return idx


def _confined(A, B, sign, norm, idx, chunk=4096) -> np.ndarray:
    # sum over i, j in idx of |A_i B_j +/- A_j B_i|^2 / norm^2, per row
    out = np.empty(A.shape[0])
    As, Bs = A[:, idx], B[:, idx]
    for lo in range(0, A.shape[0], chunk):
        P = As[lo:lo + chunk, :, None] * Bs[lo:lo + chunk, None, :]
        M = P + sign * P.transpose(0, 2, 1)
        out[lo:lo + chunk] = np.sum(M.real**2 + M.imag**2, axis=(1, 2))
    return np.clip(out / norm**2, 0.0, 1.0)


def p_perp(state: PairState, subset: Iterable[int]) -> float:
    """Probability that both particles are found inside ``subset``."""
    idx = as_subset(subset, state.n)
    sign = state.statistics.sign
    return float(_confined(state.a[None], state.b[None], sign, state.norm, idx)[0])


def p_perp_series(
    dec: SpectralDecomposition, pair0: PairState, subset: Iterable[int], grid: TimeGrid
) -> ProbabilitySeries:
    idx = as_subset(subset, pair0.n)
    A, B = evolve_pair_many(dec, pair0, grid.times)
    values = _confined(A, B, pair0.statistics.sign, pair0.norm, idx)
    return ProbabilitySeries(grid, values)


def escape_probability(state: PairState, subset: Iterable[int]) -> float:
    """Probability that at least one particle is outside ``subset``.

    Summed directly over tensor-basis amplitudes with an index outside the
    subset, so it is independent of :func:`p_perp`.
    """
    idx = as_subset(subset, state.n)
    outside = np.ones(state.n, dtype=bool)
    outside[idx] = False
    mask = outside[:, None] | outside[None, :]
    return float(np.sum(np.abs(state.amplitudes()[mask]) ** 2))


def tensor_oracle_p_perp(H, pair0: PairState, subset: Iterable[int], t: float) -> float:
    """Brute-force P(both in subset) in the full n**2-dimensional pair space.

    Builds ``H (x) 1 + 1 (x) H``, propagates the explicitly (anti)symmetrised
    vector with a Taylor matrix exponential and projects onto
    ``span{|i, j> : i, j in subset}``.
    """
    H = np.asarray(H, dtype=float)
    n = H.shape[0]
    if n > ORACLE_MAX_SITES:
        raise DimensionLimit(f"tensor oracle limited to {ORACLE_MAX_SITES} sites, got {n}")
    if pair0.n != n:
        raise DimensionMismatch(f"{pair0.n}-site pair on a {n}-site graph")
    idx = as_subset(subset, n)

    eye = np.eye(n)
    H2 = np.kron(H, eye) + np.kron(eye, H)
    a, b = pair0.a, pair0.b
    psi = np.kron(a, b) + pair0.statistics.sign * np.kron(b, a)
    psi /= np.linalg.norm(psi)
    if t != 0:
        psi = expm_taylor(-1j * t * H2) @ psi
    block = psi.reshape(n, n)[np.ix_(idx, idx)]
    return float(np.sum(np.abs(block) ** 2))
