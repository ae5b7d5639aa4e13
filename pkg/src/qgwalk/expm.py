"""Scaled-and-squared Taylor matrix exponential.

Kept deliberately separate from the spectral propagator in
:mod:`qgwalk.dynamics` so it can serve as an independent cross-check.
"""

from __future__ import annotations

import math

import numpy as np


def expm_taylor(A, theta: float = 0.25, max_terms: int = 40) -> np.ndarray:
    """Return ``exp(A)`` for a small dense (complex) matrix.

    ``A`` is scaled by ``2**-k`` until its 1-norm is below ``theta``, the
    truncated Taylor series is summed until terms stop contributing, and the
    result is squared ``k`` times.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    norm = np.linalg.norm(A, 1)
    k = max(0, math.ceil(math.log2(norm / theta))) if norm > 0 else 0
    B = A / 2.0**k

    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for j in range(1, max_terms + 1):
        term = term @ B / j
        result += term
        if np.linalg.norm(term, 1) <= 1e-18 * np.linalg.norm(result, 1):
            break
    for _ in range(k):
        result = result @ result
    return result
