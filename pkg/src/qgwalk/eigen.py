"""Cyclic Jacobi eigensolver for small dense real symmetric matrices."""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailure

RESIDUAL_TOL = 1e-10


def _sign_fix(V: np.ndarray) -> None:
    # first component above noise level made positive, column by column
    for k in range(V.shape[1]):
        col = V[:, k]
        big = np.flatnonzero(np.abs(col) > 1e-12)
        if big.size and col[big[0]] < 0:
            V[:, k] = -col


def jacobi_eigh(H, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with ``w`` ascending and ``V[:, k]`` the unit
    eigenvector for ``w[k]``.  Output is deterministic: columns carry a
    positive first significant component.

    Raises ConvergenceFailure when the off-diagonal mass does not vanish
    within ``max_sweeps`` sweeps or when the final residual
    ``max_k ||H v_k - w_k v_k||`` exceeds ``1e-10 * max(1, ||H||_F)``.
    """
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    n = H.shape[0]
    A = 0.5 * (H + H.T)
    V = np.eye(n)
    scale = np.linalg.norm(A)
    if n == 0 or scale == 0.0:
        return np.diag(A).copy(), V

    target = np.finfo(float).eps * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0 or abs(apq) < 1e-3 * target / n:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0

                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    w, V = w[order], V[:, order]
    # re-orthonormalise against accumulated rounding (columns are already close)
    V, r = np.linalg.qr(V)
    V *= np.sign(np.diag(r))
    _sign_fix(V)

    residual = np.max(np.linalg.norm(H @ V - V * w, axis=0))
    if residual > RESIDUAL_TOL * max(1.0, scale):
        raise ConvergenceFailure(f"eigen-residual {residual:.3e} above tolerance")
    return w, V
