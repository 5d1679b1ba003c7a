"""Dense complex linear-algebra substrate.

Kronecker products, a certified matrix exponential, and Hermite polynomials.
Everything operates on plain ``complex128`` numpy arrays, is pure, and never
mutates its inputs, so values can be shared freely across threads.
"""

from __future__ import annotations

import numpy as np

#: Default truncation tolerance for the matrix exponential (max-entry norm of
#: the dropped Taylor tail, after undoing the scaling step).
DEFAULT_EXP_TOL = 1e-12

_MAX_TAYLOR_TERMS = 200


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two dense matrices.

    Entry ``(i*b_rows + k, j*b_cols + l)`` of the result is ``a[i, j] * b[k, l]``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects 2-D matrices")
    return np.kron(a, b)


def mat_exp(m: np.ndarray, tol: float = DEFAULT_EXP_TOL) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring of a truncated Taylor series.

    The argument is scaled by ``2**-s`` until its infinity norm is at most 1/2,
    the series is summed until the next term's max-entry norm drops below
    ``tol * 2**-s``, and the partial sum is squared ``s`` times.  For the small,
    well-conditioned matrices used in this package (dimension up to a few
    hundred) this keeps the truncation error below ``tol`` in max-entry norm
    without the machinery of a Pade approximant.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"mat_exp expects a square matrix, got shape {a.shape}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not np.all(np.isfinite(a)):
        raise ValueError("mat_exp requires finite entries")

    norm = np.linalg.norm(a, np.inf) if a.size else 0.0
    s = int(np.ceil(np.log2(norm / 0.5))) if norm > 0.5 else 0
    a = a / (2.0**s)
    threshold = tol * 2.0**(-s)

    dim = a.shape[0]
    result = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, _MAX_TAYLOR_TERMS):
        term = term @ a / k
        if np.max(np.abs(term)) < threshold:
            break
        result = result + term
    else:
        raise ArithmeticError("mat_exp Taylor series did not converge")

    for _ in range(s):
        result = result @ result
    return result


def hermite(n: int, z: complex) -> complex:
    """Physicists' Hermite polynomial ``H_n`` at a real or complex point.

    Evaluated with the three-term recurrence
    ``H_0 = 1``, ``H_1 = 2z``, ``H_{k+1} = 2z H_k - 2k H_{k-1}``,
    which avoids the explicit factorial coefficients (those overflow double
    precision near order 171).
    """
    if n < 0 or n != int(n):
        raise ValueError("order must be a non-negative integer")
    n = int(n)
    h_prev = 1.0 + 0.0j
    if n == 0:
        return h_prev
    z = complex(z)
    h = 2.0 * z
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h
