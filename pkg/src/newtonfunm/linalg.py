"""Dense complex matrix helpers.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
Everything here is sized for n <= ~70, so no blocking or sparse handling.
"""
import warnings

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NonFiniteResult, SingularMatrix

PIVOT_THRESHOLD = 1e-300


def as_matrix(a):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def as_vector(v):
    x = np.asarray(v, dtype=complex)
    if x.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {x.shape}")
    return x


def _check_finite(m, what):
    if not np.all(np.isfinite(m)):
        raise NonFiniteResult(f"{what} produced non-finite entries")
    return m


def _require_square(m, what="matrix"):
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got {m.shape}")


def mat_mul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return _check_finite(a @ b, "mat_mul")


def mat_inverse(a):
    """Inverse through LU with partial pivoting.

    Raises SingularMatrix when a pivot falls below ``PIVOT_THRESHOLD``.
    """
    a = as_matrix(a)
    _require_square(a)
    if not np.all(np.isfinite(a)):
        raise NonFiniteResult("mat_inverse got non-finite input")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    smallest = np.min(np.abs(np.diag(lu))) if a.size else np.inf
    if smallest < PIVOT_THRESHOLD:
        raise SingularMatrix(f"pivot of magnitude {smallest:.3g} in LU factorization")
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(a.shape[0], dtype=complex))
    return _check_finite(inv, "mat_inverse")


def operator_norm(a):
    """Largest singular value (the operator 2-norm)."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def condition_number(t):
    t = as_matrix(t)
    _require_square(t)
    return operator_norm(t) * operator_norm(mat_inverse(t))


def identity(n):
    return np.eye(n, dtype=complex)
