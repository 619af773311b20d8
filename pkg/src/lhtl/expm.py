"""Dense matrix exponential by scaling and squaring of a truncated Taylor series."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = ["matrix_exponential"]

_THETA = 0.5  # 1-norm bound of the scaled matrix
_MAX_TERMS = 60


def matrix_exponential(m, tol: float = 2.0**-53) -> np.ndarray:
    """Return ``exp(m)`` for a square matrix.

    ``m`` is scaled by ``2**-s`` until its 1-norm is at most 0.5, the Taylor
    series is summed until the next term is below ``tol`` relative to the
    partial sum, and the result is squared ``s`` times. Real input gives a
    real result.

    Args:
        m: square array.
        tol: relative truncation tolerance of the series.

    Raises:
        DomainError: for non-square or non-finite input.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError(f"matrix_exponential needs a non-empty square matrix, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    dtype = np.result_type(a.dtype, np.float64)
    a = a.astype(dtype, copy=False)

    norm = np.linalg.norm(a, 1)
    s = 0 if norm <= _THETA else int(math.ceil(math.log2(norm / _THETA)))
    a = a / (2.0**s)

    result = np.eye(a.shape[0], dtype=dtype)
    term = np.eye(a.shape[0], dtype=dtype)
    for k in range(1, _MAX_TERMS + 1):
        term = term @ a / k
        result = result + term
        if np.linalg.norm(term, 1) <= tol * np.linalg.norm(result, 1):
            break
    for _ in range(s):
        result = result @ result
    return result
