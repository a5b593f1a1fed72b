"""Minimal complex linear-algebra kernel.

Three operations cover everything the memory needs: Hermitian inner
products, outer-product accumulation, and matrix-vector products.
All arrays are complex128 (pairs of 64-bit floats); dense matrices are
row-major contiguous.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch


def as_cvec(data) -> np.ndarray:
    """Coerce to a 1-D complex128 vector, rejecting non-finite entries."""
    v = np.ascontiguousarray(data, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector contains NaN or Inf")
    return v


def zeros_cmat(n: int) -> np.ndarray:
    """Row-major n x n complex accumulator."""
    if n < 1:
        raise DimensionMismatch(f"matrix dimension must be >= 1, got {n}")
    return np.zeros((n, n), dtype=np.complex128)


def inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hermitian inner product sum_j conj(a_j) * b_j (first argument conjugated)."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"inner: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def outer_accumulate(acc: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Add the self-interference a (x) conj(a) onto acc, in place.

    acc[h, j] += a_h * conj(a_j), which keeps acc Hermitian when it
    started Hermitian. Returns acc for chaining.
    """
    if acc.shape != (a.size, a.size):
        raise DimensionMismatch(f"outer_accumulate: acc {acc.shape} vs vector {a.shape}")
    acc += np.outer(a, np.conj(a))
    return acc


def matvec(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    """y_h = sum_j m[h, j] * x_j."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matvec: matrix must be square, got {m.shape}")
    if m.shape[1] != x.size:
        raise DimensionMismatch(f"matvec: {m.shape} vs vector {x.shape}")
    return m @ x
