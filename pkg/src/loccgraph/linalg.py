"""Dense complex linear algebra primitives with explicit tolerance handling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotInRange, ZeroVector


@dataclass(frozen=True)
class Tolerance:
    """Numeric thresholds used throughout: zeros, PSD slack, rank cutoff."""

    zero_tol: float = 1e-9
    psd_tol: float = 1e-8
    rank_tol: float = 1e-7

    def __post_init__(self):
        if min(self.zero_tol, self.psd_tol, self.rank_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.zero_tol > self.rank_tol:
            raise ValueError("zero_tol must not exceed rank_tol")


DEFAULT_TOL = Tolerance()


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-d complex vector."""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected 1-d vector, got shape {arr.shape}")
    return arr


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected 2-d matrix, got shape {arr.shape}")
    return arr


def unit(v, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Normalize a vector; rejects the zero vector."""
    arr = as_vector(v)
    nrm = float(np.linalg.norm(arr))
    if nrm <= tol.zero_tol:
        raise ZeroVector("cannot normalize a numerically zero vector")
    return arr / nrm


def hermitize(m) -> np.ndarray:
    arr = as_matrix(m)
    return (arr + arr.conj().T) / 2.0


def frame(vectors: Sequence) -> np.ndarray:
    """Stack vectors as the columns of a d x n map from index space."""
    cols = [as_vector(v) for v in vectors]
    if not cols:
        raise DimensionMismatch("frame needs at least one column")
    d = cols[0].shape[0]
    if any(c.shape[0] != d for c in cols):
        raise DimensionMismatch("frame columns must share a dimension")
    return np.stack(cols, axis=1)


def gram(vectors: Sequence) -> np.ndarray:
    """Gram matrix with the inner product conjugate-linear in the first slot."""
    x = frame(vectors)
    return hermitize(x.conj().T @ x)


def support(m, tol: Tolerance = DEFAULT_TOL) -> frozenset[int]:
    """1-based indices whose diagonal entry is nonzero beyond zero_tol."""
    arr = as_matrix(m)
    diag = np.abs(np.diagonal(arr))
    return frozenset(int(i) + 1 for i in np.nonzero(diag > tol.zero_tol)[0])


def psd_check(m, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Return (is PSD within psd_tol, smallest eigenvalue)."""
    arr = hermitize(m)
    if arr.shape[0] == 0:
        return True, 0.0
    smallest = float(np.linalg.eigvalsh(arr)[0])
    return smallest >= -tol.psd_tol, smallest


def numeric_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Count singular values above rank_tol relative to the largest."""
    arr = np.asarray(m, dtype=complex)
    if arr.size == 0:
        return 0
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv.size == 0 or sv[0] <= 0:
        return 0
    return int(np.count_nonzero(sv > tol.rank_tol * sv[0]))


def eigh_desc(m) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition ordered by descending eigenvalue."""
    w, v = np.linalg.eigh(hermitize(m))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def least_squares_preimage(
    x: np.ndarray, v, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, float]:
    """Solve X* phi = v / mu for a unit phi and scale mu > 0.

    The least-squares solution phi0 of X* phi = v is accepted when its
    residual is at most rank_tol * ||v||; then phi = phi0 / ||phi0|| and
    mu = ||phi0||, so X* phi = v / mu holds to the same accuracy.
    """
    xm = as_matrix(x)
    rhs = as_vector(v)
    if rhs.shape[0] != xm.shape[1]:
        raise DimensionMismatch("right-hand side length must match frame columns")
    vnorm = float(np.linalg.norm(rhs))
    if vnorm <= tol.zero_tol:
        raise ZeroVector("preimage of the zero vector is undefined")
    phi0, *_ = np.linalg.lstsq(xm.conj().T, rhs, rcond=None)
    residual = float(np.linalg.norm(xm.conj().T @ phi0 - rhs))
    if residual > tol.rank_tol * vnorm:
        raise NotInRange(
            f"residual {residual:.3e} exceeds {tol.rank_tol:.1e} * ||v|| = "
            f"{tol.rank_tol * vnorm:.3e}"
        )
    mu = float(np.linalg.norm(phi0))
    if mu <= tol.zero_tol:
        raise NotInRange("least-squares solution collapsed to zero")
    return phi0 / mu, mu


def orthonormal_columns(cols: Iterable[np.ndarray], dim: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Gram-Schmidt a sequence of vectors in C^dim, dropping dependent ones."""
    kept: list[np.ndarray] = []
    for c in cols:
        vec = as_vector(c).astype(complex)
        if vec.shape[0] != dim:
            raise DimensionMismatch("column dimension mismatch")
        for k in kept:
            vec = vec - k * (k.conj() @ vec)
        nrm = float(np.linalg.norm(vec))
        if nrm > 10 * tol.rank_tol:
            kept.append(vec / nrm)
    if kept:
        return np.stack(kept, axis=1)
    return np.zeros((dim, 0), dtype=complex)


def complete_basis(partial: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Extend orthonormal columns to a full orthonormal basis of C^d."""
    d = partial.shape[0]
    cols = list(partial.T)
    candidates = cols + [np.eye(d, dtype=complex)[:, i] for i in range(d)]
    full = orthonormal_columns(candidates, d, tol)
    if full.shape[1] != d:
        raise DimensionMismatch("could not complete to a full basis")
    return full
