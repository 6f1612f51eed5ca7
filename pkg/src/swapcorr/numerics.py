"""Small dense linear algebra used throughout the package.

Everything here is a thin, validated layer over :mod:`numpy.linalg`. All
functions accept stacks of matrices (shape ``(..., n, n)``) unless noted
and never modify their inputs.
"""

from __future__ import annotations

import string
from collections.abc import Sequence

import numpy as np

from .exceptions import DimMismatch, NonHermitian, NotPSD

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10


def hermiticity_error(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2))), initial=0.0))


def herm_eig(m, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``m @ v[:, i] == w[i] * v[:, i]`` and orthonormal
    columns in ``v``. Raises :class:`NonHermitian` if ``m`` deviates from its
    adjoint by more than ``tol`` in any entry.
    """
    m = np.asarray(m)
    if hermiticity_error(m) > tol:
        raise NonHermitian(f"matrix is not Hermitian within {tol:g}")
    h = 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))
    w, v = np.linalg.eigh(h)
    return w[..., ::-1], v[..., ::-1]


def singular_values_desc(m) -> np.ndarray:
    """Singular values in descending order (works on stacks)."""
    return np.linalg.svd(np.asarray(m), compute_uv=False)


def psd_sqrt(m, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero; anything more negative
    raises :class:`NotPSD`.
    """
    w, v = herm_eig(m)
    if np.min(w, initial=np.inf) < -tol:
        raise NotPSD(f"smallest eigenvalue {np.min(w):.3e} below -{tol:g}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*mats) -> np.ndarray:
    out = np.asarray(mats[0])
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def partial_trace(m, factor_dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every tensor factor not listed in ``keep``.

    ``factor_dims`` gives the local dimensions in tensor order (row-major
    composite indexing). Kept factors stay in their original order.
    """
    m = np.asarray(m)
    dims = [int(x) for x in factor_dims]
    if any(x < 1 for x in dims):
        raise DimMismatch("factor dimensions must be positive")
    total = int(np.prod(dims))
    if m.shape[-2:] != (total, total):
        raise DimMismatch(f"matrix of shape {m.shape[-2:]} does not match factors {dims}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimMismatch(f"keep indices {keep} out of range for {len(dims)} factors")

    n = len(dims)
    letters = string.ascii_letters
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            cols[i] = rows[i]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    batch = m.shape[:-2]
    t = m.reshape(batch + tuple(dims) + tuple(dims))
    spec = "..." + "".join(rows) + "".join(cols) + "->..." + out
    kept = int(np.prod([dims[k] for k in keep])) if keep else 1
    return np.einsum(spec, t).reshape(batch + (kept, kept))


def determinant(m):
    """Determinant via LU with partial pivoting (LAPACK ``getrf``)."""
    return np.linalg.det(np.asarray(m))


def trace_distance(a, b) -> float:
    diff = np.asarray(a) - np.asarray(b)
    diff = 0.5 * (diff + np.conj(np.swapaxes(diff, -1, -2)))
    return 0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff)), axis=-1)
