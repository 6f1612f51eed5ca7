"""Conversions between density operators / POVM effects and Bloch matrices.

A bipartite state on C^d ⊗ C^d is encoded by the real d²×d² matrix
``R[i, j] = tr[(σ_i ⊗ σ_j) ρ]`` with ``ρ = Σ R[i, j] σ_i ⊗ σ_j / d²``. For
qubits the σ's are the identity followed by the three Pauli matrices, and
``R = [[1, bᵀ], [a, T]]`` with local Bloch vectors ``a``, ``b`` and the
correlation matrix ``T``.

Effects use a different normalisation: ``N[k, l] = tr[(σ_k ⊗ σ_l) E] / d²``,
so ``E = Σ N[k, l] σ_k ⊗ σ_l``. With this choice the (0, 0) element of
``R_AB @ N_BC @ R_CD`` is exactly the probability of the outcome ``E``.

Bloch matrices are plain ``numpy`` arrays; every function accepts stacks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import (
    DimMismatch,
    InvalidEffect,
    InvalidState,
    NotAState,
    UnsupportedDimension,
)

STATE_TOL = 1e-10
NOT_A_STATE_TOL = 1e-8

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """Hermitian operator basis with ``ops[0] = 1`` and ``tr(σ_i σ_j) = d δ_ij``."""

    d: int
    ops: np.ndarray = field(repr=False)
    # pair[i, j] = σ_i ⊗ σ_j, shape (d², d², d², d²)
    pair: np.ndarray = field(repr=False, init=False)

    def __post_init__(self):
        ops = np.array(self.ops, dtype=complex)
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)
        pair = np.einsum("iab,jcd->ijacbd", ops, ops).reshape(
            (self.dim, self.dim, self.dim, self.dim)
        )
        pair.setflags(write=False)
        object.__setattr__(self, "pair", pair)

    @property
    def dim(self) -> int:
        """Number of operators, d²; also the composite dimension of the pair."""
        return self.d * self.d

    def __len__(self):
        return self.dim


@lru_cache(maxsize=None)
def gell_mann_basis(d: int) -> OperatorBasis:
    """Generalised Gell-Mann matrices scaled so that ``tr(σ_i σ_j) = d δ_ij``.

    Ordering after the identity: symmetric off-diagonal pairs ``(j, k)``,
    antisymmetric pairs ``(j, k)`` (both with ``j < k`` in lexicographic
    order), then the diagonal operators by increasing size. For ``d = 2``
    this is exactly ``[1, X, Y, Z]``.
    """
    if not isinstance(d, (int, np.integer)) or not 2 <= d <= 4:
        raise UnsupportedDimension(f"local dimension must be 2, 3 or 4, got {d!r}")
    d = int(d)
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    ops = [np.eye(d, dtype=complex)]
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = m[k, j] = 1
        ops.append(m)
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = -1j
        m[k, j] = 1j
        ops.append(m)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1
        diag[l] = -l
        ops.append(np.diag(diag * np.sqrt(2 / (l * (l + 1)))).astype(complex))
    ops = np.array(ops) * np.sqrt(d / 2)
    ops[0] = np.eye(d)
    return OperatorBasis(d, ops)


def _basis_for(n: int, basis: OperatorBasis | None, what: str) -> OperatorBasis:
    if basis is not None:
        if n != basis.dim:
            raise DimMismatch(f"{what} of size {n} does not match basis with d={basis.d}")
        return basis
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise DimMismatch(f"{what} of size {n} is not a bipartite d²×d² operator")
    return gell_mann_basis(d)


def _check_square(m: np.ndarray, what: str):
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimMismatch(f"{what} must be square, got shape {m.shape}")


def validate_state(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a density operator."""
    rho = np.asarray(rho, dtype=complex)
    _check_square(rho, "density matrix")
    if not np.all(np.isfinite(rho)):
        raise InvalidState("density matrix has non-finite entries")
    herm = np.max(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2))), initial=0.0)
    if herm > tol:
        raise InvalidState(f"density matrix is not Hermitian (deviation {herm:.2e})")
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.max(np.abs(tr - 1), initial=0.0) > tol:
        raise InvalidState("density matrix does not have unit trace")
    w = np.linalg.eigvalsh(rho)
    if np.min(w, initial=np.inf) < -tol:
        raise InvalidState(f"density matrix has negative eigenvalue {np.min(w):.2e}")
    return rho


def state_to_bloch(rho, basis: OperatorBasis | None = None, *, validate: bool = True) -> np.ndarray:
    """Bloch matrix ``R[i, j] = tr[(σ_i ⊗ σ_j) ρ]`` of a bipartite state.

    The basis defaults to :func:`gell_mann_basis` for the local dimension
    implied by the shape of ``rho``.
    """
    rho = validate_state(rho) if validate else np.asarray(rho, dtype=complex)
    _check_square(rho, "density matrix")
    b = _basis_for(rho.shape[-1], basis, "density matrix")
    return np.real(np.einsum("ijab,...ba->...ij", b.pair, rho))


def bloch_to_state(R, basis: OperatorBasis | None = None, *, validate: bool = True) -> np.ndarray:
    """Density operator ``Σ R[i, j] σ_i ⊗ σ_j / d²``.

    Raises :class:`NotAState` if ``R[0, 0] != 1`` or the result has an
    eigenvalue below ``-1e-8``.
    """
    R = np.asarray(R, dtype=float)
    _check_square(R, "Bloch matrix")
    b = _basis_for(R.shape[-1], basis, "Bloch matrix")
    rho = np.einsum("...ij,ijab->...ab", R, b.pair) / b.dim
    if validate:
        if np.max(np.abs(R[..., 0, 0] - 1), initial=0.0) > STATE_TOL:
            raise NotAState("state Bloch matrix must have R[0, 0] = 1")
        w = np.linalg.eigvalsh(rho)
        if np.min(w, initial=np.inf) < -NOT_A_STATE_TOL:
            raise NotAState(f"Bloch matrix maps to an operator with eigenvalue {np.min(w):.2e}")
    return rho


def effect_to_bloch(E, basis: OperatorBasis | None = None, *, validate: bool = True) -> np.ndarray:
    """Effect Bloch matrix ``N[k, l] = tr[(σ_k ⊗ σ_l) E] / d²``."""
    E = np.asarray(E, dtype=complex)
    _check_square(E, "effect")
    if validate:
        herm = np.max(np.abs(E - np.conj(np.swapaxes(E, -1, -2))), initial=0.0)
        if herm > STATE_TOL:
            raise InvalidEffect(f"effect is not Hermitian (deviation {herm:.2e})")
        w = np.linalg.eigvalsh(E)
        if np.min(w, initial=np.inf) < -STATE_TOL or np.max(w, initial=-np.inf) > 1 + STATE_TOL:
            raise InvalidEffect("effect eigenvalues must lie in [0, 1]")
    b = _basis_for(E.shape[-1], basis, "effect")
    return np.real(np.einsum("ijab,...ba->...ij", b.pair, E)) / b.dim


def effect_from_bloch(N, basis: OperatorBasis | None = None) -> np.ndarray:
    """Inverse of :func:`effect_to_bloch`: ``E = Σ N[k, l] σ_k ⊗ σ_l``."""
    N = np.asarray(N, dtype=float)
    _check_square(N, "effect Bloch matrix")
    b = _basis_for(N.shape[-1], basis, "effect Bloch matrix")
    return np.einsum("...ij,ijab->...ab", N, b.pair)


def _check_bell_index(n):
    if n not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be 0, 1, 2 or 3, got {n!r}")


# T-block signs of Φ_n = (1 ⊗ σ_n) Φ⁻ (1 ⊗ σ_n); Φ_0 is the singlet.
_BELL_T = (
    (-1.0, -1.0, -1.0),
    (-1.0, 1.0, 1.0),
    (1.0, -1.0, 1.0),
    (1.0, 1.0, -1.0),
)


def bell_bloch(n: int) -> np.ndarray:
    """Bloch matrix of the Bell state Φ_n (``Φ_0`` is the singlet)."""
    _check_bell_index(n)
    return np.diag((1.0,) + _BELL_T[n])


def bell_effect(n: int) -> np.ndarray:
    """Effect Bloch matrix of the projector onto Φ_n, i.e. ``bell_bloch(n) / 4``."""
    return bell_bloch(n) / 4


def bell_projector(n: int) -> np.ndarray:
    """Density matrix of Φ_n."""
    _check_bell_index(n)
    psi = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    u = np.kron(PAULI[0], PAULI[n])
    psi = u @ psi
    return np.outer(psi, psi.conj())


class StateClass(enum.IntEnum):
    """Nested two-qubit state families; a larger value is a finer class."""

    General = 0
    XForm = 1
    ABD = 2
    BellDiagonal = 3
    Bell = 4


_X_ZERO = np.ones((4, 4), dtype=bool)
_X_ZERO[0, 0] = _X_ZERO[0, 3] = _X_ZERO[3, 0] = False
for _i in (1, 2, 3):
    _X_ZERO[_i, _i] = False
_X_ZERO[1, 2] = _X_ZERO[2, 1] = False


def classify(R, tol: float = 1e-9) -> StateClass:
    """Finest class of a two-qubit Bloch matrix, with absolute tolerance ``tol``.

    X-form allows only ``a₃``, ``b₃``, the diagonal of ``T`` and the
    ``T[1, 2]``/``T[2, 1]`` block. Bell-diagonal additionally requires zero
    local vectors and a diagonal ``T``; Bell requires ``R`` orthogonal.
    """
    R = np.asarray(R, dtype=float)
    if R.shape != (4, 4):
        raise DimMismatch("classify expects a single two-qubit Bloch matrix")
    if np.max(np.abs(R[_X_ZERO])) > tol:
        return StateClass.General
    a3, b3 = R[3, 0], R[0, 3]
    if min(abs(a3 - b3), abs(a3 + b3)) > tol:
        return StateClass.XForm
    if max(abs(a3), abs(b3), abs(R[1, 2]), abs(R[2, 1])) > tol:
        return StateClass.ABD
    if np.max(np.abs(R @ R.T - np.eye(4))) > tol:
        return StateClass.BellDiagonal
    return StateClass.Bell


def is_bell_diagonal(R, tol: float = 1e-12) -> np.ndarray:
    """Mask of Bloch matrices with zero local vectors and diagonal ``T``."""
    R = np.asarray(R, dtype=float)
    off = R * (1 - np.eye(R.shape[-1]))
    return np.max(np.abs(off), axis=(-2, -1)) <= tol
