"""Two-qubit correlation measures computed from Bloch matrices.

All measures are clipped to ``[0, 1]`` from below at zero. Scalar functions
accept a single Bloch matrix or a stack ``(..., 4, 4)`` and return a float or
an array accordingly.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .bloch import PAULI, bloch_to_state, state_to_bloch, validate_state
from .exceptions import DimMismatch

MEASURES = ("B", "BF3", "D", "C", "Omega")

_YY = np.kron(PAULI[2], PAULI[2])


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _qubit_bloch(R) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if R.shape[-2:] != (4, 4):
        raise DimMismatch(f"expected a two-qubit 4×4 Bloch matrix, got {R.shape[-2:]}")
    return R


def t_spectrum(R) -> tuple[np.ndarray, np.ndarray]:
    """Singular values of ``T`` (descending) and the chirality ``det T``."""
    T = _qubit_bloch(R)[..., 1:, 1:]
    return np.linalg.svd(T, compute_uv=False), np.linalg.det(T)


def chsh_B(R):
    """CHSH violation strength ``max(0, s1² + s2² - 1)``."""
    s, _ = t_spectrum(R)
    return _scalar(np.maximum(0.0, s[..., 0] ** 2 + s[..., 1] ** 2 - 1))


def steer_BF3(R):
    """Three-setting steering strength ``max(0, (s1² + s2² + s3² - 1) / 2)``."""
    s, _ = t_spectrum(R)
    return _scalar(np.maximum(0.0, (np.sum(s**2, axis=-1) - 1) / 2))


def uft_D(R):
    """Teleportation usefulness ``max(0, (s1 + s2 - χ s3 - 1) / 2)`` with signed ``χ = det T``."""
    s, chi = t_spectrum(R)
    return _scalar(np.maximum(0.0, (s[..., 0] + s[..., 1] - chi * s[..., 2] - 1) / 2))


def _concurrence(rho):
    # spectrum of ρ ρ̃ equals that of the Hermitian √ρ ρ̃ √ρ
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    vh = np.conj(np.swapaxes(v, -1, -2))
    sq = (v * np.sqrt(w)[..., None, :]) @ vh
    m = sq @ _YY @ np.conj(rho) @ _YY @ sq
    m = 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(m), 0.0, None))[..., ::-1]
    return np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])


def concurrence(rho, *, validate: bool = True):
    """Wootters concurrence of a two-qubit density matrix."""
    rho = validate_state(rho) if validate else np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise DimMismatch("concurrence is defined for two-qubit (4×4) states")
    return _scalar(_concurrence(rho))


def obesity(R):
    """``|det R|^(1/d²)`` for a Bloch matrix of any local dimension."""
    R = np.asarray(R, dtype=float)
    return _scalar(np.abs(np.linalg.det(R)) ** (1.0 / R.shape[-1]))


def effect_zeta(N):
    """``|det N|^(1/d²)`` of an effect Bloch matrix.

    With the effect normalisation used here a Bell projector gives 1/4.
    """
    return obesity(N)


def measures(R, *, rho=None) -> np.ndarray:
    """All five measures stacked along a trailing axis in the order of ``MEASURES``."""
    R = _qubit_bloch(R)
    if rho is None:
        rho = bloch_to_state(R, validate=False)
    s, chi = t_spectrum(R)
    ssq = s**2
    out = np.stack(
        [
            np.maximum(0.0, ssq[..., 0] + ssq[..., 1] - 1),
            np.maximum(0.0, (np.sum(ssq, axis=-1) - 1) / 2),
            np.maximum(0.0, (s[..., 0] + s[..., 1] - chi * s[..., 2] - 1) / 2),
            _concurrence(rho),
            np.abs(np.linalg.det(R)) ** 0.25,
        ],
        axis=-1,
    )
    return out


@dataclass(frozen=True)
class CorrelationReport:
    B: float
    BF3: float
    D: float
    C: float
    Omega: float
    s: tuple[float, float, float]
    chi: float

    def values(self) -> np.ndarray:
        return np.array([self.B, self.BF3, self.D, self.C, self.Omega])

    def to_dict(self) -> dict:
        d = asdict(self)
        d["s"] = list(self.s)
        return d


def report(R=None, *, rho=None) -> CorrelationReport:
    """Correlation report from a Bloch matrix or a density matrix (exactly one)."""
    if (R is None) == (rho is None):
        raise TypeError("pass exactly one of R or rho")
    if rho is not None:
        rho = validate_state(rho)
        R = state_to_bloch(rho, validate=False)
    else:
        R = _qubit_bloch(R)
        rho = bloch_to_state(R)
    if R.shape != (4, 4):
        raise DimMismatch("report expects a single two-qubit state")
    m = measures(R, rho=rho)
    s, chi = t_spectrum(R)
    return CorrelationReport(*(float(x) for x in m), s=tuple(float(x) for x in s), chi=float(chi))
