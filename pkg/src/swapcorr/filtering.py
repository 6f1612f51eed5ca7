"""Local filtering to the Bell-diagonal normal form and the X-state Γ factors.

The normal form of a two-qubit Bloch matrix ``R`` is
``diag(1, √(ν1/ν0), √(ν2/ν0), -√(ν3/ν0))`` where ``ν0 ≥ … ≥ ν3`` are the
eigenvalues of ``η R η Rᵀ`` with ``η = diag(1, -1, -1, -1)``.

For X-form sources and Bell-projector swaps the obesity after either
pipeline is a closed-form factor times ``Ω²``:

* filter then swap: ``Ω_FS = Γ_FS Ω²``;
* swap then filter: ``Ω_SF = Γ_SF^(k) Ω²`` with ``k = 1`` for the Bell
  outcomes Φ_1, Φ_2 and ``k = 2`` for Φ_0, Φ_3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import ETA, is_bell_diagonal, state_to_bloch
from .exceptions import (
    DegenerateDenominator,
    DegenerateFilter,
    DimMismatch,
    InvalidState,
    NonPhysicalNormalForm,
    NotABD,
)

NU0_MIN = 1e-12
NU_NEG_TOL = 1e-8
NU_IMAG_TOL = 1e-8
BD_TOL = 1e-12
DENOM_MIN = 1e-12
ABD_TOL = 1e-10


def lorentz_spectrum(R) -> tuple[np.ndarray, np.ndarray]:
    """Sorted eigenvalues ``ν`` of ``η R η Rᵀ`` and their largest imaginary residue.

    The smallest eigenvalue is recomputed from ``det(R)² / (ν0 ν1 ν2)``;
    taken directly from the eigensolver it loses relative accuracy whenever
    the spectrum is spread out, which is the common case for noisy states.
    """
    R = np.asarray(R, dtype=float)
    M = ETA @ R @ ETA @ np.swapaxes(R, -1, -2)
    ev = np.linalg.eigvals(M)
    imag = np.max(np.abs(ev.imag), axis=-1)
    nu = -np.sort(-ev.real, axis=-1)
    head = nu[..., 0] * nu[..., 1] * nu[..., 2]
    ok = head > 1e-200
    refined = np.linalg.det(R) ** 2 / np.where(ok, head, 1.0)
    nu[..., 3] = np.where(ok, np.minimum(refined, nu[..., 2]), nu[..., 3])
    return nu, imag


def _normal_form_from_nu(nu) -> np.ndarray:
    ratio = np.sqrt(np.clip(nu[..., 1:] / nu[..., :1], 0.0, None))
    out = np.zeros(nu.shape[:-1] + (4, 4))
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = ratio[..., 0]
    out[..., 2, 2] = ratio[..., 1]
    out[..., 3, 3] = -ratio[..., 2]
    return out


def klm_normal_form(R) -> np.ndarray:
    """Bell-diagonal normal form of a two-qubit Bloch matrix.

    Bell-diagonal inputs (zero local vectors, diagonal ``T``) are returned
    unchanged: the optimal filter for them is the identity. Every other
    input is mapped to the sorted diagonal form described in the module
    docstring.
    """
    R = np.asarray(R, dtype=float)
    if R.shape != (4, 4):
        raise DimMismatch("klm_normal_form expects a single two-qubit Bloch matrix")
    if is_bell_diagonal(R, BD_TOL):
        return R.copy()
    nu, imag = lorentz_spectrum(R)
    if imag > NU_IMAG_TOL:
        raise NonPhysicalNormalForm(f"Lorentz spectrum has imaginary part {imag:.2e}")
    if nu[0] <= NU0_MIN:
        raise DegenerateFilter(f"largest Lorentz eigenvalue {nu[0]:.2e} is zero; state cannot be filtered")
    if nu[-1] < -NU_NEG_TOL:
        raise DegenerateFilter(f"negative Lorentz eigenvalue {nu[-1]:.2e}")
    return _normal_form_from_nu(nu)


def klm_normal_form_batch(R) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`klm_normal_form` for a stack ``(n, 4, 4)``.

    Returns ``(forms, ok)``; rows with ``ok == False`` would have raised and
    contain NaN.
    """
    R = np.asarray(R, dtype=float)
    nu, imag = lorentz_spectrum(R)
    ok = (imag <= NU_IMAG_TOL) & (nu[..., 0] > NU0_MIN) & (nu[..., -1] >= -NU_NEG_TOL)
    safe = np.where(ok[..., None], nu, 1.0)
    out = _normal_form_from_nu(safe)
    bd = is_bell_diagonal(R, BD_TOL)
    out = np.where(bd[..., None, None], R, out)
    ok = ok | bd
    out[~ok] = np.nan
    return out, ok


@dataclass(frozen=True)
class XStateParams:
    """Two-qubit X state: the diagonal plus the two anti-diagonal coherences."""

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex = 0.0
    rho23: complex = 0.0

    def __post_init__(self, tol: float = 1e-10):
        d = self.diag
        if np.any(d < -tol) or abs(d.sum() - 1) > tol:
            raise InvalidState("X-state populations must be nonnegative and sum to 1")
        if abs(self.rho14) ** 2 > self.rho11 * self.rho44 + tol:
            raise InvalidState("|rho14|² exceeds rho11·rho44")
        if abs(self.rho23) ** 2 > self.rho22 * self.rho33 + tol:
            raise InvalidState("|rho23|² exceeds rho22·rho33")

    @property
    def diag(self) -> np.ndarray:
        return np.array([self.rho11, self.rho22, self.rho33, self.rho44], dtype=float)

    def to_density(self) -> np.ndarray:
        rho = np.diag(self.diag).astype(complex)
        rho[0, 3] = self.rho14
        rho[3, 0] = np.conj(self.rho14)
        rho[1, 2] = self.rho23
        rho[2, 1] = np.conj(self.rho23)
        return rho

    def to_bloch(self) -> np.ndarray:
        return state_to_bloch(self.to_density(), validate=False)

    @classmethod
    def from_density(cls, rho, tol: float = 1e-10) -> "XStateParams":
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (4, 4):
            raise DimMismatch("X states are 4×4")
        mask = np.ones((4, 4), dtype=bool)
        mask[range(4), range(4)] = False
        mask[0, 3] = mask[3, 0] = mask[1, 2] = mask[2, 1] = False
        if np.max(np.abs(rho[mask])) > tol:
            raise InvalidState("matrix is not of X form")
        d = np.real(np.diag(rho))
        return cls(*(float(x) for x in d), complex(rho[0, 3]), complex(rho[1, 2]))


@dataclass(frozen=True)
class GammaCoefficients:
    gamma_fs: float
    gamma_sf: tuple[float, float]
    ratios: tuple[float, float]


def _diag(x) -> np.ndarray:
    if isinstance(x, XStateParams):
        return x.diag
    d = np.asarray(x, dtype=float)
    if d.shape[-1] != 4:
        raise DimMismatch("expected the four X-state populations")
    return d


def gamma_fs_diag(d) -> np.ndarray:
    """Vectorised ``Γ_FS``; NaN where the denominator vanishes."""
    d = _diag(d)
    r11, r22, r33, r44 = np.moveaxis(d, -1, 0)
    s = np.sqrt(r11 * r44) + np.sqrt(r22 * r33)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(s > DENOM_MIN, 1.0 / (4 * s**2), np.nan)


def _gamma_sf2_parts(r11, r22, r33, r44):
    num = r22**2 + r22 * r44 + r33 * (r33 + r44) + r11 * (r22 + r33 + 2 * r44)
    den = (
        2
        * (1 + (r22 - r33) ** 2 - (r11 - r44) ** 2)
        * (
            np.sqrt(r11 * r44) * (r22 + r33)
            + np.sqrt((r22**2 + r11 * r44) * (r33**2 + r11 * r44))
        )
    )
    return num, den


def gamma_sf_diag(d, k: int) -> np.ndarray:
    """Vectorised ``Γ_SF^(k)``; NaN where the denominator vanishes.

    ``k = 1`` is the ``k = 2`` expression with the populations
    ``(ρ11, ρ44)`` and ``(ρ22, ρ33)`` exchanged. Written this way it is free
    of the cancellation (and the 0/0 at Bell-diagonal inputs) that the
    unrationalised form suffers from.
    """
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k!r}")
    d = _diag(d)
    r11, r22, r33, r44 = np.moveaxis(d, -1, 0)
    if k == 1:
        num, den = _gamma_sf2_parts(r22, r11, r44, r33)
    else:
        num, den = _gamma_sf2_parts(r11, r22, r33, r44)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(np.abs(den) > DENOM_MIN, num / den, np.nan)


def _as_float(value, what):
    v = float(value)
    if not np.isfinite(v):
        raise DegenerateDenominator(f"{what} has a vanishing denominator for these populations")
    return v


def gamma_fs(x) -> float:
    """``Γ_FS = 1 / (4 (√(ρ11 ρ44) + √(ρ22 ρ33))²)``."""
    return _as_float(gamma_fs_diag(x), "Γ_FS")


def gamma_sf(x, k: int) -> float:
    """Swap-then-filter factor ``Γ_SF^(k)`` for X-state populations."""
    return _as_float(gamma_sf_diag(x, k), f"Γ_SF^({k})")


def bell_outcome_class(n: int) -> int:
    """Which ``Γ_SF^(k)`` governs the Bell outcome Φ_n."""
    if n not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be 0..3, got {n!r}")
    return 1 if n in (1, 2) else 2


def _reduced_pair(p, q):
    # populations p, q of the unequal pair; the other pair is equal
    u = p + q
    matched = 1.0 / ((np.sqrt(p) - np.sqrt(q)) ** 2 - 1) ** 2
    other = 1.0 / (
        2 * (u - u**2)
        + np.sqrt((u**2 + (p - 1) ** 2 + 3 * p**2 - 2 * q) * (u**2 + (q - 1) ** 2 + 3 * q**2 - 2 * p))
    )
    return matched, other


def abd_gamma_ratios(x, case: int) -> GammaCoefficients:
    """Γ factors and ratios ``γ_k = Γ_FS / Γ_SF^(k)`` for almost-Bell-diagonal X states.

    Case 1 needs ``ρ11 = ρ44``, case 2 needs ``ρ22 = ρ33``. In that case the
    filter-then-swap factor coincides with ``Γ_SF^(case)``, so that ratio is
    exactly 1; the other ratio is at least 1.
    """
    if case not in (1, 2):
        raise ValueError(f"case must be 1 or 2, got {case!r}")
    r11, r22, r33, r44 = _diag(x)
    if case == 1:
        if abs(r11 - r44) > ABD_TOL:
            raise NotABD(f"case 1 needs rho11 = rho44, got {r11} and {r44}")
        matched, other = _reduced_pair(r22, r33)
        sf = (matched, other)
    else:
        if abs(r22 - r33) > ABD_TOL:
            raise NotABD(f"case 2 needs rho22 = rho33, got {r22} and {r33}")
        matched, other = _reduced_pair(r11, r44)
        sf = (other, matched)
    fs = matched
    for g in sf:
        if not np.isfinite(g) or g <= 0:
            raise DegenerateDenominator("Γ_SF vanishes for these populations")
    return GammaCoefficients(float(fs), (float(sf[0]), float(sf[1])), (fs / sf[0], fs / sf[1]))
