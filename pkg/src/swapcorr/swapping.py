"""Entanglement swapping in the Bloch-matrix picture.

Measuring the middle pair of ``ρ_AB ⊗ ρ_CD`` with an effect ``E_BC`` leaves
A and D in the state whose Bloch matrix is ``R_AB @ N_BC @ R_CD`` divided by
its (0, 0) element, and that element is the outcome probability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bloch import bell_bloch, bell_effect
from .correlations import effect_zeta, obesity
from .exceptions import DimMismatch, ZeroProbabilityOutcome

ZERO_PROBABILITY = 1e-12


class SwapOutcome(NamedTuple):
    R_AD: np.ndarray
    probability: float


@dataclass(frozen=True)
class ChainSpec:
    """``N`` two-qubit sources joined by ``N - 1`` middle measurements."""

    sources: tuple
    measurements: tuple

    def __post_init__(self):
        sources = tuple(np.asarray(r, dtype=float) for r in self.sources)
        meas = tuple(np.asarray(m, dtype=float) for m in self.measurements)
        if len(sources) < 2:
            raise ValueError("a chain needs at least two sources")
        if len(meas) != len(sources) - 1:
            raise ValueError(f"{len(sources)} sources need {len(sources) - 1} measurements, got {len(meas)}")
        if any(m.shape != (4, 4) for m in sources + meas):
            raise DimMismatch("chains are supported for qubits only (4×4 Bloch matrices)")
        object.__setattr__(self, "sources", sources)
        object.__setattr__(self, "measurements", meas)

    @property
    def N(self) -> int:
        return len(self.sources)


def _matched(*mats):
    mats = [np.asarray(m, dtype=float) for m in mats]
    shape = mats[0].shape[-2:]
    if shape[0] != shape[1] or any(m.shape[-2:] != shape for m in mats):
        raise DimMismatch("Bloch matrices must be square and share the same dimension")
    return mats


def _normalise(M):
    p = M[..., 0, 0]
    if np.min(p, initial=np.inf) <= ZERO_PROBABILITY:
        raise ZeroProbabilityOutcome(f"outcome probability {np.min(p):.3e} is numerically zero")
    return M / p[..., None, None], p


def swap_bloch(R_AB, N_BC, R_CD) -> SwapOutcome:
    """Post-measurement Bloch matrix of A and D and the outcome probability.

    Works for any local dimension; stacks broadcast.
    """
    R_AB, N_BC, R_CD = _matched(R_AB, N_BC, R_CD)
    R, p = _normalise(R_AB @ N_BC @ R_CD)
    return SwapOutcome(R, float(p) if np.ndim(p) == 0 else p)


def bell_combo_swap(R_AB, n: int, m: int) -> SwapOutcome:
    """Swap ``R_AB`` with the Bell state Φ_n using the Bell projector Φ_m.

    The result is ``R_AB`` rotated by the local Pauli ``σ_n σ_m`` on D.
    """
    return swap_bloch(R_AB, bell_effect(m), bell_bloch(n))


def predict_obesity(R_AB, N_BC, R_CD) -> float:
    """Obesity of the swapped state from the factors ``Ω_AB ζ_BC Ω_CD / p``."""
    R_AB, N_BC, R_CD = _matched(R_AB, N_BC, R_CD)
    p = (R_AB @ N_BC @ R_CD)[..., 0, 0]
    if np.min(p, initial=np.inf) <= ZERO_PROBABILITY:
        raise ZeroProbabilityOutcome(f"outcome probability {np.min(p):.3e} is numerically zero")
    return obesity(R_AB) * effect_zeta(N_BC) * obesity(R_CD) / np.abs(p)


def _chain_product(spec: ChainSpec) -> np.ndarray:
    M = spec.sources[0]
    for N, R in zip(spec.measurements, spec.sources[1:]):
        M = M @ N @ R
    # the trailing measurement slot is the identity matrix and drops out
    return M


def swap_chain(spec: ChainSpec) -> SwapOutcome:
    """End-to-end state of a repeater chain, normalised once at the end."""
    R, p = _normalise(_chain_product(spec))
    return SwapOutcome(R, float(p))


def predict_obesity_chain(spec: ChainSpec) -> float:
    p = _chain_product(spec)[0, 0]
    if p <= ZERO_PROBABILITY:
        raise ZeroProbabilityOutcome(f"outcome probability {p:.3e} is numerically zero")
    num = np.prod([obesity(R) for R in spec.sources]) * np.prod(
        [effect_zeta(N) for N in spec.measurements]
    )
    return float(num / abs(p))
