"""Reproducible random states and the named two-qubit families.

Every sample ``i`` of an ensemble is drawn from its own Philox stream keyed
by ``(seed, i)``, so a sample never depends on how a run is split across
workers. Samples of the ``general`` kind are Hilbert-Schmidt distributed;
X states use flat Dirichlet populations with coherence moduli uniform up to
the positivity bound and uniform phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import PAULI, bell_projector, state_to_bloch
from .filtering import XStateParams

KINDS = ("general", "x_form", "bell_diagonal", "abd_case1", "abd_case2")
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str = "general"
    d: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}; choose from {KINDS}")
        if self.kind != "general" and self.d != 2:
            raise ValueError(f"{self.kind} states are two-qubit only")
        if not 2 <= self.d <= 4:
            raise ValueError("local dimension must be 2, 3 or 4")


def rng_for(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    """Generator for sample ``index`` of run ``seed``.

    Philox-4x64 with key ``(seed << 64) | index`` and the stream number in
    the top word of the counter. ``stream`` separates independent draws
    (for example a state and a measurement choice) made for the same index.
    """
    key = ((int(seed) & _MASK64) << 64) | (int(index) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key, counter=(int(stream) & _MASK64) << 192))


def _raw_general(g, D):
    return g.standard_normal(2 * D * D)


def _raw_x(g):
    return np.concatenate([g.standard_exponential(4), g.random(4)])


def _raw_abd(g):
    return np.concatenate([g.standard_exponential(3), g.random(4)])


def _ginibre_states(raw, D):
    z = raw[:, : D * D] + 1j * raw[:, D * D :]
    G = z.reshape(-1, D, D)
    rho = G @ np.conj(np.swapaxes(G, -1, -2))
    return rho / np.trace(rho, axis1=1, axis2=2).real[:, None, None]


def x_states_from_parts(pops, u14, u23, ph14, ph23) -> np.ndarray:
    """Assemble X density matrices; coherence moduli are fractions of their bounds."""
    pops = np.asarray(pops, dtype=float)
    n = pops.shape[0]
    r14 = u14 * np.sqrt(pops[:, 0] * pops[:, 3]) * np.exp(2j * np.pi * ph14)
    r23 = u23 * np.sqrt(pops[:, 1] * pops[:, 2]) * np.exp(2j * np.pi * ph23)
    rho = np.zeros((n, 4, 4), dtype=complex)
    rho[:, range(4), range(4)] = pops
    rho[:, 0, 3] = r14
    rho[:, 3, 0] = np.conj(r14)
    rho[:, 1, 2] = r23
    rho[:, 2, 1] = np.conj(r23)
    return rho


def _x_states(raw):
    pops = raw[:, :4] / raw[:, :4].sum(axis=1, keepdims=True)
    return x_states_from_parts(pops, raw[:, 4], raw[:, 5], raw[:, 6], raw[:, 7])


def _abd_states(raw, case):
    w = raw[:, :3] / raw[:, :3].sum(axis=1, keepdims=True)
    if case == 1:
        pops = np.stack([w[:, 0] / 2, w[:, 1], w[:, 2], w[:, 0] / 2], axis=1)
    else:
        pops = np.stack([w[:, 1], w[:, 0] / 2, w[:, 0] / 2, w[:, 2]], axis=1)
    return x_states_from_parts(pops, raw[:, 3], raw[:, 4], raw[:, 5], raw[:, 6])


_BELL = np.array([bell_projector(n) for n in range(4)])


def _bd_states(raw):
    w = raw / raw.sum(axis=1, keepdims=True)
    return np.einsum("nk,kab->nab", w, _BELL)


def sample_states(spec: EnsembleSpec, count: int, start: int = 0) -> np.ndarray:
    """Density matrices for sample indices ``start .. start + count - 1``."""
    idx = range(start, start + count)
    if spec.kind == "general":
        D = spec.d * spec.d
        raw = np.array([_raw_general(rng_for(spec.seed, i), D) for i in idx]).reshape(count, -1)
        return _ginibre_states(raw, D)
    if spec.kind == "x_form":
        raw = np.array([_raw_x(rng_for(spec.seed, i)) for i in idx]).reshape(count, 8)
        return _x_states(raw)
    if spec.kind == "bell_diagonal":
        raw = np.array([rng_for(spec.seed, i).standard_exponential(4) for i in idx]).reshape(count, 4)
        return _bd_states(raw)
    raw = np.array([_raw_abd(rng_for(spec.seed, i)) for i in idx]).reshape(count, 7)
    return _abd_states(raw, 1 if spec.kind == "abd_case1" else 2)


def random_density(spec: EnsembleSpec, index: int = 0) -> np.ndarray:
    """Hilbert-Schmidt random state ``G G† / tr(G G†)`` with complex Ginibre ``G``."""
    if spec.kind != "general":
        raise ValueError("random_density needs kind='general'")
    return sample_states(spec, 1, index)[0]


def random_x_state(spec: EnsembleSpec, index: int = 0) -> XStateParams:
    if spec.kind != "x_form":
        raise ValueError("random_x_state needs kind='x_form'")
    return XStateParams.from_density(sample_states(spec, 1, index)[0])


def random_bd_abd(spec: EnsembleSpec, index: int = 0) -> np.ndarray:
    """Bloch matrix of a random Bell-diagonal or almost-Bell-diagonal state."""
    if spec.kind not in ("bell_diagonal", "abd_case1", "abd_case2"):
        raise ValueError("random_bd_abd needs a bell_diagonal or abd_case* ensemble")
    return state_to_bloch(sample_states(spec, 1, index)[0], validate=False)


def random_unitary(g: np.random.Generator, d: int) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_effect(g: np.random.Generator, D: int) -> np.ndarray:
    """Random POVM effect ``U diag(λ) U†`` with ``λ`` uniform on [0, 1]."""
    U = random_unitary(g, D)
    return (U * g.random(D)) @ np.conj(U.T)


def coloured_noise(p: float, theta: float) -> np.ndarray:
    """``p |ψ⟩⟨ψ| + (1 - p) ρ_A ⊗ 1/2`` with ``|ψ⟩ = cos θ |00⟩ + sin θ |11⟩``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if not 0 <= theta <= np.pi / 4 + 1e-12:
        raise ValueError("theta must lie in [0, π/4]")
    c, s = np.cos(theta), np.sin(theta)
    psi = np.array([c, 0, 0, s], dtype=complex)
    rho_a = np.diag([c * c, s * s]).astype(complex)
    return p * np.outer(psi, psi) + (1 - p) * np.kron(rho_a, PAULI[0] / 2)


def werner(p: float) -> np.ndarray:
    """Singlet mixed with white noise: ``p Φ⁻ + (1 - p) 1/4``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return p * bell_projector(0) + (1 - p) * np.eye(4) / 4
