"""Brute-force density-matrix references for swapping, chains and filters.

These build the full multipartite operator and take partial traces, so they
are slow and memory-bound, but they share no code path with the Bloch
calculus and serve as ground truth for it. Tensor factors are ordered
A ⊗ B ⊗ C ⊗ D (source by source) with row-major composite indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bloch import (
    PAULI,
    bell_bloch,
    bell_effect,
    bloch_to_state,
    effect_from_bloch,
    effect_to_bloch,
    state_to_bloch,
)
from .correlations import measures, obesity
from .ensembles import EnsembleSpec, random_effect, rng_for, sample_states
from .exceptions import DimMismatch, InvalidEffect, ZeroProbabilityOutcome
from .filtering import klm_normal_form
from .numerics import kron_all, partial_trace, trace_distance
from .swapping import (
    ZERO_PROBABILITY,
    ChainSpec,
    bell_combo_swap,
    predict_obesity,
    predict_obesity_chain,
    swap_bloch,
    swap_chain,
)


def _local_dim(m, what):
    m = np.asarray(m)
    d = int(round(np.sqrt(m.shape[-1])))
    if m.shape[-2:] != (d * d, d * d):
        raise DimMismatch(f"{what} is not a bipartite d²×d² operator")
    return d


def _normalised(num):
    p = float(np.real(np.trace(num)))
    if p <= ZERO_PROBABILITY:
        raise ZeroProbabilityOutcome(f"outcome probability {p:.3e} is numerically zero")
    rho = num / p
    return 0.5 * (rho + rho.conj().T), p


def swap_density(rho_AB, E_BC, rho_CD) -> tuple[np.ndarray, float]:
    """``tr_BC[(ρ_AB ⊗ ρ_CD)(1 ⊗ E_BC ⊗ 1)]`` normalised, and its trace."""
    d = _local_dim(rho_AB, "rho_AB")
    if _local_dim(E_BC, "E_BC") != d or _local_dim(rho_CD, "rho_CD") != d:
        raise DimMismatch("all operators must share the same local dimension")
    eye = np.eye(d)
    num = np.kron(rho_AB, rho_CD) @ kron_all(eye, E_BC, eye)
    return _normalised(partial_trace(num, [d] * 4, keep=[0, 3]))


def chain_density(spec: ChainSpec) -> tuple[np.ndarray, float]:
    """End-to-end state of a qubit chain with ``N ≤ 3`` sources, built in full."""
    if spec.N > 3:
        raise ValueError("the brute-force chain is limited to N ≤ 3")
    rhos = [bloch_to_state(R, validate=False) for R in spec.sources]
    effects = [effect_from_bloch(N) for N in spec.measurements]
    eye = np.eye(2)
    big = kron_all(*rhos) @ kron_all(eye, *effects, eye)
    n = 2 * spec.N
    return _normalised(partial_trace(big, [2] * n, keep=[0, n - 1]))


@dataclass(frozen=True)
class FilterPair:
    """Local filter operators; each must satisfy ``f† f ≤ 1``."""

    fA: np.ndarray
    fB: np.ndarray

    def __post_init__(self, tol: float = 1e-10):
        for name in ("fA", "fB"):
            f = np.asarray(getattr(self, name), dtype=complex)
            if f.ndim != 2 or f.shape[0] != f.shape[1]:
                raise DimMismatch(f"{name} must be square")
            if np.max(np.linalg.eigvalsh(f.conj().T @ f)) > 1 + tol:
                raise InvalidEffect(f"{name}† {name} exceeds the identity")
            object.__setattr__(self, name, f)


def apply_filter(rho, filters: FilterPair) -> tuple[np.ndarray, float]:
    """``(fA ⊗ fB) ρ (fA ⊗ fB)†`` normalised, with its success probability."""
    F = np.kron(filters.fA, filters.fB)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != F.shape:
        raise DimMismatch("filter dimensions do not match the state")
    return _normalised(F @ rho @ F.conj().T)


def pauli_trace_identities() -> dict:
    """Check the two- and four-Pauli trace identities over every index tuple.

    Returns the number of tuples checked and the number of mismatches
    after rounding the numerical traces at 1e-12.
    """

    def delta(a, b):
        return 1 if a == b else 0

    def levi(*idx):
        if len(set(idx)) < len(idx):
            return 0
        perm = list(idx)
        sign = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    sign = -sign
        return sign

    checked = mismatched = 0
    for j, r in itertools.product(range(4), repeat=2):
        got = np.trace(PAULI[j] @ PAULI[r])
        checked += 1
        mismatched += _mismatch(got, 2 * delta(j, r))
    for k, m, s in itertools.product(range(4), repeat=3):
        got = np.trace(PAULI[k] @ PAULI[m] @ PAULI[s] @ PAULI[m])
        want = (
            2 * (delta(k, m) * delta(s, m) - delta(k, s) + delta(k, m) * delta(m, s))
            + 4 * (delta(k, s) * delta(0, m) + delta(0, k) * delta(0, s))
            - 8 * delta(0, k) * delta(0, s) * delta(0, m)
            + levi(0, k, m, s) * delta(0, m)
        )
        checked += 1
        mismatched += _mismatch(got, want)
    return {"checked": checked, "mismatched": mismatched}


def _mismatch(got, want) -> int:
    rounded = complex(round(got.real / 1e-12) * 1e-12, round(got.imag / 1e-12) * 1e-12)
    return int(rounded != want)


def _random_triple(seed, i, d):
    spec = EnsembleSpec("general", d, seed)
    ab, cd = sample_states(spec, 2, 2 * i)
    E = random_effect(rng_for(seed, i, stream=2), d * d)
    return ab, E, cd


def crosscheck_suite(n_trials: int, seed: int = 0, *, fault: str | None = None) -> dict:
    """Maximum deviations between the Bloch calculus and independent references.

    ``n_trials`` random instances are drawn for each qubit check and
    ``max(1, n_trials // 10)`` for the qutrit check. An empty dict is
    returned for ``n_trials == 0``. ``fault`` names a check whose deviation
    is forced to 1 (used to test failure reporting).
    """
    if n_trials <= 0:
        return {}
    dev = {k: 0.0 for k in (
        "swap_state", "swap_probability", "qutrit_swap_state", "qutrit_swap_probability",
        "chain_state", "chain_probability", "obesity_prediction", "chain_obesity_prediction",
        "bell_combo_measures", "bell_combo_conjugation", "bell_diagonal_fs_sf",
    )}

    def bump(key, value):
        dev[key] = max(dev[key], float(value))

    for i in range(n_trials):
        ab, E, cd = _random_triple(seed, i, 2)
        rho, p = swap_density(ab, E, cd)
        R_ab, R_cd, N = state_to_bloch(ab), state_to_bloch(cd), effect_to_bloch(E)
        out = swap_bloch(R_ab, N, R_cd)
        bump("swap_state", trace_distance(bloch_to_state(out.R_AD, validate=False), rho))
        bump("swap_probability", abs(out.probability - p))
        bump("obesity_prediction", abs(predict_obesity(R_ab, N, R_cd) - obesity(out.R_AD)))

        g = rng_for(seed, i, stream=3)
        extra = sample_states(EnsembleSpec("general", 2, seed), 1, 2 * n_trials + i)[0]
        E2 = random_effect(g, 4)
        chain = ChainSpec((R_ab, R_cd, state_to_bloch(extra)), (N, effect_to_bloch(E2)))
        rho3, p3 = chain_density(chain)
        c = swap_chain(chain)
        bump("chain_state", trace_distance(bloch_to_state(c.R_AD, validate=False), rho3))
        bump("chain_probability", abs(c.probability - p3))
        bump("chain_obesity_prediction", abs(predict_obesity_chain(chain) - obesity(c.R_AD)))

        base = measures(R_ab)
        n, m = int(g.integers(4)), int(g.integers(4))
        combo = bell_combo_swap(R_ab, n, m).R_AD
        bump("bell_combo_measures", np.max(np.abs(measures(combo) - base)))
        u = np.kron(np.eye(2), PAULI[n] @ PAULI[m])
        bump("bell_combo_conjugation", np.max(np.abs(combo - state_to_bloch(u @ ab @ u.conj().T))))

        w = g.dirichlet(np.ones(4), size=2)
        bd = [np.einsum("k,kij->ij", wi, np.array([bell_bloch(j) for j in range(4)])) for wi in w]
        Nb = bell_effect(int(g.integers(4)))
        fs = swap_bloch(klm_normal_form(bd[0]), Nb, klm_normal_form(bd[1])).R_AD
        sf = klm_normal_form(swap_bloch(bd[0], Nb, bd[1]).R_AD)
        bump("bell_diagonal_fs_sf", np.max(np.abs(fs - sf)))

    for i in range(max(1, n_trials // 10)):
        ab, E, cd = _random_triple(seed + 1, i, 3)
        rho, p = swap_density(ab, E, cd)
        out = swap_bloch(state_to_bloch(ab), effect_to_bloch(E), state_to_bloch(cd))
        bump("qutrit_swap_state", trace_distance(bloch_to_state(out.R_AD, validate=False), rho))
        bump("qutrit_swap_probability", abs(out.probability - p))

    if fault is not None:
        if fault not in dev:
            raise KeyError(f"unknown check {fault!r}")
        dev[fault] = 1.0
    return dev
