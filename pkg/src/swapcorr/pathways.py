"""Filter-then-swap (FS) versus swap-then-filter (SF).

FS filters both sources to their Bell-diagonal normal form and then swaps.
SF swaps the raw sources and filters the result. Only correlation content
is compared; the success probability of the filters themselves is not
modelled.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bloch import bell_effect, state_to_bloch
from .correlations import MEASURES, CorrelationReport, measures, report
from .ensembles import EnsembleSpec, coloured_noise, rng_for, sample_states
from .exceptions import DegenerateFilter, NonPhysicalNormalForm, ZeroProbabilityOutcome
from .filtering import klm_normal_form, klm_normal_form_batch
from .swapping import ZERO_PROBABILITY, SwapOutcome, swap_bloch

VARIANTS = ("initial", "filtered", "swapped", "sf", "fs")
_PATHWAY_ERRORS = (DegenerateFilter, NonPhysicalNormalForm, ZeroProbabilityOutcome)


def run_fs(R_AB, R_CD, N) -> SwapOutcome:
    """Filter each source, then swap."""
    return swap_bloch(klm_normal_form(R_AB), N, klm_normal_form(R_CD))


def run_sf(R_AB, R_CD, N) -> np.ndarray:
    """Swap, then filter the joint result."""
    return klm_normal_form(swap_bloch(R_AB, N, R_CD).R_AD)


@dataclass(frozen=True)
class PathwayReport:
    """Reports for each stage; ``None`` marks a branch that could not be evaluated."""

    initial: CorrelationReport
    filtered_input: CorrelationReport | None
    swapped: CorrelationReport | None
    sf: CorrelationReport | None
    fs: CorrelationReport | None
    probabilities: dict = field(default_factory=dict)


def _try(fn):
    try:
        return fn()
    except _PATHWAY_ERRORS:
        return None


def compare(R_AB, R_CD, N) -> PathwayReport:
    R_AB = np.asarray(R_AB, dtype=float)
    probs = {}
    RF = _try(lambda: klm_normal_form(R_AB))
    S = _try(lambda: swap_bloch(R_AB, N, R_CD))
    FS = _try(lambda: run_fs(R_AB, R_CD, N))
    SF = _try(lambda: klm_normal_form(S.R_AD)) if S is not None else None
    if S is not None:
        probs["S"] = probs["SF"] = S.probability
    if FS is not None:
        probs["FS"] = FS.probability
    return PathwayReport(
        initial=report(R_AB),
        filtered_input=report(RF) if RF is not None else None,
        swapped=report(S.R_AD) if S is not None else None,
        sf=report(SF) if SF is not None else None,
        fs=report(FS.R_AD) if FS is not None else None,
        probabilities=probs,
    )


def _swap_batch(R_AB, N, R_CD):
    M = R_AB @ N @ R_CD
    p = M[..., 0, 0]
    ok = p > ZERO_PROBABILITY
    out = M / np.where(ok, p, 1.0)[..., None, None]
    out[~ok] = np.nan
    return out, ok


def pathway_measures(R_AB, R_CD, N, which=VARIANTS, obesity_only: bool = False) -> dict:
    """Measures of every pipeline stage for stacks of sources.

    ``N`` may be a single effect or a stack. Returns a dict keyed by variant
    with arrays of shape ``(n, 5)`` (or ``(n,)`` obesity values when
    ``obesity_only``); unavailable rows are NaN.
    """
    R_AB = np.asarray(R_AB, dtype=float)
    R_CD = np.asarray(R_CD, dtype=float)

    def meas(R, ok):
        out = np.full(R.shape[:-2] + ((len(MEASURES),) if not obesity_only else ()), np.nan)
        if np.any(ok):
            Rok = R[ok]
            out[ok] = np.abs(np.linalg.det(Rok)) ** 0.25 if obesity_only else measures(Rok)
        return out

    res = {}
    all_ok = np.ones(R_AB.shape[:-2], dtype=bool)
    if "initial" in which:
        res["initial"] = meas(R_AB, all_ok)
    need_f = {"filtered", "fs"} & set(which)
    if need_f:
        FA, okA = klm_normal_form_batch(R_AB)
        if R_CD is R_AB:
            FC, okC = FA, okA
        else:
            FC, okC = klm_normal_form_batch(R_CD)
        if "filtered" in which:
            res["filtered"] = meas(FA, okA)
        if "fs" in which:
            FS, okS = _swap_batch(np.nan_to_num(FA), N, np.nan_to_num(FC))
            res["fs"] = meas(FS, okS & okA & okC)
    if {"swapped", "sf"} & set(which):
        S, okS = _swap_batch(R_AB, N, R_CD)
        if "swapped" in which:
            res["swapped"] = meas(S, okS)
        if "sf" in which:
            SF, okF = klm_normal_form_batch(np.where(okS[..., None, None], S, np.eye(4)))
            res["sf"] = meas(SF, okF & okS)
    return {k: res[k] for k in which if k in res}


@dataclass(frozen=True)
class ScanRow:
    theta: float
    variant: str
    values: np.ndarray
    ok: bool


def coloured_noise_scan(p: float = 0.9, steps: int = 100, effect: int = 2) -> list[ScanRow]:
    """Stage measures over θ ∈ [0, π/4] for coloured-noise sources on both sides.

    The middle pair is measured with the Bell projector Φ_effect. Rows for
    stages that cannot be evaluated (for example filtering a product state)
    come back with ``ok = False`` and NaN values.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    thetas = np.linspace(0.0, np.pi / 4, steps)
    R = state_to_bloch(np.array([coloured_noise(p, t) for t in thetas]))
    res = pathway_measures(R, R, bell_effect(effect))
    rows = []
    for i, t in enumerate(thetas):
        for v in VARIANTS:
            vals = res[v][i]
            rows.append(ScanRow(float(t), v, vals, bool(np.all(np.isfinite(vals)))))
    return rows


def worker_count(default: int | None = None) -> int:
    """Worker pool size, capped by the ``SWAPCORR_THREADS`` environment variable."""
    n = default or os.cpu_count() or 1
    cap = os.environ.get("SWAPCORR_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


@dataclass
class MonteCarloResult:
    fs: np.ndarray
    sf: np.ndarray
    effects: np.ndarray
    measures: tuple
    tol: float = 1e-9

    @property
    def ok(self) -> np.ndarray:
        return np.all(np.isfinite(self.fs), axis=1) & np.all(np.isfinite(self.sf), axis=1)

    def summary(self) -> dict:
        ok = self.ok
        margin = self.fs[ok] - self.sf[ok]
        per = {}
        for j, name in enumerate(self.measures):
            col = margin[:, j]
            per[name] = {
                "violations": int(np.sum(col < -self.tol)),
                "min_margin": float(col.min()) if col.size else None,
            }
        return {
            "samples": int(len(ok)),
            "evaluated": int(ok.sum()),
            "failed": int((~ok).sum()),
            "tolerance": self.tol,
            "measures": per,
        }


_EFFECTS = np.array([bell_effect(n) for n in range(4)])


def _mc_chunk(spec: EnsembleSpec, start: int, count: int, effect, obesity_only: bool):
    rho = sample_states(spec, count, start)
    R = state_to_bloch(rho, validate=False)
    if effect is None:
        eff = np.array([rng_for(spec.seed, i, stream=1).integers(4) for i in range(start, start + count)])
    else:
        eff = np.full(count, int(effect))
    res = pathway_measures(R, R, _EFFECTS[eff], which=("sf", "fs"), obesity_only=obesity_only)
    fs, sf = res["fs"], res["sf"]
    if obesity_only:
        fs, sf = fs[:, None], sf[:, None]
    return fs, sf, eff


def montecarlo_fs_sf(
    ensemble: str = "x_form",
    n: int = 100_000,
    seed: int = 0,
    effect: int | None = None,
    chunk: int = 4096,
    workers: int | None = None,
) -> MonteCarloResult:
    """Compare FS and SF on ``n`` random sources with ``ρ_AB = ρ_CD``.

    Each sample is swapped with a Bell projector drawn uniformly (or the
    fixed ``effect``). For ``ensemble='general'`` only obesity is compared.
    Results are independent of ``chunk`` and the worker count.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if ensemble not in ("x_form", "general"):
        raise ValueError("ensemble must be 'x_form' or 'general'")
    spec = EnsembleSpec(ensemble, 2, seed)
    obesity_only = ensemble == "general"
    starts = range(0, n, chunk)
    jobs = [(s, min(chunk, n - s)) for s in starts]
    with ThreadPoolExecutor(max_workers=worker_count(workers)) as pool:
        parts = list(pool.map(lambda j: _mc_chunk(spec, j[0], j[1], effect, obesity_only), jobs))
    fs = np.concatenate([p[0] for p in parts])
    sf = np.concatenate([p[1] for p in parts])
    eff = np.concatenate([p[2] for p in parts])
    names = ("Omega",) if obesity_only else MEASURES
    return MonteCarloResult(fs, sf, eff, names)
