import numpy as np
import pytest

from swapcorr.bloch import StateClass, bell_bloch, bell_effect, classify, state_to_bloch
from swapcorr.correlations import measures
from swapcorr.ensembles import EnsembleSpec, coloured_noise, sample_states
from swapcorr.pathways import (
    VARIANTS,
    PathwayReport,
    compare,
    coloured_noise_scan,
    montecarlo_fs_sf,
    pathway_measures,
    run_fs,
    run_sf,
    worker_count,
)
from swapcorr.swapping import swap_bloch


def bd_sample(seed, n):
    return state_to_bloch(sample_states(EnsembleSpec("bell_diagonal", 2, seed), n))


def test_bell_diagonal_pathways_agree():
    R = bd_sample(1, 200)
    for i in range(0, 200, 2):
        N = bell_effect(i % 4)
        fs = run_fs(R[i], R[i + 1], N).R_AD
        sf = run_sf(R[i], R[i + 1], N)
        plain = swap_bloch(R[i], N, R[i + 1]).R_AD
        assert np.max(np.abs(fs - sf)) <= 1e-10
        assert np.allclose(fs, plain)
        assert classify(plain) >= StateClass.BellDiagonal


def test_singlet_pathways():
    S = bell_bloch(0)
    assert np.allclose(run_fs(S, S, bell_effect(0)).R_AD, S)
    assert np.allclose(run_sf(S, S, bell_effect(0)), S)


def test_coloured_noise_fs_beats_sf():
    R = state_to_bloch(coloured_noise(0.9, np.pi / 6))
    N = bell_effect(2)
    fs = measures(run_fs(R, R, N).R_AD)
    sf = measures(run_sf(R, R, N))
    assert np.all(fs >= sf - 1e-9)


def test_compare_report():
    R = state_to_bloch(coloured_noise(0.9, np.pi / 5))
    rep = compare(R, R, bell_effect(2))
    assert isinstance(rep, PathwayReport)
    assert set(rep.probabilities) == {"S", "SF", "FS"}
    assert np.all(rep.fs.values() >= rep.sf.values() - 1e-9)
    assert np.all(rep.swapped.values() <= rep.initial.values() + 1e-9)


def test_compare_marks_unavailable_branches():
    product = state_to_bloch(coloured_noise(0.9, 0.0))
    rep = compare(product, product, bell_effect(2))
    assert rep.filtered_input is None and rep.fs is None and rep.sf is None
    assert rep.swapped is not None


def test_batched_pathways_match_scalar():
    R = state_to_bloch(sample_states(EnsembleSpec("x_form", 2, 4), 30))
    N = bell_effect(1)
    res = pathway_measures(R, R, N)
    assert list(res) == list(VARIANTS)
    for i in range(30):
        assert np.allclose(res["fs"][i], measures(run_fs(R[i], R[i], N).R_AD), atol=1e-12)
        assert np.allclose(res["sf"][i], measures(run_sf(R[i], R[i], N)), atol=1e-12)


def test_scan_shape_and_endpoints():
    rows = coloured_noise_scan(0.9, 2)
    assert [r.theta for r in rows[::5]] == [0.0, pytest.approx(np.pi / 4)]
    assert len(rows) == 10
    pure = {r.variant: r.values for r in coloured_noise_scan(1.0, 2) if r.theta > 0}
    assert np.allclose(pure["initial"], pure["fs"]) and np.allclose(pure["initial"], pure["sf"])


def test_montecarlo_deterministic_and_worker_independent(monkeypatch):
    a = montecarlo_fs_sf("x_form", 500, seed=3, chunk=64, workers=1)
    b = montecarlo_fs_sf("x_form", 500, seed=3, chunk=100, workers=4)
    assert np.array_equal(a.fs, b.fs) and np.array_equal(a.sf, b.sf)
    assert a.summary()["measures"]["C"]["violations"] == 0
    g = montecarlo_fs_sf("general", 200, seed=1)
    assert g.measures == ("Omega",)
    assert g.summary()["measures"]["Omega"]["violations"] == 0
    monkeypatch.setenv("SWAPCORR_THREADS", "2")
    assert worker_count(8) == 2
    with pytest.raises(ValueError):
        montecarlo_fs_sf("bell_diagonal", 10)
