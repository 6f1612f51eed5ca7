import numpy as np
import pytest

from swapcorr.bloch import StateClass, classify, state_to_bloch
from swapcorr.correlations import measures
from swapcorr.ensembles import (
    EnsembleSpec,
    coloured_noise,
    random_bd_abd,
    random_density,
    random_x_state,
    rng_for,
    sample_states,
    werner,
    x_states_from_parts,
)
from swapcorr.filtering import XStateParams


def valid(rho, tol=1e-12):
    herm = np.max(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2))))
    tr = np.max(np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1))
    return herm < tol and tr < tol and np.min(np.linalg.eigvalsh(rho)) > -tol


def test_rng_streams_are_distinct():
    a = rng_for(1, 0).random(4)
    assert np.array_equal(a, rng_for(1, 0).random(4))
    assert not np.array_equal(a, rng_for(1, 1).random(4))
    assert not np.array_equal(a, rng_for(2, 0).random(4))
    assert not np.array_equal(a, rng_for(1, 0, stream=1).random(4))


def test_general_states():
    spec = EnsembleSpec("general", 2, 42)
    rho = random_density(spec, 3)
    assert valid(rho)
    assert np.array_equal(rho, random_density(spec, 3))
    assert np.array_equal(sample_states(spec, 5)[3], rho)
    assert valid(sample_states(EnsembleSpec("general", 3, 1), 10))


def test_hilbert_schmidt_mean_purity():
    rho = sample_states(EnsembleSpec("general", 2, 0), 100_000)
    purity = np.mean(np.real(np.einsum("nij,nji->n", rho, rho)))
    assert purity == pytest.approx(8 / 17, rel=0.01)


def test_x_states():
    spec = EnsembleSpec("x_form", 2, 9)
    x = random_x_state(spec)
    assert isinstance(x, XStateParams)
    rho = sample_states(spec, 100_000)
    assert valid(rho)
    R = state_to_bloch(rho[:2000], validate=False)
    classes = [classify(r) for r in R]
    assert all(c >= StateClass.XForm for c in classes)
    assert np.mean([c == StateClass.XForm for c in classes]) > 0.99


def test_classical_x_state_has_no_correlations():
    pops = np.array([[0.4, 0.3, 0.2, 0.1]])
    rho = x_states_from_parts(pops, np.zeros(1), np.zeros(1), np.zeros(1), np.zeros(1))
    assert np.allclose(measures(state_to_bloch(rho)), 0)


def test_bd_and_abd():
    R = random_bd_abd(EnsembleSpec("bell_diagonal", 2, 1))
    assert np.allclose(R[1:, 0], 0, atol=1e-12) and np.allclose(R[0, 1:], 0, atol=1e-12)
    assert classify(random_bd_abd(EnsembleSpec("abd_case1", 2, 1))) >= StateClass.ABD
    assert classify(random_bd_abd(EnsembleSpec("abd_case2", 2, 1))) >= StateClass.ABD
    for kind in ("bell_diagonal", "abd_case1", "abd_case2"):
        assert valid(sample_states(EnsembleSpec(kind, 2, 2), 1000))


def test_bd_closed_forms():
    # weights w on Φ_0..Φ_3 give T = diag of signed weight combinations
    rho = sample_states(EnsembleSpec("bell_diagonal", 2, 6), 200)
    R = state_to_bloch(rho)
    from swapcorr.bloch import bell_projector

    P = np.array([bell_projector(n) for n in range(4)])
    w = np.real(np.einsum("kab,nba->nk", P, rho))
    t = np.stack([-w[:, 0] - w[:, 1] + w[:, 2] + w[:, 3],
                  -w[:, 0] + w[:, 1] - w[:, 2] + w[:, 3],
                  -w[:, 0] + w[:, 1] + w[:, 2] - w[:, 3]], axis=1)
    assert np.allclose(np.diagonal(R[:, 1:, 1:], axis1=1, axis2=2), t)
    m = measures(R)
    assert np.allclose(m[:, 3], np.maximum(0, 2 * w.max(axis=1) - 1), atol=1e-9)


def test_families():
    assert np.allclose(coloured_noise(1.0, np.pi / 4), np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2)
    from swapcorr.correlations import report

    assert report(rho=coloured_noise(1.0, np.pi / 4)).C == pytest.approx(1)
    assert np.allclose(report(rho=coloured_noise(0.7, 0.0)).values(), 0)
    rho = coloured_noise(0.6, 0.3)
    ra = np.trace(rho.reshape(2, 2, 2, 2), axis1=1, axis2=3)
    assert np.allclose(ra, np.diag([np.cos(0.3) ** 2, np.sin(0.3) ** 2]))
    assert np.allclose(state_to_bloch(werner(1.0)), np.diag([1, -1, -1, -1]))
    assert np.allclose(werner(0.0), np.eye(4) / 4)
    assert np.allclose(state_to_bloch(werner(0.3))[1:, 1:], -0.3 * np.eye(3))
    with pytest.raises(ValueError):
        werner(1.5)
    with pytest.raises(ValueError):
        coloured_noise(0.5, 1.0)


def test_spec_validation():
    with pytest.raises(ValueError):
        EnsembleSpec("nope")
    with pytest.raises(ValueError):
        EnsembleSpec("x_form", 3)
