import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swapcorr.exceptions import DimMismatch, NonHermitian, NotPSD
from swapcorr.numerics import (
    determinant,
    herm_eig,
    partial_trace,
    psd_sqrt,
    singular_values_desc,
    tensor_product,
    trace_distance,
)


def rand_herm(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def test_herm_eig_examples():
    w, _ = herm_eig(np.eye(4))
    assert np.allclose(w, 1)
    w, v = herm_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [3, 2, 1])


def test_herm_eig_reconstruction(rng):
    for n in range(2, 10):
        for _ in range(20):
            m = rand_herm(rng, n)
            w, v = herm_eig(m)
            assert np.all(np.diff(w) <= 0)
            assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - m)) < 1e-9
            assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-9


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        herm_eig(np.array([[1, 2], [0, 1]]))


def test_singular_values():
    assert np.allclose(singular_values_desc(-np.eye(3)), 1)
    assert np.allclose(singular_values_desc(np.diag([0.5, -0.2, 0.1])), [0.5, 0.2, 0.1])


def test_singular_values_match_eigen_oracle(rng):
    for _ in range(50):
        m = rng.normal(size=(3, 3))
        ref = np.sqrt(np.clip(np.sort(np.linalg.eigvalsh(m.T @ m))[::-1], 0, None))
        assert np.allclose(singular_values_desc(m), ref, atol=1e-10)


def test_psd_sqrt_examples():
    assert np.allclose(psd_sqrt(np.eye(3)), np.eye(3))
    assert np.allclose(psd_sqrt(np.diag([4.0, 9.0, 0.0, 1.0])), np.diag([2, 3, 0, 1]))


def test_psd_sqrt_random(rng):
    for _ in range(50):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = g @ g.conj().T
        s = psd_sqrt(m)
        assert np.max(np.abs(s @ s - m)) < 1e-9
        assert np.allclose(s, s.conj().T)
        assert np.min(np.linalg.eigvalsh(s)) > -1e-12


def test_psd_sqrt_clamps_and_rejects():
    assert np.allclose(psd_sqrt(np.diag([1.0, -1e-11])), np.diag([1.0, 0.0]))
    with pytest.raises(NotPSD):
        psd_sqrt(np.diag([1.0, -1e-6]))


def test_tensor_product():
    z = np.diag([1.0, -1.0])
    assert np.allclose(tensor_product(np.eye(2), np.eye(2)), np.eye(4))
    assert np.allclose(tensor_product(z, z), np.diag([1, -1, -1, 1]))
    a, b = np.arange(4.0).reshape(2, 2), np.arange(9.0).reshape(3, 3)
    k = tensor_product(a, b)
    assert np.allclose(k[3:6, 0:3], a[1, 0] * b)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_tensor_trace_multiplicative(seed):
    rng = np.random.default_rng(seed)
    a, b = rand_herm(rng, 2), rand_herm(rng, 3)
    assert np.isclose(np.trace(tensor_product(a, b)), np.trace(a) * np.trace(b))


def test_partial_trace_product_state(rng):
    a, b = rand_herm(rng, 2), rand_herm(rng, 3)
    assert np.allclose(partial_trace(np.kron(a, b), [2, 3], keep=[0]), np.trace(b) * a)
    m = rand_herm(rng, 6)
    assert np.allclose(partial_trace(m, [2, 3], keep=[0, 1]), m)


def test_partial_trace_matches_loop_oracle(rng):
    m = rand_herm(rng, 16)
    t = m.reshape([2] * 8)
    ref = np.zeros((4, 4), dtype=complex)
    for a, d, a2, d2 in itertools.product(range(2), repeat=4):
        ref[2 * a + d, 2 * a2 + d2] = sum(
            t[a, b, c, d, a2, b, c, d2] for b in range(2) for c in range(2)
        )
    got = partial_trace(m, [2, 2, 2, 2], keep=[0, 3])
    assert np.max(np.abs(got - ref)) < 1e-12
    assert abs(np.trace(got) - np.trace(m)) < 1e-12


def test_partial_trace_composes(rng):
    m = rand_herm(rng, 16)
    direct = partial_trace(m, [2, 2, 2, 2], keep=[0])
    stepwise = partial_trace(partial_trace(m, [2, 2, 2, 2], keep=[0, 1]), [2, 2], keep=[0])
    other = partial_trace(partial_trace(m, [2, 2, 2, 2], keep=[0, 2, 3]), [2, 2, 2], keep=[0])
    assert np.allclose(direct, stepwise) and np.allclose(direct, other)
    a, b = rand_herm(rng, 16), rand_herm(rng, 16)
    lin = partial_trace(2 * a - b, [4, 4], keep=[1])
    assert np.allclose(lin, 2 * partial_trace(a, [4, 4], keep=[1]) - partial_trace(b, [4, 4], keep=[1]))


def test_partial_trace_dim_mismatch():
    with pytest.raises(DimMismatch):
        partial_trace(np.eye(5), [2, 2], keep=[0])
    with pytest.raises(DimMismatch):
        partial_trace(np.eye(4), [2, 2], keep=[2])


def cofactor_det(m):
    if m.shape == (1, 1):
        return m[0, 0]
    return sum((-1) ** j * m[0, j] * cofactor_det(np.delete(m[1:], j, axis=1)) for j in range(m.shape[0]))


def test_determinant(rng):
    assert np.isclose(determinant(np.diag([1.0, -1, -1, -1])), -1)
    assert abs(determinant(np.ones((4, 4)))) < 1e-12
    for _ in range(20):
        a, b = rng.normal(size=(4, 4)), rng.normal(size=(4, 4))
        assert abs(determinant(a) - cofactor_det(a)) < 1e-9
        assert np.isclose(determinant(a @ b), determinant(a) * determinant(b), rtol=1e-8)


def test_trace_distance():
    a = np.diag([1.0, 0.0])
    b = np.diag([0.0, 1.0])
    assert np.isclose(trace_distance(a, b), 1.0)
    assert trace_distance(a, a) == 0
