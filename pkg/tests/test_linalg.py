import numpy as np
import pytest

from charvar.linalg import (
    NotHermitian,
    NotPositive,
    Singular,
    exp_herm,
    frob,
    haar_su,
    herm_eig,
    log_pd,
    polar,
    psd_power,
    unitary_eig,
)


def random_hermitian(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def test_herm_eig_diagonal():
    w, u = herm_eig(np.diag([1.0, 2.0]))
    assert np.allclose(w, [1.0, 2.0])
    assert np.allclose(np.abs(u), np.eye(2))


def test_herm_eig_pauli_x():
    h = np.array([[0, 1], [1, 0]], dtype=complex)
    w, u = herm_eig(h)
    assert np.allclose(w, [-1.0, 1.0])
    # columns match (1,-1)/sqrt(2) and (1,1)/sqrt(2) up to phase
    for col, expect in zip(u.T, (np.array([1, -1]) / np.sqrt(2), np.array([1, 1]) / np.sqrt(2))):
        phase = col[np.argmax(np.abs(col))] / expect[np.argmax(np.abs(col))]
        assert abs(abs(phase) - 1) < 1e-12
        assert np.allclose(col, phase * expect, atol=1e-12)


def test_herm_eig_reconstruction():
    rng = np.random.default_rng(1)
    for _ in range(50):
        h = random_hermitian(3, rng)
        w, u = herm_eig(h)
        assert frob(u @ np.diag(w) @ u.conj().T - h) < 1e-12
        assert frob(u @ u.conj().T - np.eye(3)) < 1e-12
        assert np.all(np.diff(w) >= 0)


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_spectrum_stable_under_conjugation():
    rng = np.random.default_rng(2)
    for _ in range(20):
        h = random_hermitian(3, rng)
        k = haar_su(3, rng)
        w1, _ = herm_eig(h)
        w2, _ = herm_eig(k @ h @ k.conj().T)
        assert np.max(np.abs(w1 - w2)) < 1e-10


def test_psd_power_diagonal():
    out = psd_power(np.diag([4.0, 0.25]), -0.5)
    assert np.allclose(out, np.diag([0.5, 2.0]), atol=1e-14)


def test_psd_power_square_root_oracle():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        p = a @ a.conj().T + 0.5 * np.eye(3)
        root = psd_power(p, 0.5)
        assert frob(root @ root - p) < 1e-12 * frob(p)


def test_psd_power_identity_and_inverse():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    p = a @ a.conj().T + np.eye(3)
    for s in (-2.0, -0.7, 0.0, 0.3, 1.0, 2.0):
        assert frob(psd_power(np.eye(3), s) - np.eye(3)) < 1e-14
        assert frob(psd_power(p, s) @ psd_power(p, -s) - np.eye(3)) < 1e-10
    assert frob(psd_power(p, 0.0) - np.eye(3)) < 1e-14
    assert frob(psd_power(p, 1.0) - p) < 1e-12


def test_psd_power_rejects_nonpositive():
    with pytest.raises(NotPositive):
        psd_power(np.diag([1.0, -0.5]), 0.5)
    with pytest.raises(NotPositive):
        log_pd(np.diag([1.0, 0.0]))


def test_exp_herm():
    h = np.diag([1.0, -1.0])
    for t in (0.0, 0.5, 2.0):
        assert frob(exp_herm(h, t) - np.diag([np.exp(t), np.exp(-t)])) < 1e-12
    rng = np.random.default_rng(5)
    g = random_hermitian(3, rng)
    assert frob(exp_herm(g, 1.0) @ exp_herm(g, -1.0) - np.eye(3)) < 1e-12
    assert frob(exp_herm(np.zeros((3, 3)), 0.7) - np.eye(3)) < 1e-14
    s, t = 0.3, 1.1
    assert frob(exp_herm(g, s + t) - exp_herm(g, s) @ exp_herm(g, t)) < 1e-11


def test_polar_positive_diagonal():
    parts = polar(np.diag([2.0, 0.5]))
    assert frob(parts.k - np.eye(2)) < 1e-14
    assert np.allclose(parts.p, np.diag([np.log(2), -np.log(2)]), atol=1e-14)


def test_polar_shear():
    g = np.array([[1, 1], [0, 1]], dtype=complex)
    parts = polar(g)
    expect_k = np.array([[2, 1], [-1, 2]]) / np.sqrt(5)
    assert frob(parts.k - expect_k) < 1e-12
    # p = log of the symmetric factor: k* g is Hermitian with square g*g
    sym = parts.k.conj().T @ g
    assert frob(sym - sym.conj().T) < 1e-12
    assert frob(sym @ sym - g.conj().T @ g) < 1e-12


def test_polar_of_unitary():
    rng = np.random.default_rng(6)
    k = haar_su(3, rng)
    parts = polar(k)
    assert frob(parts.k - k) < 1e-12
    assert frob(parts.p) < 1e-12


def test_polar_reconstruction_property():
    rng = np.random.default_rng(7)
    for _ in range(50):
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        if abs(np.linalg.det(g)) < 1e-3:
            continue
        parts = polar(g)
        assert frob(parts.k @ exp_herm(parts.p) - g) < 1e-10 * max(1.0, frob(g))
        assert frob(parts.k @ parts.k.conj().T - np.eye(3)) < 1e-13
        assert frob(parts.p - parts.p.conj().T) < 1e-13


def test_polar_rejects_singular():
    with pytest.raises(Singular):
        polar(np.array([[1, 0], [0, 0]], dtype=complex))


def test_haar_su_validity_and_determinism():
    rng1 = np.random.default_rng(8)
    rng2 = np.random.default_rng(8)
    for n in (1, 2, 3, 4):
        m1 = haar_su(n, rng1)
        m2 = haar_su(n, rng2)
        assert np.array_equal(m1, m2)
        assert frob(m1 @ m1.conj().T - np.eye(n)) < 1e-12
        assert abs(np.linalg.det(m1) - 1) < 1e-12


def test_haar_su2_trace_second_moment():
    # Weyl integration: tr = 2 cos(theta) with density (2/pi) sin^2,
    # so E[(tr)^2] = 1.
    rng = np.random.default_rng(9)
    total = 0.0
    n_samples = 100_000
    for _ in range(n_samples):
        total += np.trace(haar_su(2, rng)).real ** 2
    assert abs(total / n_samples - 1.0) < 0.02


def test_unitary_eig_reconstruction():
    rng = np.random.default_rng(10)
    for n in (2, 3):
        for _ in range(20):
            u = haar_su(n, rng)
            vals, v = unitary_eig(u)
            assert frob(v @ np.diag(vals) @ v.conj().T - u) < 1e-10
            assert frob(v @ v.conj().T - np.eye(n)) < 1e-12
            assert np.all(np.diff(np.angle(vals)) >= -1e-12)


def test_unitary_eig_repeated_eigenvalues():
    rng = np.random.default_rng(11)
    for diag in ([1j, 1j, -1.0], [1.0, 1.0, 1.0], [np.exp(0.1j)] * 2 + [np.exp(-0.2j)]):
        k = haar_su(3, rng)
        u = k @ np.diag(diag) @ k.conj().T
        vals, v = unitary_eig(u)
        assert frob(v @ np.diag(vals) @ v.conj().T - u) < 1e-12
        assert frob(v @ v.conj().T - np.eye(3)) < 1e-13
