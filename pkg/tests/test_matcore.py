"""Matrix-algebra layer: eigensolver, kron, partial transpose, Takagi."""

import numpy as np
import pytest

from lsdecomp import matcore as mc
from lsdecomp.errors import DimensionMismatch, NotHermitian, NotPSD, NotSymmetric

from helpers import random_hermitian, random_unitary


def test_hermitian_eig_identity():
    res = mc.hermitian_eig(np.eye(2))
    assert np.allclose(res.values, [1.0, 1.0])


def test_hermitian_eig_diagonal_sorted_ascending():
    res = mc.hermitian_eig(np.diag([3.0, -1.0]))
    assert np.allclose(res.values, [-1.0, 3.0])


def test_hermitian_eig_sigma_y():
    res = mc.hermitian_eig(mc.SIGMA_Y)
    assert np.allclose(res.values, [-1.0, 1.0])


@pytest.mark.parametrize("n", [2, 3, 5, 8, 16, 32])
def test_hermitian_eig_reconstruction_and_unitarity(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        a = random_hermitian(rng, n)
        res = mc.hermitian_eig(a)
        scale = max(1.0, np.linalg.norm(a))
        recon = res.vectors @ np.diag(res.values) @ res.vectors.conj().T
        assert np.linalg.norm(recon - a) <= 1e-10 * scale
        assert np.linalg.norm(res.vectors @ res.vectors.conj().T - np.eye(n)) <= 1e-10
        assert np.all(np.diff(res.values) >= -1e-15)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        mc.hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotHermitian):
        mc.hermitian_eig(np.ones((2, 3)))


def test_kron_identity():
    assert np.allclose(mc.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_sigma_z_pair():
    assert np.allclose(mc.kron(mc.SIGMA_Z, mc.SIGMA_Z), np.diag([1.0, -1.0, -1.0, 1.0]))


def test_kron_associative_and_bilinear():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        assert np.allclose(mc.kron(mc.kron(a, b), c), mc.kron(a, mc.kron(b, c)), atol=1e-12)
        a2 = rng.normal(size=(2, 2))
        assert np.allclose(
            mc.kron(a + a2, b), mc.kron(a, b) + mc.kron(a2, b), atol=1e-12
        )


def test_kron_index_formula():
    rng = np.random.default_rng(6)
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(4, 2))
    k = mc.kron(a, b)
    for i in range(2):
        for j in range(3):
            for r in range(4):
                for c in range(2):
                    assert k[i * 4 + r, j * 2 + c] == pytest.approx(a[i, j] * b[r, c])


def test_partial_transpose_product_state_stays_psd():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3))
    ra, rb = a @ a.T, b @ b.T
    ra /= np.trace(ra)
    rb /= np.trace(rb)
    rho = mc.kron(ra, rb)
    pt = mc.partial_transpose(rho, (2, 3), "B")
    assert np.allclose(pt, mc.kron(ra, rb.T))
    assert np.linalg.eigvalsh(pt)[0] >= -1e-12


def test_partial_transpose_singlet_min_eig():
    # brute force oracle: the partially transposed projector written by hand
    psi = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)
    rho = np.outer(psi, psi)
    expected = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    pt = mc.partial_transpose(rho, (2, 2), "B")
    assert np.allclose(pt, expected)
    assert np.linalg.eigvalsh(pt)[0] == pytest.approx(-0.5, abs=1e-12)


def test_partial_transpose_involution_and_trace():
    rng = np.random.default_rng(8)
    a = random_hermitian(rng, 6)
    for sub in ("A", "B"):
        pt = mc.partial_transpose(a, (2, 3), sub)
        assert np.allclose(mc.partial_transpose(pt, (2, 3), sub), a)
        assert np.trace(pt) == pytest.approx(np.trace(a).real)
        assert np.linalg.norm(pt - pt.conj().T) < 1e-14


def test_partial_transpose_subsystem_a_vs_b():
    rng = np.random.default_rng(9)
    a = random_hermitian(rng, 6)
    both = mc.partial_transpose(mc.partial_transpose(a, (2, 3), "A"), (2, 3), "B")
    assert np.allclose(both, a.T)


def test_partial_transpose_dimension_check():
    with pytest.raises(DimensionMismatch):
        mc.partial_transpose(np.eye(4), (2, 3))


def test_is_psd_cases():
    assert mc.is_psd(np.zeros((3, 3)))
    assert not mc.is_psd(np.diag([1.0, -1e-3]), tol=1e-9)
    assert mc.is_psd(np.diag([1.0, -1e-12]), tol=1e-9)


def test_is_psd_werner_partial_transpose():
    from lsdecomp.states import make_werner

    w = make_werner(2, -0.5)
    pt = mc.partial_transpose(w.mat, (2, 2), "B")
    assert not mc.is_psd(pt)
    assert np.linalg.eigvalsh(pt)[0] == pytest.approx(-0.25, abs=1e-12)


def test_pinv_sqrt_identity_and_rank_deficient():
    assert np.allclose(mc.pinv_sqrt(np.eye(3)), np.eye(3))
    out = mc.pinv_sqrt(np.diag([4.0, 0.0]))
    assert np.allclose(out, np.diag([0.5, 0.0]))


def test_pinv_sqrt_support_projector():
    rng = np.random.default_rng(10)
    for _ in range(20):
        b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
        a = b @ b.conj().T
        r = mc.pinv_sqrt(a)
        w, v = np.linalg.eigh(a)
        keep = v[:, w > 1e-9]
        proj = keep @ keep.conj().T
        assert np.linalg.norm(r @ a @ r - proj) < 1e-9
        assert mc.is_psd(r)


def test_pinv_sqrt_rejects_negative():
    with pytest.raises(NotPSD):
        mc.pinv_sqrt(np.diag([1.0, -0.1]))


def test_takagi_real_diagonal():
    u, d = mc.takagi_factorize(np.diag([2.0, 1.0]))
    assert np.allclose(d, [2.0, 1.0])
    assert np.allclose(np.abs(u), np.eye(2), atol=1e-12)
    assert np.allclose(u @ np.diag([2.0, 1.0]) @ u.T, np.diag(d))


def test_takagi_negative_scalar_phase():
    u, d = mc.takagi_factorize(np.array([[-1.0]]))
    assert np.allclose(d, [1.0])
    assert abs(u[0, 0].real) < 1e-8 and abs(abs(u[0, 0]) - 1.0) < 1e-12


def test_takagi_round_trip_recovers_singular_values():
    rng = np.random.default_rng(11)
    for n in (2, 3, 4, 6):
        for _ in range(10):
            d0 = np.sort(rng.uniform(0.0, 2.0, size=n))[::-1]
            q = random_unitary(rng, n)
            s = q.T @ np.diag(d0) @ q
            u, d = mc.takagi_factorize(s)
            assert np.allclose(d, d0, atol=1e-9)
            resid = np.linalg.norm(u @ s @ u.T - np.diag(d))
            assert resid <= 1e-9 * max(1.0, np.linalg.norm(s))


def test_takagi_matches_singular_values_of_generic_symmetric():
    rng = np.random.default_rng(12)
    for _ in range(30):
        n = int(rng.integers(1, 7))
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        s = g + g.T
        u, d = mc.takagi_factorize(s)
        sv = np.linalg.svd(s, compute_uv=False)
        assert np.allclose(d, sv, atol=1e-9)
        assert np.linalg.norm(u @ u.conj().T - np.eye(n)) < 1e-10


def test_takagi_degenerate_and_zero_blocks():
    # all singular values equal
    s = mc.kron(mc.SIGMA_Y, mc.SIGMA_Y).real.astype(complex)
    u, d = mc.takagi_factorize(s)
    assert np.allclose(d, np.ones(4))
    assert np.linalg.norm(u @ s @ u.T - np.diag(d)) < 1e-10
    # explicit zero block
    s = np.diag([3.0, 0.0, 0.0]).astype(complex)
    u, d = mc.takagi_factorize(s)
    assert np.allclose(d, [3.0, 0.0, 0.0])
    assert np.linalg.norm(u @ s @ u.T - np.diag(d)) < 1e-10
    assert np.linalg.norm(u @ u.conj().T - np.eye(3)) < 1e-10


def test_takagi_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        mc.takagi_factorize(np.array([[0.0, 1.0], [2.0, 0.0]]))
