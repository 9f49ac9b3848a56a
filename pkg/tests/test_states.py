"""State constructors: invariants, conventions, and spot values."""

import numpy as np
import pytest

from lsdecomp import matcore as mc
from lsdecomp import states as st
from lsdecomp.errors import (
    DimensionTooLarge,
    InvalidProbabilities,
    ParamOutOfRange,
    RawValidationFailed,
    ThetaOutOfRange,
)

from helpers import random_unitary


def assert_density(dm: st.DensityMatrix):
    assert abs(np.trace(dm.mat) - 1.0) <= 1e-12
    assert np.linalg.norm(dm.mat - dm.mat.conj().T) <= 1e-12 * max(1.0, np.linalg.norm(dm.mat))
    assert np.linalg.eigvalsh(dm.mat)[0] >= -1e-9
    assert dm.mat.shape[0] == int(np.prod(dm.dims))


def test_bell_basis_orthonormal_and_amplitudes():
    basis = st.bell_basis_22()
    assert np.allclose(basis @ basis.conj().T, np.eye(4))
    assert np.allclose(basis[0], np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_bd22_vertex_is_bell_projector():
    rho = st.make_bd22([1, 0, 0, 0])
    psi = st.bell_basis_22()[0]
    assert np.allclose(rho.mat, np.outer(psi, psi.conj()))


def test_bd22_uniform_is_maximally_mixed():
    assert np.allclose(st.make_bd22([0.25] * 4).mat, np.eye(4) / 4)


def test_bd22_correlation_vector():
    assert st.bd22_correlation([1, 0, 0, 0]) == (1.0, -1.0, 1.0)
    assert np.allclose(st.bd22_correlation([0.7, 0.1, 0.1, 0.1]), (0.6, -0.6, 0.6))


def test_bd22_matches_pauli_expansion():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = rng.dirichlet(np.ones(4))
        t = st.bd22_correlation(p)
        expansion = np.eye(4, dtype=complex)
        for i in range(3):
            expansion = expansion + t[i] * mc.kron(mc.PAULI[i], mc.PAULI[i])
        assert np.linalg.norm(st.make_bd22(p).mat - expansion / 4.0) <= 1e-12


def test_bd22_tetrahedron_membership():
    rng = np.random.default_rng(1)
    for _ in range(200):
        t1, t2, t3 = st.bd22_correlation(rng.dirichlet(np.ones(4)))
        slacks = [
            1 + t1 - t2 + t3,
            1 - t1 + t2 + t3,
            1 + t1 + t2 - t3,
            1 - t1 - t2 - t3,
        ]
        assert min(slacks) >= -1e-12


def test_icd_orthonormal_every_theta():
    for theta in np.linspace(0.1, np.pi / 2 - 0.1, 7):
        basis = st.iso_basis(theta)
        assert np.allclose(basis @ basis.conj().T, np.eye(4))


def test_icd_at_pi4_equals_bd22():
    rng = np.random.default_rng(2)
    for _ in range(50):
        p = rng.dirichlet(np.ones(4))
        a = st.make_icd(np.pi / 4, p)
        b = st.make_bd22(p)
        assert np.linalg.norm(a.mat - b.mat) <= 1e-12


def test_icd_vertex_and_validity():
    rho = st.make_icd(np.pi / 4, [1, 0, 0, 0])
    psi = st.bell_basis_22()[0]
    assert np.allclose(rho.mat, np.outer(psi, psi.conj()))
    assert_density(st.make_icd(np.pi / 6, [0.6, 0.2, 0.1, 0.1]))
    with pytest.raises(ThetaOutOfRange):
        st.make_icd(0.0, [0.25] * 4)
    with pytest.raises(ThetaOutOfRange):
        st.make_icd(np.pi / 2, [0.25] * 4)


def test_bd23_basis_and_states():
    basis = st.bell_basis_23()
    assert np.allclose(basis @ basis.conj().T, np.eye(6))
    assert np.allclose(st.make_bd23([1 / 6.0] * 6).mat, np.eye(6) / 6)
    # p = (1, 0, ..., 0) is the pure (|11> + |22>)/sqrt(2)
    v = np.zeros(6)
    v[0] = v[4] = 1 / np.sqrt(2)
    assert np.allclose(st.make_bd23([1, 0, 0, 0, 0, 0]).mat, np.outer(v, v))


def test_werner_singlet_and_psd():
    singlet = st.make_bd22([0, 0, 0, 1])
    assert np.linalg.norm(st.make_werner(2, -1.0).mat - singlet.mat) <= 1e-14
    # d=3, f=0 -> (3I - F)/24 must be PSD (F has eigenvalues +-1)
    w = st.make_werner(3, 0.0)
    assert np.allclose(w.mat, (3 * np.eye(9) - mc.swap_operator(3)) / 24)
    assert_density(w)


def test_werner_trace_one_random_params():
    rng = np.random.default_rng(3)
    for _ in range(20):
        d = int(rng.integers(2, 6))
        f = rng.uniform(-1, 1)
        assert abs(np.trace(st.make_werner(d, f).mat) - 1.0) <= 1e-12


def test_werner_uu_invariance():
    rng = np.random.default_rng(4)
    for d in (2, 3):
        u = random_unitary(rng, d)
        uu = mc.kron(u, u)
        rho = st.make_werner(d, rng.uniform(-1, 1))
        assert np.linalg.norm(uu @ rho.mat @ uu.conj().T - rho.mat) <= 1e-9


def test_isotropic_special_points():
    d = 3
    psi = st.max_entangled(d)
    proj = np.outer(psi, psi.conj())
    assert np.linalg.norm(st.make_isotropic(d, 1.0).mat - proj) <= 1e-14
    assert np.linalg.norm(st.make_isotropic(d, 1.0 / d**2).mat - np.eye(9) / 9) <= 1e-14


def test_isotropic_fidelity_parameterization():
    rng = np.random.default_rng(5)
    for _ in range(20):
        d = int(rng.integers(2, 5))
        fid = rng.uniform(0, 1)
        psi = st.max_entangled(d)
        rho = st.make_isotropic(d, fid)
        assert np.real(psi.conj() @ rho.mat @ psi) == pytest.approx(fid, abs=1e-12)


def test_isotropic_uustar_invariance():
    rng = np.random.default_rng(6)
    for d in (2, 3):
        u = random_unitary(rng, d)
        uustar = mc.kron(u, u.conj())
        rho = st.make_isotropic(d, rng.uniform(0, 1))
        assert np.linalg.norm(uustar @ rho.mat @ uustar.conj().T - rho.mat) <= 1e-9


def test_horodecki33_structure():
    for alpha in (2.0, 3.3, 5.0):
        assert_density(st.make_horodecki33(alpha))
    # alpha = 5 has no sigma_minus weight: the <21| diagonal entry vanishes
    r5 = st.make_horodecki33(5.0)
    assert r5.mat[3, 3] == 0.0
    # affine in alpha
    r37 = st.make_horodecki33(3.7)
    mix = 0.65 * st.make_horodecki33(3.0).mat + 0.35 * st.make_horodecki33(5.0).mat
    assert np.linalg.norm(r37.mat - mix) <= 1e-14


def test_multi_iso_points():
    d, n = 2, 3
    assert np.allclose(st.make_multi_iso(d, n, 0.0).mat, np.eye(8) / 8)
    psi = st.max_entangled(d, n)
    assert np.allclose(st.make_multi_iso(d, n, 1.0).mat, np.outer(psi, psi.conj()))
    rho = st.make_multi_iso(2, 3, 0.5)
    assert np.real(psi.conj() @ rho.mat @ psi) == pytest.approx(0.5 + 0.5 / 8, abs=1e-12)
    with pytest.raises(DimensionTooLarge):
        st.make_multi_iso(3, 4, 0.5)


def test_every_family_satisfies_density_invariants():
    rng = np.random.default_rng(7)
    for _ in range(200):
        assert_density(st.make_bd22(rng.dirichlet(np.ones(4))))
        assert_density(st.make_icd(rng.uniform(0.05, np.pi / 2 - 0.05), rng.dirichlet(np.ones(4))))
        assert_density(st.make_bd23(rng.dirichlet(np.ones(6))))
        assert_density(st.make_werner(int(rng.integers(2, 5)), rng.uniform(-1, 1)))
        assert_density(st.make_isotropic(int(rng.integers(2, 5)), rng.uniform(0, 1)))
        assert_density(st.make_horodecki33(rng.uniform(2, 5)))
        assert_density(st.make_multi_iso(2, int(rng.integers(2, 6)), rng.uniform(0, 1)))


def test_probability_validation():
    with pytest.raises(InvalidProbabilities):
        st.make_bd22([0.5, 0.5, 0.5, -0.5])
    with pytest.raises(InvalidProbabilities):
        st.make_bd22([0.3, 0.3, 0.3, 0.3])
    # rounding-level noise is renormalized
    rho = st.make_bd22([0.25 + 2e-10, 0.25, 0.25, 0.25])
    assert abs(np.trace(rho.mat) - 1.0) <= 1e-14


def test_param_validation():
    with pytest.raises(ParamOutOfRange):
        st.make_werner(1, 0.0)
    with pytest.raises(ParamOutOfRange):
        st.make_werner(2, -1.5)
    with pytest.raises(ParamOutOfRange):
        st.make_isotropic(3, 1.5)
    with pytest.raises(ParamOutOfRange):
        st.make_horodecki33(1.0)
    with pytest.raises(ParamOutOfRange):
        st.make_multi_iso(2, 1, 0.5)


def test_build_dispatch_and_raw():
    spec = st.Werner(d=2, f=-0.5)
    assert np.allclose(st.build(spec).mat, st.make_werner(2, -0.5).mat)
    ok = st.build(st.Raw(dims=(2, 2), matrix=np.eye(4) / 4))
    assert ok.dims == (2, 2)
    with pytest.raises(RawValidationFailed):
        st.build(st.Raw(dims=(2, 2), matrix=np.eye(4) * 0.225))
    with pytest.raises(RawValidationFailed):
        st.build(st.Raw(dims=(2, 2), matrix=np.diag([1.5, -0.5, 0.0, 0.0])))
