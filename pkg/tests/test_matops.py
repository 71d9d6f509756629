import math

import numpy as np
import pytest

from psokit.matops import (
    KreinBlockOperator,
    SubspaceBasis,
    cayley,
    interspherical,
    inverse_cayley,
    is_singular,
    opnorm,
    random_krein_unitary,
    wandering_check,
)


def random_hermitian(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def twisted_shift(d, twist=-1.0):
    u = np.zeros((d, d), dtype=complex)
    for k in range(d - 1):
        u[k + 1, k] = 1.0
    u[0, d - 1] = twist
    return u


# -- Cayley transform --------------------------------------------------------


def test_cayley_scalar_fixtures():
    assert cayley([[0.0]]) == pytest.approx(np.array([[-1.0]]))
    assert cayley([[1.0]]) == pytest.approx(np.array([[1j]]))
    assert inverse_cayley([[-1.0]]) == pytest.approx(np.array([[0.0]]))
    assert inverse_cayley([[1j]]) == pytest.approx(np.array([[1.0]]))


def test_cayley_round_trip_random():
    rng = np.random.default_rng(0)
    for n in (2, 5, 9):
        a = random_hermitian(rng, n)
        u = cayley(a)
        assert opnorm(u.conj().T @ u - np.eye(n)) <= 1e-10
        back = inverse_cayley(u)
        assert opnorm(back - a) <= 1e-9 * (1 + opnorm(a))
        assert opnorm(back - back.conj().T) <= 1e-10 * (1 + opnorm(a))


def test_cayley_rejects_non_hermitian():
    with pytest.raises(ValueError, match="hermitian"):
        cayley([[0.0, 1.0], [0.0, 0.0]])


def test_inverse_cayley_rejects_eigenvalue_one():
    with pytest.raises(ValueError, match="eigenvalue 1"):
        inverse_cayley(np.eye(3))


def test_inverse_cayley_of_twisted_shift_is_hermitian():
    a = inverse_cayley(twisted_shift(8))
    assert opnorm(a - a.conj().T) <= 1e-11


# -- Krein block operators and the linear fractional transform ---------------


def test_identity_transform_is_identity():
    k = KreinBlockOperator.identity(3)
    rng = np.random.default_rng(1)
    z = rng.normal(size=(3, 3)) * 0.2
    np.testing.assert_array_equal(interspherical(k, z), z)


def test_hyperbolic_fixture():
    r = math.log(2)
    k = KreinBlockOperator([[math.cosh(r)]], [[math.sinh(r)]],
                           [[math.sinh(r)]], [[math.cosh(r)]])
    assert interspherical(k, 0.0) == pytest.approx(0.6, abs=1e-12)


def test_krein_unitarity_required():
    with pytest.raises(ValueError, match="Krein"):
        KreinBlockOperator([[2.0]], [[0.0]], [[0.0]], [[1.0]])


def test_random_krein_unitary_properties():
    rng = np.random.default_rng(2)
    for _ in range(100):
        m = int(rng.integers(1, 4))
        k = random_krein_unitary(m, rng)
        assert k.krein_defect() <= 1e-10
        z = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        z *= 0.9 / max(opnorm(z), 1e-9)
        phi = interspherical(k, z)
        assert opnorm(np.atleast_2d(phi)) <= 1 + 1e-10


def test_composition_law():
    rng = np.random.default_rng(3)
    for _ in range(100):
        m = int(rng.integers(1, 4))
        k1 = random_krein_unitary(m, rng)
        k2 = random_krein_unitary(m, rng)
        z = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        z *= rng.uniform(0, 0.9) / max(opnorm(z), 1e-9)
        composite = k2.compose(k1)
        assert composite.krein_defect() <= 1e-10
        lhs = np.atleast_2d(interspherical(composite, z))
        rhs = np.atleast_2d(interspherical(k2, np.atleast_2d(interspherical(k1, z))))
        assert opnorm(lhs - rhs) <= 1e-10


def test_interspherical_rejects_expansions():
    k = KreinBlockOperator.identity(1)
    with pytest.raises(ValueError, match="exceeds 1"):
        interspherical(k, 1.5)


# -- wandering subspaces ------------------------------------------------------


def test_twisted_shift_wanders_until_full_period():
    for d in (8, 16):
        u = twisted_shift(d)
        basis = SubspaceBasis.coordinate(d, 0)
        report = wandering_check(u, basis, n_max=d + 2)
        assert report.first_violation == d
        assert all(v <= 1e-12 for v in report.defect_per_n[: d - 1])
        assert report.defect_per_n[d - 1] == pytest.approx(1.0)


def test_identity_violates_immediately():
    report = wandering_check(np.eye(4), SubspaceBasis.coordinate(4, 0), 3)
    assert report.first_violation == 1
    assert not report.is_wandering


def test_rotation_block_violates_immediately():
    th = 0.7
    rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    u = np.kron(np.eye(2), rot)
    report = wandering_check(u, SubspaceBasis.coordinate(4, 0), 5)
    assert report.first_violation == 1
    assert report.defect_per_n[0] == pytest.approx(abs(math.cos(th)))


def test_wandering_invariant_under_unitary_conjugation():
    rng = np.random.default_rng(4)
    d = 8
    u = twisted_shift(d)
    basis = SubspaceBasis.coordinate(d, 0)
    w, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    u2 = w @ u @ w.conj().T
    basis2 = SubspaceBasis(w @ basis.vectors)
    r1 = wandering_check(u, basis, d)
    r2 = wandering_check(u2, basis2, d)
    assert r1.first_violation == r2.first_violation
    np.testing.assert_allclose(r1.defect_per_n, r2.defect_per_n, atol=1e-10)


def test_wandering_rejects_non_unitary():
    with pytest.raises(ValueError, match="unitary"):
        wandering_check(np.diag([0.5, 1.0]), SubspaceBasis.coordinate(2, 0), 2)


# -- singularity test ----------------------------------------------------------


def test_is_singular_fixtures():
    assert is_singular([[0.0]])
    assert not is_singular(np.eye(2))
    assert is_singular([[1.0, 0.0], [0.0, 1e-14]], tol=1e-10)


def test_subspace_basis_validation():
    with pytest.raises(ValueError, match="orthonormal"):
        SubspaceBasis(np.array([[1.0], [1.0]]))
    b = SubspaceBasis.span(np.array([[1.0, 1.0], [1.0, -1.0], [0.0, 0.0]]))
    assert b.dim == 2 and b.ambient_dim == 3
