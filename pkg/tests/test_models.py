import cmath
import math

import numpy as np
import pytest

from psokit import models
from psokit.expfun import (
    NEG_INF,
    POS_INF,
    PiecewiseExpFunction,
    inner,
    inner_quadrature,
    norm,
)
from psokit.models import (
    HaarSystem,
    MomentumModel,
    NonlocalModel,
    ShiftModel,
    continuous_bump,
    haar_gram,
    momentum_defect,
    momentum_eigen_test,
    nonlocal_defect,
    restriction_pairing,
    shift_cayley_identity,
    shift_defect,
    shift_orthogonality_defect,
    shift_t_parameter,
    shift_wandering_report,
    similarity_conjugation_check,
    weyl_relation_check,
)


def left_exp(c=1.0, s=1.0):
    return PiecewiseExpFunction.single(c, NEG_INF, 0.0, s)


def right_exp(c=1.0, s=-1.0):
    return PiecewiseExpFunction.single(c, 0.0, POS_INF, s)


# -- momentum model -----------------------------------------------------------


def test_momentum_defects_are_one_sided_exponentials():
    mom = MomentumModel()
    assert momentum_defect(mom, 1j) == left_exp(1.0, 1.0)
    assert momentum_defect(mom, -1j) == right_exp(1.0, -1.0)
    # z = 1 + 2i: exponent -iz = 2 - i, supported on the left half line
    assert momentum_defect(mom, 1 + 2j) == PiecewiseExpFunction.single(
        1.0, NEG_INF, 0.0, 2 - 1j)


def test_momentum_defect_normalization():
    mom = MomentumModel()
    f = momentum_defect(mom, 2j, normalized=True)
    assert norm(f) == pytest.approx(1.0, abs=1e-14)


def test_momentum_defect_satisfies_defect_equation():
    mom = MomentumModel()
    for z in (1j, -2j, 3 + 0.5j):
        f = mom.defects(z)
        residual = (mom.adjoint_apply(f) - z * f).coefficient_norm()
        assert residual <= 1e-12


def test_momentum_defect_subspaces_orthogonal():
    mom = MomentumModel()
    assert inner(mom.defects(2j), mom.defects(-3j)) == 0


def test_momentum_eigen_test():
    assert not momentum_eigen_test([[1.0]], 2j)
    assert momentum_eigen_test([[0.0]], 2j)
    assert not momentum_eigen_test([[0.0]], -2j)
    assert not momentum_eigen_test([[1.0]], -2j)
    with pytest.raises(ValueError):
        momentum_eigen_test([[1.0]], 1.0)


# -- similarity of real-spectrum extensions ------------------------------------


def boundary_sample(t1, rng, m=1):
    """Random sample satisfying T1 f(0-) = f(0+): prescribe the left value."""
    t1 = np.atleast_2d(np.asarray(t1, dtype=complex))
    v = rng.normal(size=m) + 1j * rng.normal(size=m)
    w = t1 @ v
    comps = []
    for j in range(m):
        a = rng.uniform(0.5, 2.0)
        b = rng.uniform(0.5, 2.0)
        comps.append(left_exp(v[j], a) + right_exp(w[j], -b))
    return comps if m > 1 else comps[0]


def test_similarity_identity_pair():
    rng = np.random.default_rng(1)
    samples = [boundary_sample([[1.0]], rng) for _ in range(3)]
    assert similarity_conjugation_check([[1.0]], [[1.0]], samples) <= 1e-14


def test_similarity_phase_pair():
    rng = np.random.default_rng(2)
    phase = cmath.exp(1j * math.pi / 3)
    samples = [boundary_sample([[1.0]], rng) for _ in range(4)]
    assert similarity_conjugation_check([[1.0]], [[phase]], samples) <= 1e-12


def test_similarity_scaling_pair():
    rng = np.random.default_rng(3)
    samples = [boundary_sample([[2.0]], rng) for _ in range(4)]
    assert similarity_conjugation_check([[2.0]], [[1.0]], samples) <= 1e-12


def test_similarity_matrix_case():
    rng = np.random.default_rng(4)
    t1 = np.array([[1.0, 0.5], [0.0, -1.0]], dtype=complex)
    t2 = np.array([[0.5j, 0.0], [1.0, 2.0]], dtype=complex)
    samples = [boundary_sample(t1, rng, m=2) for _ in range(5)]
    assert similarity_conjugation_check(t1, t2, samples) <= 1e-12


def test_similarity_rejects_singular_t1():
    with pytest.raises(ValueError, match="invertible"):
        similarity_conjugation_check([[0.0]], [[1.0]], [])


def test_similarity_rejects_bad_sample():
    rng = np.random.default_rng(5)
    sample = boundary_sample([[1.0]], rng)
    with pytest.raises(ValueError, match="boundary condition"):
        similarity_conjugation_check([[2.0]], [[1.0]], [sample])


# -- Weyl commutation relation ---------------------------------------------------


def weyl_fixtures():
    two_sided = left_exp(1.0, 1.0) + right_exp(1.0, -1.0)  # exp(-|x|)
    matched = left_exp(1.0, 2.0) + right_exp(1.0, -3.0)  # continuous at 0
    bumped = two_sided + continuous_bump(-0.5, 1.5, 0.8, 2.1, 0.7 - 0.2j)
    return [two_sided, matched, bumped]


@pytest.mark.parametrize("t", [-2.0, 0.5, 1.0])
def test_weyl_relation_exact(t):
    for f in weyl_fixtures():
        assert weyl_relation_check(t, f) <= 1e-14


def test_weyl_relation_trivial_at_zero():
    assert weyl_relation_check(0.0, weyl_fixtures()[0]) == 0


def test_weyl_rejects_discontinuous():
    f = left_exp() - right_exp()
    with pytest.raises(ValueError, match="jump"):
        weyl_relation_check(1.0, f)


# -- shift model -------------------------------------------------------------------


def test_shift_defect_at_i_is_shifted_basis_vector():
    model = ShiftModel(d=8)
    assert shift_t_parameter(1j) == 0
    for method in ("direct", "series"):
        v = shift_defect(model, 1j, method)
        expected = np.zeros(8, dtype=complex)
        expected[1] = 1.0
        np.testing.assert_allclose(v, expected, atol=1e-12)


def test_shift_defect_methods_agree():
    model = ShiftModel(d=16)
    assert abs(shift_t_parameter(2j)) == pytest.approx(1 / 3)
    direct = shift_defect(model, 2j, "direct")
    series = shift_defect(model, 2j, "series")
    np.testing.assert_allclose(direct, series, atol=1e-12)


def test_shift_defect_at_minus_i_spans_generator():
    model = ShiftModel(d=8)
    v = shift_defect(model, -1j, "direct")
    e0 = np.zeros(8)
    e0[0] = 1.0
    overlap = abs(np.vdot(e0, v)) / np.linalg.norm(v)
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_shift_series_rejects_lower_half_plane():
    model = ShiftModel(d=8)
    with pytest.raises(ValueError, match="series"):
        shift_defect(model, -2j, "series")


def test_shift_cayley_identity():
    model = ShiftModel(d=8)
    e0 = np.zeros(8)
    e0[0] = 1.0
    assert shift_cayley_identity(model, e0) <= 1e-12
    assert shift_cayley_identity(model, np.zeros(8)) == 0
    rng = np.random.default_rng(6)
    big = ShiftModel(d=32)
    for _ in range(5):
        x = rng.normal(size=32) + 1j * rng.normal(size=32)
        assert shift_cayley_identity(big, x) <= 1e-11


def test_shift_wandering_report():
    model = ShiftModel(d=8)
    report = shift_wandering_report(model)
    assert report.first_violation == 8
    assert max(report.defect_per_n[:7]) <= 1e-12


def test_shift_orthogonality_decay_law():
    defects = {d: shift_orthogonality_defect(ShiftModel(d), 2j) for d in (10, 16, 22, 28)}
    for d, value in defects.items():
        ratio = value / 3.0 ** (-(d - 1))
        assert 0.1 <= ratio <= 10.0
    for d in (10, 16, 22):
        step = defects[d + 6] / defects[d]
        assert 0.1 <= step / 3.0**-6 <= 10.0


def test_shift_model_validation():
    with pytest.raises(ValueError, match="at least 4"):
        ShiftModel(d=3)
    with pytest.raises(ValueError, match="unimodular"):
        ShiftModel(d=8, twist=2.0)
    # twist +1 makes 1 an eigenvalue of U, so no inverse Cayley exists
    with pytest.raises(ValueError, match="eigenvalue 1"):
        ShiftModel(d=8, twist=1.0)


# -- nonlocal models -------------------------------------------------------------


def test_nonlocal_defect_equation_residual_on_grid():
    for model in (NonlocalModel("I", 1.0), NonlocalModel("I", 4j),
                  NonlocalModel("II", 2j), NonlocalModel("II", 3 - 1j)):
        for z in (1j, -1j, 2 + 0.5j, -3 - 5j):
            assert models.defect_equation_residual(model, z) <= 1e-12


def test_nonlocal_case_i_pso_has_vanishing_gamma_minus():
    model = NonlocalModel("I", 4j)
    f = nonlocal_defect(model, 1j)
    assert abs(model.triplet.gamma_minus(f)) <= 1e-13
    assert abs(model.triplet.gamma_plus(f)) > 0.1


def test_nonlocal_case_ii_pairing_values():
    # (f_lam, f_nu) = conj(a) (2i - a) / (2 (1 - i lam)(1 - i conj(nu)))
    m2i = NonlocalModel("II", 2j)
    assert abs(inner(m2i.defects(1j), m2i.defects(-1j))) <= 1e-13

    m1 = NonlocalModel("II", 1.0)
    val = inner(m1.defects(1j), m1.defects(-1j))
    assert val == pytest.approx((-1 + 2j) / 8, abs=1e-12)
    # independent quadrature route agrees
    quad = inner_quadrature(m1.defects(1j), m1.defects(-1j), 1e-9)
    assert quad == pytest.approx((-1 + 2j) / 8, abs=1e-8)


def test_nonlocal_case_ii_closed_form_grid():
    lams = [complex(re, im) for re in (-5, -1, 0, 2, 5) for im in (0.1, 1.0, 10.0)]
    for a in (1.0, 1j, 2j, 3 - 1j):
        model = NonlocalModel("II", a)
        for lam in lams:
            for nu in (np.conj(l) for l in lams):
                got = inner(model.defects(lam), model.defects(complex(nu)))
                expected = (np.conj(a) * (2j - a)
                            / (2 * (1 - 1j * lam) * (1 - 1j * np.conj(nu))))
                assert got == pytest.approx(expected, abs=1e-10)


def test_nonlocal_zero_alpha_reduces_to_momentum_like():
    model = NonlocalModel("I", 0.0)
    assert model.gamma.is_zero
    f = model.defects(1j)
    assert abs(model.triplet.gamma_minus(f)) == 0


def test_nonlocal_rejects_unknown_case():
    with pytest.raises(ValueError, match="case"):
        NonlocalModel("III", 1.0)


def test_nonlocal_defect_normalized():
    model = NonlocalModel("II", 1.0)
    assert norm(nonlocal_defect(model, 1j, normalized=True)) == pytest.approx(1.0)


# -- Haar system -------------------------------------------------------------------


def test_haar_mother_is_normalized():
    psi = HaarSystem.mother()
    assert inner(psi, psi) == pytest.approx(1.0)


def test_haar_gram_small_block():
    system = HaarSystem(j_range=(0, 1), k_range=(0, 1))
    labels = system.labels()
    gram = haar_gram(system)
    np.testing.assert_allclose(gram, np.eye(len(labels)), atol=1e-14)
    # the specific classical cancellations
    assert inner(system.element(0, 0), system.element(0, 1)) == 0
    assert inner(system.element(0, 0), system.element(1, 0)) == 0


def test_haar_element_shape():
    system = HaarSystem(j_range=(-1, 1), k_range=(-1, 1))
    e = system.element(-1, 1)
    lo, hi = e.support()
    assert (lo, hi) == (2.0, 4.0)
    assert norm(e) == pytest.approx(1.0)


def test_haar_range_validation():
    with pytest.raises(ValueError, match="nonempty"):
        HaarSystem(j_range=(2, 1), k_range=(0, 0))


# -- subspace conditions carving restrictions out of the free momentum operator ----


def witness_family(p, q, r):
    u1 = left_exp(1.0, 1.0) + right_exp(1.0, -1.0)
    u2 = left_exp(1.0, 2.0) + right_exp(1.0, -3.0)
    u3 = continuous_bump(-1.5, 2.0, 0.7, 1.9)
    return p * u1 + q * u2 + r * u3


@pytest.mark.parametrize("coeffs", [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                    (0.3 - 1j, 2.0, -0.7 + 0.4j)])
def test_right_exponential_subspace_gives_point_condition(coeffs):
    # pairing against chi_(0,inf) exp(-x) is -i * u(0): the condition
    # "pairing = 0" is exactly the one-point restriction u(0) = 0
    u = witness_family(*coeffs)
    gamma = right_exp(1.0, -1.0)
    pairing = restriction_pairing(u, gamma)
    expected = -1j * u.limit(0.0, "-")
    assert pairing == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("coeffs", [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                    (-1.1, 0.25j, 1.5)])
def test_left_exponential_subspace_gives_integral_condition(coeffs):
    # pairing against chi_(-inf,0) exp(x) is i*(u(0) - 2 integral of u e^x),
    # the nonlocal restriction condition
    u = witness_family(*coeffs)
    gamma = left_exp(1.0, 1.0)
    pairing = restriction_pairing(u, gamma)
    expected = 1j * (u.limit(0.0, "-") - 2 * inner(u, gamma))
    assert pairing == pytest.approx(expected, abs=1e-12)


def test_restriction_pairing_rejects_discontinuous():
    with pytest.raises(ValueError, match="jump"):
        restriction_pairing(left_exp() - right_exp(), right_exp())
