from fractions import Fraction as F

import pytest

from submodcurv.errors import DomainError, TruncationError
from submodcurv.ideals import IdealSpec
from submodcurv.linalg import leading_principal_minors
from submodcurv.polynomials import Poly, parse_poly
from submodcurv.rkhs import (DiagonalFilteredKernel, GramFormKernel,
                             RankOneCorrectedKernel, WeightedPolydiscModule,
                             ambient_kernel_exact, diag_coeff,
                             monomial_norm_sq, poly_inner, submodule_kernel)


def test_module_validation():
    m = WeightedPolydiscModule(2, (1, 2))
    assert m.weights == (F(1), F(2))
    assert m.has_integer_weights()
    assert not WeightedPolydiscModule(2, (F(1, 2), 1)).has_integer_weights()
    with pytest.raises(DomainError):
        WeightedPolydiscModule(2, (1, 0))
    with pytest.raises(DomainError):
        WeightedPolydiscModule(2, (1, 1, 1))
    assert WeightedPolydiscModule.hardy(3).weights == (F(1),) * 3


def test_diag_coeff_values():
    hardy = WeightedPolydiscModule.hardy(2)
    assert diag_coeff(hardy, (3, 5)) == 1
    m = WeightedPolydiscModule(2, (2, 1))
    # poch(2, a)/a! = a + 1 in the first slot
    assert diag_coeff(m, (0, 0)) == 1
    assert diag_coeff(m, (1, 0)) == 2
    assert diag_coeff(m, (2, 0)) == 3
    assert diag_coeff(m, (2, 4)) == 3
    assert monomial_norm_sq(m, (2, 0)) == F(1, 3)


def test_poly_inner_orthogonality():
    m = WeightedPolydiscModule(2, (2, 3))
    z1 = Poly.variable(2, 0)
    z2 = Poly.variable(2, 1)
    assert poly_inner(m, z1, z2) == 0
    assert poly_inner(m, z1, z1) == F(1, 2)
    assert poly_inner(m, z1 + z2, z1) == F(1, 2)
    p = parse_poly("z1 z2", 2)
    assert poly_inner(m, p, p) == F(1, 6)


def test_ambient_kernel_product_form():
    hardy = WeightedPolydiscModule.hardy(2)
    z = (F(1, 3), F(1, 5))
    w = (F(1, 7), F(1, 2))
    want = 1 / ((1 - F(1, 3) * F(1, 7)) * (1 - F(1, 5) * F(1, 2)))
    assert ambient_kernel_exact(hardy, z, w) == want
    m = WeightedPolydiscModule(2, (2, 1))
    want2 = (1 - F(1, 21)) ** (-2) * (1 - F(1, 10)) ** (-1)
    assert ambient_kernel_exact(m, z, w) == want2
    with pytest.raises(DomainError):
        ambient_kernel_exact(hardy, (F(1), F(0)), (F(0), F(0)))


def test_single_variable_filtered_kernel():
    # <z1>: the z1-divisible part of the Hardy kernel
    hardy = WeightedPolydiscModule.hardy(2)
    ideal = IdealSpec.monomial(2, [(1, 0)])
    K = submodule_kernel(hardy, ideal)
    assert K.variant == "diagonal_filtered"
    z = (F(1, 5), F(1, 3))
    w = (F(1, 7), F(1, 2))
    x1, x2 = F(1, 5) * F(1, 7), F(1, 3) * F(1, 2)
    want = x1 / ((1 - x1) * (1 - x2))
    assert K.eval_exact(z, w) == want


def test_maximal_ideal_kernel_is_full_minus_one():
    hardy = WeightedPolydiscModule.hardy(2)
    ideal = IdealSpec.monomial(2, [(1, 0), (0, 1)])
    K = submodule_kernel(hardy, ideal)
    z = (F(1, 4), F(-1, 3))
    w = (F(2, 5), F(1, 6))
    assert K.eval_exact(z, w) == ambient_kernel_exact(hardy, z, w) - 1


def test_filtered_truncated_brackets_exact():
    m = WeightedPolydiscModule(2, (1, 2))
    ideal = IdealSpec.monomial(2, [(2, 1), (0, 3)])
    K = submodule_kernel(m, ideal)
    z = (F(1, 3), F(-1, 4))
    w = (F(1, 5), F(2, 7))
    exact = K.eval_exact(z, w)
    for N in (6, 10, 14):
        b = K.eval_truncated(z, w, N)
        assert abs(exact - b.value) <= b.bound


def test_fractional_weights_need_truncation():
    m = WeightedPolydiscModule(2, (F(1, 2), F(3, 2)))
    ideal = IdealSpec.monomial(2, [(1, 0)])
    K = submodule_kernel(m, ideal)
    z = (F(1, 3), F(1, 5))
    with pytest.raises(DomainError):
        K.eval_exact(z, z)
    b1 = K.eval_truncated(z, z, 10)
    b2 = K.eval_truncated(z, z, 20)
    assert b2.bound < b1.bound
    assert abs(b1.value - b2.value) <= b1.bound + b2.bound


def test_rank_one_corrected_kernel():
    hardy = WeightedPolydiscModule.hardy(2)
    g1 = parse_poly("z1 - 1/3", 2)
    g2 = parse_poly("z2", 2)
    ideal = IdealSpec.from_generators(2, [g1, g2])
    assert ideal.family == "coordinate_vanishing"
    K = submodule_kernel(hardy, ideal)
    assert K.variant == "rank_one_corrected"
    a = (F(1, 3), F(0))
    z = (F(1, 5), F(1, 3))
    w = (F(1, 7), F(1, 2))
    assert K.eval_exact(a, a) == 0
    assert K.eval_exact(z, a) == 0
    full = ambient_kernel_exact(hardy, z, w)
    corr = (ambient_kernel_exact(hardy, z, a)
            * ambient_kernel_exact(hardy, a, w)
            / ambient_kernel_exact(hardy, a, a))
    assert K.eval_exact(z, w) == full - corr


def test_rank_one_two_points():
    hardy = WeightedPolydiscModule.hardy(1)
    K = RankOneCorrectedKernel(hardy, [(F(1, 2),), (F(-1, 3),)])
    assert K.eval_exact((F(1, 2),), (F(1, 2),)) == 0
    assert K.eval_exact((F(-1, 3),), (F(-1, 3),)) == 0
    v = K.eval_exact((F(1, 5),), (F(1, 5),))
    assert v > 0


def _gram_schmidt_kernel(module, polys, z, w):
    """Orthogonal-basis oracle: K(z, w) = sum o_i(z) o_i(w) / <o_i, o_i>
    over an unnormalized Gram-Schmidt run, for real rational points."""
    basis = []
    for p in polys:
        for q in basis:
            p = p - q * Poly.constant(
                module.dim, poly_inner(module, p, q) / poly_inner(module, q, q))
        if not p.is_zero():
            basis.append(p)
    total = F(0)
    for q in basis:
        total += q.evaluate(z) * q.evaluate(w) / poly_inner(module, q, q)
    return total


def test_gram_form_matches_gram_schmidt_oracle():
    m = WeightedPolydiscModule(2, (1, 2))
    ideal = IdealSpec.catalogued("product_difference", 2)
    gf = GramFormKernel.from_ideal(m, ideal, 4)
    # candidate list: all monomial multiples z^beta p_j with degree <= 4
    polys = []
    from submodcurv.algebra import iter_multiindices
    for g in ideal.generators:
        for beta in iter_multiindices(2, 4 - g.degree):
            polys.append(g.shift_by_monomial(beta))
    z = (F(1, 3), F(1, 7))
    w = (F(-1, 4), F(2, 5))
    want = _gram_schmidt_kernel(m, polys, z, w)
    assert gf.eval_exact(z, w) == want


def test_gram_form_needs_enough_degree():
    m = WeightedPolydiscModule.hardy(2)
    ideal = IdealSpec.monomial(2, [(3, 0)])
    with pytest.raises(TruncationError):
        GramFormKernel.from_ideal(m, ideal, 2)


def test_kernel_symmetry_and_positivity():
    m = WeightedPolydiscModule(2, (1, 2))
    ideal = IdealSpec.monomial(2, [(1, 1)])
    K = submodule_kernel(m, ideal)
    pts = [(F(1, 3), F(1, 4)), (F(-1, 5), F(1, 2)), (F(2, 7), F(-1, 3))]
    # real rational points: conjugate symmetry reads as plain symmetry
    for p in pts:
        for q in pts:
            assert K.eval_exact(p, q) == K.eval_exact(q, p)
    gram = [[K.eval_exact(p, q) for q in pts] for p in pts]
    assert all(d > 0 for d in leading_principal_minors(gram))
