from fractions import Fraction as F

import pytest

from submodcurv.algebra import MultiIndex, pochhammer
from submodcurv.errors import (DegeneracyError, DomainError,
                               TruncationError)
from submodcurv.frames import FrameSeries
from submodcurv.frames import (_metric_by_closed_form, _metric_by_monomial_sum,
                               decompose_coordinate_ideal, frame_on_zero_set,
                               frame_vector_at_base, grammian,
                               reconstruction_residual)
from submodcurv.ideals import IdealSpec
from submodcurv.rkhs import WeightedPolydiscModule, diag_coeff

E1 = MultiIndex.unit(2, 0)
E2 = MultiIndex.unit(2, 1)

WEIGHT_PAIRS = [(F(1), F(1)), (F(1), F(2)), (F(2), F(1)),
                (F(3, 2), F(1, 2)), (F(2), F(3))]


def test_coordinate_frame_metric_at_origin_is_weight_diagonal():
    for lam, mu in WEIGHT_PAIRS:
        mod = WeightedPolydiscModule(2, (lam, mu))
        H = grammian(decompose_coordinate_ideal(mod, 3))
        assert H.value_at_base() == [[lam, 0], [0, mu]]


def test_zero_set_frame_metric_at_origin():
    # <z1, z2^2> in three variables: leads are poch(w_v, p)/p!
    mod = WeightedPolydiscModule(3, (1, 1, 1))
    ideal = IdealSpec.from_generators(
        3, [IdealSpec.monomial(3, [(1, 0, 0)]).generators[0],
            IdealSpec.monomial(3, [(0, 2, 0)]).generators[0]])
    frame = frame_on_zero_set(mod, ideal, (F(0),) * 3, 3)
    H = grammian(frame)
    assert H.value_at_base() == [[F(1), F(0)], [F(0), F(1)]]
    assert H.is_diagonal()


def test_metric_series_coefficients_closed_forms():
    """Degree-two expansion of the coordinate-ideal metric.

    Frozen from a direct hand expansion of the splitting construction:
      H11[w1 wb1] = (l)_2 / 2        H11[w2 wb2] = l^3 m / (l+m)^2
      H22[w1 wb1] = l m^3 / (l+m)^2  H22[w2 wb2] = (m)_2 / 2
      H12[w2 wb1] = H21[w1 wb2] = l^2 m^2 / (l+m)^2
    """
    Z = MultiIndex.zero(2)
    for lam, mu in WEIGHT_PAIRS:
        mod = WeightedPolydiscModule(2, (lam, mu))
        H = grammian(decompose_coordinate_ideal(mod, 4)).matrix
        s = (lam + mu) ** 2
        assert H[0, 0].coefficient(E1, E1) == pochhammer(lam, 2) / 2
        assert H[0, 0].coefficient(E2, E2) == lam ** 3 * mu / s
        assert H[1, 1].coefficient(E1, E1) == lam * mu ** 3 / s
        assert H[1, 1].coefficient(E2, E2) == pochhammer(mu, 2) / 2
        assert H[0, 1].coefficient(E2, E1) == lam ** 2 * mu ** 2 / s
        assert H[1, 0].coefficient(E1, E2) == lam ** 2 * mu ** 2 / s
        # no linear terms: the coordinate frame is critical at the origin
        for i in range(2):
            for j in range(2):
                assert H[i, j].coefficient(E1, Z) == 0
                assert H[i, j].coefficient(Z, E2) == 0


def test_reconstruction_residual_coordinate_frames():
    for lam, mu in WEIGHT_PAIRS:
        mod = WeightedPolydiscModule(2, (lam, mu))
        frame = decompose_coordinate_ideal(mod, 4)
        assert reconstruction_residual(frame) == {}


def test_reconstruction_residual_zero_set_frames():
    cases = [
        (WeightedPolydiscModule(2, (1, 1)), (2,), (F(0), F(1, 4))),
        (WeightedPolydiscModule(2, (F(3, 2), F(1, 2))), (1,), (F(0), F(0))),
        (WeightedPolydiscModule(3, (1, 2, 1)), (1, 2), (F(0), F(0), F(1, 3))),
    ]
    for mod, powers, base in cases:
        ideal = IdealSpec.coordinate_powers(mod.dim, powers)
        frame = frame_on_zero_set(mod, ideal, base, 4)
        assert reconstruction_residual(frame) == {}


def test_grammian_paths_agree_at_origin():
    for mod, powers in [
        (WeightedPolydiscModule(2, (F(3, 2), F(1, 2))), (2,)),
        (WeightedPolydiscModule(2, (1, 2)), (1,)),
        (WeightedPolydiscModule(3, (1, 2, 1)), (1, 2)),
    ]:
        ideal = IdealSpec.coordinate_powers(mod.dim, powers)
        frame = frame_on_zero_set(mod, ideal, (F(0),) * mod.dim, 4)
        closed, scales = _metric_by_closed_form(frame)
        mono = _metric_by_monomial_sum(frame)
        assert all(s.is_one() for s in scales)
        for k in range(frame.count):
            assert closed[k, k] == mono[k, k]


def test_zero_set_frames_orthogonal():
    mod = WeightedPolydiscModule(3, (1, 2, 1))
    ideal = IdealSpec.coordinate_powers(3, (1, 2))
    frame = frame_on_zero_set(mod, ideal, (F(0), F(0), F(1, 3)), 4)
    H = grammian(frame)
    assert H.is_diagonal()


def test_recentering_matches_independent_geometric_expansion():
    """Series of 1/(1 - w2 wb2) recentered at b, rebuilt independently.

    With v = (b u + b ub + u ub)/(1 - b^2) the global metric reads
    (1 - b^2)^{-1} sum_k v^k; truncating that sum must reproduce the
    library's recentered metric series coefficient for coefficient.
    """
    from submodcurv.algebra import TruncSeries
    mod = WeightedPolydiscModule(2, (1, 1))
    ideal = IdealSpec.monomial(2, [(1, 0)])
    D = 6
    for b in (F(1, 3), F(1, 4), F(-2, 5)):
        frame = frame_on_zero_set(mod, ideal, (F(0), b), D)
        got = grammian(frame).matrix[0, 0]
        u = TruncSeries.w(2, D, 1)
        ub = TruncSeries.wbar(2, D, 1)
        v = (u.scale(b) + ub.scale(b) + u * ub).scale(1 / (1 - b * b))
        acc = TruncSeries.one(2, D)
        term = TruncSeries.one(2, D)
        for _ in range(D):
            term = term * v
            acc = acc + term
        want = acc.scale(1 / (1 - b * b))
        assert got == want

    # numeric cross-chart sanity: evaluating the chart series near its base
    # approximates the global closed value with a small geometric tail
    frame = frame_on_zero_set(mod, ideal, (F(0), F(1, 3)), 8)
    s = grammian(frame).matrix[0, 0]
    u = F(1, 20)
    got = s.evaluate((F(0), u), (F(0), u))
    w2 = F(1, 3) + u
    want = 1 / (1 - w2 * w2)
    assert abs(got - want) < F(1, 10 ** 6)


def test_frame_vector_at_base_leading_term():
    mod = WeightedPolydiscModule(2, (2, 1))
    ideal = IdealSpec.monomial(2, [(3, 0)])
    frame = frame_on_zero_set(mod, ideal, (F(0), F(0)), 4)
    vec = frame_vector_at_base(frame, 0)
    # at the origin the vector is c_(3,0) z1^3 plus higher z2-free terms
    lead = MultiIndex((3, 0))
    assert vec[lead] == diag_coeff(mod, lead)
    assert all(a[0] >= 3 for a in vec)


def test_adjoint_eigenvector_property():
    """The shift adjoints act on a frame vector at the base point by
    conjugate-coordinate scaling, after projection onto the submodule.

    Free direction: exact scaling with no projection needed.  Generator
    direction at a base with vanishing coordinate: scales to zero.
    """
    mod = WeightedPolydiscModule(2, (1, 2))
    ideal = IdealSpec.monomial(2, [(2, 0)])
    b = F(1, 3)
    frame = frame_on_zero_set(mod, ideal, (F(0), b), 6)
    vec = frame_vector_at_base(frame, 0)
    zcap = frame.trunc + 2

    # adjoint of multiplication by z2 maps z^a to (c_{a-e2}/c_a) z^{a-e2}
    shifted = {}
    for a, coef in vec.items():
        if a[1] >= 1:
            tgt = a - E2
            shifted[tgt] = shifted.get(tgt, F(0)) + coef * (
                diag_coeff(mod, tgt) / diag_coeff(mod, a))
    for a, coef in shifted.items():
        if a.degree < zcap - 1:  # inside the stored support window
            assert coef == b * vec.get(a, F(0)), a

    # adjoint of z1 then projection onto {a1 >= 2} kills everything:
    # the base has first coordinate zero
    shifted1 = {}
    for a, coef in vec.items():
        if a[0] >= 1:
            tgt = a - E1
            if tgt[0] >= 2:
                shifted1[tgt] = shifted1.get(tgt, F(0)) + coef * (
                    diag_coeff(mod, tgt) / diag_coeff(mod, a))
    for a, coef in shifted1.items():
        if a.degree < zcap - 1:
            assert coef == 0 * vec.get(a, F(0)), a


def test_degenerate_frame_rejected():
    mod = WeightedPolydiscModule(2, (1, 1))
    with pytest.raises(DomainError):
        # base point off the zero variety
        frame_on_zero_set(mod, IdealSpec.monomial(2, [(1, 0)]),
                          (F(1, 2), F(0)), 4)
    with pytest.raises(TruncationError):
        decompose_coordinate_ideal(mod, 1)  # too shallow for a metric


def test_dependent_frame_fails_positivity():
    mod = WeightedPolydiscModule(2, (1, 1))
    good = decompose_coordinate_ideal(mod, 3)
    doctored = FrameSeries(
        module=good.module, kind=good.kind, base_point=good.base_point,
        trunc=good.trunc, gen_vars=good.gen_vars, gen_powers=good.gen_powers,
        vectors=(good.vectors[0], good.vectors[0]),  # duplicated vector
        free_slots=good.free_slots, lead_coeffs=good.lead_coeffs,
        splitting_note=good.splitting_note)
    with pytest.raises(DegeneracyError):
        grammian(doctored)


def test_base_point_outside_polydisc_rejected():
    mod = WeightedPolydiscModule(2, (1, 1))
    with pytest.raises(DomainError):
        frame_on_zero_set(mod, IdealSpec.monomial(2, [(1, 0)]),
                          (F(0), F(3, 2)), 4)


def test_splitting_weights_sum_to_one_on_support():
    # shared support exponent: both generators of <z1, z2> qualify and the
    # splitting shares are proportional to weight * exponent, summing to 1
    mod = WeightedPolydiscModule(2, (F(2), F(5)))
    frame = decompose_coordinate_ideal(mod, 4)
    v1, v2 = frame.vectors
    Z = MultiIndex.zero(2)
    lam, mu = mod.weights
    for alpha in [MultiIndex((1, 1)), MultiIndex((2, 1)), MultiIndex((1, 2))]:
        c = diag_coeff(mod, alpha)
        denom = lam * alpha[0] + mu * alpha[1]
        s1 = lam * alpha[0] / denom
        s2 = mu * alpha[1] / denom
        # stored vector: coefficient of z^alpha is a series in ub whose
        # (alpha - e_k) coefficient carries the share s_k c_alpha
        assert v1[alpha].coefficient(Z, alpha - E1) == s1 * c
        assert v2[alpha].coefficient(Z, alpha - E2) == s2 * c
        assert s1 + s2 == 1
