import itertools
from fractions import Fraction as F

import pytest

from submodcurv.errors import DomainError
from submodcurv.invariants import (cubic_positive_roots, lambda_mu_equivalent,
                                   lambda_mu_invariants, polydisc_rigidity,
                                   polydisc_rigidity_report,
                                   principal_rigidity, count_roots_between,
                                   squarefree_part, sturm_chain, upoly_eval)


def test_kappa_closed_forms():
    inv = lambda_mu_invariants(1, 1)
    assert (inv.kappa1, inv.kappa2) == (F(5, 4), F(5, 4))
    inv = lambda_mu_invariants(1, 2)
    assert (inv.kappa1, inv.kappa2) == (F(13, 9), F(31, 18))
    inv = lambda_mu_invariants(F(1, 2), F(3, 2))
    lam, mu = F(1, 2), F(3, 2)
    assert inv.kappa1 == (lam + 1) / 2 + lam * mu ** 2 / (lam + mu) ** 2
    assert inv.kappa2 == (mu + 1) / 2 + lam ** 2 * mu / (lam + mu) ** 2


def test_lambda_mu_equivalence_is_weight_equality():
    vals = [F(1, 2), F(1), F(2), F(3)]
    for l1, m1, l2, m2 in itertools.product(vals, repeat=4):
        want = (l1, m1) == (l2, m2)
        assert lambda_mu_equivalent(l1, m1, l2, m2) == want


# -- univariate machinery -----------------------------------------------------


def test_upoly_eval_horner():
    # 2 - x + 3x^2 at x = 1/2
    p = (F(2), F(-1), F(3))
    assert upoly_eval(p, F(1, 2)) == 2 - F(1, 2) + F(3, 4)


def test_squarefree_part():
    # (x - 1)^2 = 1 - 2x + x^2 -> x - 1 up to scaling
    p = (F(1), F(-2), F(1))
    sf = squarefree_part(p)
    assert upoly_eval(sf, F(1)) == 0
    assert len(sf) == 2


def test_sturm_count_quadratic():
    # x^2 - 2: one root in (0, 2), one in (-2, 0)
    p = (F(-2), F(0), F(1))
    chain = sturm_chain(p)
    assert count_roots_between(chain, F(0), F(2)) == 1
    assert count_roots_between(chain, F(-2), F(0)) == 1
    assert count_roots_between(chain, F(3), F(5)) == 0


def test_sturm_rejects_root_endpoints():
    p = (F(-1), F(0), F(1))  # x^2 - 1
    chain = sturm_chain(p)
    with pytest.raises(DomainError):
        count_roots_between(chain, F(1), F(2))


# -- the cubic family ---------------------------------------------------------


def test_cubic_alpha_one_exact_root():
    cr = cubic_positive_roots(F(1))
    assert cr.positive_roots == 1
    assert cr.isolating_intervals == ((F(1), F(1)),)
    # x^3 - x^2 + x - 1 = (x - 1)(x^2 + 1)
    assert cr.coefficients == (F(-1), F(1), F(-1), F(1))


def test_cubic_unique_positive_root_grid():
    vals = [F(n, d) for n in range(1, 8) for d in (1, 2, 3)]
    for a in vals:
        cr = cubic_positive_roots(a)
        assert cr.positive_roots == 1, a
        assert len(cr.isolating_intervals) == 1
        lo, hi = cr.isolating_intervals[0]
        assert 0 <= lo <= hi
        p = cr.coefficients
        sf = squarefree_part(p)
        if lo == hi:
            assert upoly_eval(p, lo) == 0
        else:
            # sign change across a genuine isolating interval
            assert upoly_eval(sf, lo) * upoly_eval(sf, hi) < 0


def test_cubic_interval_brackets_root():
    cr = cubic_positive_roots(F(7, 3))
    lo, hi = cr.isolating_intervals[0]
    assert hi - lo <= F(1, 16)


def test_cubic_rejects_nonpositive_alpha():
    with pytest.raises(DomainError):
        cubic_positive_roots(F(0))
    with pytest.raises(DomainError):
        cubic_positive_roots(F(-2))


# -- rigidity deciders --------------------------------------------------------


def test_principal_rigidity_reference_cases():
    # (1,2) vs (2,1) at p=1: pairs (2,4) vs (2,6)
    assert principal_rigidity(1, 2, 1, 2, 1) is False
    # (3,1) vs (1,3) at p=1: pairs (3,12) vs (3,6)
    assert principal_rigidity(3, 1, 1, 1, 3) is False
    assert principal_rigidity(2, 3, 2, 2, 3) is True
    assert principal_rigidity(F(1, 2), F(5, 2), 3, F(1, 2), F(5, 2)) is True


def test_principal_rigidity_iff_equal_weights():
    vals = [F(1, 2), F(1), F(2)]
    for l1, m1, l2, m2 in itertools.product(vals, repeat=4):
        for p in (1, 2):
            want = (l1, m1) == (l2, m2)
            assert principal_rigidity(l1, m1, p, l2, m2) == want, \
                (l1, m1, p, l2, m2)


def test_polydisc_rigidity_iff_equal_weights():
    pool = [(F(1), F(2), F(1)), (F(2), F(1), F(1)), (F(1), F(1), F(2)),
            (F(1, 2), F(2), F(1)), (F(2), F(2), F(1))]
    for w1 in pool:
        for w2 in pool:
            got = polydisc_rigidity(w1, (1,), w2)
            assert got == (w1 == w2), (w1, w2)
    assert polydisc_rigidity((1, 2, 1), (1, 2), (1, 2, 1))
    assert not polydisc_rigidity((1, 2, 1), (1, 2), (1, 1, 2))


def test_rigidity_battery_closed_forms():
    # transverse log-curvatures recover the free-variable weights; the
    # un-logged norm Hessians recover weight * poch(lam_k, p)/p! products
    report = polydisc_rigidity_report((F(1), F(2), F(3)), (2,),
                                      (F(1), F(2), F(3)))
    battery = dict(report.battery_left)
    assert battery["transverse_log_curvature_w2"] == 2
    assert battery["transverse_log_curvature_w3"] == 3
    lam = F(1)
    i0_weight = F(2)  # first free variable
    assert battery["norm_hessian_gen1"] == i0_weight * lam * (lam + 1) / 2
    assert battery["norm_hessian_gen1_shifted"] == \
        i0_weight * lam * (lam + 1) * (lam + 2) / 6
    assert report.equivalent


def test_rigidity_needs_transverse_direction():
    with pytest.raises(DomainError):
        polydisc_rigidity_report((1, 2), (1, 1), (1, 2))
