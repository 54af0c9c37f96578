from fractions import Fraction as F

import pytest

from submodcurv.errors import InputError
from submodcurv.polynomials import Poly, parse_poly


def test_parse_basic():
    p = parse_poly("z1^2 - 3/2 z2 + 1", 2)
    assert p.evaluate((F(2), F(2))) == 4 - 3 + 1
    assert p.evaluate((F(0), F(0))) == 1
    assert p.degree == 2


def test_parse_implicit_product_and_powers():
    p = parse_poly("z1 z2", 2)
    q = parse_poly("z1*z2", 2)
    assert p == q
    assert parse_poly("z1**3", 2) == parse_poly("z1^3", 2)
    r = parse_poly("2z1", 2)
    assert r.evaluate((F(3), F(0))) == 6


def test_parse_parens_expansion():
    p = parse_poly("(z1 + z2)^2", 2)
    q = parse_poly("z1^2 + 2 z1 z2 + z2^2", 2)
    assert p == q


def test_parse_rational_coefficients():
    p = parse_poly("3/2 z1 - 1/3", 2)
    assert p.evaluate((F(2), F(0))) == 3 - F(1, 3)


def test_parse_unary_minus():
    p = parse_poly("-z1 + 2", 2)
    assert p.evaluate((F(1), F(0))) == 1
    assert parse_poly("-(z1 - z2)", 2) == parse_poly("z2 - z1", 2)


def test_parse_errors_carry_position():
    with pytest.raises(InputError) as exc:
        parse_poly("z3 + 1", 2)
    assert "z3" in str(exc.value)
    with pytest.raises(InputError):
        parse_poly("1 +", 2)
    with pytest.raises(InputError):
        parse_poly("(z1", 2)
    with pytest.raises(InputError):
        parse_poly("z1 $ z2", 2)
    with pytest.raises(InputError):
        parse_poly("", 2)


def test_poly_algebra():
    z1 = Poly.variable(2, 0)
    z2 = Poly.variable(2, 1)
    p = (z1 + z2) * (z1 - z2)
    assert p == z1 * z1 - z2 * z2
    assert (z1 ** 3).degree == 3
    assert Poly.zero(2).degree == -1
    assert Poly.constant(2, F(4)).degree == 0


def test_monomial_queries():
    p = parse_poly("z1^2 z2", 2)
    assert p.is_monomial()
    assert tuple(p.monomial_exponent()) == (2, 1)
    assert not parse_poly("z1 + z2", 2).is_monomial()


def test_str_round_trip():
    for src in ("z1^2 - 3/2 z2 + 1", "z1 z2 - z1", "2 z2^3 + z1"):
        p = parse_poly(src, 2)
        assert parse_poly(str(p), 2) == p
