from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symhyper.exact import (X, LaurentPolynomial, Parity, ParityError, project, reflect,
                            scalar_from_str, scalar_to_str)

from conftest import laurent_polys, rationals

P = LaurentPolynomial


def test_reflect_examples():
    assert reflect(X**3 - 3 * X) == -(X**3) + 3 * X
    assert reflect(X**2 - 1) == X**2 - 1
    assert reflect(X**2 + X) == X**2 - X


def test_project_examples():
    p = X**2 + X
    assert project(p, "even") == X**2
    assert project(p, Parity.ODD) == X
    assert project(X**3 - 3 * X, "even").is_zero()


def test_arithmetic_examples():
    assert (X**2 - 1)(2) == 3
    assert (X - 1).substitute_square() == X**2 - 1
    assert (X**2 - 1) * (X**2 + 1) == X**4 - 1


def test_restrict_square():
    assert (X**2 - 1).restrict_square() == X - 1
    assert (X**3 - 3 * X).restrict_square() == X - 3
    with pytest.raises(ParityError):
        (X**2 + X).restrict_square()


def test_zero_is_empty_and_no_zero_terms():
    assert P().terms == {}
    assert P({3: 0, 1: 2}).terms == {1: Fraction(2)}
    assert (X - X).is_zero()
    assert P.zero().parity() is Parity.EVEN


def test_degree_and_properness():
    p = P({-2: 1, 3: Fraction(1, 2)})
    assert (p.degree, p.low_degree) == (3, -2)
    assert not p.is_proper()
    assert (X**2).is_proper()
    with pytest.raises(ValueError):
        P.zero().degree


def test_str_format():
    assert str(X**3 - 3 * X) == "x^3 - 3*x"
    assert str(P({0: Fraction(-1, 2), 2: 1})) == "x^2 - 1/2"
    assert str(P.zero()) == "0"


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-7/4", Fraction(-7, 4)),
                                        ("−2/3", Fraction(-2, 3)), ("0", Fraction(0))])
def test_scalar_parse(text, value):
    assert scalar_from_str(text) == value


@pytest.mark.parametrize("bad", ["1.5", "1/0", "a", "", "2/-3", "1e3"])
def test_scalar_parse_rejects(bad):
    with pytest.raises(ValueError):
        scalar_from_str(bad)


@given(rationals(-10**6, 10**6, 10**6))
def test_scalar_roundtrip(v):
    assert scalar_from_str(scalar_to_str(v)) == v


@given(laurent_polys())
def test_json_roundtrip(p):
    obj = p.to_json()
    assert [e for e, _ in obj["terms"]] == sorted(e for e, _ in obj["terms"])
    assert P.from_json(obj) == p


@given(laurent_polys())
def test_reflect_involution(p):
    assert reflect(reflect(p)) == p


@given(laurent_polys())
def test_projections(p):
    even, odd = project(p, "even"), project(p, "odd")
    assert even + odd == p
    assert project(even, "even") == even and project(odd, "odd") == odd
    assert project(even, "odd").is_zero() and project(odd, "even").is_zero()
    assert reflect(even) == even and reflect(odd) == -odd


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == P.zero()


@given(laurent_polys(0, 6), rationals(-5, 5, 5), rationals(-5, 5, 5))
def test_evaluation_is_ring_homomorphism(p, x, c):
    q = p * p + p.scale(c)
    assert q(x) == p(x) ** 2 + c * p(x)


@given(laurent_polys(), st.integers(-3, 3))
def test_shift(p, k):
    assert p.shift(k).shift(-k) == p
    assert p.shift(k) == p * P.monomial(k)


@given(laurent_polys(0, 6))
def test_square_substitution_roundtrip(u):
    assert u.substitute_square().restrict_square() == u
    assert (X * u.substitute_square()).restrict_square() == u


@given(laurent_polys(-2, 4, 3), st.integers(0, 4))
def test_pow_matches_repeated_product(p, k):
    expected = P.one()
    for _ in range(k):
        expected = expected * p
    assert p**k == expected


def test_negative_pow_of_monomial():
    assert (X**2).scale(3) ** -1 == P({-2: Fraction(1, 3)})
    with pytest.raises(ValueError):
        (X + 1) ** -1
