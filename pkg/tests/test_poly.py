from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from augtor.errors import DegenerateInputError, DivisibilityError, DomainError
from augtor.parsing import parse_poly as P
from augtor.poly import (
    ONE,
    ZERO,
    LaurentPoly,
    RatPoly,
    content,
    div_exact,
    divides,
    evaluate_int,
    gcd_full,
    gcd_primitive,
    is_reciprocal,
    primitive_part,
    rat_gcd,
    rat_lcm,
    squarefree_decomposition,
)
from conftest import laurent

FIG8 = P("t^2-3t+1")


def test_normalization_trims_zeros():
    f = LaurentPoly((0, 0, 1, -3, 1, 0), -2)
    assert f.coeffs == (1, -3, 1) and f.min_exp == 0
    assert LaurentPoly((0, 0), 5) == ZERO and ZERO.min_exp == 0 and ZERO.coeffs == ()


def test_ring_ops_examples():
    assert P("t-1") * P("t^2-t+1") == P("t^3-2t^2+2t-1")
    assert FIG8 * ONE == FIG8
    assert P("t^-1+1") * P("t") == P("1+t")
    assert P("t") - P("t") == ZERO


def test_content_examples():
    assert content(P("2t^2-6t+2")) == 2
    assert content(FIG8) == 1
    assert content(ZERO) == 0


def test_gcd_primitive_examples():
    assert gcd_primitive(FIG8.scale(2), P("t-1") * FIG8) == FIG8
    assert gcd_primitive(P("6t^2-12t+6"), ZERO) == P("t^2-2t+1")
    assert gcd_primitive(P("t^2-1"), P("t^2-3t+2")) == P("t-1")
    with pytest.raises(DegenerateInputError):
        gcd_primitive(ZERO, ZERO)


def test_gcd_full_keeps_content():
    assert gcd_full([P("6t-6"), P("12t^2-12")]) == P("6t-6")


def test_div_exact_examples():
    assert div_exact(P("t^3-4t^2+4t-1"), P("t-1")) == FIG8
    assert div_exact(FIG8, FIG8) == ONE
    with pytest.raises(DivisibilityError):
        div_exact(P("t^2-1"), P("t-2"))
    with pytest.raises(DivisibilityError):
        div_exact(P("t+1"), P("2"))


def test_evaluate_examples():
    assert evaluate_int(FIG8, 1) == -1
    assert evaluate_int(P("1+t+t^2+t^3"), 3) == 40
    assert evaluate_int(P("t-1"), 1) == 0
    assert evaluate_int(P("t^-1+1"), 2) == Fraction(3, 2)
    with pytest.raises(DomainError):
        evaluate_int(P("t^-1"), 0)


def test_is_reciprocal_examples():
    assert is_reciprocal(FIG8)
    assert not is_reciprocal(P("t-2"))
    assert is_reciprocal(P("t^2-t+1"))
    with pytest.raises(DegenerateInputError):
        is_reciprocal(ZERO)


def test_format_examples():
    assert str(FIG8) == "t^2-3t+1"
    assert str(P("t^-1 - 3 + t")) == "t-3+t^-1"
    assert str(ZERO) == "0"


def test_ratpoly_division_and_gcd():
    a = RatPoly.from_laurent(P("t^3-4t^2+4t-1"))
    b = RatPoly.from_laurent(P("t^2-1"))
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree
    assert rat_gcd(a, b) == RatPoly([-1, 1])
    assert rat_lcm(RatPoly([-1, 1]), RatPoly([1, 1])) == RatPoly([-1, 0, 1])
    assert RatPoly([Fraction(2, 4)]).coeffs == (Fraction(1, 2),)


def test_squarefree_decomposition():
    f = RatPoly.from_laurent(P("(t-1)^3 (t+2)^2 (t^2+1)"))
    parts = {i: s for s, i in squarefree_decomposition(f)}
    assert parts[1] == RatPoly.from_laurent(P("t^2+1"))
    assert parts[2] == RatPoly.from_laurent(P("t+2"))
    assert parts[3] == RatPoly.from_laurent(P("t-1"))


@given(laurent(), laurent())
def test_gauss_lemma(f, g):
    assert content(f * g) == content(f) * content(g)


@given(laurent(min_exp=-3, max_min_exp=3), laurent(min_exp=-3, max_min_exp=3), st.sampled_from([-3, -2, -1, 1, 2, 5]))
def test_evaluation_is_a_ring_homomorphism(f, g, x):
    assert evaluate_int(f + g, x) == evaluate_int(f, x) + evaluate_int(g, x)
    assert evaluate_int(f * g, x) == evaluate_int(f, x) * evaluate_int(g, x)


@given(laurent(), laurent())
def test_gcd_divides_both(f, g):
    h = gcd_primitive(f, g)
    assert content(h) == 1
    div_exact(f, h)
    div_exact(g, h)


@given(laurent(max_deg=3), laurent(max_deg=3), laurent(max_deg=2))
def test_gcd_recovers_common_factor(f, g, h):
    common = gcd_primitive(f * h, g * h)
    assert divides(primitive_part(h), common)


@given(laurent(min_exp=-4, max_min_exp=4, nonzero=False))
def test_normalization_idempotent(f):
    assert f.normalized().normalized() == f.normalized()
    assert LaurentPoly(f.coeffs, f.min_exp) == f
