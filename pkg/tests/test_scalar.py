from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wabrep.errors import ZeroDenominator
from wabrep.scalar import (ONE, ZERO, INFINITY, Polynomial, Scalar, add, as_scalar, eval_rational,
                           is_zero, linear_combination, mul, parse_rational, parse_scalar,
                           substitute, sym)

a, b, lam, mu, mu0, mu1 = (sym(x) for x in ("a", "b", "lam", "mu", "mu0", "mu1"))


# -- add -------------------------------------------------------------------------

def test_add_rationals():
    assert add(Fraction(1, 2), Fraction(1, 3)) == as_scalar(Fraction(5, 6))


def test_add_normalizes_concrete_quotient():
    k = 3
    x = (a + k) / (a + k) + 0
    assert x == ONE
    assert x.is_polynomial()


def test_add_substituted_affine():
    # (lam + m) + mu*k at k=2, m=3, expanded by hand: lam + 2 mu + 3
    k, m = 2, 3
    assert (lam + m) + mu * k == parse_scalar("lam + 2*mu + 3")


# -- mul -------------------------------------------------------------------------

def test_mul_difference_of_squares():
    assert mul(a + b, a - b) == a * a - b * b


def test_mul_absorbing_zero():
    assert mul(lam + mu, 0).is_zero()


def test_mul_linear_factors_expansion():
    lhs = (mu1 - mu0 - b) * (mu1 - mu0 - b - 1)
    by_hand = parse_scalar("mu1^2 - 2*mu0*mu1 - 2*b*mu1 - mu1 + mu0^2 + 2*b*mu0 + mu0 + b^2 + b")
    assert (lhs - by_hand).is_zero()


# -- is_zero / substitute / eval ---------------------------------------------------

def test_is_zero_cases():
    assert is_zero((a * a - b * b) - (a + b) * (a - b))
    assert not is_zero(a + 3)


def test_substitute_kills_linear_factor():
    assert substitute(mu1 - mu0 - b, {"mu1": mu0 + b}).is_zero()


def test_substitute_into_denominator_raises():
    k = 4
    x = ONE / (a + k)
    with pytest.raises(ZeroDenominator):
        x.substitute({"a": -k})


def test_substitute_affine_weight():
    j, m = 2, -1
    x = parse_scalar("lam + a*j + m", {"j": j, "m": m})
    assert x.substitute({"a": Fraction(1, 2), "lam": Fraction(1, 3)}) == as_scalar(Fraction(1, 3))


def test_eval_rational_examples():
    x = parse_scalar("b*(lam + m) - mu*(k + a)")
    point = {"b": 1, "lam": 0, "m": 2, "mu": 1, "k": 1, "a": Fraction(1, 2)}
    assert eval_rational(x, point) == Fraction(1, 2)
    assert eval_rational(ZERO, {"a": 5}) == 0
    assert eval_rational(ONE / (a + sym("k")), {"a": Fraction(1, 2), "k": 1}) == Fraction(2, 3)


def test_eval_rational_missing_binding_raises():
    with pytest.raises((KeyError, ValueError)):
        eval_rational(a + b, {"a": 1})


def test_division_by_zero_scalar():
    with pytest.raises(ZeroDenominator):
        a / (b - b)


def test_quotient_cancels_common_factor():
    x = (a * a - b * b) / (a - b)
    assert x.is_polynomial()
    assert x == a + b


def test_str_roundtrips_through_parser():
    x = (a + 2 * b) ** 3 / (lam - mu + Fraction(1, 2))
    assert parse_scalar(str(x)) == x


def test_parse_accepts_unicode_aliases_and_delta():
    assert parse_scalar("λ + μ") == lam + mu
    assert parse_scalar("delta(m + k)", {"m": 2, "k": -2}) == ONE
    assert parse_scalar("delta(m + k)", {"m": 2, "k": -1}).is_zero()


def test_parse_rejects_floats():
    with pytest.raises(ValueError):
        parse_scalar("0.5 * a")


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        parse_rational("x/2")


def test_linear_combination_matches_sum():
    pairs = [(a, ONE / (b + 1)), (lam, ONE / (b + 2)), (3, mu)]
    expected = a / (b + 1) + lam / (b + 2) + 3 * mu
    assert linear_combination(pairs) == expected


def test_infinity_is_singleton():
    import pickle
    assert pickle.loads(pickle.dumps(INFINITY)) is INFINITY
    assert str(INFINITY) == "inf"


def test_polynomial_exact_div():
    p = Polynomial.var("a") * Polynomial.var("b") + Polynomial.var("a")
    assert p.exact_div(Polynomial.var("a")) == Polynomial.var("b") + Polynomial.constant(1)
    assert p.exact_div(Polynomial.var("b")) is None


# -- properties: ring axioms against a Fraction evaluation oracle -------------------

NAMES = ("a", "b", "lam")
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, max_terms=4):
    out = ZERO
    for _ in range(draw(st.integers(1, max_terms))):
        term = as_scalar(draw(small))
        for name in NAMES:
            term = term * sym(name) ** draw(st.integers(0, 2))
        out = out + term
    return out


@st.composite
def scalars(draw):
    num = draw(polys())
    den = draw(polys(max_terms=2))
    if den.is_zero():
        den = ONE
    return num / den


points = st.fixed_dictionaries({n: st.fractions(min_value=-7, max_value=7, max_denominator=5)
                                for n in NAMES})


def _value(x: Scalar, point):
    try:
        return x.evaluate(point)
    except ZeroDenominator:
        return None


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()
    assert x + ZERO == x and x * ONE == x


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), points)
def test_arithmetic_agrees_with_evaluation(x, y, point):
    vx, vy = _value(x, point), _value(y, point)
    if vx is None or vy is None:
        return
    assert _value(x + y, point) == vx + vy
    assert _value(x * y, point) == vx * vy
    if vy != 0 and not y.is_zero():
        q = _value(x / y, point)
        if q is not None:
            assert q == vx / vy


@settings(max_examples=40, deadline=None)
@given(scalars(), points)
def test_substitution_agrees_with_evaluation(x, point):
    full = _value(x, point)
    if full is None:
        return
    partial = {"a": point["a"]}
    try:
        step = x.substitute(partial)
    except ZeroDenominator:
        return
    assert _value(step, point) == full


@settings(max_examples=40, deadline=None)
@given(scalars())
def test_canonical_text_roundtrip(x):
    assert parse_scalar(str(x)) == x
