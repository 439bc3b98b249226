from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wabrep.algebra import (AlgebraElement, AlgebraParams, Generator, L, W, bracket,
                            bracket_generators, check_antisymmetry, check_jacobi)
from wabrep.scalar import ONE, as_scalar, sym

P = AlgebraParams()
a, b = sym("a"), sym("b")


def test_bracket_L_L():
    assert bracket(P, L(1), L(2)) == AlgebraElement(L(3))
    assert bracket(P, L(2), L(2)).is_zero()


def test_bracket_L0_W():
    j = 5
    assert bracket(P, L(0), W(j)) == AlgebraElement({W(j): a + j})


def test_bracket_L_W_general():
    i, j = 2, -3
    assert bracket(P, L(i), W(j)) == AlgebraElement({W(i + j): a + j + b * i})


def test_bracket_W_W_vanishes():
    assert bracket(P, W(3), W(-3)).is_zero()


def test_bracket_bilinear():
    x = AlgebraElement.of((2, L(1)), (a, W(0)))
    y = AlgebraElement.of(L(-1))
    expected = bracket(P, L(1), L(-1)).scale(2) + bracket(P, W(0), L(-1)).scale(a)
    assert bracket(P, x, y) == expected


def test_jacobi_symbolic():
    assert check_jacobi(P, K=3).passed


def test_jacobi_concrete():
    assert check_jacobi(AlgebraParams(Fraction(1, 2), 1), K=2).passed


def test_jacobi_detects_corrupted_constant():
    def corrupted(params, x, y):
        if x.kind == "L" and y.kind == "L":
            c = y.index + x.index
            return [(as_scalar(c), Generator("L", x.index + y.index))] if c else []
        return bracket_generators(params, x, y)

    report = check_jacobi(P, K=1, rule=corrupted)
    assert not report.passed
    first = report.first()
    assert first.relation == "jacobi" and len(first.indices) == 4


def test_jacobi_rejects_empty_window():
    with pytest.raises(ValueError):
        check_jacobi(P, K=0)


def test_antisymmetry():
    assert check_antisymmetry(P, K=2).passed


gens = st.builds(Generator, st.sampled_from(["L", "W"]), st.integers(-6, 6))


@settings(max_examples=100, deadline=None)
@given(gens, gens)
def test_bracket_antisymmetric_property(x, y):
    assert (bracket(P, x, y) + bracket(P, y, x)).is_zero()


@settings(max_examples=40, deadline=None)
@given(gens, gens, gens)
def test_jacobi_property(x, y, z):
    br = lambda u, v: bracket(P, u, v)
    assert (br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))).is_zero()


def test_element_arithmetic():
    x = AlgebraElement.of(L(1), W(2))
    assert (x - x).is_zero()
    assert x.scale(0).is_zero()
    assert AlgebraElement.of(W(1), W(2)).is_w_only()
    assert str(AlgebraElement()) == "0"
    assert x.terms[L(1)] == ONE
