from fractions import Fraction

import pytest
from hypothesis import given

from verma_berezin.scalar import I, ONE, ZERO, GaussianRational, exact_str, frac_str

from conftest import gaussians


def test_basic_arithmetic():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(-1, Fraction(1, 4))
    assert a + b == GaussianRational(Fraction(-1, 2), Fraction(13, 4))
    assert a * b == GaussianRational(Fraction(-1, 2) - Fraction(3, 4), Fraction(1, 8) - 3)
    assert I * I == -1
    assert (a / b) * b == a


def test_real_values_behave_like_fractions():
    x = GaussianRational(Fraction(2, 3))
    assert x == Fraction(2, 3)
    assert hash(x) == hash(Fraction(2, 3))
    assert float(x) == pytest.approx(2 / 3)
    with pytest.raises(TypeError):
        float(I)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_float_complex_rejected():
    with pytest.raises(TypeError):
        GaussianRational.coerce(1j)


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 2


def test_formatting():
    assert frac_str(3) == "3/1"
    assert exact_str(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"
    assert str(GaussianRational(0, 2)) == "2i"


@given(gaussians, gaussians)
def test_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * b).abs2() == a.abs2() * b.abs2()
    if b:
        assert (a / b) * b == a


@given(gaussians)
def test_parse_and_quad_round_trip(a):
    assert GaussianRational.parse(str(a)) == a
    assert GaussianRational.from_quad(a.to_quad()) == a
