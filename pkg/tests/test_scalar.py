from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virk.coeff import ALPHA, I, ONE, ZERO, Scalar, ScalarParseError, conj, eval_alpha, parse_scalar

coeffs = st.fractions(min_value=-10, max_value=10, max_denominator=6)


@st.composite
def scalars(draw):
    terms = {}
    for deg in range(draw(st.integers(0, 5))):
        terms[deg] = (draw(coeffs), draw(coeffs))
    out = ZERO
    for deg, (re, im) in terms.items():
        out = out + (Scalar.coerce(re) + I * im) * ALPHA ** deg
    return out


def test_examples():
    assert (I * ALPHA) * (I * ALPHA) == -(ALPHA * ALPHA)
    assert (ONE + ALPHA * ALPHA * 12) + 8 == parse_scalar("9 + 12*alpha^2")
    assert (ALPHA * 0).is_zero()
    assert conj(I * ALPHA * 16) == -(I * ALPHA * 16)
    assert conj(parse_scalar("3/4 + 2*alpha^2")) == parse_scalar("3/4 + 2*alpha^2")
    assert conj((ONE + I * 2) * ALPHA) == (ONE - I * 2) * ALPHA
    assert eval_alpha(parse_scalar("1 + 12 alpha^2"), Fraction(1, 2)) == 4
    assert eval_alpha(I * ALPHA * 16, 0) == 0
    assert eval_alpha(ALPHA ** 2 - ALPHA, 1) == 0


def test_render_canonical():
    assert str(parse_scalar("3/4 - 2i + (1+i) alpha - 12 alpha^2")) == "3/4 - 2*i + (1 + i)*alpha - 12*alpha^2"
    assert str(ZERO) == "0"
    assert str(-I * ALPHA) == "-i*alpha"


def test_parse_errors():
    for bad in ["", "1 +", "alpha^-1", "beta", "(1"]:
        with pytest.raises(ScalarParseError):
            parse_scalar(bad)


def test_parity_and_inverse():
    s = I * ALPHA * -2
    assert s.is_imaginary() and s.is_odd() and not s.is_even()
    assert (ALPHA * ALPHA + 1).is_even()
    assert Scalar.coerce(Fraction(3, 4)).inverse() == Fraction(4, 3)
    assert (ONE + I).inverse() * (ONE + I) == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ValueError):
        ALPHA.inverse()


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(conj(a)) == a
    assert a - a == ZERO


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), coeffs)
def test_eval_is_homomorphism(a, b, v):
    assert eval_alpha(a * b, v) == eval_alpha(a, v) * eval_alpha(b, v)
    assert eval_alpha(a + b, v) == eval_alpha(a, v) + eval_alpha(b, v)


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_render_parse_roundtrip(a):
    assert parse_scalar(str(a)) == a
    assert hash(parse_scalar(str(a))) == hash(a)
