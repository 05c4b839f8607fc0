from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitclosure.numbers import GaussianRational, fraction_str, primitive, to_fraction

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
gaussians = st.builds(GaussianRational, fractions, fractions)


def test_parse_rational_literals():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction("-4") == -4
    assert to_fraction(7) == 7
    for bad in ("0.5", "1e3", "", "a/b", "1/0"):
        with pytest.raises(ValueError):
            to_fraction(bad)
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_fraction_str_is_reduced():
    assert fraction_str(Fraction(6, -4)) == "-3/2"
    assert fraction_str(Fraction(8, 4)) == "2"


def test_primitive_keeps_direction():
    assert primitive([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
    assert primitive([0, 0]) == (0, 0)
    assert primitive([-6, 0, 9]) == (-2, 0, 3)


def test_gaussian_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert (1 + i) ** 2 == 2 * i
    assert (1 + i) ** -1 == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert str(GaussianRational(Fraction(1, 2), -3)) == "1/2-3i"
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if b:
        assert (a / b) * b == a


@given(gaussians)
def test_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a
    assert hash(GaussianRational.from_json(a.to_json())) == hash(a)
