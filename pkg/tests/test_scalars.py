from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quiverkoszul.scalars import QQ, Field, FieldMismatch, Mod, is_prime, parse_rational


def test_rationals_stay_reduced():
    x = QQ("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    assert QQ(-3) / QQ(6) == Fraction(-1, 2)


def test_residues_live_in_range():
    F7 = Field(7)
    assert F7(-1).value == 6
    assert F7(Fraction(1, 2)) * 2 == 1
    assert F7("3/4") * 4 == 3


def test_mixing_characteristics_fails():
    with pytest.raises(FieldMismatch):
        Mod(1, 5) + Mod(1, 7)
    with pytest.raises(FieldMismatch):
        Field(5)(Mod(1, 7))
    with pytest.raises(FieldMismatch):
        QQ(Mod(1, 7))


def test_field_requires_prime():
    with pytest.raises(ValueError):
        Field(9)
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Mod(3, 5) / Mod(0, 5)
    with pytest.raises(ZeroDivisionError):
        Mod(1, 5) + Fraction(1, 5)


def test_parse_rational():
    assert parse_rational(" -7/21 ") == Fraction(-1, 3)
    for bad in ("1.5", "a", "1/", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_is_exact_text():
    assert QQ.format(QQ("-2/6")) == "-1/3"
    assert Field(5).format(Field(5)(-1)) == "4"


@given(st.integers(), st.integers(), st.integers(min_value=1, max_value=10**6))
def test_mod_is_a_ring_map(a, b, c):
    p = 10007
    F = Field(p)
    assert F(a) + F(b) == F(a + b)
    assert F(a) * F(b) == F(a * b)
    if c % p:
        assert F(Fraction(a, c)) * F(c) == F(a)


@given(st.integers(min_value=1, max_value=10006))
def test_inverse_roundtrip(a):
    F = Field(10007)
    assert F(a) * (1 / F(a)) == 1
    assert F(a) ** -1 == 1 / F(a)


def _trial(p):
    return p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@given(st.integers(-5, 200000))
def test_is_prime_matches_trial_division(p):
    assert is_prime(p) == _trial(p)


def test_is_prime_large():
    assert is_prime(2**61 - 1) and is_prime(2147483647)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime((2**31 - 1) * (2**61 - 1))
