from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisect.scalars import Cyc, approx_eq, cyclotomic_poly, is_zero, render, to_complex


def test_cyclotomic_polynomials():
    # low -> high coefficients
    assert cyclotomic_poly(1) == [Fraction(-1), Fraction(1)]
    assert cyclotomic_poly(2) == [Fraction(1), Fraction(1)]
    assert cyclotomic_poly(3) == [Fraction(1), Fraction(1), Fraction(1)]
    assert cyclotomic_poly(4) == [Fraction(1), Fraction(0), Fraction(1)]
    assert cyclotomic_poly(6) == [Fraction(1), Fraction(-1), Fraction(1)]
    assert cyclotomic_poly(12) == [Fraction(1), 0, Fraction(-1), 0, Fraction(1)]


def test_roots_of_unity_relations():
    z3 = Cyc.zeta(3)
    assert (1 + z3 + z3 * z3).is_zero()
    assert Cyc.zeta(4) ** 2 == -1
    assert Cyc.zeta(5) ** 5 == 1
    assert Cyc.zeta(6) == 1 + Cyc.zeta(3)  # z6 = 1 + z3
    assert Cyc.zeta(8, 2) == Cyc.zeta(4)


def test_cross_level_arithmetic():
    # z6^3 = -1 computed across levels
    assert Cyc.zeta(6) ** 3 == Cyc.rational(-1)
    x = Cyc.zeta(4) + Cyc.zeta(3)
    assert x - Cyc.zeta(3) == Cyc.zeta(4)
    assert x.level == 12


def test_inverse_and_division():
    for val in (Cyc.rational(Fraction(3, 7)), Cyc.zeta(5) + 2, 1 + Cyc.zeta(8) * 3):
        assert val * val.inverse() == 1
        assert (val / val) == 1
    with pytest.raises(ZeroDivisionError):
        Cyc.rational(0).inverse()


def test_conjugate_and_complex():
    z = Cyc.zeta(7, 3)
    c = z.to_complex()
    assert abs(z.conjugate().to_complex() - c.conjugate()) < 1e-12
    assert abs((z * z.conjugate()).to_complex() - 1) < 1e-12


def test_rationality_checks():
    assert Cyc.zeta(4).conjugate() == -Cyc.zeta(4)
    g = Cyc.zeta(3) + Cyc.zeta(3).conjugate()
    assert g.is_rational() and g.as_fraction() == -1
    with pytest.raises(ValueError):
        Cyc.zeta(3).as_fraction()


def test_gauss_sums():
    # sum of zeta_n^(k^2): vanishes for n = 2 mod 4
    for n, mag2 in ((2, 0), (3, 3), (4, 8), (5, 5), (6, 0)):
        s = sum((Cyc.zeta(n, (k * k) % n) for k in range(n)), Cyc.rational(0))
        assert abs(abs(s.to_complex()) ** 2 - mag2) < 1e-9


def test_helpers():
    assert is_zero(Cyc.rational(0)) and not is_zero(Cyc.zeta(3))
    assert approx_eq(Cyc.zeta(4), 1j)
    assert "~" in render(Cyc.zeta(3))
    assert to_complex(2 + 0j) == 2 + 0j


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@st.composite
def cyclotomics(draw):
    n = draw(st.sampled_from([1, 2, 3, 4, 5, 6]))
    d = len(cyclotomic_poly(n)) - 1
    return Cyc(n, [draw(small_rationals) for _ in range(d)])


@settings(max_examples=60, deadline=None)
@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(cyclotomics())
def test_embedding_consistency(a):
    # exact arithmetic commutes with the complex embedding
    z = a.to_complex()
    assert abs((a * a).to_complex() - z * z) < 1e-9
    assert abs((a + a).to_complex() - 2 * z) < 1e-9
