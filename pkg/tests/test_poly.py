from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from deltabound.errors import DomainError, InputError
from deltabound.poly import T_POLY, PiecewisePoly, Poly

coef = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(coef, min_size=0, max_size=4).map(lambda cs: Poly(tuple(cs)))
t = sympy.Symbol("t")


def as_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


@given(polys, polys)
def test_ring_operations_match_sympy(p, q):
    assert sympy.expand(as_sympy(p * q) - as_sympy(p) * as_sympy(q)) == 0
    assert sympy.expand(as_sympy(p + q) - as_sympy(p) - as_sympy(q)) == 0
    assert sympy.expand(as_sympy(p - q) - as_sympy(p) + as_sympy(q)) == 0


@given(polys, coef, coef)
def test_integrate_matches_sympy(p, lo, hi):
    expected = sympy.integrate(as_sympy(p), (t, sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator)))
    assert p.integrate(lo, hi) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


@given(polys)
def test_derivative_undoes_antiderivative(p):
    assert p.antiderivative().derivative() == p


def test_trailing_zeros_trimmed():
    assert Poly.of(1, 0, 0) == Poly.of(1)
    assert Poly.of(0).degree == Poly().degree


def _tent():
    return PiecewisePoly((Fraction(0), Fraction(1), Fraction(2)), (T_POLY, Poly.of(2) - T_POLY))


def test_piecewise_evaluation_and_integral():
    g = _tent()
    assert g(Fraction(1, 2)) == Fraction(1, 2)
    assert g(Fraction(3, 2)) == Fraction(1, 2)
    assert g(1) == 1
    assert g.is_continuous()
    assert g.integral() == 1
    assert (g * g).integral() == Fraction(2, 3)


def test_piecewise_refine_is_functionally_equal():
    g = _tent()
    r = g.refine([Fraction(1, 3), Fraction(5, 3)])
    assert len(r.pieces) == 4
    assert r == g
    assert r.simplified().breakpoints == g.breakpoints


@given(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=2, max_denominator=10), min_size=1, max_size=4), polys)
def test_integral_additive_over_refinement(widths, p):
    bps = [Fraction(0)]
    for w in widths:
        bps.append(bps[-1] + w)
    pw = PiecewisePoly(tuple(bps), tuple(p for _ in widths))
    assert pw.integral() == p.integrate(bps[0], bps[-1])


def test_piecewise_rejects_bad_breakpoints():
    with pytest.raises((DomainError, InputError)):
        PiecewisePoly((Fraction(0), Fraction(0)), (T_POLY,))
    with pytest.raises((DomainError, InputError)):
        PiecewisePoly((Fraction(0), Fraction(1)), (T_POLY, T_POLY))
