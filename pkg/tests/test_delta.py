from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deltabound.delta import (
    EqualityKind,
    Trichotomy,
    corollary_rho1_bound,
    divisor_s_bound,
    lift_dimension,
    surface_delta_bound,
)
from deltabound.errors import DomainError
from deltabound.lattice import DivClass, SurfaceModel, blow_up, builtin_surface, del_pezzo

F = Fraction


def report(name, *ample):
    s = builtin_surface(name)
    return surface_delta_bound(s, DivClass.of(*ample))


def synthetic():
    s = SurfaceModel("Syn", ((F(1, 2),),), DivClass.of(-3), DivClass.of(1), (), True, ("A",))
    pm = blow_up(s, [{"name": "C", "class": [1, -1], "multiplicity": 1}], complete=True)
    return s, pm


def test_plane():
    r = report("P2", 1)
    assert (r.ray.eps, r.ray.tau, r.ray.s_inv, r.ray.fixed_deg, r.lambda_bound) == (1, 1, F(2, 3), 0, 3)
    assert str(r.equality_class) == "EpsTauSqrt(1)"
    assert r.ray.eps * r.ray.tau == r.ray.l_squared


def test_plane_conic_class():
    r = report("P2", 2)
    assert r.lambda_bound == F(3, 2)
    assert str(r.equality_class) == "EpsTauSqrt(2)"


def test_quadric_balanced():
    r = report("P1xP1", 1, 1)
    assert (r.ray.s_inv, r.ray.fixed_deg, r.lambda_bound) == (1, F(1, 3), F(3, 2))
    assert r.chain.a_over_s == 2
    assert r.chain.chain_equality
    assert r.equality_class.kind is EqualityKind.STRICT


def test_quadric_unbalanced():
    r = report("P1xP1", 1, 3)
    assert (r.ray.eps, r.ray.tau, r.lambda_bound) == (1, 4, F(1, 2))


def test_cubic_surface():
    s = del_pezzo(3)
    r = surface_delta_bound(s, -s.canonical)
    assert (r.ray.eps, r.ray.tau, r.ray.s_inv, r.lambda_bound) == (F(3, 2), 2, F(7, 6), F(3, 2))
    assert r.ray.fixed_deg == F(1, 6)
    assert r.chain.a_over_s == F(12, 7)
    assert r.chain.chain_equality


def test_unique_curve_case():
    s, pm = synthetic()
    r = surface_delta_bound(s, DivClass.of(2), pm)
    assert (r.ray.eps, r.ray.tau) == (1, 2)
    assert r.equality_class.kind is EqualityKind.UNIQUE_CURVE
    assert str(r.equality_class) == "UniqueCurve(C, 2)"
    assert r.chain.s_plus_f == F(4, 3)
    assert corollary_rho1_bound(s, DivClass.of(2), pm).lambda_bound == F(3, 2) == 3 / r.ray.tau


def test_incomplete_catalog_is_undecided():
    s, _ = synthetic()
    pm = blow_up(s, [{"name": "C", "class": [1, -1], "multiplicity": 1}], complete=False)
    r = surface_delta_bound(s, DivClass.of(2), pm)
    assert not r.trust and r.equality_class.kind is EqualityKind.UNDECIDED


def test_preconditions():
    with pytest.raises(DomainError):
        report("Hirzebruch(1)", 1, 0)  # the fiber class is nef, not ample
    with pytest.raises(DomainError):
        corollary_rho1_bound(builtin_surface("P1xP1"), DivClass.of(1, 1))
    s, pm = synthetic()
    with pytest.raises(DomainError):
        surface_delta_bound(builtin_surface("P2"), DivClass.of(1), pm)


@given(st.integers(1, 4), st.integers(1, 4))
def test_quadric_family(a, b):
    # at a general point eps = min(a, b) and tau = a + b
    r = report("P1xP1", a, b)
    assert r.ray.eps == min(a, b) and r.ray.tau == a + b
    assert r.lambda_bound == F(3 * min(a, b), 2 * a * b)
    assert r.chain.chain_holds and r.chain.upper_certificate_holds
    assert r.equality_class.kind is EqualityKind.STRICT


def test_perturbation_breaks_chain_equality():
    assert report("P1xP1", 1, 1).chain.chain_equality
    assert not report("P1xP1", 2, 3).chain.chain_equality


def test_lift_trichotomy():
    assert lift_dimension(3, 1, 1, 1).trichotomy is Trichotomy.CASE1_UNIT_SQRT
    assert lift_dimension(3, 4, 2, 2).trichotomy is Trichotomy.CASE2_BIG_SQRT
    assert lift_dimension(3, 4, 1, 4).trichotomy is Trichotomy.CASE3_DIVISOR
    r = lift_dimension(3, 5, 1, 3)
    assert r.trichotomy is Trichotomy.STRICT and r.delta_bound == F(4, 5)
    with pytest.raises(DomainError):
        lift_dimension(3, 4, 3, 2)


def test_divisor_s_bound():
    assert divisor_s_bound(1, 4, 2) == divisor_s_bound(1, 4, 2, proportional=False)
    assert divisor_s_bound(1, 4, 2).equality
    b = divisor_s_bound(2, 4, 2)
    assert b.bound == F(2, 3) and not b.equality
    assert divisor_s_bound(2, 4, 2, proportional=True).equality
