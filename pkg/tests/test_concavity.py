from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deltabound.concavity import (
    PLConcave,
    check_center_div,
    check_center_pt,
    linear_drop,
    proof_claim_margin,
    random_center_div_case,
    random_center_pt_case,
    random_concave,
    sweep_lemma,
    tent,
)
from deltabound.errors import DomainError
from oracles import sympy_pl_integral

F = Fraction
seeds = st.integers(0, 10**6)


def test_extremal_center_point():
    c = check_center_pt(1, 2, tent(1, 2))
    assert c.lhs == c.rhs == 4 and c.equality


def test_extremal_center_divisor():
    c = check_center_div(1, 2, linear_drop(1, 1))
    assert c.lhs == c.rhs == F(1, 6) and c.equality


def test_degenerate_equalities():
    assert check_center_pt(2, 2, tent(2, 2)).equality
    assert check_center_div(3, 1, PLConcave.of((0, 1), (1, 2), (3, 0))).equality


@given(seeds)
def test_center_point_matches_sympy(seed):
    a, b, g = random_center_pt_case(seed)
    c = check_center_pt(a, b, g)
    lhs = 3 * a * sympy_pl_integral(g.nodes, lambda x, y: (2 * x - y) * y)
    area = sympy_pl_integral(g.nodes, lambda x, y: y)
    assert (c.lhs, c.rhs) == (lhs, 4 * area * area)
    assert c.holds and c.lhs <= c.rhs


@given(seeds)
def test_center_divisor_matches_sympy(seed):
    a, n, g = random_center_div_case(seed)
    c = check_center_div(a, n, g)
    g0 = g.nodes[0][1]
    lhs = g0 ** (n - 1) * sympy_pl_integral(g.nodes, lambda x, y: x * y ** (n - 1))
    mass = sympy_pl_integral(g.nodes, lambda x, y: y ** (n - 1))
    assert (c.lhs, c.rhs) == (lhs, F(n, n + 1) * mass * mass)


@given(seeds)
def test_proof_claim_margin_is_never_positive(seed):
    a, b, g = random_center_pt_case(seed)
    assert proof_claim_margin(a, b, g) <= 0


@given(st.fractions(min_value=F(1, 4), max_value=3, max_denominator=8), st.integers(2, 6))
def test_linear_drop_is_always_extremal(a, n):
    assert check_center_div(a, n, linear_drop(a, 2)).equality


@given(st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=20),
       st.fractions(min_value=F(1, 50), max_value=1, max_denominator=50))
def test_raising_an_interior_node_breaks_equality(u, w):
    a, b = F(1), F(2)
    x2 = a + u * (b - a)
    g = PLConcave.of((0, 0), (a, a), (x2, a * (b - x2) / (b - a)), (b, 0))
    assert check_center_pt(a, b, g).equality
    # the left slope must stay at most 1, which leaves room x2 - g(x2)
    bumped = g.with_node_raised(2, w * (x2 - g.nodes[2][1]))
    assert not check_center_pt(a, b, bumped).equality


def test_sweep_is_seed_reproducible():
    assert sweep_lemma("center-pt", 5, 11) == sweep_lemma("center-pt", 5, 11)
    assert [s for s, _ in sweep_lemma("center-div", 3, 40)] == [40, 41, 42]
    assert random_concave(3, 2, 4) == random_concave(3, 2, 4)


def test_input_validation():
    with pytest.raises(DomainError):
        PLConcave.of((0, 0), (1, 1), (2, 3))
    with pytest.raises(DomainError):
        check_center_pt(1, 2, PLConcave.of((0, 0), (2, 1)))
    with pytest.raises(DomainError):
        check_center_div(1, 9, linear_drop(1))
    with pytest.raises(DomainError):
        check_center_div(1, 2, PLConcave.of((0, 0), (1, 1)))
    with pytest.raises(DomainError):
        sweep_lemma("nope", 1, 0)
