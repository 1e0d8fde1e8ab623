from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deltabound.errors import InputError
from deltabound.verdicts import (
    HypersurfaceQuery,
    Status,
    ThreefoldQuery,
    hypersurface_verdict,
    k3_tau_bound,
    sqrt_plus_one_below_cuberoot_square,
    threefold_verdict,
)

F = Fraction


def test_hypersurface_examples():
    v = hypersurface_verdict(HypersurfaceQuery(27, 3))
    assert v.status is Status.STABLE and not v.failing
    cube = next(c for c in v.chain if c.name.startswith("(iv)"))
    assert (cube.lhs, cube.rhs) == (19683, 18252)
    assert hypersurface_verdict(HypersurfaceQuery(64, 4)).bound == F(274625, 246016)
    low = hypersurface_verdict(HypersurfaceQuery(26, 3))
    assert low.status is Status.NOT_COVERED
    assert low.failing == ("(ii) degree d >= 26",)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_cube_of_index_suffices(r):
    assert hypersurface_verdict(HypersurfaceQuery(r**3, r)).status is Status.STABLE


@given(st.integers(3, 5), st.integers(4, 200))
def test_stability_is_monotone_in_dimension(r, n):
    if n - r + 2 < 1:
        return
    here = hypersurface_verdict(HypersurfaceQuery(n, r)).status
    there = hypersurface_verdict(HypersurfaceQuery(n + 1, r)).status
    if here is Status.STABLE:
        assert there is Status.STABLE


@given(st.integers(1, 10**4))
def test_sqrt_inequality_against_floats_away_from_the_crossing(d):
    value = d ** 0.5 + 1 - d ** (2 / 3)
    if abs(value) > 1e-6:
        assert sqrt_plus_one_below_cuberoot_square(d) == (value <= 0)


def test_stable_verdicts_have_no_failing_required_checks():
    for q in [ThreefoldQuery(2, d) for d in range(1, 6)] + [ThreefoldQuery(1, d) for d in range(2, 24, 2)]:
        v = threefold_verdict(q)
        if v.status is Status.STABLE:
            assert not v.failing, (q, v.failing)


def test_index_two_table():
    for d in (1, 2, 3, 4):
        v = threefold_verdict(ThreefoldQuery(2, d))
        assert v.status is Status.STABLE and v.bound == 2
    four = threefold_verdict(ThreefoldQuery(2, 4))
    assert any(o.load_bearing for o in four.obligations)
    assert threefold_verdict(ThreefoldQuery(2, 5)).status is Status.NOT_COVERED


def test_index_one_table():
    for d in range(2, 15, 2):
        assert threefold_verdict(ThreefoldQuery(1, d)).status is Status.STABLE
    assert threefold_verdict(ThreefoldQuery(1, 16)).status is Status.SEMISTABLE
    for d in (18, 20, 22):
        assert threefold_verdict(ThreefoldQuery(1, d)).status is Status.NOT_COVERED


def test_smaller_eps_table_loses_coverage():
    q = ThreefoldQuery(2, 2, {1: F(1, 2), 2: F(1, 2), 3: F(3, 2), 4: F(2)})
    assert threefold_verdict(q).status is Status.NOT_COVERED


def test_k3_bound():
    r = k3_tau_bound(16, 4, 100)
    assert r.holds_up_to_M and r.asymptotic_ok and r.m0 == 1 and r.holds_for_all_m
    bad = k3_tau_bound(16, F(39, 10), 10)
    assert bad.counterexample == (1, 4) and not bad.holds_for_all_m


@given(st.integers(2, 30), st.integers(1, 8))
def test_k3_asymptotic_threshold_is_sound(d, c):
    r = k3_tau_bound(d, c, 5)
    if r.asymptotic_ok and r.m0 is not None:
        for m in range(r.m0, r.m0 + 40):
            mu = c * m + 1
            assert mu * (mu - 1) > d * m * m + 2


def test_query_validation():
    with pytest.raises(InputError):
        ThreefoldQuery(3, 2)
    with pytest.raises(InputError):
        ThreefoldQuery(1, 0)
    with pytest.raises(InputError):
        k3_tau_bound(0, 1, 1)
