"""Acceptance criteria, one test per criterion, all at exact equality.

Run directly (``python3 tests/test_acceptance.py``) or under pytest; either way
one PASS/FAIL line per criterion is printed.
"""
import random
from fractions import Fraction

from acceptance_log import criterion
from deltabound.concavity import (
    check_center_div,
    check_center_pt,
    linear_drop,
    random_center_div_case,
    sweep_lemma,
    tent,
)
from deltabound.delta import surface_delta_bound
from deltabound.lattice import DivClass, blow_up, builtin_surface, del_pezzo
from deltabound.poly import PiecewisePoly, Poly
from deltabound.rayscan import (
    eq_adjunction_profile,
    profile_match_eq_adjunction,
    profile_match_fujita,
    sweep,
)
from deltabound.verdicts import (
    HypersurfaceQuery,
    Status,
    ThreefoldQuery,
    hypersurface_verdict,
    k3_tau_bound,
    threefold_verdict,
)
from deltabound.zariski import zariski_decompose
from oracles import brute_zariski, ray_class

F = Fraction


def pw(bps, *pieces):
    return PiecewisePoly(tuple(F(b) for b in bps), tuple(Poly.of(*p) for p in pieces))


def general_point_report(name, ample):
    s = builtin_surface(name)
    return surface_delta_bound(s, DivClass(tuple(ample)))


def test_criterion_1_plane_pipeline():
    with criterion(1, "P2 pipeline, checked against subset-search Zariski oracle"):
        r = general_point_report("P2", (1,))
        ray = r.ray
        assert (ray.eps, ray.eta, ray.tau) == (1, 1, 1)
        assert ray.vol_profile == pw((0, 1), (1, 0, -1))
        assert (ray.s_inv, ray.fixed_deg, r.lambda_bound) == (F(2, 3), 0, 3)
        assert str(r.equality_class) == "EpsTauSqrt(1)"
        assert ray.eps * ray.tau == ray.l_squared
        pm = blow_up(builtin_surface("P2"))
        b, l, e = pm.blown, pm.pullback(DivClass.of(1)), pm.exceptional
        for t in (F(0), F(1, 3), F(1, 2), F(9, 10), F(1)):
            d = DivClass(ray_class(l, e, t))
            p, neg = brute_zariski(b, d)
            z = zariski_decompose(d, b)
            assert z.positive.coords == p and {c.name: a for c, a in z.negative_support} == neg
            assert b.square(z.positive) == 1 - t * t


def test_criterion_2_quadric():
    with criterion(2, "P1xP1, L=(1,1): profile, S, deg F, A/S = 2/b, tau = a+b"):
        r = general_point_report("P1xP1", (1, 1))
        ray = r.ray
        assert ray.vol_profile == pw((0, 1, 2), (2, 0, -1), (4, -4, 1))
        assert ray.s_inv == 1 and ray.fixed_deg == F(1, 3)
        assert r.chain.a_over_s == 2  # 2/b with b = 1
        assert ray.tau == 2


def test_criterion_3_cubic_surface():
    with criterion(3, "DelPezzo(3), -K: eps = 3/2, S = 7/6, tau = 2, lambda = 3/2"):
        s = del_pezzo(3)
        r = surface_delta_bound(s, -s.canonical)
        assert (r.ray.eps, r.ray.s_inv, r.ray.tau, r.lambda_bound) == (F(3, 2), F(7, 6), 2, F(3, 2))


TEN_PAIRS = [
    ("P2", (1,)),
    ("P2", (2,)),
    ("P1xP1", (1, 1)),
    ("P1xP1", (1, 3)),
    ("P1xP1", (2, 3)),
    ("Hirzebruch(1)", (2, 1)),
    ("Hirzebruch(2)", (3, 1)),
    ("DelPezzo(3)", (3, -1, -1, -1, -1, -1, -1)),
    ("DelPezzo(5)", (3, -1, -1, -1, -1)),
    ("DelPezzo(6)", (4, -2, -1, -1)),
]


def test_criterion_4_two_formula_s_identity():
    with criterion(4, "S by volume = S by restricted volume, and vol' = -2g, on 10 built-in pairs"):
        for name, ample in TEN_PAIRS:
            s = builtin_surface(name)
            pm = blow_up(s)
            sw = sweep(pm.pullback(DivClass(ample)), pm.exceptional, pm.blown)
            l2 = sw.l_squared
            by_volume = sw.vol.integral() / l2
            by_restricted = 2 * (sw.restricted * Poly.of(0, 1)).integral() / l2
            assert by_volume == by_restricted, (name, ample)
            for (_, _, v), (_, _, g) in zip(sw.vol.segments(), sw.restricted.segments()):
                assert v.derivative() == g * -2, (name, ample)


def test_criterion_5_calculus_suites():
    with criterion(5, "1000 + 1000 seeded inequality checks, zero violations, extremal equality"):
        pt = sweep_lemma("center-pt", 1000, 0)
        div = sweep_lemma("center-div", 1000, 0)
        assert len(pt) == len(div) == 1000
        assert all(c.holds and c.lhs <= c.rhs for _, c in pt + div)
        assert {random_center_div_case(seed)[1] for seed, _ in div} == set(range(2, 9))
        h = check_center_pt(1, 2, tent(1, 2))
        assert h.lhs == h.rhs == 4 and h.equality
        lin = check_center_div(1, 2, linear_drop(1, 1))
        assert lin.lhs == lin.rhs == F(1, 6) and lin.equality


def test_criterion_6_hypersurfaces():
    with criterion(6, "hypersurface verdicts (27,3), (64,4), (26,3) and n = r^3 for r = 3,4,5"):
        v = hypersurface_verdict(HypersurfaceQuery(27, 3))
        cube = {c.name: c for c in v.chain}["(iv) n^3 >= r^3 d^2"]
        assert v.status is Status.STABLE and (cube.lhs, cube.rhs) == (19683, 18252)
        v = hypersurface_verdict(HypersurfaceQuery(64, 4))
        cube = {c.name: c for c in v.chain}["(iv) n^3 >= r^3 d^2"]
        assert v.status is Status.STABLE and (cube.lhs, cube.rhs) == (262144, 246016)
        v = hypersurface_verdict(HypersurfaceQuery(26, 3))
        assert v.status is Status.NOT_COVERED and HypersurfaceQuery(26, 3).degree == 25
        for r in (3, 4, 5):
            assert hypersurface_verdict(HypersurfaceQuery(r**3, r)).status is Status.STABLE


def test_criterion_7_threefolds():
    with criterion(7, "threefold tables for index 2 and 1, and the K3 bound tau <= 4"):
        for d in (1, 2, 3, 4):
            v = threefold_verdict(ThreefoldQuery(2, d))
            assert v.status is Status.STABLE and v.bound == 2
        for d in range(2, 15, 2):
            assert threefold_verdict(ThreefoldQuery(1, d)).status is Status.STABLE
        assert threefold_verdict(ThreefoldQuery(1, 16)).status is Status.SEMISTABLE
        for d in (18, 22):
            assert threefold_verdict(ThreefoldQuery(1, d)).status is Status.NOT_COVERED
        k3 = k3_tau_bound(16, 4, 100)
        assert k3.holds_up_to_M and k3.asymptotic_ok and k3.holds_for_all_m


def test_criterion_8_profile_matchers():
    with criterion(8, "closed-form profile matchers"):
        plane = general_point_report("P2", (1,)).ray
        assert profile_match_fujita(plane.vol_profile, 2, plane.l_squared)
        assert plane.s_inv == F(2, 3) * plane.tau
        quadric = general_point_report("P1xP1", (1, 1)).ray
        assert not profile_match_fujita(quadric.vol_profile, 2, quadric.l_squared)
        for n in (2, 3):
            assert profile_match_eq_adjunction(eq_adjunction_profile(n, F(7), F(5, 2)), n, F(7))


def random_ample(s, rng):
    """a(-K) + sum b_i (H - E_i) + c H with a > 0 and b_i, c >= 0."""
    k = s.rank - 1

    def draw(lo):
        return F(rng.randint(lo, 6), rng.randint(1, 4))

    a, c = draw(1), draw(0)
    total = -s.canonical * a + DivClass.unit(s.rank, 0) * c
    for i in range(1, k + 1):
        total = total + (DivClass.unit(s.rank, 0) - DivClass.unit(s.rank, i)) * draw(0)
    return total


def test_criterion_9_random_ample_property_suite():
    with criterion(9, "200 random ample classes on DelPezzo(2..6), all ray invariants hold"):
        rng = random.Random(20240601)
        failures = []
        count = 0
        for degree in (2, 3, 4, 5, 6):
            s = del_pezzo(degree)
            for _ in range(40):
                l = random_ample(s, rng)
                r = surface_delta_bound(s, l)
                ray, l2 = r.ray, s.square(l)
                ok = (
                    ray.eps * ray.eps <= l2 <= ray.tau * ray.tau
                    and ray.s_inv <= F(2, 3) * ray.tau
                    and r.chain.chain_holds
                    and r.chain.upper_certificate_holds
                )
                count += 1
                if not ok:
                    failures.append((degree, l))
        assert count == 200 and failures == []


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
