"""K-stability verdicts for Fano hypersurfaces and Picard-rank-one threefolds.

A verdict certifies exactly the arithmetic a stability argument reduces to:
each step is a named exact inequality. Geometric inputs that no computation
here can check (Seshadri constants of del Pezzo surfaces from the
literature, Noether-Lefschetz statements, lct estimates) are listed as
obligations with their citations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional

from .delta import Trichotomy, divisor_s_bound, lift_dimension
from .errors import InputError

BRO_DP_SESHADRI = "Broustet, Seshadri constants of del Pezzo surfaces, Theoreme 1.3"
DEFAULT_EPS_TABLE: dict[int, Fraction] = {
    1: Fraction(1, 2),
    2: Fraction(1),
    3: Fraction(3, 2),
    4: Fraction(2),
}


class Status(str, Enum):
    STABLE = "UniformlyKStableBySufficientCriterion"
    SEMISTABLE = "KSemistableWithObligations"
    NOT_COVERED = "NotCoveredByCriterion"


@dataclass(frozen=True)
class Check:
    """``lhs <relation> rhs`` evaluated exactly."""

    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    # informational checks are reported but do not decide the status
    required: bool = True

    @property
    def holds(self) -> bool:
        ops = {
            ">=": self.lhs >= self.rhs,
            ">": self.lhs > self.rhs,
            "<=": self.lhs <= self.rhs,
            "<": self.lhs < self.rhs,
            "==": self.lhs == self.rhs,
            "!=": self.lhs != self.rhs,
        }
        return ops[self.relation]


@dataclass(frozen=True)
class Obligation:
    claim: str
    citation: str
    # True when the verdict's strictness rests on this unverified step
    load_bearing: bool = False


@dataclass(frozen=True)
class Verdict:
    subject: str
    status: Status
    bound: Fraction
    chain: tuple[Check, ...]
    obligations: tuple[Obligation, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def failing(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.chain if c.required and not c.holds)


def _q(x: object) -> Fraction:
    return Fraction(x)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Hypersurfaces


@dataclass(frozen=True)
class HypersurfaceQuery:
    n: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 2 or self.r < 1 or self.degree < 1:
            raise InputError(f"need n >= 2, r >= 1, d = n + 2 - r >= 1; got n={self.n}, r={self.r}")

    @property
    def degree(self) -> int:
        return self.n + 2 - self.r


def sqrt_plus_one_below_cuberoot_square(d: int) -> bool:
    """``sqrt(d) + 1 <= d^(2/3)`` decided in integers.

    Cubing gives ``sqrt(d) (d + 3) <= d^2 - 3d - 1``; both sides are then
    squared when the right side is nonnegative.
    """
    rhs = d * d - 3 * d - 1
    return rhs >= 0 and d * (d + 3) ** 2 <= rhs * rhs


def hypersurface_verdict(q: HypersurfaceQuery) -> Verdict:
    """Four integer checks; all pass means delta_Z(X) >= (n+1)/n for every
    positive-dimensional Z, hence uniform K-stability."""
    n, r, d = q.n, q.r, q.degree
    chain = (
        Check("(i) index r >= 3", _q(r), ">=", _q(3)),
        Check("(ii) degree d >= 26", _q(d), ">=", _q(26)),
        Check("(iii) n >= d", _q(n), ">=", _q(d)),
        Check("(iv) n^3 >= r^3 d^2", _q(n ** 3), ">=", _q(r ** 3 * d * d)),
    )
    ok = all(c.holds for c in chain)
    extra = (
        Check("sqrt(d) + 1 <= d^(2/3)", _q(int(sqrt_plus_one_below_cuberoot_square(d))), "==", _q(1), False),
        Check("statement condition n >= r^3", _q(n), ">=", _q(r ** 3), False),
        Check("(n+1)^3 >= r^3 d^2", _q((n + 1) ** 3), ">=", _q(r ** 3 * d * d), False),
    )
    obligations = (
        Obligation("tau_x(L) <= sqrt(d) + 1 at a very general point of Z", "Hilbert scheme argument and EKL, Prop 2.3"),
        Obligation("very general surface in |2L| through x has Picard number one", "DGF Noether-Lefschetz, Thm 1.1"),
        Obligation("delta_Z >= (n+1)/n on all Z of dim >= 1 suffices", "K-stability via admissible flags: local delta bounds along subvarieties"),
    )
    # cube of the lower bound (n+1) / (r d^(2/3)) for delta_Z(X)
    bound = Fraction((n + 1) ** 3, r ** 3 * d * d)
    notes = (f"d = {d}", "bound is the cube of the lower bound (n+1)/(r d^(2/3)) for delta_Z(X)")
    return Verdict(
        f"hypersurface n={n} r={r}",
        Status.STABLE if ok else Status.NOT_COVERED,
        bound,
        chain + extra,
        obligations,
        notes,
    )


# ---------------------------------------------------------------------------
# K3 multiplicity bound


@dataclass(frozen=True)
class K3TauResult:
    d: int
    c: Fraction
    M: int
    holds_up_to_M: bool
    counterexample: Optional[tuple[int, int]]
    asymptotic_ok: bool
    m0: Optional[int]

    @property
    def holds_for_all_m(self) -> bool:
        return self.holds_up_to_M and self.asymptotic_ok and self.m0 is not None and self.m0 <= self.M + 1


def _no_curve_at(d: int, c: Fraction, m: int) -> tuple[bool, int]:
    mu = math.floor(c * m) + 1  # smallest integer multiplicity above c m
    return mu * (mu - 1) > d * m * m + 2, mu


def k3_tau_bound(d: int, c: object, M: int) -> K3TauResult:
    """No curve in ``|m H_S|`` on a K3 surface has multiplicity above ``c m``.

    Such a curve would satisfy ``mu (mu - 1) - 2 <= 2 p_a - 2 = d m^2``. The
    inequality is checked for ``m = 1..M``; when ``c^2 >= d`` it also holds
    for every ``m >= m0``.
    """
    c = _q(c)
    if d < 1 or c <= 0 or M < 1:
        raise InputError("need d >= 1, c > 0, M >= 1")
    bad = None
    for m in range(1, M + 1):
        ok, mu = _no_curve_at(d, c, m)
        if not ok:
            bad = (m, mu)
            break
    asymptotic = c * c >= d
    m0: Optional[int] = None
    if asymptotic:
        if c * c == d:
            # c is an integer here, mu = c m + 1 and the test is c m > 2
            m0 = math.floor(2 / c) + 1
        else:
            # mu (mu - 1) > c m (c m - 1) >= d m^2 + 2 once (c^2 - d) m^2 - c m - 2 >= 0
            a2 = c * c - d
            lo = max(1, math.ceil(c / (2 * a2)))
            hi = lo
            while a2 * hi * hi - c * hi - 2 < 0:
                hi *= 2
            while lo < hi:
                mid = (lo + hi) // 2
                if a2 * mid * mid - c * mid - 2 >= 0:
                    hi = mid
                else:
                    lo = mid + 1
            m0 = lo
    return K3TauResult(d, c, M, bad is None, bad, asymptotic, m0)


# ---------------------------------------------------------------------------
# Threefolds


@dataclass(frozen=True)
class ThreefoldQuery:
    index: int
    degree: int
    eps_table: Mapping[int, Fraction] = field(default_factory=lambda: dict(DEFAULT_EPS_TABLE))

    def __post_init__(self) -> None:
        if self.index not in (1, 2):
            raise InputError("only Fano index 1 and 2 are handled")
        if self.degree < 1:
            raise InputError("degree must be positive")
        for k, v in self.eps_table.items():
            if Fraction(v) <= 0:
                raise InputError(f"eps table entry for degree {k} must be positive")


def _equality_exclusion(d: int, eps: Fraction) -> tuple[Check, Check]:
    """Arithmetic tests ruling out the two equality patterns of the lift.

    Either ``eps^2 = d`` (the surface equality ``eps = tau = sqrt(d)``) or
    ``H = tau G`` with ``tau = d / eps`` for a prime divisor ``G``; since
    ``H`` is primitive the latter needs ``1/tau`` to be a positive integer.
    """
    sqrt_case = Check("eps^2 != d (no eps = tau = sqrt(d) equality)", eps * eps, "!=", _q(d))
    inv_tau = eps / d
    primitive = Check(
        "1/tau = eps/d is not a positive integer (H primitive, no H = tau G)",
        _q(int(inv_tau.denominator == 1 and inv_tau > 0)),
        "==",
        _q(0),
    )
    return sqrt_case, primitive


def _index_two(q: ThreefoldQuery) -> Verdict:
    d = q.degree
    subject = f"threefold index 2 degree {d}"
    if d > 4 or d not in q.eps_table:
        return Verdict(subject, Status.NOT_COVERED, Fraction(0), (), (), ("index two is covered for degree <= 4 only",))
    eps = Fraction(q.eps_table[d])
    lift = lift_dimension(3, d, eps, max(eps, Fraction(d) / eps))
    bound = lift.delta_bound
    target = Check("delta_x(H) bound 4 eps / d >= 2", bound, ">=", _q(2))
    obligations = [
        Obligation(f"eps_x(-K_S) >= {eps} for a smooth S in |H| through x", BRO_DP_SESHADRI),
        Obligation("a smooth member of |H| passes through every point", "classification of Fano threefolds (Fano-book)"),
    ]
    chain = [target]
    notes = [f"lift trichotomy label: {lift.trichotomy.value}"]
    if d == 3:
        obligations.append(
            Obligation("at a generalized Eckardt point delta_x(X) = 6/5", "K-stability via admissible flags: cubic threefolds at Eckardt points")
        )
        chain.append(Check("Eckardt case delta_x(X) = 6/5 > 1", Fraction(6, 5), ">", _q(1)))
    if bound < 2:
        return Verdict(subject, Status.NOT_COVERED, bound, tuple(chain), tuple(obligations), tuple(notes))
    if bound > 2:
        chain.append(Check("strict bound", bound, ">", _q(2)))
        return Verdict(subject, Status.STABLE, bound, tuple(chain), tuple(obligations), tuple(notes))
    sqrt_case, primitive = _equality_exclusion(d, eps)
    if sqrt_case.holds and primitive.holds:
        chain += [sqrt_case, primitive]
        return Verdict(subject, Status.STABLE, bound, tuple(chain), tuple(obligations), tuple(notes))
    if primitive.holds and lift.trichotomy is Trichotomy.CASE2_BIG_SQRT and d == 4:
        chain += [replace(sqrt_case, required=False), primitive]
        # divisorial centres: S(H; D) <= 1/(4r) < 1/2 for D ~ rH
        s_div = divisor_s_bound(3, d, d).bound
        chain.append(Check("divisor centre: A/S(H;D) = 4r >= 4 > 2 (r = 1)", 1 / s_div, ">", _q(2)))
        obligations += [
            Obligation("curve centre with A_X(v) < T(H;v) is impossible", "Cheltsov-Shramov lct of threefolds, Thm 6.1", True),
            Obligation("curve centre of degree >= 2: lct_C(X; I_Z) >= sqrt(2)/m", "de Fernex-Ein-Mustata, Thm 0.1", True),
            Obligation("line centre: mult_C D_i < 3/2 and an absolute lct gain", "Fano-book Prop 3.4.1(ii); lct gain lemma for Fano complete intersections", True),
        ]
        notes.append("eps^2 = d: the sqrt equality case is excluded by the cited obligations, not by arithmetic")
        return Verdict(subject, Status.STABLE, bound, tuple(chain), tuple(obligations), tuple(notes))
    chain += [sqrt_case, primitive]
    notes.append("equality case not excluded")
    return Verdict(subject, Status.SEMISTABLE, bound, tuple(chain), tuple(obligations), tuple(notes))


def _index_one(q: ThreefoldQuery, M: int) -> Verdict:
    d = q.degree
    subject = f"threefold index 1 degree {d}"
    if d % 2 or d > 16:
        why = "index one degrees are even" if d % 2 else "index one is covered for degree <= 16 only"
        return Verdict(subject, Status.NOT_COVERED, Fraction(0), (), (), (why,))
    if d <= 4:
        eps = Fraction(1)
        bound = 4 * eps / d
        chain = [Check("delta_x(H) bound 4 eps / d >= 1", bound, ">=", _q(1))]
        obligations = [Obligation("eps_x(H_S) >= 1 since H is base point free", "classification of Fano threefolds (Fano-book)")]
        if bound > 1:
            chain.append(Check("strict bound", bound, ">", _q(1)))
        else:
            chain += list(_equality_exclusion(d, eps))
        status = Status.STABLE if all(c.holds for c in chain) else Status.SEMISTABLE
        return Verdict(subject, status, bound, tuple(chain), tuple(obligations))

    k3 = k3_tau_bound(d, 4, M)
    tau_bound = Fraction(4)
    bound = 4 / tau_bound
    chain = [
        Check(f"K3 curve test up to m = {M}", _q(int(k3.holds_up_to_M)), "==", _q(1)),
        Check("asymptotic c^2 >= d with c = 4", _q(16), ">=", _q(d)),
        Check("m0 <= M + 1", _q(k3.m0 if k3.m0 is not None else M + 2), "<=", _q(M + 1)),
        Check("delta_x(H) >= 4 / tau_x(H_S) >= 1", bound, ">=", _q(1)),
        Check("H = 4G impossible: denominator of 1/4 is not 1 (H primitive)", _q(Fraction(1, 4).denominator), "!=", _q(1)),
    ]
    obligations = [
        Obligation("a very general S in |H| through x has Pic(S) = Z H_S", "Noether-Lefschetz for prime Fano threefolds (degree >= 6)"),
    ]
    if d != 16:
        chain.append(Check("eps = tau = 4 needs d = eps tau = 16", _q(d), "!=", _q(16)))
        status = Status.STABLE if all(c.holds for c in chain) else Status.NOT_COVERED
        return Verdict(subject, status, bound, tuple(chain), tuple(obligations))
    s_div = divisor_s_bound(3, d, d).bound
    chain.append(Check("divisor centre: S(H;D) <= 1/4 < 1 = A_X(D)", s_div, "<", _q(1)))
    obligations += [
        Obligation(
            "curve centre of degree >= 2 excluded via the multiplier ideal J(T, 4 eta_m Gamma), length <= 17 at a point, lct > 1/3 for colength <= 21",
            "K-stability of Fano complete intersections: multiplier-ideal length bounds",
            True,
        ),
        Obligation(
            "line centre with A_X(v) < T(H;v)/2: mult_L D = 5/2 and a degree-5 cover G -> L force klt",
            "Fano-book Thms 4.3.3(vii), 4.3.7(iii), Remark 4.3.4",
            True,
        ),
        Obligation(
            "line centre with A_X(v) <= eta(H;v)/2 excluded by an absolute lct gain",
            "Fano-book Thm 4.3.3(vii); lct gain lemma for Fano complete intersections; movable-threshold dichotomy for delta",
            True,
        ),
    ]
    notes = ("degree 16: only delta >= 1 is certified; the equality analysis is cited",)
    return Verdict(subject, Status.SEMISTABLE, bound, tuple(chain), tuple(obligations), notes)


def threefold_verdict(q: ThreefoldQuery, M: int = 100) -> Verdict:
    return _index_two(q) if q.index == 2 else _index_one(q, M)
