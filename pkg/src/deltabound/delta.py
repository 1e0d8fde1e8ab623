"""Lower bounds for stability thresholds at a point, and their equality cases.

Nothing here computes a delta-invariant. Each report is a certified lower
bound ``lambda`` plus the ray data backing it, with the ratio ``A(E)/S(E)``
as a matching upper certificate for the one valuation actually computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import DomainError, InvariantViolation
from .lattice import CurveEntry, DivClass, PointModel, SurfaceModel, blow_up, validate_point_model
from .rayscan import RayInvariants, ray_invariants
from .zariski import is_ample

SURFACE_CITATION = "delta_x(L) >= 3 eps_x(L) / L^2 at a smooth surface point; equality needs eps = tau = sqrt(L^2) or L = tau C"
LIFT_CITATION = "valuation-theoretic clauses of the lift (centers, computing divisors) are cited, not verified"


class EqualityKind(str, Enum):
    STRICT = "Strict"
    EPS_TAU_SQRT = "EpsTauSqrt"
    UNIQUE_CURVE = "UniqueCurve"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class EqualityClass:
    kind: EqualityKind
    value: Optional[Fraction] = None
    curve: Optional[str] = None

    def __str__(self) -> str:
        if self.kind is EqualityKind.EPS_TAU_SQRT:
            return f"EpsTauSqrt({self.value})"
        if self.kind is EqualityKind.UNIQUE_CURVE:
            return f"UniqueCurve({self.curve}, {self.value})"
        return self.kind.value


@dataclass(frozen=True)
class ChainCheck:
    """The two exact inequalities behind the bound.

    ``s_plus_f <= two_over_lambda`` and ``a_over_s >= lambda``.
    """

    s_plus_f: Fraction
    two_over_lambda: Fraction
    a_over_s: Fraction
    lambda_bound: Fraction

    @property
    def chain_holds(self) -> bool:
        return self.s_plus_f <= self.two_over_lambda

    @property
    def chain_equality(self) -> bool:
        return self.s_plus_f == self.two_over_lambda

    @property
    def upper_certificate_holds(self) -> bool:
        return self.a_over_s >= self.lambda_bound


@dataclass(frozen=True)
class InvariantReport:
    surface: str
    ample: str
    ray: RayInvariants
    lambda_bound: Fraction
    chain: ChainCheck
    equality_class: EqualityClass
    witnesses: tuple[str, ...] = ()
    trust: bool = True
    citations: tuple[str, ...] = field(default=(SURFACE_CITATION,))


@dataclass(frozen=True)
class UniqueDivisor:
    curve: CurveEntry
    tau: Fraction
    # D >= ((v(D) - eta)/(T - eta)) D0 for D in |L| with v(D) > eta, kept symbolic
    coefficient_rule: str


def find_unique_tau_divisor(
    s: SurfaceModel, l_cls: DivClass, ray: RayInvariants, pm: Optional[PointModel] = None
) -> Optional[UniqueDivisor]:
    """A catalog curve ``C`` through the point with ``L = tau * C`` as classes.

    With a point model the search runs over strict transforms on the blowup
    (curves meeting the exceptional curve) and compares pushforwards with
    ``L`` on ``s``. Without one, ``L`` and the catalog both live on ``s`` and
    the ray is taken to be a curve of ``s`` itself. Returns ``None`` whenever
    ``eta = tau``, where no uniqueness claim is available.
    """
    if ray.eta >= ray.tau:
        return None
    rule = f"D >= ((v(D) - {ray.eta}) / ({ray.tau} - {ray.eta})) * D0"
    if pm is None:
        for c in s.neg_curves:
            if l_cls == c.cls * ray.tau:
                return UniqueDivisor(c, ray.tau, rule)
        return None
    b = pm.blown
    for c in b.neg_curves:
        if b.dot(c.cls, pm.exceptional) > 0 and l_cls == pm.pushforward(c.cls) * ray.tau:
            return UniqueDivisor(c, ray.tau, rule)
    return None


def _check_ample(s: SurfaceModel, l_cls: DivClass) -> None:
    if not is_ample(l_cls, s):
        raise DomainError(f"{s.label(l_cls)} is not ample on {s.name}")


def surface_delta_bound(s: SurfaceModel, l_cls: DivClass, pm: Optional[PointModel] = None) -> InvariantReport:
    """``delta_x(L) >= 3 eps / L^2`` with the proof chain checked exactly."""
    _check_ample(s, l_cls)
    if pm is None:
        pm = blow_up(s)
    if pm.base != s:
        raise DomainError("point model was built over a different surface")
    validate_point_model(pm)
    ray = ray_invariants(pm.pullback(l_cls), pm.exceptional, pm.blown, pm.log_discrepancy)
    l2 = s.square(l_cls)
    lam = 3 * ray.eps / l2
    assert ray.fixed_deg is not None
    chain = ChainCheck(
        s_plus_f=ray.s_inv + ray.fixed_deg,
        two_over_lambda=2 / lam,
        a_over_s=ray.log_discrepancy / ray.s_inv,
        lambda_bound=lam,
    )
    if not chain.chain_holds:
        raise InvariantViolation(f"S + deg F = {chain.s_plus_f} exceeds 2/lambda = {chain.two_over_lambda}")
    if not chain.upper_certificate_holds:
        raise InvariantViolation(f"A/S = {chain.a_over_s} is below lambda = {lam}")

    trust = s.catalog_complete and pm.blown.catalog_complete
    witnesses: list[str] = []
    if not trust:
        eq = EqualityClass(EqualityKind.UNDECIDED)
    elif ray.eps == ray.tau:
        if ray.eps ** 2 != l2:
            raise InvariantViolation("eps = tau but eps^2 != L^2")
        eq = EqualityClass(EqualityKind.EPS_TAU_SQRT, ray.eps)
        witnesses.append(f"eps = tau = {ray.eps}, eps^2 = L^2 = {l2}")
    elif ray.eps * ray.tau == l2:
        found = find_unique_tau_divisor(s, l_cls, ray, pm)
        if found is None:
            eq = EqualityClass(EqualityKind.STRICT)
            witnesses.append(f"eps * tau = L^2 = {l2} but no curve C through the point has L = tau C")
        else:
            eq = EqualityClass(EqualityKind.UNIQUE_CURVE, ray.tau, found.curve.name)
            witnesses.append(f"L = {ray.tau} * pushforward({found.curve.name})")
            witnesses.append(found.coefficient_rule)
    else:
        eq = EqualityClass(EqualityKind.STRICT)
    if chain.chain_equality:
        witnesses.append(f"chain equality: S + deg F = 2/lambda = {chain.two_over_lambda}")
    return InvariantReport(s.name, s.label(l_cls), ray, lam, chain, eq, tuple(witnesses), trust)


def corollary_rho1_bound(s: SurfaceModel, l_cls: DivClass, pm: Optional[PointModel] = None) -> InvariantReport:
    """Picard rank one: ``eps * tau = L^2`` turns the bound into ``3 / tau``."""
    if s.rank != 1:
        raise DomainError(f"{s.name} has Picard rank {s.rank}, not 1")
    rep = surface_delta_bound(s, l_cls, pm)
    ray = rep.ray
    if ray.eps * ray.tau != ray.l_squared:
        raise InvariantViolation("eps * tau != L^2 on a Picard rank one surface")
    bound = 3 / ray.tau
    if bound != rep.lambda_bound:
        raise InvariantViolation("3/tau disagrees with 3 eps / L^2")
    return rep


# ---------------------------------------------------------------------------
# Higher dimension


class Trichotomy(str, Enum):
    CASE1_UNIT_SQRT = "Case1_UnitSqrt"
    CASE2_BIG_SQRT = "Case2_BigSqrt_CenterDim(n-2)"
    CASE3_DIVISOR = "Case3_DivisorProportional"
    STRICT = "Strict"


@dataclass(frozen=True)
class LiftReport:
    n: int
    Ln: Fraction
    eps_surface: Fraction
    tau_surface: Fraction
    delta_bound: Fraction
    trichotomy: Trichotomy
    citations: tuple[str, ...] = (LIFT_CITATION,)


def lift_dimension(n: int, Ln: object, eps_surface: object, tau_surface: object) -> LiftReport:
    """``delta_x(L) >= (n+1) eps / L^n`` from a complete-intersection surface through x."""
    Ln, eps, tau = Fraction(Ln), Fraction(eps_surface), Fraction(tau_surface)  # type: ignore[arg-type]
    if n < 2:
        raise DomainError("dimension must be at least 2")
    if Ln <= 0 or eps <= 0 or eps > tau:
        raise DomainError(f"need L^n > 0 and 0 < eps <= tau, got {Ln}, {eps}, {tau}")
    bound = (n + 1) * eps / Ln
    if eps == tau and eps * eps == Ln:
        kind = Trichotomy.CASE1_UNIT_SQRT if eps == 1 else Trichotomy.CASE2_BIG_SQRT
    elif eps * tau == Ln and eps < tau:
        kind = Trichotomy.CASE3_DIVISOR
    else:
        kind = Trichotomy.STRICT
    return LiftReport(n, Ln, eps, tau, bound, kind)


@dataclass(frozen=True)
class DivisorSBound:
    bound: Fraction
    equality: bool


def divisor_s_bound(n: int, Ln: object, LnG: object, proportional: Optional[bool] = None) -> DivisorSBound:
    """``S(L; G) <= L^n / ((n+1) L^(n-1).G)``.

    Equality needs ``L`` proportional to ``G``; in dimension one that is
    automatic, otherwise the caller says so through ``proportional``.
    """
    Ln, LnG = Fraction(Ln), Fraction(LnG)  # type: ignore[arg-type]
    if n < 1:
        raise DomainError("dimension must be positive")
    if Ln <= 0 or LnG <= 0:
        raise DomainError("intersection numbers must be positive")
    bound = Ln / ((n + 1) * LnG)
    equality = True if n == 1 else bool(proportional)
    return DivisorSBound(bound, equality)
