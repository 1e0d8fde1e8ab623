"""Volume and restricted volume along a ray ``L - tE`` on a surface.

On each interval where the Zariski support is constant the negative part is
affine in ``t``, so the positive part is ``P(t) = P0 - t V`` and
``vol(t) = P(t)^2`` is a quadratic. The sweep walks from ``t = 0`` to the
pseudo-effective threshold, jumping from one support change to the next.
"""
from __future__ import annotations

import csv
import functools
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact
from .errors import DomainError, InvariantViolation, ModelError
from .lattice import DivClass, SurfaceModel
from .poly import T_POLY, PiecewisePoly, Poly
from .zariski import fujita_run, is_nef


@dataclass(frozen=True)
class Segment:
    """``P(t) = p0 - t * v`` on ``[start, end]`` with fixed negative support."""

    start: Fraction
    end: Fraction
    support: tuple[str, ...]
    p0: DivClass
    v: DivClass


@dataclass(frozen=True)
class RaySweep:
    segments: tuple[Segment, ...]
    l_squared: Fraction
    vol: PiecewisePoly
    restricted: PiecewisePoly

    @property
    def tau(self) -> Fraction:
        return self.segments[-1].end

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return self.vol.breakpoints


def _first_root_in(c2: Fraction, c1: Fraction, c0: Fraction, lo: Fraction, hi: Optional[Fraction]) -> Optional[Fraction]:
    """Smallest root of ``c2 t^2 + c1 t + c0`` in ``(lo, hi]`` given a positive value at ``lo``.

    Raises ModelError if that root exists but is irrational.
    """
    roots, ok = exact.quadratic_roots(c2, c1, c0)
    if ok:
        inside = [r for r in roots if r > lo and (hi is None or r <= hi)]
        return inside[0] if inside else None
    q = Poly((c0, c1, c2))
    crosses = False
    if hi is None:
        crosses = c2 < 0 or (c2 > 0 and -c1 / (2 * c2) > lo)
    elif q(hi) < 0:
        crosses = True
    elif c2 > 0:
        vertex = -c1 / (2 * c2)
        crosses = lo < vertex < hi and q(vertex) < 0
    if crosses:
        raise ModelError("the positive part reaches the boundary of the positive cone at an irrational t")
    return None


def _check_ray(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> Fraction:
    l2 = s.square(l_cls)
    s.dot(l_cls, e_cls)  # dimension check
    if e_cls.is_zero():
        raise DomainError("the ray direction E must be a nonzero class")
    if l2 <= 0 or not is_nef(l_cls, s):
        raise DomainError(f"{s.label(l_cls)} is not nef and big on {s.name}")
    return l2


@functools.lru_cache(maxsize=512)
def sweep(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> RaySweep:
    """Event-driven sweep of the Zariski chambers met by ``L - tE``, ``t >= 0``.

    ``L`` must be nef and big; ample classes and pullbacks of ample classes
    to a blowup both qualify.
    """
    l2 = _check_ray(l_cls, e_cls, s)
    curves = s.neg_curves
    segments: list[Segment] = []
    t = Fraction(0)
    while True:
        run = fujita_run(s, [l_cls - e_cls * t, -e_cls])
        if not run.definite:
            raise InvariantViolation(f"support at t={t} is not negative definite inside the big cone")
        rem0, rem1 = run.remainders
        # P(u) = rem0 + (u - t) rem1 for u slightly above t
        v = -rem1
        p0 = rem0 + v * t
        events: list[Fraction] = []
        at_t, slopes = s.catalog_pairings(rem0), s.catalog_pairings(rem1)
        for i, slope in enumerate(slopes):
            if slope < 0 and i not in run.support:
                events.append(t - at_t[i] / slope)
        for a0, a1 in zip(*run.coeffs):
            if a1 < 0:
                events.append(t - a0 / a1)
        nxt = min(events) if events else None
        # P(u)^2 = p0^2 - 2u p0.v + u^2 v^2
        c0, c1, c2 = s.square(p0), -2 * s.dot(p0, v), s.square(v)
        end = _first_root_in(c2, c1, c0, t, nxt)
        support = tuple(sorted(curves[i].name for i in run.support))
        if end is not None:
            segments.append(Segment(t, end, support, p0, v))
            break
        if nxt is None:
            raise DomainError(f"{s.label(l_cls)} - t*{s.label(e_cls)} stays big for every t >= 0")
        if nxt <= t:
            raise InvariantViolation(f"sweep did not advance past t={t}")
        segments.append(Segment(t, nxt, support, p0, v))
        t = nxt

    bps = (segments[0].start,) + tuple(seg.end for seg in segments)
    vol_pieces, g_pieces = [], []
    for seg in segments:
        p2, pv, v2 = s.square(seg.p0), s.dot(seg.p0, seg.v), s.square(seg.v)
        vol_pieces.append(Poly((p2, -2 * pv, v2)))
        g_pieces.append(Poly((s.dot(seg.p0, e_cls), -s.dot(seg.v, e_cls))))
    vol = PiecewisePoly(bps, tuple(vol_pieces))
    g = PiecewisePoly(bps, tuple(g_pieces))
    return RaySweep(tuple(segments), l2, vol, g)


def volume_ray(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> PiecewisePoly:
    """``t -> vol(L - tE)`` on ``[0, T]``, one quadratic per Zariski chamber."""
    return sweep(l_cls, e_cls, s).vol


def restricted_volume_ray(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> PiecewisePoly:
    """``t -> P(t).E`` on ``[0, T]``, piecewise linear."""
    return sweep(l_cls, e_cls, s).restricted


def nef_threshold(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> Fraction:
    """Largest ``t`` with ``L - tE`` nef, straight from the catalog.

    The minimum of ``(L.C)/(E.C)`` over catalog curves with ``E.C > 0``,
    capped by the ample-degree bound and the positive-cone root.
    """
    _check_ray(l_cls, e_cls, s)
    bounds = []
    for lc, ec in zip(s.catalog_pairings(l_cls), s.catalog_pairings(e_cls)):
        if ec > 0:
            bounds.append(lc / ec)
    ea = s.dot(e_cls, s.ample_ref)
    if ea > 0:
        bounds.append(s.dot(l_cls, s.ample_ref) / ea)
    cap = min(bounds) if bounds else None
    root = _first_root_in(s.square(e_cls), -2 * s.dot(l_cls, e_cls), s.square(l_cls), Fraction(0), cap)
    if root is not None:
        return root
    if cap is None:
        raise DomainError("L - tE stays nef for every t >= 0")
    return cap


def is_point_ray(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> bool:
    """``E`` looks like the exceptional curve of a point blown up, seen from ``L``."""
    return s.square(e_cls) == -1 and s.dot(l_cls, e_cls) == 0


def thresholds(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> tuple[Fraction, Fraction, Fraction]:
    """``(eps, eta, tau)``; on a surface the movable threshold equals ``eps``.

    ``eps`` from the catalog formula is cross-checked against the first
    support change of the sweep.
    """
    sw = sweep(l_cls, e_cls, s)
    eps = nef_threshold(l_cls, e_cls, s)
    first = sw.segments[0]
    eps_sweep = first.start if first.support else first.end
    if eps != eps_sweep:
        raise InvariantViolation(f"nef threshold {eps} disagrees with the sweep ({eps_sweep})")
    return eps, eps, sw.tau


def s_invariant(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> Fraction:
    """Expected vanishing order, by two independent integrals.

    ``(1/L^2) int vol`` and ``(2/L^2) int t g(t)`` agree by integration by
    parts since ``vol' = -2g``; a mismatch is an internal error.
    """
    sw = sweep(l_cls, e_cls, s)
    by_volume = sw.vol.integral() / sw.l_squared
    by_restricted = 2 * (sw.restricted * T_POLY).integral() / sw.l_squared
    if by_volume != by_restricted:
        raise InvariantViolation(f"S by volume {by_volume} != S by restricted volume {by_restricted}")
    return by_volume


def fixed_part_degree(l_cls: DivClass, e_cls: DivClass, s: SurfaceModel) -> Fraction:
    """``(2/L^2) int (t - g(t)) g(t) dt``; ``t - g(t)`` is ``N(t).E`` on a point ray."""
    if not is_point_ray(l_cls, e_cls, s):
        raise DomainError("fixed-part degree needs an exceptional ray (E^2 = -1, L.E = 0)")
    sw = sweep(l_cls, e_cls, s)
    g = sw.restricted
    t_minus_g = PiecewisePoly(g.breakpoints, tuple(T_POLY - p for p in g.pieces))
    return 2 * (t_minus_g * g).integral() / sw.l_squared


@dataclass(frozen=True)
class RayInvariants:
    eps: Fraction
    eta: Fraction
    tau: Fraction
    s_inv: Fraction
    fixed_deg: Optional[Fraction]
    vol_profile: PiecewisePoly
    restricted_profile: PiecewisePoly
    log_discrepancy: Fraction
    l_squared: Fraction
    supports: tuple[tuple[str, ...], ...]
    point_ray: bool
    catalog_complete: bool

    def validate(self) -> None:
        """Raise InvariantViolation unless every ray invariant holds exactly."""
        if not (0 < self.eps == self.eta <= self.tau):
            raise InvariantViolation(f"need 0 < eps = eta <= tau, got {self.eps}, {self.eta}, {self.tau}")
        if self.point_ray and not (self.eps ** 2 <= self.l_squared <= self.tau ** 2):
            raise InvariantViolation("need eps^2 <= L^2 <= tau^2")
        if not (0 < self.s_inv <= Fraction(2, 3) * self.tau):
            raise InvariantViolation(f"need 0 < S <= 2 tau / 3, got S = {self.s_inv}")
        vol, g = self.vol_profile, self.restricted_profile
        if not vol.is_continuous() or vol(vol.end) != 0 or vol(vol.start) != self.l_squared:
            raise InvariantViolation("volume profile must run continuously from L^2 down to 0")
        for (_, _, p), (_, _, q) in zip(vol.segments(), g.segments()):
            if p.derivative() != q * -2:
                raise InvariantViolation("vol' != -2 g on a segment")
        slopes = [q.coeffs[1] if len(q.coeffs) > 1 else Fraction(0) for q in g.pieces]
        if any(b > a for a, b in zip(slopes, slopes[1:])) or not g.is_continuous():
            raise InvariantViolation("restricted volume is not continuous and concave")
        if self.point_ray:
            for lo, hi, q in g.segments():
                if hi <= self.eps and q != T_POLY:
                    raise InvariantViolation("g(t) != t below the Seshadri constant")


def ray_invariants(
    l_cls: DivClass, e_cls: DivClass, s: SurfaceModel, log_discrepancy: Optional[Fraction] = None
) -> RayInvariants:
    """All ray data in one validated record.

    ``log_discrepancy`` defaults to 2 on a point ray and 1 otherwise (a
    prime divisor on the surface itself).
    """
    sw = sweep(l_cls, e_cls, s)
    eps, eta, tau = thresholds(l_cls, e_cls, s)
    point = is_point_ray(l_cls, e_cls, s)
    if log_discrepancy is None:
        log_discrepancy = Fraction(2 if point else 1)
    inv = RayInvariants(
        eps=eps,
        eta=eta,
        tau=tau,
        s_inv=s_invariant(l_cls, e_cls, s),
        fixed_deg=fixed_part_degree(l_cls, e_cls, s) if point else None,
        vol_profile=sw.vol,
        restricted_profile=sw.restricted,
        log_discrepancy=Fraction(log_discrepancy),
        l_squared=sw.l_squared,
        supports=tuple(seg.support for seg in sw.segments),
        point_ray=point,
        catalog_complete=s.catalog_complete,
    )
    inv.validate()
    return inv


# ---------------------------------------------------------------------------
# Closed-form profile matchers


def _matches(profile: PiecewisePoly, target_of_u: Poly, Ln: Fraction) -> bool:
    if profile.start != 0 or profile.end <= 0:
        return False
    # substitute u = t / T
    scale = 1 / profile.end
    target = Poly(tuple(c * scale ** i for i, c in enumerate(target_of_u.coeffs))) * Fraction(Ln)
    return all(p == target for p in profile.pieces)


def profile_match_fujita(profile: PiecewisePoly, n: int, Ln: Fraction) -> bool:
    """``profile(t) = Ln (1 - (t/T)^n)`` identically."""
    return _matches(profile, Poly.of(1) - T_POLY ** n, Ln)


def profile_match_eq_adjunction(profile: PiecewisePoly, n: int, Ln: Fraction) -> bool:
    """``profile(t) = Ln (1 - n (t/T)^(n-1) + (n-1) (t/T)^n)`` identically."""
    form = Poly.of(1) - T_POLY ** (n - 1) * n + T_POLY ** n * (n - 1)
    return _matches(profile, form, Ln)


def fujita_profile(n: int, Ln: Fraction, tau: Fraction) -> PiecewisePoly:
    u = T_POLY * (1 / Fraction(tau))
    return PiecewisePoly((Fraction(0), Fraction(tau)), ((Poly.of(1) - u ** n) * Fraction(Ln),))


def eq_adjunction_profile(n: int, Ln: Fraction, tau: Fraction) -> PiecewisePoly:
    u = T_POLY * (1 / Fraction(tau))
    form = Poly.of(1) - u ** (n - 1) * n + u ** n * (n - 1)
    return PiecewisePoly((Fraction(0), Fraction(tau)), (form * Fraction(Ln),))


# ---------------------------------------------------------------------------
# CSV


def profile_rows(sw: RaySweep, step: Fraction) -> list[tuple[Fraction, Fraction, Fraction]]:
    """``(t, vol, g)`` at ``0, step, 2 step, ...`` and at every breakpoint."""
    step = Fraction(step)
    if step <= 0:
        raise DomainError("step must be positive")
    ts = set(sw.breakpoints)
    k = 0
    while k * step <= sw.tau:
        ts.add(k * step)
        k += 1
    return [(t, sw.vol(t), sw.restricted(t)) for t in sorted(ts)]


def profile_csv(sw: RaySweep, step: Fraction) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "vol", "g", "t_decimal", "vol_decimal", "g_decimal"])
    for t, v, g in profile_rows(sw, step):
        w.writerow([exact.fmt(t), exact.fmt(v), exact.fmt(g), f"{float(t):.6f}", f"{float(v):.6f}", f"{float(g):.6f}"])
    return buf.getvalue()
