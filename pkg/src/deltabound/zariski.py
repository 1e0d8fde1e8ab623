"""Nefness, pseudo-effectivity and Zariski decomposition on a surface.

Everything is decided against the surface's negative-curve catalog plus the
positive cone, following Fujita's successive-support procedure: start from
the curves the class meets negatively, subtract the unique combination of
them that makes the remainder orthogonal to the support, and grow the support
until the remainder is nef.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .errors import DomainError, InvariantViolation
from .lattice import CurveEntry, DivClass, SurfaceModel


@dataclass(frozen=True)
class ZariskiDecomp:
    """``D = positive + sum(coeff * curve)`` with a negative-definite support."""

    positive: DivClass
    negative_support: tuple[tuple[CurveEntry, Fraction], ...]
    certificate: exact.Matrix
    minors: tuple[Fraction, ...]
    catalog_complete: bool = True

    @property
    def negative(self) -> DivClass:
        total = DivClass.zero(len(self.positive))
        for curve, a in self.negative_support:
            total = total + curve.cls * a
        return total

    @property
    def support_names(self) -> tuple[str, ...]:
        return tuple(c.name for c, _ in self.negative_support)


@dataclass(frozen=True)
class _Run:
    support: tuple[int, ...]
    # coefficient vectors, one per component of the input class
    coeffs: tuple[tuple[Fraction, ...], ...]
    remainders: tuple[DivClass, ...]
    definite: bool


def support_gram(s: SurfaceModel, idx: Sequence[int]) -> exact.Matrix:
    curves = s.neg_curves
    return tuple(tuple(s.dot(curves[i].cls, curves[j].cls) for j in idx) for i in idx)


def _lex_negative(values: Sequence[Fraction]) -> bool:
    for v in values:
        if v:
            return v < 0
    return False


def fujita_run(s: SurfaceModel, parts: Sequence[DivClass]) -> _Run:
    """Successive-support procedure on ``parts[0] + h parts[1] + ...`` for
    infinitesimal ``h > 0``: intersection numbers are compared
    lexicographically, so a single part gives the ordinary algorithm and two
    parts give the support just to the right of a point on a ray.
    """
    curves = s.neg_curves
    support: list[int] = []
    coeffs: list[tuple[Fraction, ...]] = [()] * len(parts)
    rem = list(parts)
    while True:
        table = [s.catalog_pairings(r) for r in rem]
        bad = [
            i
            for i in range(len(curves))
            if i not in support and _lex_negative([row[i] for row in table])
        ]
        if not bad:
            return _Run(tuple(support), tuple(coeffs), tuple(rem), True)
        support.extend(bad)
        gram = support_gram(s, support)
        if not exact.is_negative_definite(gram):
            return _Run(tuple(support), tuple(coeffs), tuple(rem), False)
        coeffs = []
        rem = []
        for part in parts:
            a = exact.solve(gram, [s.dot(part, curves[i].cls) for i in support])
            coeffs.append(a)
            n = DivClass.zero(s.rank)
            for ai, i in zip(a, support):
                n = n + curves[i].cls * ai
            rem.append(part - n)


def is_nef(d: DivClass, s: SurfaceModel) -> bool:
    """``d`` meets every catalog curve non-negatively and lies in the closed
    positive cone. Only an upper approximation of nefness when the catalog is
    not complete; callers carry ``s.catalog_complete`` along."""
    if any(x < 0 for x in s.catalog_pairings(d)):
        return False
    return s.square(d) >= 0 and s.dot(d, s.ample_ref) >= 0


def is_ample(d: DivClass, s: SurfaceModel) -> bool:
    """Strict version of :func:`is_nef` (Nakai-Moishezon against the catalog)."""
    if any(x <= 0 for x in s.catalog_pairings(d)):
        return False
    return s.square(d) > 0 and s.dot(d, s.ample_ref) > 0


def _decompose(d: DivClass, s: SurfaceModel) -> ZariskiDecomp | None:
    run = fujita_run(s, [d])
    if not run.definite:
        return None
    coeffs = run.coeffs[0]
    if any(a < 0 for a in coeffs):
        return None
    p = run.remainders[0]
    if s.square(p) < 0 or s.dot(p, s.ample_ref) < 0:
        return None
    if s.dot(p, s.ample_ref) == 0 and not p.is_zero():
        # Hodge index: P^2 >= 0 and P.A = 0 force P = 0
        raise InvariantViolation("nonzero positive part with zero ample degree")
    pairs = [(s.neg_curves[i], a) for i, a in zip(run.support, coeffs) if a != 0]
    pairs.sort(key=lambda ca: ca[0].cls.coords)
    support = [s.neg_curves.index(c) for c, _ in pairs]
    gram = support_gram(s, support)
    return ZariskiDecomp(
        p, tuple(pairs), gram, tuple(exact.leading_minors(gram)), s.catalog_complete
    )


def is_pseudoeffective(d: DivClass, s: SurfaceModel) -> bool:
    """Decided by running the decomposition and inspecting the positive part."""
    s.dot(d, d)  # dimension check
    return _decompose(d, s) is not None


def zariski_decompose(d: DivClass, s: SurfaceModel) -> ZariskiDecomp:
    s.dot(d, d)
    z = _decompose(d, s)
    if z is None:
        raise DomainError(f"{s.label(d)} is not pseudo-effective on {s.name}")
    check_decomposition(d, z, s)
    return z


def check_decomposition(d: DivClass, z: ZariskiDecomp, s: SurfaceModel) -> None:
    """Reconstruction, orthogonality, nefness and the definiteness certificate."""
    if z.positive + z.negative != d:
        raise InvariantViolation("P + N does not reconstruct D")
    for c, a in z.negative_support:
        if a <= 0:
            raise InvariantViolation(f"non-positive coefficient on {c.name}")
        if s.dot(z.positive, c.cls) != 0:
            raise InvariantViolation(f"positive part meets support curve {c.name}")
    if not is_nef(z.positive, s):
        raise InvariantViolation("positive part is not nef")
    if any((-1) ** k * m <= 0 for k, m in enumerate(z.minors, start=1)):
        raise InvariantViolation("support gram is not negative definite")


def volume(d: DivClass, s: SurfaceModel) -> Fraction:
    """``vol(D) = P^2`` for pseudo-effective ``D``, and 0 otherwise."""
    z = _decompose(d, s)
    return Fraction(0) if z is None else s.square(z.positive)
