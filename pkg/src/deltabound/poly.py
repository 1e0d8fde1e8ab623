"""Exact univariate polynomials and piecewise polynomials over the rationals."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Polynomial with ascending coefficients, ``coeffs[i]`` multiplies ``t**i``."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def of(cls, *coeffs: object) -> Poly:
        return cls(tuple(Fraction(c) for c in coeffs))  # type: ignore[arg-type]

    @classmethod
    def linear_through(cls, x0: Fraction, y0: Fraction, x1: Fraction, y1: Fraction) -> Poly:
        slope = (y1 - y0) / (x1 - x0)
        return cls((y0 - slope * x0, slope))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | Fraction | int) -> Poly:
        if not isinstance(other, Poly):
            k = Fraction(other)
            return Poly(tuple(c * k for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result = Poly.of(1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> Poly:
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def antiderivative(self) -> Poly:
        return Poly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def integrate(self, lo: Fraction, hi: Fraction) -> Fraction:
        anti = self.antiderivative()
        return anti(hi) - anti(lo)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*t" if i == 1 else f"*t^{i}"))
        return "Poly(" + " + ".join(terms) + ")"


T_POLY = Poly.of(0, 1)


@dataclass(frozen=True)
class PiecewisePoly:
    """A function on ``[breakpoints[0], breakpoints[-1]]`` given segment by segment.

    ``pieces[i]`` is valid on ``[breakpoints[i], breakpoints[i+1]]``.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __post_init__(self) -> None:
        bps = tuple(Fraction(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        if len(bps) != len(self.pieces) + 1 or not self.pieces:
            raise InputError("need one more breakpoint than pieces, and at least one piece")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise InputError("breakpoints must be strictly increasing")

    @property
    def start(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def end(self) -> Fraction:
        return self.breakpoints[-1]

    def segments(self) -> Iterable[tuple[Fraction, Fraction, Poly]]:
        return zip(self.breakpoints, self.breakpoints[1:], self.pieces)

    def piece_index(self, t: Fraction) -> int:
        if t < self.start or t > self.end:
            raise InputError(f"t={t} outside [{self.start}, {self.end}]")
        i = bisect.bisect_right(self.breakpoints, t) - 1
        return min(i, len(self.pieces) - 1)

    def __call__(self, t: object) -> Fraction:
        t = Fraction(t)  # type: ignore[arg-type]
        return self.pieces[self.piece_index(t)](t)

    def left_value(self, i: int) -> Fraction:
        """Value of piece ``i`` at its right end."""
        return self.pieces[i](self.breakpoints[i + 1])

    def is_continuous(self) -> bool:
        return all(
            self.pieces[i](self.breakpoints[i + 1]) == self.pieces[i + 1](self.breakpoints[i + 1])
            for i in range(len(self.pieces) - 1)
        )

    def integral(self) -> Fraction:
        return sum((p.integrate(a, b) for a, b, p in self.segments()), Fraction(0))

    def map(self, fn) -> PiecewisePoly:
        """Apply ``fn: Poly -> Poly`` to every piece."""
        return PiecewisePoly(self.breakpoints, tuple(fn(p) for p in self.pieces))

    def derivative(self) -> PiecewisePoly:
        return self.map(Poly.derivative)

    def refine(self, points: Sequence[Fraction]) -> PiecewisePoly:
        """Same function with extra breakpoints inserted."""
        new_bps = sorted(set(self.breakpoints) | {Fraction(p) for p in points if self.start < p < self.end})
        pieces = []
        for a, b in zip(new_bps, new_bps[1:]):
            pieces.append(self.pieces[self.piece_index((a + b) / 2)])
        return PiecewisePoly(tuple(new_bps), tuple(pieces))

    def combine(self, other: PiecewisePoly, op) -> PiecewisePoly:
        """Pointwise ``op(p, q)`` on the common refinement; domains must agree."""
        if self.start != other.start or self.end != other.end:
            raise InputError("piecewise polynomials live on different intervals")
        a = self.refine(other.breakpoints)
        b = other.refine(self.breakpoints)
        return PiecewisePoly(a.breakpoints, tuple(op(p, q) for p, q in zip(a.pieces, b.pieces)))

    def __mul__(self, other: PiecewisePoly | Poly) -> PiecewisePoly:
        if isinstance(other, Poly):
            return self.map(lambda p: p * other)
        return self.combine(other, lambda p, q: p * q)

    def __add__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self.combine(other, lambda p, q: p + q)

    def __sub__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self.combine(other, lambda p, q: p - q)

    def __eq__(self, other: object) -> bool:
        """Equal as functions: agree on every piece of the common refinement."""
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        if self.start != other.start or self.end != other.end:
            return False
        diff = self - other
        return all(not p.coeffs for p in diff.pieces)

    def __hash__(self) -> int:
        return hash((self.start, self.end))

    def simplified(self) -> PiecewisePoly:
        """Merge adjacent pieces carrying the same polynomial."""
        bps = [self.breakpoints[0]]
        pieces: list[Poly] = []
        for b, p in zip(self.breakpoints[1:], self.pieces):
            if pieces and pieces[-1] == p:
                bps[-1] = b
            else:
                pieces.append(p)
                bps.append(b)
        return PiecewisePoly(tuple(bps), tuple(pieces))
