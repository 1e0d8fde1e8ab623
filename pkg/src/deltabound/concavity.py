"""Exact checks of two integral inequalities for concave piecewise-linear functions.

The centre-is-a-point inequality

    3a int_0^b (2x - g) g dx <= 4 (int_0^b g dx)^2      (g(x) = x on [0, a])

and the centre-is-a-divisor inequality

    g(0)^(n-1) int_0^a x g^(n-1) dx <= n/(n+1) (int_0^a g^(n-1) dx)^2   (g >= 0)

are evaluated segment by segment with rational arithmetic, alongside the
analytic description of their equality cases.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, InvariantViolation
from .poly import T_POLY, PiecewisePoly, Poly

MAX_POWER_INDEX = 8


@dataclass(frozen=True)
class PLConcave:
    """Concave piecewise-linear function through ``nodes`` (strictly increasing x)."""

    nodes: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        nodes = tuple((Fraction(x), Fraction(y)) for x, y in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 2:
            raise DomainError("need at least two nodes")
        if any(x1 >= x2 for (x1, _), (x2, _) in zip(nodes, nodes[1:])):
            raise DomainError("node abscissae must be strictly increasing")
        s = self.slopes
        if any(b > a for a, b in zip(s, s[1:])):
            raise DomainError("slopes increase somewhere: not concave")

    @classmethod
    def of(cls, *pairs: tuple[object, object]) -> PLConcave:
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in pairs))  # type: ignore[arg-type]

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple((y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(self.nodes, self.nodes[1:]))

    @property
    def start(self) -> Fraction:
        return self.nodes[0][0]

    @property
    def end(self) -> Fraction:
        return self.nodes[-1][0]

    def as_piecewise(self) -> PiecewisePoly:
        pieces = tuple(
            Poly.linear_through(x1, y1, x2, y2) for (x1, y1), (x2, y2) in zip(self.nodes, self.nodes[1:])
        )
        return PiecewisePoly(tuple(x for x, _ in self.nodes), pieces)

    def __call__(self, x: object) -> Fraction:
        return self.as_piecewise()(x)

    def with_node_raised(self, i: int, delta: Fraction) -> PLConcave:
        """Move interior node ``i`` up by ``delta``; raising keeps concavity."""
        if not 0 < i < len(self.nodes) - 1:
            raise DomainError("only interior nodes can be perturbed")
        nodes = list(self.nodes)
        x, y = nodes[i]
        nodes[i] = (x, y + Fraction(delta))
        return PLConcave(tuple(nodes))


@dataclass(frozen=True)
class InequalityCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool

    @property
    def margin(self) -> Fraction:
        return self.rhs - self.lhs


def tent(a: object, b: object) -> PLConcave:
    """``x`` up to ``a``, then the straight line down to ``(b, 0)``."""
    a, b = Fraction(a), Fraction(b)  # type: ignore[arg-type]
    if a == b:
        return PLConcave.of((0, 0), (a, a))
    return PLConcave.of((0, 0), (a, a), (b, 0))


def linear_drop(a: object, g0: object = 1) -> PLConcave:
    """``g0 (1 - x/a)`` on ``[0, a]``."""
    return PLConcave.of((0, g0), (a, 0))


def _is_identity_until(g: PiecewisePoly, a: Fraction) -> bool:
    return all(p == T_POLY for lo, hi, p in g.refine([a]).segments() if hi <= a)


def check_center_pt(a: object, b: object, g: PLConcave) -> InequalityCheck:
    a, b = Fraction(a), Fraction(b)  # type: ignore[arg-type]
    if not 0 < a <= b:
        raise DomainError(f"need 0 < a <= b, got a={a}, b={b}")
    if g.start != 0 or g.end != b:
        raise DomainError(f"g must live on [0, {b}]")
    gp = g.as_piecewise()
    if not _is_identity_until(gp, a):
        raise DomainError("g must equal x on [0, a]")
    lhs = 3 * a * (gp * (T_POLY * 2) - gp * gp).integral()
    area = gp.integral()
    rhs = 4 * area * area
    if lhs > rhs:
        raise InvariantViolation(f"centre-point inequality fails: {lhs} > {rhs}")
    equality = lhs == rhs
    analytic = a == b or gp == tent(a, b).as_piecewise()
    if equality != analytic:
        raise InvariantViolation("equality detector disagrees with the extremal description")
    if equality and area != a * b / 2:
        raise InvariantViolation(f"equality case with area {area} != ab/2")
    return InequalityCheck(lhs, rhs, True, equality)


def check_center_div(a: object, n: int, g: PLConcave) -> InequalityCheck:
    a = Fraction(a)  # type: ignore[arg-type]
    if a <= 0:
        raise DomainError("need a > 0")
    if not 1 <= n <= MAX_POWER_INDEX:
        raise DomainError(f"n must be in 1..{MAX_POWER_INDEX}")
    if g.start != 0 or g.end != a:
        raise DomainError(f"g must live on [0, {a}]")
    if any(y < 0 for _, y in g.nodes):
        raise DomainError("g must be nonnegative")
    g0 = g.nodes[0][1]
    if g0 <= 0:
        raise DomainError("need g(0) > 0")
    power = g.as_piecewise().map(lambda p: p ** (n - 1))
    lhs = g0 ** (n - 1) * (power * T_POLY).integral()
    mass = power.integral()
    rhs = Fraction(n, n + 1) * mass * mass
    if lhs > rhs:
        raise InvariantViolation(f"centre-divisor inequality fails: {lhs} > {rhs}")
    equality = lhs == rhs
    analytic = n == 1 or g.as_piecewise() == linear_drop(a, g0).as_piecewise()
    if equality != analytic:
        raise InvariantViolation("equality detector disagrees with the extremal description")
    return InequalityCheck(lhs, rhs, True, equality)


def _shift(p: Poly, a: Fraction) -> Poly:
    """``x -> p(x + a)``."""
    out = Poly()
    moved = T_POLY + Poly.of(a)
    for c in reversed(p.coeffs):
        out = out * moved + Poly.of(c)
    return out


def proof_claim_margin(a: object, b: object, g: PLConcave) -> Fraction:
    """``int_0^c (3x - 2c) f(x) dx`` with ``f(x) = g(x+a) - h(x+a)``, ``c = b - a``.

    ``h`` is the tent; the value is never positive for a valid ``g``.
    """
    a, b = Fraction(a), Fraction(b)  # type: ignore[arg-type]
    if a == b:
        return Fraction(0)
    diff = g.as_piecewise() - tent(a, b).as_piecewise()
    tail = diff.refine([a])
    c = b - a
    total = Fraction(0)
    weight = T_POLY * 3 - Poly.of(2 * c)
    for lo, hi, p in tail.segments():
        if lo >= a:
            total += (weight * _shift(p, a)).integrate(lo - a, hi - a)
    return total


# ---------------------------------------------------------------------------
# Random inputs


def _rand_positive(rng: random.Random, top: int = 12, den: int = 8) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, den))


def _rand_breaks(rng: random.Random, lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    """``count`` distinct rationals strictly inside ``(lo, hi)``, sorted."""
    pts: set[Fraction] = set()
    while len(pts) < count:
        u = Fraction(rng.randint(1, 63), 64)
        pts.add(lo + (hi - lo) * u)
    return sorted(pts)


def random_concave(
    seed: int, B: object, node_count: int, identity_until: Optional[object] = None
) -> PLConcave:
    """Reproducible random concave function on ``[0, B]``.

    With ``identity_until = a`` the result equals ``x`` on ``[0, a]`` (input for
    the centre-point check); otherwise it is nonnegative with ``g(0) > 0``
    (input for the centre-divisor check). Slopes strictly decrease.
    """
    B = Fraction(B)  # type: ignore[arg-type]
    if node_count < 2:
        raise DomainError("need at least two nodes")
    if B <= 0:
        raise DomainError("need B > 0")
    rng = random.Random(seed)
    if identity_until is not None:
        a = Fraction(identity_until)  # type: ignore[arg-type]
        if not 0 < a <= B:
            raise DomainError("need 0 < a <= B")
        if a == B:
            xs = [Fraction(0)] + _rand_breaks(rng, Fraction(0), B, node_count - 2) + [B]
            return PLConcave(tuple((x, x) for x in xs))
        if node_count < 3:
            raise DomainError("a < B needs at least three nodes")
        xs = [a] + _rand_breaks(rng, a, B, node_count - 3) + [B]
        nodes = [(Fraction(0), Fraction(0)), (a, a)]
        slope = Fraction(1)
        for x0, x1 in zip(xs, xs[1:]):
            slope -= _rand_positive(rng)
            nodes.append((x1, nodes[-1][1] + slope * (x1 - x0)))
        return PLConcave(tuple(nodes))
    xs = [Fraction(0)] + _rand_breaks(rng, Fraction(0), B, node_count - 2) + [B]
    widths = [x1 - x0 for x0, x1 in zip(xs, xs[1:])]
    slopes = []
    s = _rand_positive(rng) - _rand_positive(rng)
    for _ in widths:
        slopes.append(s)
        s -= _rand_positive(rng)
    y0 = _rand_positive(rng)
    y_end = Fraction(0) if rng.random() < 0.25 else _rand_positive(rng)
    # shift every slope by the same constant so the right end lands on y_end
    shift = (y_end - y0 - sum(sl * w for sl, w in zip(slopes, widths))) / B
    nodes = [(Fraction(0), y0)]
    for x1, w, sl in zip(xs[1:], widths, slopes):
        nodes.append((x1, nodes[-1][1] + (sl + shift) * w))
    return PLConcave(tuple(nodes))


def random_center_pt_case(seed: int) -> tuple[Fraction, Fraction, PLConcave]:
    """``(a, b, g)`` drawn from ``seed``; occasionally ``a = b``."""
    rng = random.Random(seed)
    b = _rand_positive(rng, 8, 4)
    a = b if rng.random() < 0.05 else b * Fraction(rng.randint(1, 15), 16)
    count = 2 if a == b else rng.randint(3, 7)
    return a, b, random_concave(rng.randrange(2**32), b, count, a)


def random_center_div_case(seed: int) -> tuple[Fraction, int, PLConcave]:
    rng = random.Random(seed)
    a = _rand_positive(rng, 8, 4)
    n = rng.randint(2, MAX_POWER_INDEX)
    return a, n, random_concave(rng.randrange(2**32), a, rng.randint(2, 6))


def sweep_lemma(kind: str, cases: int, seed: int) -> list[tuple[int, InequalityCheck]]:
    """Run ``cases`` seeded checks; case ``k`` uses seed ``seed + k``."""
    out = []
    for k in range(cases):
        s = seed + k
        if kind == "center-pt":
            out.append((s, check_center_pt(*random_center_pt_case(s))))
        elif kind == "center-div":
            out.append((s, check_center_div(*random_center_div_case(s))))
        else:
            raise DomainError(f"unknown lemma {kind!r}")
    return out
