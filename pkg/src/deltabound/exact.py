"""Exact rational helpers: parsing, square roots, small dense linear algebra.

Everything here works on :class:`fractions.Fraction` and plain tuples; no
floating point value ever feeds a decision.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation

Rat = Fraction
Matrix = tuple[tuple[Fraction, ...], ...]


def rat(value: object) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r} ({type(value).__name__})")


def fmt(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_vector(values: Iterable[object]) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1,1,-3/2"`` (commas or whitespace) into a rational vector."""
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise InputError(f"empty class vector: {text!r}")
    return rat_vector(parts)


def rat_sqrt(q: Fraction) -> Fraction | None:
    """The exact rational square root of ``q``, or ``None`` if irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def floor_sqrt(q: Fraction) -> int:
    """Largest integer ``k >= 0`` with ``k*k <= q`` (``q >= 0``)."""
    if q < 0:
        raise ValueError("negative radicand")
    k = math.isqrt(q.numerator // q.denominator)
    while (k + 1) * (k + 1) <= q:
        k += 1
    while k * k > q:
        k -= 1
    return k


def quadratic_roots(c2: Fraction, c1: Fraction, c0: Fraction) -> tuple[list[Fraction], bool]:
    """Real roots of ``c2 t^2 + c1 t + c0`` in increasing order.

    Returns ``(roots, exact)``. ``exact`` is False when real roots exist but
    are irrational; ``roots`` is then empty. A vanishing polynomial has no
    isolated roots and returns ``([], True)``.
    """
    if c2 == 0:
        if c1 == 0:
            return [], True
        return [-c0 / c1], True
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return [], True
    s = rat_sqrt(disc)
    if s is None:
        return [], False
    r1 = (-c1 - s) / (2 * c2)
    r2 = (-c1 + s) / (2 * c2)
    return sorted({r1, r2}), True


def as_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    return tuple(tuple(rat(x) for x in row) for row in rows)


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def bilinear(m: Matrix, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for i, ui in enumerate(u):
        if ui:
            row = m[i]
            total += ui * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
    return total


def solve(m: Matrix, b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Solve ``m x = b`` by Gauss-Jordan elimination; ``m`` must be invertible."""
    n = len(m)
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise InvariantViolation("singular system in exact solve")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return sign * result


def leading_minors(m: Matrix) -> list[Fraction]:
    return [det(tuple(row[:k] for row in m[:k])) for k in range(1, len(m) + 1)]


def is_negative_definite(m: Matrix) -> bool:
    """Sylvester's criterion: minors alternate in sign, starting negative."""
    return all((-1) ** k * d > 0 for k, d in enumerate(leading_minors(m), start=1))


def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(x I - m)`` (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prev = mk
        mk = [
            [sum((m[i][l] * prev[l][j] for l in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        for i in range(n):
            mk[i][i] += coeffs[-1]
        am = [
            [sum((m[i][l] * mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        coeffs.append(-sum((am[i][i] for i in range(n)), Fraction(0)) / k)
    return coeffs


def _sign_changes(seq: Sequence[Fraction]) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(m: Matrix) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` eigenvalue counts of a symmetric matrix.

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule of signs counts its positive and negative roots exactly.
    """
    cp = charpoly(m)
    n = len(m)
    zero = 0
    while zero < n and cp[n - zero] == 0:
        zero += 1
    trimmed = cp[: n + 1 - zero]
    positive = _sign_changes(trimmed)
    deg = len(trimmed) - 1
    flipped = [c * (-1) ** (deg - i) for i, c in enumerate(trimmed)]
    negative = _sign_changes(flipped)
    if positive + negative + zero != n:
        raise InvariantViolation("Descartes count does not add up for a symmetric matrix")
    return positive, negative, zero


def ldl(m: Matrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """``m = L D L^T`` for a positive definite ``m``; L unit lower triangular."""
    n = len(m)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        s = m[j][j] - sum((lower[j][k] ** 2 * diag[k] for k in range(j)), Fraction(0))
        if s <= 0:
            raise InvariantViolation("ldl called on a matrix that is not positive definite")
        diag[j] = s
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            lower[i][j] = (
                m[i][j] - sum((lower[i][k] * lower[j][k] * diag[k] for k in range(j)), Fraction(0))
            ) / s
    return lower, diag


def inverse_diagonal(m: Matrix) -> list[Fraction]:
    """Diagonal entries of ``m^{-1}``."""
    n = len(m)
    out = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        out.append(solve(m, e)[i])
    return out
