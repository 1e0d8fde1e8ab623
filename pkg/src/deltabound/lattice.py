"""Neron-Severi lattices of surfaces: pairing, curve catalogs, blowups.

A :class:`SurfaceModel` carries everything the rest of the package needs to
know about a surface: the intersection form, the canonical class, one ample
class and a catalog of negative curves. For Mori dream surfaces the catalog
together with the positive cone determines the nef and effective cones, which
is what makes Zariski decomposition a finite exact procedure.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .errors import DomainError, InputError, ModelError


@dataclass(frozen=True)
class DivClass:
    """A divisor class as exact coordinates in the lattice basis."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", exact.rat_vector(self.coords))

    @classmethod
    def of(cls, *values: object) -> DivClass:
        return cls(tuple(values))  # type: ignore[arg-type]

    @classmethod
    def zero(cls, rank: int) -> DivClass:
        return cls((Fraction(0),) * rank)

    @classmethod
    def unit(cls, rank: int, i: int) -> DivClass:
        return cls(tuple(Fraction(int(j == i)) for j in range(rank)))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _check(self, other: DivClass) -> None:
        if len(other.coords) != len(self.coords):
            raise InputError(f"class dimensions differ: {len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: DivClass) -> DivClass:
        self._check(other)
        return DivClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: DivClass) -> DivClass:
        self._check(other)
        return DivClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> DivClass:
        return DivClass(tuple(-a for a in self.coords))

    def __mul__(self, k: object) -> DivClass:
        q = exact.rat(k)
        return DivClass(tuple(q * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, k: object) -> DivClass:
        return self * (1 / exact.rat(k))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def ratio_to(self, other: DivClass) -> Fraction | None:
        """The ``k`` with ``self == k * other``, or ``None`` if not proportional."""
        self._check(other)
        if other.is_zero():
            return None
        i = next(j for j, a in enumerate(other.coords) if a)
        k = self.coords[i] / other.coords[i]
        return k if self == other * k else None

    def to_json(self) -> list[str]:
        return [exact.fmt(a) for a in self.coords]

    def __repr__(self) -> str:
        return "DivClass(" + ", ".join(exact.fmt(a) for a in self.coords) + ")"


@dataclass(frozen=True)
class CurveEntry:
    name: str
    cls: DivClass
    self_int: Fraction
    arith_genus: int | None = None


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical model of a smooth projective surface.

    ``catalog_complete`` asserts that ``neg_curves`` lists every irreducible
    curve of negative self-intersection. Nothing can check that claim; it is
    carried into every downstream report.
    """

    name: str
    gram: exact.Matrix
    canonical: DivClass
    ample_ref: DivClass
    neg_curves: tuple[CurveEntry, ...] = ()
    catalog_complete: bool = False
    basis: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gram", exact.as_matrix(self.gram))
        object.__setattr__(self, "neg_curves", tuple(self.neg_curves))
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(self.rank)))
        self.validate()

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, d1: DivClass, d2: DivClass) -> Fraction:
        if len(d1) != self.rank or len(d2) != self.rank:
            raise InputError(
                f"class of length {len(d1)}/{len(d2)} on rank-{self.rank} surface {self.name}"
            )
        return exact.bilinear(self.gram, d1.coords, d2.coords)

    def square(self, d: DivClass) -> Fraction:
        return self.dot(d, d)

    @functools.cached_property
    def _catalog_images(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        # (scale, rows) with rows[k] = scale * gram . C_k as integers
        scale = 1
        for row in self.gram:
            for x in row:
                scale = scale * x.denominator // math.gcd(scale, x.denominator)
        for c in self.neg_curves:
            for x in c.cls.coords:
                scale = scale * x.denominator // math.gcd(scale, x.denominator)
        rows = []
        for c in self.neg_curves:
            img = exact.mat_vec(self.gram, c.cls.coords)
            rows.append(tuple(int(x * scale) for x in img))
        return scale, tuple(rows)

    def catalog_pairings(self, d: DivClass) -> list[Fraction]:
        """``[d . C for C in neg_curves]``, batched in integer arithmetic."""
        if len(d) != self.rank:
            raise InputError(f"class of length {len(d)} on rank-{self.rank} surface {self.name}")
        scale, rows = self._catalog_images
        den = 1
        for x in d.coords:
            den = den * x.denominator // math.gcd(den, x.denominator)
        num = [int(x * den) for x in d.coords]
        total = den * scale
        return [Fraction(sum(a * b for a, b in zip(num, row) if a), total) for row in rows]

    def zero(self) -> DivClass:
        return DivClass.zero(self.rank)

    def unit(self, i: int) -> DivClass:
        return DivClass.unit(self.rank, i)

    def curve(self, name: str) -> CurveEntry:
        for c in self.neg_curves:
            if c.name == name:
                return c
        raise InputError(f"no curve named {name!r} on {self.name}")

    def label(self, d: DivClass) -> str:
        return class_name(d, self.basis)

    def validate(self) -> None:
        n = self.rank
        if n == 0 or any(len(row) != n for row in self.gram):
            raise InputError(f"{self.name}: gram must be a non-empty square matrix")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise InputError(f"{self.name}: gram is not symmetric")
        if len(self.basis) != n:
            raise InputError(f"{self.name}: {len(self.basis)} basis labels for rank {n}")
        for d in (self.canonical, self.ample_ref):
            if len(d) != n:
                raise InputError(f"{self.name}: class of length {len(d)} on rank {n}")
        if exact.signature(self.gram) != (1, n - 1, 0):
            raise ModelError(f"{self.name}: gram does not have signature (1, {n - 1})")
        if self.square(self.ample_ref) <= 0:
            raise ModelError(f"{self.name}: ample_ref has non-positive square")
        for c in self.neg_curves:
            if len(c.cls) != n:
                raise InputError(f"{self.name}: curve {c.name} has wrong length")
            if c.self_int != self.square(c.cls):
                raise InputError(f"{self.name}: cached self-intersection of {c.name} is wrong")
            if c.self_int >= 0:
                raise InputError(f"{self.name}: catalog curve {c.name} is not negative")
            if self.dot(self.ample_ref, c.cls) <= 0:
                raise ModelError(f"{self.name}: ample_ref is not positive on {c.name}")


def pairing(d1: DivClass, d2: DivClass, s: SurfaceModel) -> Fraction:
    """Intersection number ``d1 . d2`` on ``s``."""
    return s.dot(d1, d2)


def class_name(d: DivClass, basis: Sequence[str]) -> str:
    """Human label such as ``3H-2E1-E2`` for a class in a labelled basis."""
    parts = []
    for coef, lab in zip(d.coords, basis):
        if coef == 0:
            continue
        mag = abs(coef)
        body = lab if mag == 1 else f"{exact.fmt(mag)}{lab}" if mag.denominator == 1 else f"({exact.fmt(mag)}){lab}"
        sign = "-" if coef < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = "".join(f"{s}{b}" for s, b in parts)
    return text[1:] if text.startswith("+") else text


def make_curve(s_gram: exact.Matrix, d: DivClass, name: str, genus: int | None = None) -> CurveEntry:
    return CurveEntry(name, d, exact.bilinear(s_gram, d.coords, d.coords), genus)


# ---------------------------------------------------------------------------
# Negative-class enumeration


def _bounding_class(gram: exact.Matrix, canonical: DivClass) -> DivClass:
    k2 = exact.bilinear(gram, canonical.coords, canonical.coords)
    if k2 <= 0:
        raise ModelError(
            f"K^2 = {k2} <= 0: the search region for negative curves is unbounded"
        )
    return -canonical


def _int_range(center: Fraction, radius2: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius2."""
    if radius2 < 0:
        return range(0)
    r = exact.floor_sqrt(radius2)
    lo = int(center - r) - 2
    hi = int(center + r) + 2
    while (lo - center) ** 2 > radius2 and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius2 and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def _short_vectors(form: exact.Matrix, bound: Fraction) -> Iterable[tuple[int, ...]]:
    """All integral v with form(v, v) <= bound for a positive definite form.

    Fincke-Pohst enumeration over the exact LDL^T factorization, last
    coordinate first.
    """
    lower, diag = exact.ldl(form)
    n = len(form)
    v = [0] * n

    def rec(i: int, budget: Fraction):
        # form(v,v) = sum_k diag[k] * (v_k + sum_{j>k} lower[j][k] v_j)^2
        center = -sum((lower[j][i] * v[j] for j in range(i + 1, n)), Fraction(0))
        for x in _int_range(center, budget / diag[i]):
            v[i] = x
            rest = budget - diag[i] * (x - center) ** 2
            if i == 0:
                yield tuple(v)
            else:
                yield from rec(i - 1, rest)
        v[i] = 0

    yield from rec(n - 1, Fraction(bound))


def _integer_gram(gram: exact.Matrix) -> tuple[int, list[list[int]]]:
    """``(scale, scale * gram)`` with the scaled gram integral."""
    scale = 1
    for row in gram:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    return scale, [[int(x * scale) for x in row] for row in gram]


def _int_pair(igram: list[list[int]], u: Sequence[int], v: Sequence[int]) -> int:
    return sum(ui * sum(r * vj for r, vj in zip(row, v)) for ui, row in zip(u, igram) if ui)


def _candidate_classes(
    gram: exact.Matrix, canonical: DivClass, self_int: int
) -> list[tuple[int, ...]]:
    """Integral classes C with C^2 = k and C.K = -2 - k (smooth rational curves)."""
    b = _bounding_class(gram, canonical)
    b2 = exact.bilinear(gram, b.coords, b.coords)
    degree = Fraction(2 + self_int)  # C . (-K)
    # Positive definite on the whole lattice by the Hodge index theorem:
    # Q(x) = 2 (x.B)^2 / B^2 - x.x
    gb = exact.mat_vec(gram, b.coords)
    n = len(gram)
    form = tuple(
        tuple(2 * gb[i] * gb[j] / b2 - gram[i][j] for j in range(n)) for i in range(n)
    )
    target = 2 * degree * degree / b2 - self_int
    scale, igram = _integer_gram(gram)
    kscale = 1
    for x in canonical.coords:
        kscale = kscale * x.denominator // math.gcd(kscale, x.denominator)
    ik = [int(x * kscale) for x in canonical.coords]
    ikg = [sum(kj * row[j] for j, kj in enumerate(ik)) for row in igram]
    out = []
    for v in _short_vectors(form, target):
        if _int_pair(igram, v, v) != self_int * scale:
            continue
        if sum(a * c for a, c in zip(ikg, v)) != (-2 - self_int) * scale * kscale:
            continue
        out.append(v)
    return out


def enumerate_negative_classes(
    s: SurfaceModel | None = None,
    self_int_min: int = -1,
    *,
    gram: exact.Matrix | None = None,
    canonical: DivClass | None = None,
    ample: DivClass | None = None,
) -> list[DivClass]:
    """Every integral class of a smooth rational curve with ``self_int_min <= C^2 < 0``.

    Candidates solve ``C^2 = k, C.K = -2 - k`` and meet the ample class
    positively. The search is complete because ``-K`` has positive square:
    the form ``2 (x.K)^2 / K^2 - x.x`` is positive definite and takes the
    fixed value ``2 (2 + k)^2 / K^2 - k`` on every candidate.

    Candidates that meet another candidate negatively are split off as
    reducible, keeping the one of smaller ample degree. On del Pezzo
    lattices this filter never fires. Output is sorted by coordinates.
    """
    if s is not None:
        gram, canonical, ample = s.gram, s.canonical, s.ample_ref
    if gram is None or canonical is None or ample is None:
        raise InputError("need a surface or gram/canonical/ample data")
    if self_int_min > -1:
        raise InputError("self_int_min must be negative")
    ample_image = exact.mat_vec(gram, ample.coords)
    found: set[tuple[int, ...]] = set()
    degree: dict[tuple[int, ...], Fraction] = {}
    for k in range(self_int_min, 0):
        for v in _candidate_classes(gram, canonical, k):
            deg = sum((a * c for a, c in zip(ample_image, v) if c), Fraction(0))
            if deg > 0:
                found.add(v)
                degree[v] = deg

    _, igram = _integer_gram(gram)
    images = {v: [sum(r * c for r, c in zip(row, v)) for row in igram] for v in found}
    kept = sorted(found)
    while True:
        clash = next(
            (
                (a, b)
                for i, a in enumerate(kept)
                for b in kept[i + 1:]
                if sum(x * y for x, y in zip(images[a], b)) < 0
            ),
            None,
        )
        if clash is None:
            break
        a, b = clash
        kept.remove(a if (degree[a], a) > (degree[b], b) else b)
    return [DivClass(v) for v in kept]


# ---------------------------------------------------------------------------
# Built-in surfaces


def _catalog(gram, canonical, ample, basis, self_int_min) -> tuple[CurveEntry, ...]:
    classes = enumerate_negative_classes(
        None, self_int_min, gram=gram, canonical=DivClass(canonical), ample=DivClass(ample)
    )
    return tuple(make_curve(gram, d, class_name(d, basis), 0) for d in classes)


@functools.lru_cache(maxsize=None)
def projective_plane() -> SurfaceModel:
    return SurfaceModel("P2", ((1,),), DivClass.of(-3), DivClass.of(1), (), True, ("H",))


@functools.lru_cache(maxsize=None)
def p1xp1() -> SurfaceModel:
    gram = exact.as_matrix(((0, 1), (1, 0)))
    k, a, basis = DivClass.of(-2, -2), DivClass.of(1, 1), ("F1", "F2")
    return SurfaceModel("P1xP1", gram, k, a, _catalog(gram, k, a, basis, -1), True, basis)


@functools.lru_cache(maxsize=None)
def hirzebruch(n: int) -> SurfaceModel:
    """F_n in the basis (fiber f, negative section s) with s^2 = -n."""
    if n < 0:
        raise InputError("Hirzebruch index must be >= 0")
    gram = exact.as_matrix(((0, 1), (1, -n)))
    k = DivClass.of(-(n + 2), -2)
    a = DivClass.of(n + 1, 1)
    basis = ("f", "s")
    cat = _catalog(gram, k, a, basis, min(-1, -n)) if n else ()
    return SurfaceModel(f"Hirzebruch({n})", gram, k, a, cat, True, basis)


@functools.lru_cache(maxsize=None)
def del_pezzo(degree: int) -> SurfaceModel:
    """Blowup of P^2 at ``9 - degree`` general points; degree 9 is P^2."""
    if not 1 <= degree <= 9:
        raise InputError(f"del Pezzo degree must be in 1..9, got {degree}")
    k = 9 - degree
    n = k + 1
    gram = tuple(
        tuple(Fraction(1 if i == j == 0 else -1 if i == j else 0) for j in range(n)) for i in range(n)
    )
    canonical = DivClass((Fraction(-3),) + (Fraction(1),) * k)
    basis = ("H",) + tuple(f"E{i}" for i in range(1, k + 1))
    cat = _catalog(gram, canonical, -canonical, basis, -1) if k else ()
    return SurfaceModel(f"DelPezzo({degree})", gram, canonical, -canonical, cat, True, basis)


_BUILTIN_RE = re.compile(r"^\s*([A-Za-z0-9]+)\s*(?:[(:]\s*(-?\d+)\s*\)?)?\s*$")


def builtin_surface(spec: str) -> SurfaceModel:
    """Build a named model: ``P2``, ``P1xP1``, ``Hirzebruch(n)``, ``DelPezzo(d)``,
    ``BlowupP2(k)``. ``Name:arg`` is accepted in place of ``Name(arg)``.
    """
    m = _BUILTIN_RE.match(spec.removeprefix("builtin:"))
    if not m:
        raise InputError(f"cannot parse surface name {spec!r}")
    name, arg = m.group(1).lower(), m.group(2)
    needs_arg = {"hirzebruch", "f", "delpezzo", "dp", "blowupp2"}
    if (name in needs_arg) != (arg is not None):
        raise InputError(f"surface {spec!r}: wrong number of parameters")
    if name == "p2":
        return projective_plane()
    if name in ("p1xp1", "f0") and arg is None:
        return p1xp1()
    if name in ("hirzebruch", "f"):
        return hirzebruch(int(arg))
    if name in ("delpezzo", "dp"):
        return del_pezzo(int(arg))
    if name == "blowupp2":
        k = int(arg)
        if not 0 <= k <= 8:
            raise InputError("BlowupP2(k) needs 0 <= k <= 8 (k >= 9 has infinitely many (-1)-curves)")
        s = del_pezzo(9 - k)
        return _renamed(s, f"BlowupP2({k})")
    raise InputError(f"unknown surface {spec!r}")


def _renamed(s: SurfaceModel, name: str) -> SurfaceModel:
    return SurfaceModel(name, s.gram, s.canonical, s.ample_ref, s.neg_curves, s.catalog_complete, s.basis)


# ---------------------------------------------------------------------------
# Blowups


@dataclass(frozen=True)
class PointModel:
    """Ordinary blowup of a smooth point. ``multiplicities`` maps catalog
    names on ``blown`` to the multiplicity of the base curve at the point."""

    base: SurfaceModel
    blown: SurfaceModel
    exceptional: DivClass
    log_discrepancy: Fraction = Fraction(2)
    multiplicities: tuple[tuple[str, int], ...] = field(default=())

    def pullback(self, d: DivClass) -> DivClass:
        if len(d) != self.base.rank:
            raise InputError("pullback of a class from a different lattice")
        return DivClass(d.coords + (Fraction(0),))

    def pushforward(self, d: DivClass) -> DivClass:
        return DivClass(d.coords[:-1])

    def multiplicity(self, name: str) -> int:
        return dict(self.multiplicities).get(name, 0)


def _blown_lattice(s: SurfaceModel):
    n = s.rank
    gram = tuple(row + (Fraction(0),) for row in s.gram) + ((Fraction(0),) * n + (Fraction(-1),),)
    canonical = DivClass(s.canonical.coords + (Fraction(1),))
    label = "Ex" if "Ex" not in s.basis else "X"
    return gram, canonical, s.basis + (label,)


def blow_up(s: SurfaceModel, point_spec: object = "general", complete: bool = False) -> PointModel:
    """Blow up one point of ``s``.

    ``point_spec="general"`` re-enumerates negative curves on the blown
    lattice, which is exactly right for a point off every negative curve of a
    built-in model. Otherwise ``point_spec`` is a list of strict transforms,
    each ``{"name", "class", "multiplicity"}`` with ``class`` in blown
    coordinates. Base catalog curves are kept as pullbacks (the point is
    assumed off them) and ``complete`` sets the resulting catalog flag.
    """
    if isinstance(point_spec, str) and point_spec == "general":
        return _general_blowup(s)
    return _explicit_blowup(s, point_spec, complete)


@functools.lru_cache(maxsize=64)
def _general_blowup(s: SurfaceModel) -> PointModel:
    return _explicit_blowup(s, "general", s.catalog_complete)


def _explicit_blowup(s: SurfaceModel, point_spec: object, complete: bool) -> PointModel:
    gram, canonical, basis = _blown_lattice(s)
    n = s.rank
    exc = DivClass.unit(n + 1, n)
    # pi^*A - E/2 is ample for any integral ample A at a general point,
    # whose Seshadri constant is at least 1.
    ample = DivClass(s.ample_ref.coords + (Fraction(-1, 2),))
    mults: dict[str, int] = {}
    if point_spec == "general":
        floor = min([-1] + [int(c.self_int) for c in s.neg_curves])
        classes = enumerate_negative_classes(None, floor, gram=gram, canonical=canonical, ample=ample)
        curves = []
        for d in classes:
            name = class_name(d, basis)
            curves.append(make_curve(gram, d, name, 0))
            mults[name] = int(-d.coords[-1])
        blown = SurfaceModel(
            f"Bl({s.name})", gram, canonical, ample, tuple(curves), s.catalog_complete, basis
        )
    else:
        if not isinstance(point_spec, Sequence) or isinstance(point_spec, str):
            raise InputError("point_spec must be 'general' or a list of strict transforms")
        curves = [make_curve(gram, exc, basis[-1], 0)]
        for c in s.neg_curves:
            curves.append(CurveEntry(c.name, DivClass(c.cls.coords + (Fraction(0),)), c.self_int, c.arith_genus))
        for entry in point_spec:
            name = str(entry["name"])
            d = DivClass(exact.rat_vector(entry["class"]))
            m = int(entry["multiplicity"])
            if len(d) != n + 1:
                raise InputError(f"strict transform {name}: expected {n + 1} coordinates")
            if exact.bilinear(gram, d.coords, exc.coords) != m:
                raise InputError(f"strict transform {name}: (C - mE).E != m = {m}")
            mults[name] = m
            self_int = exact.bilinear(gram, d.coords, d.coords)
            if self_int >= 0:
                continue
            curves.append(CurveEntry(name, d, self_int, entry.get("genus")))
        mults[basis[-1]] = 0
        # shrink the exceptional coefficient until ample_ref is positive on the catalog
        while any(exact.bilinear(gram, ample.coords, c.cls.coords) <= 0 for c in curves):
            ample = DivClass(ample.coords[:-1] + (ample.coords[-1] / 2,))
        blown = SurfaceModel(f"Bl({s.name})", gram, canonical, ample, tuple(curves), complete, basis)
    return PointModel(s, blown, exc, Fraction(2), tuple(sorted(mults.items())))


def validate_point_model(pm: PointModel) -> None:
    """Projection formula and canonical-class checks for a blowup."""
    b, s = pm.blown, pm.base
    if b.square(pm.exceptional) != -1:
        raise InputError("exceptional class must have square -1")
    for i in range(s.rank):
        e = pm.pullback(s.unit(i))
        if b.dot(e, pm.exceptional) != 0:
            raise InputError("exceptional class is not orthogonal to pullbacks")
        for j in range(s.rank):
            if b.dot(e, pm.pullback(s.unit(j))) != s.gram[i][j]:
                raise InputError("pullback does not preserve the pairing")
    if b.canonical != pm.pullback(s.canonical) + pm.exceptional:
        raise InputError("blown canonical class must be pi^*K + E")
    if pm.log_discrepancy != 2:
        raise DomainError("only smooth points (log discrepancy 2) are modelled")
