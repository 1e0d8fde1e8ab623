"""JSON for surface files and reports. Rationals travel as ``"p/q"`` strings.

Reports are frozen dataclasses; :func:`encode` walks them generically and
:func:`decode` rebuilds them from the declared field types, so
``decode(type(r), encode(r)) == r`` for every report type.
"""
from __future__ import annotations

import dataclasses
import json
import typing
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from . import exact
from .concavity import InequalityCheck
from .delta import InvariantReport, LiftReport
from .errors import InputError
from .lattice import CurveEntry, DivClass, SurfaceModel, builtin_surface, make_curve
from .verdicts import K3TauResult, Verdict

REPORT_TYPES: dict[str, type] = {
    t.__name__: t for t in (InvariantReport, LiftReport, Verdict, K3TauResult, InequalityCheck)
}


def encode(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return exact.fmt(obj)
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (tuple, list)):
        return [encode(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(tp: Any, data: Any) -> Any:
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if origin is Union:
        if data is None and type(None) in args:
            return None
        inner = [a for a in args if a is not type(None)]
        return decode(inner[0], data)
    if tp is Fraction:
        return exact.rat(data)
    if tp in (int, str, bool):
        if not isinstance(data, tp):
            raise InputError(f"expected {tp.__name__}, got {data!r}")
        return data
    if isinstance(tp, type) and issubclass(tp, Enum):
        return tp(data)
    if origin is tuple:
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(decode(args[0], x) for x in data)
        return tuple(decode(a, x) for a, x in zip(args, data))
    if dataclasses.is_dataclass(tp):
        hints = typing.get_type_hints(tp)
        kwargs = {
            f.name: decode(hints[f.name], data[f.name])
            for f in dataclasses.fields(tp)
            if f.name in data
        }
        return tp(**kwargs)
    raise TypeError(f"cannot decode into {tp!r}")


def report_to_json(report: Any) -> dict:
    return {"kind": type(report).__name__, "data": encode(report)}


def report_from_json(blob: dict) -> Any:
    try:
        tp = REPORT_TYPES[blob["kind"]]
    except KeyError as exc:
        raise InputError(f"unknown report kind {blob.get('kind')!r}") from exc
    return decode(tp, blob["data"])


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# Surface files


def surface_to_json(s: SurfaceModel) -> dict:
    return {
        "name": s.name,
        "rank": s.rank,
        "gram": [[exact.fmt(x) for x in row] for row in s.gram],
        "canonical": s.canonical.to_json(),
        "ample_ref": s.ample_ref.to_json(),
        "curves": [
            {"name": c.name, "class": c.cls.to_json(), **({"genus": c.arith_genus} if c.arith_genus is not None else {})}
            for c in s.neg_curves
        ],
        "catalog_complete": s.catalog_complete,
        "basis": list(s.basis),
    }


def surface_from_json(blob: dict) -> SurfaceModel:
    try:
        gram = exact.as_matrix(blob["gram"])
        rank = int(blob["rank"])
        canonical = DivClass(exact.rat_vector(blob["canonical"]))
        ample = DivClass(exact.rat_vector(blob["ample_ref"]))
        curves = tuple(
            make_curve(gram, DivClass(exact.rat_vector(c["class"])), str(c["name"]), c.get("genus"))
            for c in blob.get("curves", [])
        )
        name = str(blob["name"])
        complete = bool(blob.get("catalog_complete", False))
        basis = tuple(blob.get("basis", ()))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed surface file: {exc}") from exc
    if rank != len(gram):
        raise InputError(f"rank {rank} does not match a {len(gram)}x{len(gram)} gram")
    return SurfaceModel(name, gram, canonical, ample, curves, complete, basis)


def load_surface(ref: str) -> SurfaceModel:
    """A surface from ``builtin:NAME`` or a JSON file path."""
    if ref.startswith("builtin:"):
        return builtin_surface(ref)
    path = Path(ref)
    if not path.exists():
        raise InputError(f"no such surface file: {ref}")
    try:
        blob = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{ref}: invalid JSON ({exc})") from exc
    return surface_from_json(blob)


def curve_to_json(c: CurveEntry) -> dict:
    return {"name": c.name, "class": c.cls.to_json(), "self_int": exact.fmt(c.self_int)}
