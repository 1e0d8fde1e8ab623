"""Command-line front end.

Exit status: 0 on success, 1 on bad input or a domain/model error, 2 when an
internal invariant fails (always a bug).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import exact
from .concavity import sweep_lemma
from .delta import surface_delta_bound
from .errors import DomainError, InputError, InvariantViolation, ModelError
from .lattice import DivClass, PointModel, SurfaceModel, blow_up, builtin_surface
from .rayscan import RaySweep, profile_csv, sweep, thresholds
from .serialize import dumps, encode, load_surface, report_to_json, surface_to_json
from .verdicts import DEFAULT_EPS_TABLE, HypersurfaceQuery, ThreefoldQuery, hypersurface_verdict, threefold_verdict
from .zariski import is_nef, is_pseudoeffective, zariski_decompose


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _class_arg(s: SurfaceModel, text: str) -> DivClass:
    d = DivClass(exact.parse_vector(text))
    if len(d) != s.rank:
        raise InputError(f"class {text!r} has {len(d)} coordinates, {s.name} has rank {s.rank}")
    return d


def _point_model(s: SurfaceModel, spec: str) -> PointModel:
    if spec == "general":
        return blow_up(s)
    path = Path(spec)
    if not path.exists():
        raise InputError(f"--point must be 'general' or a JSON file, got {spec!r}")
    blob = json.loads(path.read_text())
    return blow_up(s, blob.get("curves", []), bool(blob.get("complete", False)))


def _sweep_json(sw: RaySweep, s: SurfaceModel, l_cls: DivClass, e_cls: DivClass) -> dict:
    eps, _, tau = thresholds(l_cls, e_cls, s)
    return {
        "surface": s.name,
        "ample": s.label(l_cls),
        "ray": s.label(e_cls),
        "eps": exact.fmt(eps),
        "tau": exact.fmt(tau),
        "catalog_complete": s.catalog_complete,
        "segments": [
            {
                "start": exact.fmt(seg.start),
                "end": exact.fmt(seg.end),
                "support": list(seg.support),
                "vol": encode(vol.coeffs),
                "g": encode(g.coeffs),
            }
            for seg, vol, g in zip(sw.segments, sw.vol.pieces, sw.restricted.pieces)
        ],
    }


def cmd_surface_info(args: argparse.Namespace) -> Any:
    s = load_surface(args.surface)
    out = surface_to_json(s)
    out["signature"] = list(exact.signature(s.gram))
    out["canonical_square"] = exact.fmt(s.square(s.canonical))
    out["curve_count"] = len(s.neg_curves)
    return out


def cmd_zariski(args: argparse.Namespace) -> Any:
    s = load_surface(args.surface)
    d = _class_arg(s, args.cls)
    if not is_pseudoeffective(d, s):
        raise DomainError(f"{s.label(d)} is not pseudo-effective on {s.name}")
    z = zariski_decompose(d, s)
    return {
        "surface": s.name,
        "class": d.to_json(),
        "nef": is_nef(d, s),
        "positive": z.positive.to_json(),
        "positive_square": exact.fmt(s.square(z.positive)),
        "negative_support": [{"curve": c.name, "class": c.cls.to_json(), "coeff": exact.fmt(a)} for c, a in z.negative_support],
        "certificate_minors": encode(z.minors),
        "catalog_complete": s.catalog_complete,
    }


def cmd_volume(args: argparse.Namespace) -> Any:
    s = load_surface(args.surface)
    l_cls = _class_arg(s, args.ample)
    if args.point:
        pm = _point_model(s, args.point)
        target, l_cls = pm.blown, pm.pullback(l_cls)
        e_cls = _class_arg(target, args.ray) if args.ray else pm.exceptional
    else:
        if not args.ray:
            raise InputError("--ray is required unless --point is given")
        target, e_cls = s, _class_arg(s, args.ray)
    sw = sweep(l_cls, e_cls, target)
    if args.csv:
        Path(args.csv).write_text(profile_csv(sw, exact.rat(args.step)))
    return _sweep_json(sw, target, l_cls, e_cls)


def cmd_invariants(args: argparse.Namespace) -> Any:
    s = load_surface(args.surface)
    l_cls = _class_arg(s, args.ample)
    pm = _point_model(s, args.point)
    return report_to_json(surface_delta_bound(s, l_cls, pm))


def cmd_verify_lemma(args: argparse.Namespace) -> str:
    if args.cases < 0:
        raise InputError("--cases must be nonnegative")
    rows = sweep_lemma(args.lemma, args.cases, args.seed)
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(["seed", "lhs", "rhs", "margin", "equality"])
    for seed, check in rows:
        w.writerow([seed, exact.fmt(check.lhs), exact.fmt(check.rhs), exact.fmt(check.margin), str(check.equality).lower()])
    return buf.getvalue()


def cmd_hypersurface(args: argparse.Namespace) -> Any:
    return report_to_json(hypersurface_verdict(HypersurfaceQuery(args.n, args.r)))


def _eps_table(path: Optional[str]) -> dict[int, Fraction]:
    table = dict(DEFAULT_EPS_TABLE)
    if path:
        try:
            blob = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read eps table {path}: {exc}") from exc
        table.update({int(k): exact.rat(v) for k, v in blob.items()})
    return table


def cmd_threefold(args: argparse.Namespace) -> Any:
    q = ThreefoldQuery(args.index, args.degree, _eps_table(args.eps_table))
    return report_to_json(threefold_verdict(q))


REPORT_SURFACES = (
    ("P2", "1"),
    ("P2", "2"),
    ("P1xP1", "1,1"),
    ("P1xP1", "1,3"),
    ("Hirzebruch(1)", "2,1"),
    ("DelPezzo(3)", "3,-1,-1,-1,-1,-1,-1"),
    ("DelPezzo(4)", "3,-1,-1,-1,-1,-1"),
    ("DelPezzo(5)", "3,-1,-1,-1,-1"),
    ("DelPezzo(6)", "3,-1,-1,-1"),
)


def report_rows() -> list[dict]:
    """Built-in invariants and verdict tables, in a fixed order."""
    rows = []
    for name, ample in REPORT_SURFACES:
        s = builtin_surface(name)
        r = surface_delta_bound(s, _class_arg(s, ample))
        rows.append(
            {
                "kind": "surface",
                "key": f"{name} L={s.label(_class_arg(s, ample))}",
                "eps": exact.fmt(r.ray.eps),
                "tau": exact.fmt(r.ray.tau),
                "S": exact.fmt(r.ray.s_inv),
                "fixed_deg": exact.fmt(r.ray.fixed_deg or 0),
                "lambda": exact.fmt(r.lambda_bound),
                "status": str(r.equality_class),
            }
        )
    for d in (1, 2, 3, 4):
        v = threefold_verdict(ThreefoldQuery(2, d))
        rows.append({"kind": "threefold", "key": f"index 2 degree {d}", "lambda": exact.fmt(v.bound), "status": v.status.value})
    for d in range(2, 24, 2):
        v = threefold_verdict(ThreefoldQuery(1, d))
        rows.append({"kind": "threefold", "key": f"index 1 degree {d}", "lambda": exact.fmt(v.bound), "status": v.status.value})
    for n, r in ((26, 3), (27, 3), (64, 4), (125, 5)):
        v = hypersurface_verdict(HypersurfaceQuery(n, r))
        rows.append({"kind": "hypersurface", "key": f"n={n} r={r}", "lambda": exact.fmt(v.bound), "status": v.status.value})
    return rows


def cmd_report(args: argparse.Namespace) -> Any:
    rows = report_rows()
    if args.format == "json":
        return rows
    cols = ["kind", "key", "eps", "tau", "S", "fixed_deg", "lambda", "status"]
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([row.get(c, "") for c in cols])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deltabound", description="Exact divisor invariants and stability-threshold bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("surface", help="surface utilities")
    ssub = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = ssub.add_parser("info", help="lattice data and negative-curve catalog")
    info.add_argument("surface", help="surface file or builtin:NAME")
    info.set_defaults(func=cmd_surface_info)

    z = sub.add_parser("zariski", help="Zariski decomposition of a class")
    z.add_argument("surface")
    z.add_argument("--class", dest="cls", required=True, help='coordinates, e.g. "1,1,-3/2"')
    z.set_defaults(func=cmd_zariski)

    v = sub.add_parser("volume", help="volume profile along L - tE")
    v.add_argument("surface")
    v.add_argument("--ample", required=True)
    v.add_argument("--ray", help="ray class E (defaults to the exceptional curve with --point)")
    v.add_argument("--point", help="'general' or a JSON point spec; sweeps on the blowup")
    v.add_argument("--csv", help="write t, vol, g samples here")
    v.add_argument("--step", default="1/4", help="CSV sampling step (rational)")
    v.set_defaults(func=cmd_volume)

    inv = sub.add_parser("invariants", help="full invariant report at a point")
    inv.add_argument("surface")
    inv.add_argument("--ample", required=True)
    inv.add_argument("--point", default="general")
    inv.set_defaults(func=cmd_invariants)

    lem = sub.add_parser("verify-lemma", help="seeded exact checks of the calculus inequalities")
    lem.add_argument("lemma", choices=["center-pt", "center-div"])
    lem.add_argument("--cases", type=int, default=1000)
    lem.add_argument("--seed", type=int, default=0)
    lem.set_defaults(func=cmd_verify_lemma)

    h = sub.add_parser("hypersurface", help="verdict for a Fano hypersurface")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--r", type=int, required=True)
    h.set_defaults(func=cmd_hypersurface)

    t = sub.add_parser("threefold", help="verdict for a Picard-rank-one Fano threefold")
    t.add_argument("--index", type=int, required=True)
    t.add_argument("--degree", type=int, required=True)
    t.add_argument("--eps-table", help='JSON object {"degree": "p/q"} overriding the defaults')
    t.set_defaults(func=cmd_threefold)

    rep = sub.add_parser("report", help="batch table of built-in invariants and verdicts")
    rep.add_argument("--format", choices=["json", "tsv"], default="json")
    rep.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (InputError, DomainError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out if isinstance(out, str) else dumps(out) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
