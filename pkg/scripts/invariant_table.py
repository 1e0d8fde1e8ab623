"""Print eps, tau, S, deg F and lambda at a general point for a list of
(surface, ample class) pairs."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from deltabound import exact
from deltabound.delta import surface_delta_bound
from deltabound.lattice import DivClass, builtin_surface


@dataclass
class TableConfig:
    pairs: list[tuple[str, str]] = field(
        default_factory=lambda: [
            ("P2", "1"),
            ("P1xP1", "1,1"),
            ("P1xP1", "1,3"),
            ("Hirzebruch(1)", "2,1"),
            ("DelPezzo(3)", "3,-1,-1,-1,-1,-1,-1"),
            ("DelPezzo(4)", "3,-1,-1,-1,-1,-1"),
            ("DelPezzo(5)", "3,-1,-1,-1,-1"),
            ("DelPezzo(6)", "3,-1,-1,-1"),
        ]
    )


def rows(cfg: TableConfig):
    for name, ample in cfg.pairs:
        s = builtin_surface(name)
        l = DivClass(exact.parse_vector(ample))
        r = surface_delta_bound(s, l)
        ray = r.ray
        yield (
            f"{name} {s.label(l)}",
            ray.eps,
            ray.tau,
            ray.s_inv,
            ray.fixed_deg,
            r.lambda_bound,
            str(r.equality_class),
        )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pair", action="append", nargs=2, metavar=("SURFACE", "AMPLE"), help="replace the default list")
    args = ap.parse_args()
    cfg = TableConfig(pairs=[tuple(p) for p in args.pair]) if args.pair else TableConfig()
    header = ("case", "eps", "tau", "S", "degF", "lambda", "equality")
    print("\t".join(header))
    for row in rows(cfg):
        print("\t".join(x if isinstance(x, str) else exact.fmt(x) for x in row))


if __name__ == "__main__":
    main()
