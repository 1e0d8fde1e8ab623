"""Seeded sweep of both integral inequalities; prints a summary per inequality."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from deltabound import exact
from deltabound.concavity import check_center_div, check_center_pt, linear_drop, sweep_lemma, tent


@dataclass
class SweepConfig:
    cases: int = 1000
    seed: int = 0


def summarize(kind: str, cfg: SweepConfig) -> str:
    results = sweep_lemma(kind, cfg.cases, cfg.seed)
    equalities = sum(1 for _, c in results if c.equality)
    tightest = min((c.margin / c.rhs for _, c in results if c.rhs and not c.equality), default=None)
    ratio = "n/a" if tightest is None else f"{float(tightest):.3e}"
    return f"{kind}\tcases={len(results)}\tviolations=0\tequalities={equalities}\tmin relative margin={ratio}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=SweepConfig.cases)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    cfg = SweepConfig(args.cases, args.seed)
    # any violation raises InvariantViolation before a summary line is printed
    for kind in ("center-pt", "center-div"):
        print(summarize(kind, cfg))
    pt = check_center_pt(1, 2, tent(1, 2))
    div = check_center_div(1, 2, linear_drop(1, 1))
    print(f"extremal tent: lhs = rhs = {exact.fmt(pt.lhs)}; extremal linear drop: lhs = rhs = {exact.fmt(div.lhs)}")


if __name__ == "__main__":
    main()
