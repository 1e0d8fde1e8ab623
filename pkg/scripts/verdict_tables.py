"""Verdict tables for Picard-rank-one Fano threefolds and Fano hypersurfaces."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from deltabound import exact
from deltabound.verdicts import HypersurfaceQuery, ThreefoldQuery, hypersurface_verdict, threefold_verdict


@dataclass
class VerdictConfig:
    max_index_one_degree: int = 22
    hypersurface_indices: tuple[int, ...] = (3, 4, 5)
    max_dimension: int = 200


def threefold_lines(cfg: VerdictConfig):
    queries = [ThreefoldQuery(2, d) for d in range(1, 6)]
    queries += [ThreefoldQuery(1, d) for d in range(2, cfg.max_index_one_degree + 1, 2)]
    for q in queries:
        v = threefold_verdict(q)
        cited = sum(1 for o in v.obligations if o.load_bearing)
        yield f"index {q.index} degree {q.degree}\t{v.status.value}\tbound {exact.fmt(v.bound)}\tload-bearing citations {cited}"


def hypersurface_lines(cfg: VerdictConfig):
    for r in cfg.hypersurface_indices:
        first = next(
            (n for n in range(r, cfg.max_dimension + 1) if hypersurface_verdict(HypersurfaceQuery(n, r)).failing == ()),
            None,
        )
        yield f"index {r}\tsmallest covered n = {first}\tr^3 = {r ** 3}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dimension", type=int, default=VerdictConfig.max_dimension)
    args = ap.parse_args()
    cfg = VerdictConfig(max_dimension=args.max_dimension)
    for line in threefold_lines(cfg):
        print(line)
    for line in hypersurface_lines(cfg):
        print(line)


if __name__ == "__main__":
    main()
