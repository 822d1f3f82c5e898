"""Sweep alpha across and beyond the spherical interval and record the smallest Gram eigenvalue.

Writes plot-ready CSV to stdout: kind, radius, alpha, min_eigenvalue, psd.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from treeharmonic.spherical import GroupKind, param_interval, psd_check, radial_gram
from treeharmonic.tree import CenterKind, TreeParams, build_ball


@dataclass
class SweepConfig:
    d: int = 3
    dprime: int | None = None
    radius: int = 3
    steps: int = 40
    overshoot: Fraction = Fraction(1, 5)


def sweep(cfg: SweepConfig):
    if cfg.dprime is None or cfg.dprime == cfg.d:
        kind, params = GroupKind.vertex_transitive(cfg.d), TreeParams(cfg.d, cfg.d, transitive=True)
    else:
        kind, params = GroupKind.two_orbits(cfg.d, cfg.dprime), TreeParams(cfg.d, cfg.dprime)
    ball = build_ball(params, CenterKind.VERTEX, cfg.radius, 0)
    iv = param_interval(kind)
    lo, hi = iv.lo - cfg.overshoot, iv.hi + cfg.overshoot
    for i in range(cfg.steps + 1):
        alpha = lo + (hi - lo) * Fraction(i, cfg.steps)
        ok, lam = psd_check(radial_gram(ball, kind, alpha))
        yield kind.label(), cfg.radius, alpha, lam, ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--dprime", type=int)
    ap.add_argument("--radius", type=int, default=3)
    ap.add_argument("--steps", type=int, default=40)
    a = ap.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kind", "radius", "alpha", "min_eigenvalue", "psd"])
    for kind, r, alpha, lam, ok in sweep(SweepConfig(a.d, a.dprime, a.radius, a.steps)):
        w.writerow([kind, r, str(alpha), f"{lam:.6e}", ok])


if __name__ == "__main__":
    main()
