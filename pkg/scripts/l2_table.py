"""Exact L2 partial sums of the special functions against their closed-form limits."""

import argparse
import csv
import sys
from dataclasses import dataclass, field

from treeharmonic.special import SpecialKind, l2_closed_form, l2_partial
from treeharmonic.tree import TreeParams


@dataclass
class L2Config:
    degrees: list[tuple[int, int]] = field(default_factory=lambda: [(3, 3), (4, 4), (3, 4), (5, 5)])
    Ns: list[int] = field(default_factory=lambda: [1, 2, 5, 10, 20, 40])


def rows(cfg: L2Config):
    for d, dp in cfg.degrees:
        cases = [(SpecialKind.TWO_ORBIT_SIGMA, TreeParams(d, dp))]
        if d == dp:
            cases.insert(0, (SpecialKind.VT_PLUS, TreeParams(d, d, transitive=True)))
        for sk, params in cases:
            limit = l2_closed_form(sk, params)
            for N in cfg.Ns:
                s = l2_partial(sk, params, N)
                yield sk.value, d, dp, N, float(s), str(limit), float(limit - s)


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kind", "d", "dprime", "N", "partial_sum", "limit", "gap"])
    w.writerows(rows(L2Config()))


if __name__ == "__main__":
    main()
