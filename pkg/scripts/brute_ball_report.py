"""Brute-force report on a finite ball: group order, coset partition, IP_k and factorization timings."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from treeharmonic.haar import verify_coset_partition
from treeharmonic.radu import GenericSubtree, Placement, check_factorization_plus, check_ipk
from treeharmonic.tree import CenterKind, GroupKind, TreeParams, build_ball, enumerate_automorphisms


@dataclass
class BruteConfig:
    d: int = 3
    radius: int = 3


def report(cfg: BruteConfig) -> dict:
    out: dict = {"config": asdict(cfg), "timings_s": {}}
    t = time.perf_counter()

    def lap(name):
        nonlocal t
        now = time.perf_counter()
        out["timings_s"][name] = round(now - t, 4)
        t = now

    ball = build_ball(TreeParams(cfg.d, cfg.d, transitive=True), CenterKind.VERTEX, cfg.radius, 0)
    group = enumerate_automorphisms(ball)
    out["vertices"], out["order"] = len(ball), len(group)
    lap("enumerate")
    rep = verify_coset_partition(ball, GroupKind.vertex_transitive(cfg.d), group)
    out["cosets"] = {"ok": rep.ok, "classes": rep.classes}
    lap("cosets")
    e = (0, ball.vid("0"))
    out["ipk"] = {}
    for k in range(1, cfg.radius):
        r = check_ipk(ball, k, e, group)
        out["ipk"][k] = {"holds": r.holds, "fix_order": r.fix_order, "halves": [r.left_order, r.right_order]}
    lap("ipk")
    if cfg.radius >= 2:
        U = Placement(GenericSubtree("vertex", 1), (0,))
        V = Placement(GenericSubtree("vertex", 1), (ball.vid("0"),))
        res, plus = check_factorization_plus(ball, U, V, group)
        out["factorization"] = {**res.to_json(), "plus": plus}
        lap("factorization")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--radius", type=int, default=3)
    a = ap.parse_args()
    print(json.dumps(report(BruteConfig(a.d, a.radius)), indent=2))


if __name__ == "__main__":
    main()
