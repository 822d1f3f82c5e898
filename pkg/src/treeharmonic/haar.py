"""Sphere sizes, Haar measures of double cosets, and ball-level checks.

Vertex families use the normalisation mu(Fix(v)) = 1, edge families
mu(Fix(e)) = 1; every value carries its normalisation tag.  All arithmetic is
exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .tree import (
    Ball,
    BallAutomorphism,
    CenterKind,
    GroupKind,
    TreeParams,
    enumerate_automorphisms,
    pointwise_stabilizer,
)

VERTEX_NORMALIZATION = "Fix(v)=1"
EDGE_NORMALIZATION = "Fix(e)=1"


class CosetTag(str, Enum):
    VERTEX = "vertex"  # Fix(v) tau^n Fix(v)
    EDGE = "tau_n"  # Fix(e) tau^n Fix(e)
    EDGE_INVERSION = "tau_n_h"  # Fix(e) tau^n h Fix(e), vertex-transitive only
    EDGE_KV = "tau_m_kv"  # Fix(e) tau^m k_v Fix(e), m >= 1, two orbits only
    EDGE_KV_NEG = "tau_negm_kv"  # Fix(e) tau^-(m-1) k_v Fix(e), m >= 1, two orbits only


@dataclass(frozen=True)
class CosetFamily:
    tag: CosetTag
    n: int
    kind: GroupKind

    def __post_init__(self):
        tag = CosetTag(self.tag)
        object.__setattr__(self, "tag", tag)
        if tag is CosetTag.VERTEX and self.n < 0:
            raise ValueError("vertex double cosets are indexed by n >= 0")
        if tag is CosetTag.EDGE_INVERSION and not self.kind.transitive:
            raise ValueError("the inversion family exists only for vertex-transitive groups")
        if tag in (CosetTag.EDGE_KV, CosetTag.EDGE_KV_NEG):
            if self.kind.transitive:
                raise ValueError("k_v families exist only for groups with two vertex orbits")
            if self.n < 1:
                raise ValueError("k_v families are indexed by m >= 1")


@dataclass(frozen=True)
class MeasureValue:
    value: Fraction
    normalization: str

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("Haar measure of a double coset is positive")


def sphere_size(params: TreeParams, parity: int, n: int) -> int:
    """Number of vertices at distance ``n`` from a vertex of the given type."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    size = params.degree(parity)
    for j in range(1, n):
        size *= params.degree(parity + j) - 1
    return size


def vertex_coset_measure(params: TreeParams, parity: int, n: int) -> MeasureValue:
    """mu(Fix(v) tau^n Fix(v)) with mu(Fix(v)) = 1.

    tau has step 1 when ``params.transitive`` is set and step 2 otherwise.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    step = 1 if params.transitive else 2
    return MeasureValue(Fraction(sphere_size(params, parity, n * step)), VERTEX_NORMALIZATION)


def edge_coset_measure(family: CosetFamily) -> MeasureValue:
    kind, n = family.kind, family.n
    if family.tag is CosetTag.VERTEX:
        params = TreeParams(kind.d, kind.neighbour_degree, transitive=kind.transitive)
        return vertex_coset_measure(params, 0, n)
    if kind.transitive:
        value = Fraction(kind.d - 1) ** abs(n)
    else:
        p = (kind.d - 1) * (kind.dprime - 1)
        if family.tag is CosetTag.EDGE:
            value = Fraction(p) ** abs(n)
        elif family.tag is CosetTag.EDGE_KV:
            value = Fraction(kind.dprime - 1) * Fraction(p) ** (n - 1)
        else:
            value = Fraction(kind.d - 1) * Fraction(p) ** (n - 1)
    return MeasureValue(value, EDGE_NORMALIZATION)


def edge_families(kind: GroupKind, N: int) -> list[CosetFamily]:
    """Edge double-coset families up to |n| <= N (and 1 <= m <= N)."""
    fams = [CosetFamily(CosetTag.EDGE, n, kind) for n in range(-N, N + 1)]
    if kind.transitive:
        fams += [CosetFamily(CosetTag.EDGE_INVERSION, n, kind) for n in range(-N, N + 1)]
    else:
        fams += [CosetFamily(CosetTag.EDGE_KV, m, kind) for m in range(1, N + 1)]
        fams += [CosetFamily(CosetTag.EDGE_KV_NEG, m, kind) for m in range(1, N + 1)]
    return fams


def measures_csv(families: list[CosetFamily]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "measure_numerator", "measure_denominator", "normalization"])
    for fam in families:
        mv = edge_coset_measure(fam)
        w.writerow([fam.tag.value, fam.n, mv.value.numerator, mv.value.denominator, mv.normalization])
    return buf.getvalue()


# --- ball-level classification -------------------------------------------------


def classify_oriented_edge(ball: Ball, x: int, y: int, kind: GroupKind) -> CosetFamily:
    """Double-coset label of the oriented edge (x, y) relative to the central edge.

    The central edge is (a, b) = (root, child 0) and tau translates from a
    towards b.  For two-orbit groups edges are read with their type-0
    endpoint first, so only that orientation is accepted.
    """
    if ball.center is not CenterKind.EDGE:
        raise ValueError("edge classes need an edge-centred ball")
    if y not in ball.neighbours(x):
        raise ValueError("not an edge")
    a, b = 0, 1
    if {x, y} == {a, b}:
        if (x, y) == (a, b):
            return CosetFamily(CosetTag.EDGE, 0, kind)
        if not kind.transitive:
            raise ValueError("two-orbit groups do not invert edges")
        return CosetFamily(CosetTag.EDGE_INVERSION, 0, kind)
    # far endpoint and which side of the central edge the edge lies on
    near, far = (x, y) if ball.depth[x] < ball.depth[y] else (y, x)
    k = ball.depth[far]
    on_b_side = ball.paths[far][:1] == (0,)
    outward = far == y
    if kind.transitive:
        if on_b_side:
            n = k
            tag = CosetTag.EDGE if outward else CosetTag.EDGE_INVERSION
        else:
            n = -k
            tag = CosetTag.EDGE if not outward else CosetTag.EDGE_INVERSION
        return CosetFamily(tag, n, kind)
    if ball.parity[x] != ball.parity[a]:
        raise ValueError("two-orbit edges are oriented from the type of the reference vertex")
    if on_b_side:
        if k % 2:
            return CosetFamily(CosetTag.EDGE_KV, (k + 1) // 2, kind)
        return CosetFamily(CosetTag.EDGE, k // 2, kind)
    if k % 2:
        return CosetFamily(CosetTag.EDGE_KV_NEG, (k + 1) // 2, kind)
    return CosetFamily(CosetTag.EDGE, -(k // 2), kind)


@dataclass
class CosetPartitionReport:
    center: str
    classes: dict[str, int]  # class label -> number of cosets (orbit size)
    expected: dict[str, Fraction]  # class label -> Haar measure from the closed forms
    partition_ok: bool
    labels_constant: bool
    sizes_match: bool
    group_order: int
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.partition_ok and self.labels_constant and self.sizes_match


def _orbits(points: list, act) -> list[set]:
    seen, orbits = set(), []
    for p in points:
        if p in seen:
            continue
        orb = act(p)
        seen |= orb
        orbits.append(orb)
    return orbits


def verify_coset_partition(
    ball: Ball,
    kind: GroupKind | None = None,
    group: list[BallAutomorphism] | None = None,
) -> CosetPartitionReport:
    """Check the double-coset decomposition on a ball by brute force.

    K\\G/K is identified with the K-orbits on G/K: vertices (vertex centre,
    K = Fix(v)) or oriented edges (edge centre, K = Fix(e)).  Each orbit is
    computed from the enumerated ball group, labelled, and its size compared
    with mu(K g K) / mu(K) from the closed forms.
    """
    params = ball.params
    if kind is None:
        kind = params.kind(ball.center_parity)
    if group is None:
        group = enumerate_automorphisms(ball, type_preserving=not kind.transitive)
    details = []
    if ball.center is CenterKind.VERTEX:
        K = group
        pts = list(range(len(ball)))
        if not kind.transitive:
            pts = [v for v in pts if ball.parity[v] == ball.center_parity]
        orbits = _orbits(pts, lambda v: {g.image[v] for g in K})
        step = kind.step
        classes, expected, labels_ok = {}, {}, True
        tp = TreeParams(params.d0, params.d1, transitive=kind.transitive)
        for orb in orbits:
            dists = {ball.dist(0, v) for v in orb}
            if len(dists) != 1:
                labels_ok = False
                details.append(f"orbit mixes distances {sorted(dists)}")
                continue
            n = dists.pop() // step
            label = f"vertex:{n}"
            classes[label] = classes.get(label, 0) + len(orb)
            expected[label] = vertex_coset_measure(tp, ball.center_parity, n).value
        covered = sorted(v for orb in orbits for v in orb)
        partition_ok = covered == sorted(pts)
    else:
        K = pointwise_stabilizer(group, (0, 1))
        pts = []
        for u, w in ball.edges():
            for x, y in ((u, w), (w, u)):
                if kind.transitive or ball.parity[x] == ball.parity[0]:
                    pts.append((x, y))
        orbits = _orbits(pts, lambda e: {(g.image[e[0]], g.image[e[1]]) for g in K})
        classes, expected, labels_ok = {}, {}, True
        for orb in orbits:
            fams = {classify_oriented_edge(ball, x, y, kind) for x, y in orb}
            if len(fams) != 1:
                labels_ok = False
                details.append(f"orbit carries several labels: {sorted(f.tag.value for f in fams)}")
                continue
            fam = fams.pop()
            label = f"{fam.tag.value}:{fam.n}"
            if label in classes:
                labels_ok = False
                details.append(f"label {label} appears on two orbits")
            classes[label] = classes.get(label, 0) + len(orb)
            expected[label] = edge_coset_measure(fam).value
        covered = sorted(p for orb in orbits for p in orb)
        partition_ok = covered == sorted(pts) and sum(len(o) for o in orbits) == len(pts)
    sizes_ok = all(Fraction(classes[k]) == expected[k] for k in classes)
    if not sizes_ok:
        details += [f"{k}: brute force {classes[k]} vs formula {expected[k]}" for k in classes if classes[k] != expected[k]]
    return CosetPartitionReport(
        center=ball.center.value,
        classes=classes,
        expected=expected,
        partition_ok=partition_ok,
        labels_constant=labels_ok,
        sizes_match=sizes_ok,
        group_order=len(group),
        details=details,
    )
