import csv
import io
from fractions import Fraction

import pytest

from treeharmonic.haar import (
    EDGE_NORMALIZATION,
    VERTEX_NORMALIZATION,
    CosetFamily,
    CosetTag,
    MeasureValue,
    classify_oriented_edge,
    edge_coset_measure,
    edge_families,
    measures_csv,
    sphere_size,
    verify_coset_partition,
    vertex_coset_measure,
)
from treeharmonic.tree import CenterKind, GroupKind, TreeParams, build_ball

from conftest import ball_and_group

VT3 = GroupKind.vertex_transitive(3)


def test_sphere_size_examples():
    assert sphere_size(TreeParams(3, 3), 0, 0) == 1
    assert sphere_size(TreeParams(3, 3), 0, 1) == 3
    assert sphere_size(TreeParams(3, 3), 0, 3) == 12
    assert sphere_size(TreeParams(3, 4), 0, 2) == 9


@pytest.mark.parametrize("d0", [3, 4, 5])
@pytest.mark.parametrize("d1", [3, 4, 5])
@pytest.mark.parametrize("parity", [0, 1])
def test_sphere_sizes_match_bfs(d0, d1, parity):
    ball = build_ball(TreeParams(d0, d1), "vertex", 4, center_parity=parity)
    for n in range(5):
        assert sphere_size(ball.params, parity, n) == sum(1 for x in ball.depth if x == n)


def test_vertex_coset_examples():
    assert vertex_coset_measure(TreeParams(3, 3, True), 0, 0).value == 1
    assert vertex_coset_measure(TreeParams(4, 4, True), 0, 2).value == 12
    m = vertex_coset_measure(TreeParams(3, 4), 0, 1)
    assert m.value == 9 and m.normalization == VERTEX_NORMALIZATION


@pytest.mark.parametrize("params", [TreeParams(3, 3, True), TreeParams(3, 4), TreeParams(5, 3)])
def test_vertex_coset_is_sphere_at_step(params):
    step = 1 if params.transitive else 2
    for n in range(6):
        assert vertex_coset_measure(params, 0, n).value == sphere_size(params, 0, n * step)


def test_edge_coset_examples():
    two = GroupKind.two_orbits(3, 3)
    assert edge_coset_measure(CosetFamily(CosetTag.EDGE, 0, two)).value == 1
    assert edge_coset_measure(CosetFamily(CosetTag.EDGE, 1, two)).value == 4
    m = edge_coset_measure(CosetFamily(CosetTag.EDGE_INVERSION, 2, VT3))
    assert m.value == 4 and m.normalization == EDGE_NORMALIZATION
    # |n| in both directions
    assert edge_coset_measure(CosetFamily(CosetTag.EDGE, -3, VT3)).value == 8


def test_kv_families():
    kind = GroupKind.two_orbits(3, 4)
    assert edge_coset_measure(CosetFamily(CosetTag.EDGE_KV, 1, kind)).value == 3
    assert edge_coset_measure(CosetFamily(CosetTag.EDGE_KV_NEG, 1, kind)).value == 2
    assert edge_coset_measure(CosetFamily(CosetTag.EDGE_KV, 2, kind)).value == 3 * 6


@pytest.mark.parametrize(
    "tag,n,kind",
    [
        (CosetTag.EDGE_INVERSION, 1, GroupKind.two_orbits(3, 3)),
        (CosetTag.EDGE_KV, 1, VT3),
        (CosetTag.EDGE_KV_NEG, 0, GroupKind.two_orbits(3, 4)),
        (CosetTag.VERTEX, -1, VT3),
    ],
)
def test_family_kind_mismatch(tag, n, kind):
    with pytest.raises(ValueError):
        CosetFamily(tag, n, kind)


def test_measure_is_positive():
    with pytest.raises(ValueError):
        MeasureValue(Fraction(0), EDGE_NORMALIZATION)


def test_csv_columns():
    text = measures_csv(edge_families(GroupKind.two_orbits(4, 6), 2))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["family", "n", "measure_numerator", "measure_denominator", "normalization"]
    kv = [r for r in rows if r["family"] == "tau_m_kv" and r["n"] == "2"][0]
    assert (kv["measure_numerator"], kv["measure_denominator"]) == (str(5 * 15), "1")


def test_partition_vertex_cubic_r2():
    ball, group = ball_and_group(3, 3, CenterKind.VERTEX, 2)
    rep = verify_coset_partition(ball, VT3, group)
    assert rep.ok
    assert rep.classes == {"vertex:0": 1, "vertex:1": 3, "vertex:2": 6}


def test_partition_radius_zero():
    ball, group = ball_and_group(3, 3, CenterKind.VERTEX, 0)
    rep = verify_coset_partition(ball, VT3, group)
    assert rep.ok and rep.classes == {"vertex:0": 1} and rep.group_order == 1


def test_partition_edge_has_both_families():
    ball, group = ball_and_group(3, 3, CenterKind.EDGE, 2)
    rep = verify_coset_partition(ball, VT3, group)
    assert rep.ok
    for n in (0, 1):
        assert f"tau_n:{n}" in rep.classes and f"tau_n_h:{n}" in rep.classes


@pytest.mark.parametrize("d0,d1,r", [(3, 3, 3), (3, 4, 2), (4, 3, 2), (3, 5, 2)])
def test_partition_two_orbit(d0, d1, r):
    ball = build_ball(TreeParams(d0, d1), CenterKind.EDGE, r)
    rep = verify_coset_partition(ball, GroupKind.two_orbits(d0, d1))
    assert rep.ok, rep.details


@pytest.mark.parametrize("d0,d1", [(3, 4), (4, 3)])
def test_partition_two_orbit_vertex(d0, d1):
    ball = build_ball(TreeParams(d0, d1), CenterKind.VERTEX, 2)
    rep = verify_coset_partition(ball, GroupKind.two_orbits(d0, d1))
    assert rep.ok and rep.classes == {"vertex:0": 1, "vertex:1": d0 * (d1 - 1)}


@pytest.mark.parametrize("d,r", [(3, 1), (3, 2), (3, 3), (4, 2)])
def test_truncated_sum_counts_oriented_edges(d, r):
    # total measure of the families seen in the ball = number of cosets = oriented edges
    ball = build_ball(TreeParams(d, d, True), CenterKind.EDGE, r)
    kind = GroupKind.vertex_transitive(d)
    total = sum(edge_coset_measure(f).value for f in edge_families(kind, r))
    assert total == 2 * len(ball.edges())


def test_classify_rejects_wrong_orientation():
    ball = build_ball(TreeParams(3, 4), CenterKind.EDGE, 2)
    kind = GroupKind.two_orbits(3, 4)
    with pytest.raises(ValueError):
        classify_oriented_edge(ball, 1, 0, kind)
    assert classify_oriented_edge(ball, 0, 1, kind).tag is CosetTag.EDGE
