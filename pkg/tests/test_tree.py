import itertools
import json
import math

import pytest

from treeharmonic.tree import (
    BallAutomorphism,
    BoundaryRay,
    CapExceeded,
    CenterKind,
    InsufficientRadius,
    TreeParams,
    build_ball,
    distance,
    enumerate_automorphisms,
    horocycle_delta,
    identity,
    is_automorphism,
    pointwise_stabilizer,
    predicted_order,
    vertices_within,
)

from conftest import ball_and_group


def bfs_count(d0, d1, radius, parity=0):
    # independent count: walk the tree as an adjacency generator
    deg = (d0, d1)
    frontier = [(parity, None)]
    total = 1
    for _ in range(radius):
        nxt = []
        for p, came in frontier:
            k = deg[p] - (0 if came is None else 1)
            nxt += [(1 - p, True)] * k
        total += len(nxt)
        frontier = nxt
    return total


@pytest.mark.parametrize(
    "d0,d1,r,expected",
    [(3, 3, 0, 1), (3, 3, 2, 10), (3, 4, 2, 13)],
)
def test_vertex_ball_sizes(d0, d1, r, expected):
    ball = build_ball(TreeParams(d0, d1), "vertex", r)
    assert len(ball) == expected == bfs_count(d0, d1, r)


@pytest.mark.parametrize("d0,d1", [(3, 3), (3, 4), (4, 5), (5, 3)])
@pytest.mark.parametrize("r", range(0, 5))
def test_ball_sizes_against_bfs(d0, d1, r):
    ball = build_ball(TreeParams(d0, d1), "vertex", r)
    assert len(ball) == bfs_count(d0, d1, r)
    # edge ball = two half-balls hanging off the endpoints
    edge = build_ball(TreeParams(d0, d1), "edge", r)
    assert len(edge) == _edge_ball_size(d0, d1, r)


def _edge_ball_size(d0, d1, r):
    deg = (d0, d1)
    total = 0
    for p in (0, 1):
        layer = 1
        total += 1
        for j in range(1, r + 1):
            layer *= deg[(p + j - 1) % 2] - 1
            total += layer
    return total


def test_degree_validation():
    with pytest.raises(ValueError, match="thick"):
        TreeParams(2, 3)
    with pytest.raises(ValueError):
        TreeParams(3, 4, transitive=True)


def test_leaves_are_the_outer_sphere():
    ball = build_ball(TreeParams(3, 4), "vertex", 3)
    for v in range(len(ball)):
        full = len(ball.neighbours(v)) == ball.params.degree(ball.parity[v])
        assert full == (ball.depth[v] < 3)


def test_parity_follows_path_length():
    ball = build_ball(TreeParams(3, 4), "vertex", 3, center_parity=1)
    for v in range(len(ball)):
        assert ball.parity[v] == (1 + len(ball.paths[v])) % 2


def test_distance_examples():
    ball = build_ball(TreeParams(3, 3), "vertex", 2)
    assert distance(ball, "", "") == 0
    assert distance(ball, "", "1") == 1
    assert distance(ball, "0/0", "1/1") == 4
    assert distance(ball, "0/0", "0/1") == 2


def test_address_outside_ball():
    ball = build_ball(TreeParams(3, 3), "vertex", 1)
    with pytest.raises(InsufficientRadius):
        ball.vid("0/0")


def test_distance_is_a_tree_metric():
    ball = build_ball(TreeParams(3, 4), "edge", 2)
    n = len(ball)
    for u, v in itertools.product(range(n), repeat=2):
        assert ball.dist(u, v) == ball.dist(v, u)
        assert (ball.dist(u, v) == 0) == (u == v)
    for u, v, w in itertools.product(range(0, n, 3), repeat=3):
        assert ball.dist(u, w) <= ball.dist(u, v) + ball.dist(v, w)
    for u, v in ball.edges():
        assert ball.dist(u, v) == 1


def test_horocycle_examples():
    ball = build_ball(TreeParams(3, 3), "vertex", 3)
    ray = BoundaryRay()
    assert horocycle_delta(ball, "1/1", "1/1", ray) == 0
    assert horocycle_delta(ball, "", "0", ray) == 1
    assert horocycle_delta(ball, "", "0/0", ray) == 2
    assert horocycle_delta(ball, "1", "2", ray) == 0
    assert horocycle_delta(ball, "0/0", "", ray) == -2


def test_horocycle_is_additive():
    ball = build_ball(TreeParams(3, 3), "vertex", 3)
    ray = BoundaryRay(prefix=(1, 0), tail=1)
    verts = [str(ball.addr(v)) for v in range(0, len(ball), 2)]
    for a, b, c in itertools.product(verts[:8], repeat=3):
        assert horocycle_delta(ball, a, c, ray) == horocycle_delta(ball, a, b, ray) + horocycle_delta(ball, b, c, ray)


@pytest.mark.parametrize(
    "d,r,order",
    [(3, 0, 1), (3, 1, 6), (3, 3, 3072), (4, 2, 31104)],
)
def test_automorphism_counts(d, r, order):
    _, group = ball_and_group(d, d, CenterKind.VERTEX, r)
    assert len(group) == order
    # 3!(2!(2!)^2)^3 for the cubic radius-3 ball
    if (d, r) == (3, 3):
        assert order == math.factorial(3) * (2 * 2**2) ** 3


def test_enumeration_is_a_group():
    ball, group = ball_and_group(3, 3, CenterKind.EDGE, 2)
    images = {g.image for g in group}
    assert len(images) == len(group) == predicted_order(ball)
    for g in group:
        assert is_automorphism(ball, g)
        assert g.inverse().image in images
    for g, h in itertools.islice(itertools.product(group, repeat=2), 0, None, 7):
        assert (g * h).image in images


def test_type_preserving_edge_group_has_half_the_order():
    ball, full = ball_and_group(3, 3, CenterKind.EDGE, 2)
    _, tp = ball_and_group(3, 3, CenterKind.EDGE, 2, type_preserving=True)
    assert len(full) == 2 * len(tp)
    assert all(is_automorphism(ball, g, type_preserving=True) for g in tp)


def test_semi_regular_edge_has_no_swap():
    ball, group = ball_and_group(3, 4, CenterKind.EDGE, 2, transitive=False)
    assert all(g.image[0] == 0 for g in group)
    assert len(group) == predicted_order(ball)


def test_isometry(cubic_r3):
    ball, group = cubic_r3
    pairs = [(u, w) for u in range(0, len(ball), 4) for w in range(0, len(ball), 5)]
    for g in group[::97]:
        for u, w in pairs:
            assert ball.dist(g.image[u], g.image[w]) == ball.dist(u, w)


def test_cap_names_the_order(monkeypatch):
    ball = build_ball(TreeParams(4, 4), "vertex", 3)
    with pytest.raises(CapExceeded, match=str(predicted_order(ball))):
        enumerate_automorphisms(ball)
    monkeypatch.setenv("TREEHARMONIC_ENUM_CAP", "5")
    with pytest.raises(CapExceeded):
        enumerate_automorphisms(build_ball(TreeParams(3, 3), "vertex", 1))


def test_pointwise_stabilizer_examples():
    ball, group = ball_and_group(3, 3, CenterKind.VERTEX, 2)
    assert pointwise_stabilizer(group, []) == group
    assert [g.is_identity() for g in pointwise_stabilizer(group, range(len(ball)))] == [True]
    stab = pointwise_stabilizer(group, vertices_within(ball, [0], 1))
    assert len(stab) == 8
    images = {g.image for g in stab}
    assert all((g * h).image in images for g in stab for h in stab)


def test_json_round_trip():
    ball, group = ball_and_group(3, 3, CenterKind.VERTEX, 2)
    g = group[17]
    data = json.loads(json.dumps(g.to_json(ball)))
    assert BallAutomorphism.from_json(ball, data) == g
    assert identity(ball).to_json(ball)["0/1"] == "0/1"
    with pytest.raises(ValueError):
        BallAutomorphism.from_json(ball, {"0": "0/0"})
    assert ball.to_json()["vertices"][:2] == ["", "0"]
