import itertools

import pytest

from treeharmonic.perm import (
    PermGroup,
    close_generators,
    compose,
    conjugacy_class_count,
    contains_alternating,
    inverse,
    is_two_transitive,
    orbit_count_on_pairs,
    parse_cycles,
    perm_sign,
    standard_rep_exists_2trans,
    to_cycles,
)
from treeharmonic.tree import CapExceeded

S3, S4, A4 = PermGroup.symmetric(3), PermGroup.symmetric(4), PermGroup.alternating(4)
C4, D8, C2 = PermGroup.cyclic(4), PermGroup.dihedral(4), PermGroup.cyclic(2)


def test_cycles_round_trip():
    p = parse_cycles("(1 3)(2 4 5)", 5)
    assert p == (2, 3, 0, 4, 1)
    assert to_cycles(p) == "(1 3)(2 4 5)"
    assert to_cycles((0, 1)) == "()"
    with pytest.raises(ValueError):
        parse_cycles("(1 6)", 5)
    with pytest.raises(ValueError):
        parse_cycles("1 2", 3)


def test_sign():
    assert perm_sign(parse_cycles("(1 2)", 3)) == -1
    assert perm_sign(parse_cycles("(1 2 3)", 3)) == 1
    assert perm_sign(parse_cycles("(1 2)(3 4)", 4)) == 1
    for p in itertools.permutations(range(4)):
        inversions = sum(1 for i, j in itertools.combinations(range(4), 2) if p[i] > p[j])
        assert perm_sign(p) == (-1) ** inversions


def test_closure_examples():
    assert len(close_generators([(0, 1, 2)])) == 1
    assert len(close_generators([parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])) == 6
    assert len(close_generators([parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)])) == 24
    with pytest.raises(CapExceeded):
        close_generators(PermGroup.symmetric(6).generators, cap=100)
    with pytest.raises(ValueError):
        close_generators([(0, 1), (0, 1, 2)])


def test_closure_is_a_group():
    G = PermGroup.from_cycles(5, ["(1 2 3)", "(3 4 5)"]).elements
    for g, h in itertools.product(G, repeat=2):
        assert compose(g, h) in G
    assert all(inverse(g) in G for g in G)
    assert 120 % len(G) == 0


def test_two_transitivity():
    assert is_two_transitive(S3) and is_two_transitive(A4)
    assert not is_two_transitive(C4)


def test_orbits_on_pairs():
    assert orbit_count_on_pairs(S3) == 2
    assert orbit_count_on_pairs(PermGroup(2, [(0, 1)])) == 4
    assert orbit_count_on_pairs(C4) == 4


def _classes_by_centralizers(G):
    # Burnside-type count: number of classes = (1/|G|) sum_g |C_G(g)|
    elems = list(G.elements)
    total = sum(sum(1 for h in elems if compose(g, h) == compose(h, g)) for g in elems)
    assert total % len(elems) == 0
    return total // len(elems)


@pytest.mark.parametrize("G,count", [(S3, 3), (S4, 5), (A4, 4), (D8, 5), (C4, 4)])
def test_class_counts(G, count):
    assert conjugacy_class_count(G) == count == _classes_by_centralizers(G)


def test_standard_rep():
    assert standard_rep_exists_2trans(S3)
    assert standard_rep_exists_2trans(A4)
    assert not standard_rep_exists_2trans(C2)
    with pytest.raises(ValueError):
        standard_rep_exists_2trans(C4)


def test_contains_alternating():
    assert contains_alternating(S4)
    assert contains_alternating(PermGroup.alternating(5))
    assert not contains_alternating(D8)
    with pytest.raises(ValueError):
        contains_alternating(PermGroup.symmetric(9))


@pytest.mark.parametrize("d", range(3, 7))
def test_contains_alternating_direct(d):
    alt = {p for p in itertools.permutations(range(d)) if perm_sign(p) == 1}
    for G in (PermGroup.symmetric(d), PermGroup.alternating(d), PermGroup.dihedral(d), PermGroup.cyclic(d)):
        assert contains_alternating(G) == alt.issubset(G.elements)
