from fractions import Fraction

import pytest

from treeharmonic.dynamics import (
    apply_base_change,
    base_change,
    base_change_map,
    exact_sqrt,
    induce_from_plus,
    restrict_to_plus,
    special_dynamics,
)
from treeharmonic.spherical import GroupKind, spherical_sequence


def test_restrict_examples():
    assert restrict_to_plus(4, 1).gamma == 1
    assert restrict_to_plus(4, Fraction(1, 2)).gamma == 0
    assert restrict_to_plus(4, 0).exceptional_pair


@pytest.mark.parametrize("d", [3, 4, 7])
def test_restrict_is_two_step_spherical_value(d):
    for a in (Fraction(-2, 3), Fraction(1, 5), Fraction(9, 10)):
        assert restrict_to_plus(d, a).gamma == spherical_sequence(GroupKind.vertex_transitive(d), a, 2)[2]


def test_restrict_rejects_outside():
    with pytest.raises(ValueError):
        restrict_to_plus(4, Fraction(11, 10))


def test_induce_examples():
    assert induce_from_plus(4, 1).alphas == (-1, 1)
    r = induce_from_plus(4, 0)
    assert r.alphas == (Fraction(-1, 2), Fraction(1, 2)) and r.exact
    ex = induce_from_plus(4, Fraction(-1, 3))
    assert ex.exceptional and ex.alphas == (0,)
    with pytest.raises(ValueError):
        induce_from_plus(4, Fraction(-1, 2))


def test_inexact_root_is_float():
    r = induce_from_plus(4, Fraction(1, 2))
    assert not r.exact and r.alpha_plus == pytest.approx((5 / 8) ** 0.5, abs=1e-15)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 16)) == Fraction(3, 4)
    assert exact_sqrt(Fraction(2)) is None
    assert exact_sqrt(Fraction(-1)) is None


@pytest.mark.parametrize("d", [3, 4, 5])
def test_round_trip(d):
    for k in range(1, 21):
        a = Fraction(k, 20)
        back = induce_from_plus(d, restrict_to_plus(d, a).gamma)
        if back.exact:
            assert set(back.alphas) == {a, -a}
        else:
            assert back.alpha_plus == pytest.approx(float(a), abs=1e-12)


@pytest.mark.parametrize("d", [3, 4, 6])
def test_frobenius_round_trip(d):
    lo = Fraction(-1, d - 1)
    for k in range(1, 11):
        gamma = lo + (1 - lo) * Fraction(k, 10)
        ind = induce_from_plus(d, gamma)
        for a in ind.alphas:
            g = restrict_to_plus(d, a).gamma
            assert g == gamma if ind.exact else abs(g - float(gamma)) < 1e-12


def test_base_change_examples():
    assert base_change(4, 6, 1) == 1
    assert apply_base_change(4, 6, Fraction(-1, 5)) == Fraction(-1, 3)
    assert base_change_map(5, 5) == (1, 0)
    assert base_change(5, 5, Fraction(2, 7)) == Fraction(2, 7)


def test_base_change_rejects_exceptional():
    with pytest.raises(ValueError):
        base_change(4, 6, Fraction(-1, 5))
    with pytest.raises(ValueError):
        base_change(4, 6, Fraction(-1, 2))


@pytest.mark.parametrize("d,dp", [(4, 6), (3, 4), (6, 4), (3, 7)])
def test_base_change_maps_interval_onto_interval(d, dp):
    a, b = base_change_map(d, dp)
    assert a > 0
    assert apply_base_change(d, dp, Fraction(-1, dp - 1)) == Fraction(-1, d - 1)
    assert apply_base_change(d, dp, 1) == 1


def test_base_change_inverse_is_swap():
    for x in (Fraction(1, 3), Fraction(-1, 7), Fraction(1)):
        y = base_change(4, 6, x)
        assert base_change(6, 4, y) == x


def test_special_dynamics():
    t = special_dynamics(4)
    assert t["Res"]["sigma+"] == ["sigma"] and t["Res"]["sigma-"] == ["sigma"]
    assert sorted(t["Ind"]["sigma"]) == ["sigma+", "sigma-"]
