import functools

import pytest

from treeharmonic.tree import CenterKind, TreeParams, build_ball, enumerate_automorphisms


@functools.lru_cache(maxsize=None)
def ball_and_group(d0, d1, center, radius, transitive=True, type_preserving=False):
    params = TreeParams(d0, d1, transitive=transitive and d0 == d1)
    ball = build_ball(params, center, radius, 0)
    return ball, enumerate_automorphisms(ball, type_preserving=type_preserving)


@pytest.fixture(scope="session")
def cubic_r3():
    return ball_and_group(3, 3, CenterKind.VERTEX, 3)


@pytest.fixture(scope="session")
def quartic_r2():
    return ball_and_group(4, 4, CenterKind.VERTEX, 2)
