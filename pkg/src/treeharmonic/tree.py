"""Finite balls in (d0, d1)-semi-regular trees and their automorphisms.

Vertices are addressed by child-index paths from a root vertex.  For a
vertex-centred ball the root is the centre.  For an edge-centred ball the
root is the type-``center_parity`` endpoint ``a`` of the central edge and the
other endpoint ``b`` is the root's child ``0``.  Children of the root are
indexed ``0..deg-1``; children of any other vertex ``0..deg-2`` (the parent
takes the remaining slot).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

DEFAULT_ENUM_CAP = 10**6
ENUM_CAP_ENV = "TREEHARMONIC_ENUM_CAP"


class InsufficientRadius(ValueError):
    """Raised when a computation needs vertices beyond the ball."""


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured cap."""


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class GroupKind:
    """Vertex-transitive (``dprime is None``) or two orbits of vertices.

    ``d`` is the degree of the reference vertex ``v``; ``dprime`` the degree
    of its neighbours in the two-orbit case.
    """

    d: int
    dprime: int | None = None

    def __post_init__(self):
        if self.d < 3 or (self.dprime is not None and self.dprime < 3):
            raise ValueError(f"degrees must be >= 3 (thick tree), got {self}")

    @classmethod
    def vertex_transitive(cls, d: int) -> GroupKind:
        return cls(d)

    @classmethod
    def two_orbits(cls, d: int, dprime: int) -> GroupKind:
        return cls(d, dprime)

    @property
    def transitive(self) -> bool:
        return self.dprime is None

    @property
    def neighbour_degree(self) -> int:
        return self.d if self.dprime is None else self.dprime

    @property
    def step(self) -> int:
        """Minimal translation length in the group."""
        return 1 if self.transitive else 2

    def label(self) -> str:
        if self.transitive:
            return f"vt(d={self.d})"
        return f"two-orbit(d={self.d},d'={self.dprime})"


@dataclass(frozen=True)
class TreeParams:
    """Degrees of a semi-regular tree.

    ``transitive`` is a caller-supplied flag saying the acting group is
    vertex-transitive; it is never inferred from ``d0 == d1``.
    """

    d0: int
    d1: int
    transitive: bool = False

    def __post_init__(self):
        if self.d0 < 3 or self.d1 < 3:
            raise ValueError(
                f"degrees must be >= 3 for a thick tree, got d0={self.d0}, d1={self.d1}"
            )
        if self.transitive and self.d0 != self.d1:
            raise ValueError("a vertex-transitive group needs a regular tree (d0 == d1)")

    def degree(self, parity: int) -> int:
        return self.d0 if parity % 2 == 0 else self.d1

    def kind(self, parity: int = 0) -> GroupKind:
        """Group kind seen from a vertex of the given type."""
        if self.transitive:
            return GroupKind(self.d0)
        return GroupKind(self.degree(parity), self.degree(parity + 1))


@dataclass(frozen=True, order=True)
class VertexAddr:
    path: tuple[int, ...]
    parity: int

    def __str__(self):
        return "/".join(str(i) for i in self.path)


class CenterKind(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True)
class BoundaryRay:
    """End of the tree reached from the root by a fixed child choice per step.

    The choice at depth ``k`` is ``prefix[k]`` for ``k < len(prefix)`` and
    ``tail`` afterwards.  The default is the leftmost ray.
    """

    prefix: tuple[int, ...] = ()
    tail: int = 0

    def choice(self, depth: int) -> int:
        return self.prefix[depth] if depth < len(self.prefix) else self.tail


@dataclass(eq=False)
class Ball:
    params: TreeParams
    center: CenterKind
    radius: int
    center_parity: int = 0
    # filled by build_ball
    paths: list[tuple[int, ...]] = field(default_factory=list, repr=False)
    parity: list[int] = field(default_factory=list, repr=False)
    parent: list[int | None] = field(default_factory=list, repr=False)
    children: list[list[int]] = field(default_factory=list, repr=False)
    depth: list[int] = field(default_factory=list, repr=False)
    index: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.paths)

    @property
    def center_ids(self) -> tuple[int, ...]:
        return (0,) if self.center is CenterKind.VERTEX else (0, 1)

    def addr(self, vid: int) -> VertexAddr:
        return VertexAddr(self.paths[vid], self.parity[vid])

    def vid(self, where: VertexAddr | Sequence[int] | str) -> int:
        """Vertex id for an address, a path tuple or a ``"0/2/1"`` string."""
        if isinstance(where, VertexAddr):
            path = where.path
        elif isinstance(where, str):
            path = parse_path(where)
        else:
            path = tuple(where)
        try:
            return self.index[path]
        except KeyError:
            raise InsufficientRadius(f"address {'/'.join(map(str, path))!r} is not in the ball") from None

    def neighbours(self, vid: int) -> list[int]:
        p = self.parent[vid]
        return self.children[vid] + ([] if p is None else [p])

    def is_interior(self, vid: int) -> bool:
        """True when every neighbour of the vertex lies in the ball."""
        return self.depth[vid] < self.radius

    def outward(self, vid: int) -> list[int]:
        """Children pointing away from the centre (excludes ``b`` at the edge root)."""
        if self.center is CenterKind.EDGE and vid == 0:
            return self.children[0][1:]
        return self.children[vid]

    def sphere(self, vid: int, r: int) -> list[int]:
        """Vertices at distance exactly ``r`` from ``vid`` (within the ball)."""
        return [w for w in range(len(self)) if self.dist(vid, w) == r]

    def dist(self, u: int, w: int) -> int:
        pu, pw = self.paths[u], self.paths[w]
        common = 0
        for x, y in zip(pu, pw):
            if x != y:
                break
            common += 1
        return len(pu) + len(pw) - 2 * common

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as (parent, child) pairs."""
        return [(p, c) for c, p in enumerate(self.parent) if p is not None]

    def to_json(self) -> dict:
        return {
            "params": {"d0": self.params.d0, "d1": self.params.d1},
            "center": self.center.value,
            "center_parity": self.center_parity,
            "radius": self.radius,
            "vertices": [str(self.addr(v)) for v in range(len(self))],
        }


def parse_path(text: str) -> tuple[int, ...]:
    text = text.strip().strip("/")
    return tuple(int(t) for t in text.split("/")) if text else ()


def build_ball(
    params: TreeParams,
    center: CenterKind | str = CenterKind.VERTEX,
    radius: int = 1,
    center_parity: int = 0,
) -> Ball:
    """Complete ball of the given radius around a vertex or an edge."""
    center = CenterKind(center)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    ball = Ball(params, center, radius, center_parity % 2)

    def add(path, parity, parent, depth):
        vid = len(ball.paths)
        ball.paths.append(path)
        ball.parity.append(parity)
        ball.parent.append(parent)
        ball.children.append([])
        ball.depth.append(depth)
        ball.index[path] = vid
        if parent is not None:
            ball.children[parent].append(vid)
        return vid

    root = add((), ball.center_parity, None, 0)
    queue = [root]
    if center is CenterKind.EDGE:
        queue.append(add((0,), 1 - ball.center_parity, root, 0))
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if ball.depth[v] >= radius:
            continue
        deg = params.degree(ball.parity[v])
        n_children = deg if v == root else deg - 1
        start = len(ball.children[v])
        for i in range(start, n_children):
            queue.append(add(ball.paths[v] + (i,), 1 - ball.parity[v], v, ball.depth[v] + 1))
    # BFS order keeps ids sorted by depth, but `b` was inserted early: re-sort children
    for ch in ball.children:
        ch.sort(key=lambda c: ball.paths[c][-1])
    return ball


def distance(ball: Ball, u: VertexAddr | str, w: VertexAddr | str) -> int:
    return ball.dist(ball.vid(u), ball.vid(w))


def _ray_projection(ball: Ball, vid: int, ray: BoundaryRay) -> int:
    path = ball.paths[vid]
    k = 0
    while k < len(path) and path[k] == ray.choice(k):
        k += 1
    return k


def horocycle_delta(ball: Ball, w: VertexAddr | str, w2: VertexAddr | str, ray: BoundaryRay = BoundaryRay()) -> int:
    """Signed horocycle distance d(w, u) - d(w2, u), u the confluence toward the end."""
    a, b = ball.vid(w), ball.vid(w2)
    ka, kb = _ray_projection(ball, a, ray), _ray_projection(ball, b, ray)
    if ka != kb:
        k = max(ka, kb)
        conf_path = tuple(ray.choice(i) for i in range(k))
    else:
        pa, pb = ball.paths[a], ball.paths[b]
        n = 0
        while n < min(len(pa), len(pb)) and pa[n] == pb[n]:
            n += 1
        conf_path = pa[:n]
    if conf_path not in ball.index:
        raise InsufficientRadius("confluence vertex lies outside the ball")
    u = ball.index[conf_path]
    return ball.dist(a, u) - ball.dist(b, u)


@dataclass(frozen=True)
class BallAutomorphism:
    """Automorphism of a ball, stored as the image of each vertex id."""

    image: tuple[int, ...]

    def __call__(self, vid: int) -> int:
        return self.image[vid]

    def __mul__(self, other: BallAutomorphism) -> BallAutomorphism:
        # (g * h)(x) = g(h(x))
        img = self.image
        return BallAutomorphism(tuple(img[i] for i in other.image))

    def inverse(self) -> BallAutomorphism:
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return BallAutomorphism(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def to_json(self, ball: Ball) -> dict[str, str]:
        return {str(ball.addr(i)): str(ball.addr(j)) for i, j in enumerate(self.image)}

    @classmethod
    def from_json(cls, ball: Ball, mapping: dict[str, str]) -> BallAutomorphism:
        image = list(range(len(ball)))
        for src, dst in mapping.items():
            image[ball.vid(src)] = ball.vid(dst)
        g = cls(tuple(image))
        if not is_automorphism(ball, g):
            raise ValueError("mapping is not an automorphism of the ball")
        return g


def identity(ball: Ball) -> BallAutomorphism:
    return BallAutomorphism(tuple(range(len(ball))))


def is_automorphism(ball: Ball, g: BallAutomorphism, type_preserving: bool = False) -> bool:
    img = g.image
    if sorted(img) != list(range(len(ball))):
        return False
    edges = {frozenset(e) for e in ball.edges()}
    if any(frozenset((img[u], img[w])) not in edges for u, w in ball.edges()):
        return False
    if {img[c] for c in ball.center_ids} != set(ball.center_ids):
        return False
    if type_preserving and any(ball.parity[img[v]] != ball.parity[v] for v in range(len(ball))):
        return False
    return True


def _can_swap(ball: Ball) -> bool:
    return ball.center is CenterKind.EDGE and ball.params.d0 == ball.params.d1


def predicted_order(ball: Ball, type_preserving: bool = False) -> int:
    """Order of the centre-stabilising automorphism group, by the wreath-product formula."""
    order = 1
    for v in range(len(ball)):
        order *= math.factorial(len(ball.outward(v)))
    if _can_swap(ball) and not type_preserving:
        order *= 2
    return order


def enumerate_automorphisms(
    ball: Ball, type_preserving: bool = False, cap: int | None = None
) -> list[BallAutomorphism]:
    """All automorphisms of the ball stabilising its centre.

    An automorphism is the same thing as a choice, for every vertex ``x``, of a
    bijection between the outward children of ``x`` and those of its image;
    the enumeration walks that product.
    """
    cap = enumeration_cap() if cap is None else cap
    order = predicted_order(ball, type_preserving)
    if order > cap:
        raise CapExceeded(f"automorphism group has order {order}, above the cap {cap}")

    internal = [v for v in range(len(ball)) if ball.outward(v)]
    perms = [list(itertools.permutations(range(len(ball.outward(v))))) for v in internal]
    pos = {v: i for i, v in enumerate(internal)}
    centers = [(0, 1)] if ball.center is CenterKind.EDGE else [(0,)]
    if _can_swap(ball) and not type_preserving:
        centers.append((1, 0))

    # BFS order from the centre so parents are mapped before children
    order_ids = sorted(range(len(ball)), key=lambda v: (ball.depth[v], v))
    out = []
    n = len(ball)
    for cmap in centers:
        for choice in itertools.product(*perms):
            image = [0] * n
            for c, t in zip(ball.center_ids, cmap):
                image[c] = t
            for v in order_ids:
                kids = ball.outward(v)
                if not kids:
                    continue
                targets = ball.outward(image[v])
                pi = choice[pos[v]]
                for i, c in enumerate(kids):
                    image[c] = targets[pi[i]]
            out.append(BallAutomorphism(tuple(image)))
    return out


def pointwise_stabilizer(
    group: Iterable[BallAutomorphism], fixed: Iterable[int]
) -> list[BallAutomorphism]:
    fixed = list(fixed)
    return [g for g in group if all(g.image[v] == v for v in fixed)]


def vertices_within(ball: Ball, centers: Iterable[int], r: int) -> set[int]:
    """Vertices of the ball within distance ``r`` of any of ``centers``."""
    centers = list(centers)
    return {w for w in range(len(ball)) if min(ball.dist(c, w) for c in centers) <= r}
