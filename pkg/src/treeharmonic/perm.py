"""Small permutation groups by materialised element sets.

A permutation of degree n is a tuple ``p`` with ``p[i]`` the image of ``i``
(0-based).  Cycle notation is 1-based, e.g. ``"(1 2)(3 4)"``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .tree import CapExceeded

Perm = tuple[int, ...]
DEFAULT_GROUP_CAP = 10**5
ALT_DEGREE_CAP = 8


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def parse_cycles(text: str, degree: int) -> Perm:
    img = list(range(degree))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(x) - 1 for x in cyc.replace(",", " ").split()]
        if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({cyc}) for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"cannot parse cycles from {text!r}")
    return tuple(img)


def to_cycles(p: Perm) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def perm_sign(p: Perm) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        length, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def close_generators(gens, degree: int | None = None, cap: int = DEFAULT_GROUP_CAP) -> frozenset[Perm]:
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree needed when there are no generators")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators must share one degree")
    e = identity_perm(degree)
    elements = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elements:
                    elements.add(y)
                    if len(elements) > cap:
                        raise CapExceeded(f"group exceeds {cap} elements")
                    nxt.append(y)
        frontier = nxt
    return frozenset(elements)


@dataclass
class PermGroup:
    degree: int
    generators: list[Perm]
    cap: int = DEFAULT_GROUP_CAP
    _elements: frozenset[Perm] | None = field(default=None, repr=False)

    @classmethod
    def from_cycles(cls, degree: int, cycles: list[str], cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
        return cls(degree, [parse_cycles(c, degree) for c in cycles], cap)

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        gens = [identity_perm(n)]
        if n >= 2:
            gens = [parse_cycles("(1 2)", n), tuple(list(range(1, n)) + [0])]
        return cls(n, gens)

    @classmethod
    def alternating(cls, n: int) -> PermGroup:
        if n < 3:
            return cls(n, [identity_perm(n)])
        return cls(n, [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)])

    @classmethod
    def cyclic(cls, n: int) -> PermGroup:
        return cls(n, [tuple(list(range(1, n)) + [0])])

    @classmethod
    def dihedral(cls, n: int) -> PermGroup:
        """Symmetries of an n-gon, order 2n."""
        return cls(n, [tuple(list(range(1, n)) + [0]), tuple((-i) % n for i in range(n))])

    @property
    def elements(self) -> frozenset[Perm]:
        if self._elements is None:
            self._elements = close_generators(self.generators, self.degree, self.cap)
        return self._elements

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements


def orbit_count_on_pairs(G: PermGroup) -> int:
    """Orbits of G on ordered pairs X x X (diagonal included)."""
    if G.degree < 2:
        raise ValueError("degree must be >= 2")
    n = G.degree
    seen, count = set(), 0
    for pair in itertools.product(range(n), repeat=2):
        if pair in seen:
            continue
        count += 1
        seen |= {(g[pair[0]], g[pair[1]]) for g in G.elements}
    return count


def is_two_transitive(G: PermGroup) -> bool:
    if G.degree < 2:
        raise ValueError("degree must be >= 2")
    orbit = {(g[0], g[1]) for g in G.elements}
    return len(orbit) == G.degree * (G.degree - 1)


def conjugacy_class_count(G: PermGroup) -> int:
    elems = G.elements
    seen, count = set(), 0
    for x in elems:
        if x in seen:
            continue
        count += 1
        seen |= {compose(compose(g, x), inverse(g)) for g in elems}
    return count


def standard_rep_exists_2trans(G: PermGroup) -> bool:
    """Whether G has an irreducible representation with no point-stabiliser-fixed vector.

    For 2-transitive G the permutation representation splits into exactly
    two irreducibles, and these are the only ones with a stabiliser-fixed
    vector, so the answer is whether G has more than two classes.
    """
    if not is_two_transitive(G):
        raise ValueError("group is not 2-transitive")
    return conjugacy_class_count(G) > 2


def contains_alternating(G: PermGroup) -> bool:
    n = G.degree
    if n > ALT_DEGREE_CAP:
        raise ValueError(f"degree {n} above the cap {ALT_DEGREE_CAP}")
    if n < 3:
        return True
    # the 3-cycles (1 2 k) generate Alt(n)
    return all(parse_cycles(f"(1 2 {k})", n) in G.elements for k in range(3, n + 1))
