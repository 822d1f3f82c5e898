"""Legal colourings, local actions and sign conditions on finite balls.

Also the ball-level checks behind the generic filtration of the sign-condition
groups: depths of the filtration members, the factorisation conditions and
the independence property IP_k.

Modelling assumption: an automorphism of a ball that fixes a complete subtree
extends to the whole tree, so identities between pointwise stabilisers in the
ball group witness the corresponding identities in Aut(T).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .perm import Perm, compose, perm_sign
from .tree import (
    Ball,
    BallAutomorphism,
    CenterKind,
    InsufficientRadius,
    enumerate_automorphisms,
    pointwise_stabilizer,
    vertices_within,
)

THETA_PREFIX = (34, 35, 39, 45, 46, 51, 52, 55, 56, 58)


def theta_prefix() -> list[int]:
    """Ten smallest d >= 6 for which every 2-transitive subgroup of Sym(d) contains Alt(d)."""
    return list(THETA_PREFIX)


# --- colourings and local actions ----------------------------------------------


@dataclass(frozen=True)
class LegalColoring:
    """Colour of every ball vertex; ``by_colour[v][c-1]`` is the neighbour of v with colour c.

    ``by_colour`` is only filled for interior vertices.
    """

    ball: Ball
    color: tuple[int, ...]
    by_colour: dict[int, tuple[int, ...]]

    def check(self) -> bool:
        b = self.ball
        for v in range(len(b)):
            top = b.params.degree(1 - b.parity[v])
            if not 1 <= self.color[v] <= top:
                return False
            if b.is_interior(v):
                cols = sorted(self.color[w] for w in b.neighbours(v))
                if cols != list(range(1, b.params.degree(b.parity[v]) + 1)):
                    return False
        return True


def canonical_legal_coloring(ball: Ball) -> LegalColoring:
    """Root gets colour 1; children take the free colours in child order.

    For an edge-centred ball the central endpoints both get colour 1.
    """
    n = len(ball)
    color = [0] * n
    color[0] = 1
    order = sorted(range(n), key=lambda v: (ball.depth[v], ball.paths[v]))
    if ball.center is CenterKind.EDGE:
        order.remove(0)
        order.insert(0, 0)
    for v in order:
        p = ball.parent[v]
        taken = color[p] if p is not None else None
        free = (c for c in range(1, ball.params.degree(ball.parity[v]) + 1) if c != taken)
        for child in ball.children[v]:
            color[child] = next(free)
    by_colour = {}
    for v in range(n):
        if ball.is_interior(v):
            slots = [0] * ball.params.degree(ball.parity[v])
            for w in ball.neighbours(v):
                slots[color[w] - 1] = w
            by_colour[v] = tuple(slots)
    return LegalColoring(ball, tuple(color), by_colour)


def local_action(coloring: LegalColoring, g: BallAutomorphism, v: int) -> Perm:
    """sigma(g, v) as a 0-based one-line permutation: colour c-1 -> colour(g x_c) - 1."""
    if v not in coloring.by_colour or g.image[v] not in coloring.by_colour:
        raise InsufficientRadius(f"vertex {coloring.ball.addr(v)} is not interior")
    col = coloring.color
    return tuple(col[g.image[x]] - 1 for x in coloring.by_colour[v])


def sgn_over(coloring: LegalColoring, g: BallAutomorphism, S: Iterable[int]) -> int:
    s = 1
    for w in S:
        s *= perm_sign(local_action(coloring, g, w))
    return s


# --- sign-condition families -------------------------------------------------


class TriState(str, Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


class RaduFamily(str, Enum):
    AUT = "aut"  # G(0,0) = Aut(T)
    AUT_PLUS = "aut_plus"  # G+(0,0) = Aut(T)+
    XX = "XX"  # Sgn(g, S_X(v)) = 1 for all v
    XX_STAR = "XX*"  # Sgn(g, S_X(v)) independent of v
    XSTAR_XSTAR = "X*X*"  # Sgn(g, S_X(v)) independent of v within each type
    XSTAR_XSTAR_PRIME = "X*X*'"  # signs eps_t per type, eps_0 = eps_1 iff g type-preserving
    PLUS_Y0 = "+Y0"  # G+(Y0, 0)
    PLUS_Y1 = "+Y1"  # G+(0, Y1)
    PLUS_Y0_Y1 = "+Y0Y1"  # G+(Y0, Y1)
    PLUS_Y0STAR = "+Y0*"  # G+(Y0*, 0)
    PLUS_Y1STAR = "+Y1*"  # G+(0, Y1*)
    PLUS_Y0STAR_Y1STAR = "+Y0*Y1*"  # G+(Y0*, Y1*)


_TYPE_PRESERVING = {
    RaduFamily.AUT_PLUS,
    RaduFamily.PLUS_Y0,
    RaduFamily.PLUS_Y1,
    RaduFamily.PLUS_Y0_Y1,
    RaduFamily.PLUS_Y0STAR,
    RaduFamily.PLUS_Y1STAR,
    RaduFamily.PLUS_Y0STAR_Y1STAR,
}
_USES_X = {RaduFamily.XX, RaduFamily.XX_STAR, RaduFamily.XSTAR_XSTAR, RaduFamily.XSTAR_XSTAR_PRIME}
_USES_Y0 = {RaduFamily.PLUS_Y0, RaduFamily.PLUS_Y0_Y1, RaduFamily.PLUS_Y0STAR, RaduFamily.PLUS_Y0STAR_Y1STAR}
_USES_Y1 = {RaduFamily.PLUS_Y1, RaduFamily.PLUS_Y0_Y1, RaduFamily.PLUS_Y1STAR, RaduFamily.PLUS_Y0STAR_Y1STAR}
_STAR = {RaduFamily.PLUS_Y0STAR, RaduFamily.PLUS_Y1STAR, RaduFamily.PLUS_Y0STAR_Y1STAR}


def _max(Y) -> int:
    return max(Y) if Y else 0


@dataclass(frozen=True)
class RaduVariant:
    family: RaduFamily
    X: frozenset[int] = frozenset()
    Y0: frozenset[int] = frozenset()
    Y1: frozenset[int] = frozenset()
    eps0: int | None = None  # optional pinned signs for the X*X*' family
    eps1: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", RaduFamily(self.family))
        for name in ("X", "Y0", "Y1"):
            val = frozenset(getattr(self, name))
            if any(y < 0 for y in val):
                raise ValueError(f"{name} must be a set of naturals")
            object.__setattr__(self, name, val)
        fam = self.family
        if self.X and fam not in _USES_X:
            raise ValueError(f"family {fam.value} takes no X")
        if self.Y0 and fam not in _USES_Y0:
            raise ValueError(f"family {fam.value} takes no Y0")
        if self.Y1 and fam not in _USES_Y1:
            raise ValueError(f"family {fam.value} takes no Y1")
        if (self.eps0, self.eps1) != (None, None) and fam is not RaduFamily.XSTAR_XSTAR_PRIME:
            raise ValueError("signs eps_t only apply to the X*X*' family")
        if any(e not in (None, 1, -1) for e in (self.eps0, self.eps1)):
            raise ValueError("eps must be +1 or -1")

    @property
    def type_preserving(self) -> bool:
        return self.family in _TYPE_PRESERVING

    @property
    def t0(self) -> int:
        return _max(self.Y0) % 2

    @property
    def t1(self) -> int:
        return (1 + _max(self.Y1)) % 2

    def conditions(self) -> list[tuple[str, frozenset[int], tuple[int, ...], str]]:
        """(name, radii set, vertex types, mode) with mode 'one' or 'const'."""
        fam = self.family
        if fam in (RaduFamily.AUT, RaduFamily.AUT_PLUS):
            return []
        if fam is RaduFamily.XX:
            return [("X", self.X, (0, 1), "one")]
        if fam is RaduFamily.XX_STAR:
            return [("X", self.X, (0, 1), "const")]
        if fam in (RaduFamily.XSTAR_XSTAR, RaduFamily.XSTAR_XSTAR_PRIME):
            return [("X@0", self.X, (0,), "const"), ("X@1", self.X, (1,), "const")]
        mode = "const" if fam in _STAR else "one"
        out = []
        if fam in _USES_Y0:
            out.append(("Y0", self.Y0, (self.t0,), mode))
        if fam in _USES_Y1:
            out.append(("Y1", self.Y1, (self.t1,), mode))
        return out

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "X": sorted(self.X),
            "Y0": sorted(self.Y0),
            "Y1": sorted(self.Y1),
            "eps0": self.eps0,
            "eps1": self.eps1,
        }


def sphere_union(ball: Ball, v: int, Y: Iterable[int]) -> list[int]:
    """S_Y(v) restricted to the ball."""
    Y = set(Y)
    return [w for w in range(len(ball)) if ball.dist(v, w) in Y]


def checkable_centers(ball: Ball, Y: frozenset[int], types: tuple[int, ...]) -> list[int]:
    """Vertices of the given types whose whole S_Y(v) consists of interior vertices."""
    m = _max(Y)
    return [v for v in range(len(ball)) if ball.parity[v] in types and ball.depth[v] + m <= ball.radius - 1]


@dataclass
class MembershipReport:
    verdict: TriState
    conditions: dict[str, str] = field(default_factory=dict)
    signs: dict[str, dict[str, int]] = field(default_factory=dict)
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "conditions": self.conditions,
            "signs": self.signs,
            "reason": self.reason,
        }


def _is_type_preserving(ball: Ball, g: BallAutomorphism) -> bool:
    return all(ball.parity[g.image[v]] == ball.parity[v] for v in ball.center_ids)


def membership_report(
    coloring: LegalColoring,
    g: BallAutomorphism,
    variant: RaduVariant,
    centers: Iterable[int] | None = None,
) -> MembershipReport:
    """Per-condition verdicts of g against a sign-condition family.

    By default every centre whose conditioned sphere is interior is checked.
    With explicit ``centers`` a truncated sphere makes that condition
    undetermined.
    """
    ball = coloring.ball
    p = ball.params
    if p.d0 < 4 or p.d1 < 4:
        raise ValueError("sign-condition families need d0, d1 >= 4")
    tp = _is_type_preserving(ball, g)
    if variant.type_preserving and not tp:
        raise ValueError(f"family {variant.family.value} needs a type-preserving automorphism")
    report = MembershipReport(TriState.SATISFIED)
    undetermined = False
    per_type_sign: dict[int, int] = {}
    for name, Y, types, mode in variant.conditions():
        if not Y:
            report.conditions[name] = TriState.SATISFIED.value
            for t in types:
                per_type_sign[t] = 1
            continue
        m = _max(Y)
        if centers is None:
            cands = checkable_centers(ball, Y, types)
            truncated = False
        else:
            chosen = [c for c in centers if ball.parity[c] in types]
            cands = [c for c in chosen if ball.depth[c] + m <= ball.radius - 1]
            truncated = len(cands) < len(chosen)
        signs = {str(ball.addr(v)): sgn_over(coloring, g, sphere_union(ball, v, Y)) for v in cands}
        report.signs[name] = signs
        vals = set(signs.values())
        if mode == "one" and -1 in vals:
            bad = next(k for k, s in signs.items() if s == -1)
            report.conditions[name] = TriState.VIOLATED.value
            report.verdict = TriState.VIOLATED
            report.reason = report.reason or f"{name}: Sgn = -1 at vertex {bad!r}"
        elif mode == "const" and len(vals) > 1:
            report.conditions[name] = TriState.VIOLATED.value
            report.verdict = TriState.VIOLATED
            report.reason = report.reason or f"{name}: signs differ across centres"
        elif truncated or not cands:
            report.conditions[name] = TriState.UNDETERMINED.value
            undetermined = True
        else:
            report.conditions[name] = TriState.SATISFIED.value
        if len(vals) == 1 and len(types) == 1:
            per_type_sign[types[0]] = vals.pop()

    if variant.family is RaduFamily.XSTAR_XSTAR_PRIME and report.verdict is not TriState.VIOLATED:
        e0, e1 = per_type_sign.get(0), per_type_sign.get(1)
        pins = ((variant.eps0, e0, "eps0"), (variant.eps1, e1, "eps1"))
        for pin, seen, label in pins:
            if pin is not None and seen is not None and pin != seen:
                report.verdict = TriState.VIOLATED
                report.reason = f"{label}: observed {seen}, required {pin}"
        if report.verdict is not TriState.VIOLATED:
            if e0 is None or e1 is None:
                undetermined = True
                report.conditions["eps"] = TriState.UNDETERMINED.value
            elif (e0 == e1) != tp:
                report.verdict = TriState.VIOLATED
                report.conditions["eps"] = TriState.VIOLATED.value
                report.reason = f"eps0={e0}, eps1={e1} but type-preserving={tp}"
            else:
                report.conditions["eps"] = TriState.SATISFIED.value

    if report.verdict is not TriState.VIOLATED and undetermined:
        report.verdict = TriState.UNDETERMINED
        report.reason = report.reason or "a conditioned sphere leaves the ball interior"
    return report


def variant_membership(
    coloring: LegalColoring,
    g: BallAutomorphism,
    variant: RaduVariant,
    centers: Iterable[int] | None = None,
) -> TriState:
    return membership_report(coloring, g, variant, centers).verdict


# --- cocycle identity -----------------------------------------------------------


@dataclass
class CocycleReport:
    ok: bool
    vertices: int
    germ_pairs: int
    group_pairs: int
    counterexample: str | None = None


def cocycle_check(
    coloring: LegalColoring, group: list[BallAutomorphism] | None = None
) -> CocycleReport:
    """sigma(gh, v) = sigma(g, hv) o sigma(h, v) for every pair of the group and interior v.

    Both sides only see h on B(v, 1) and g on B(hv, 1), so the check runs over
    the distinct restrictions ("germs") of the group to 1-balls, which covers
    all |G|^2 pairs.
    """
    ball = coloring.ball
    if group is None:
        group = enumerate_automorphisms(ball)
    interior = sorted(coloring.by_colour)
    star = {v: (v,) + coloring.by_colour[v] for v in interior}
    germs: dict[int, set[tuple[int, ...]]] = {v: set() for v in interior}
    for g in group:
        for v in interior:
            germs[v].add(tuple(g.image[x] for x in star[v]))
    pairs = 0
    col = coloring.color
    for v in interior:
        for hg in germs[v]:
            hv = hg[0]
            h_pos = {x: i for i, x in enumerate(star[v])}
            sig_h = tuple(col[hg[h_pos[x]]] - 1 for x in coloring.by_colour[v])
            for gg in germs[hv]:
                g_of = dict(zip(star[hv], gg))
                sig_g = tuple(col[g_of[x]] - 1 for x in coloring.by_colour[hv])
                # gh on the neighbours of v, listed by colour
                sig_gh = tuple(col[g_of[hg[h_pos[x]]]] - 1 for x in coloring.by_colour[v])
                pairs += 1
                if sig_gh != compose(sig_g, sig_h):
                    return CocycleReport(False, len(interior), pairs, len(group) ** 2, f"vertex {ball.addr(v)}")
    return CocycleReport(True, len(interior), pairs, len(group) ** 2)


# --- generic filtration and factorisation ---------------------------------------


class Shape(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True)
class GenericSubtree:
    shape: Shape
    r: int

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        if self.r < 0 or (self.shape is Shape.VERTEX and self.r < 1):
            raise ValueError("vertex balls need r >= 1, edge balls r >= 0")


def filtration_depth(subtree: GenericSubtree) -> int:
    return 2 * subtree.r if subtree.shape is Shape.EDGE else 2 * subtree.r - 1


def subtree_at_depth(depth: int) -> GenericSubtree:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth % 2 == 0:
        return GenericSubtree(Shape.EDGE, depth // 2)
    return GenericSubtree(Shape.VERTEX, (depth + 1) // 2)


@dataclass(frozen=True)
class Placement:
    subtree: GenericSubtree
    center: tuple[int, ...]  # one vertex, or the two ends of an edge

    def __post_init__(self):
        want = 1 if self.subtree.shape is Shape.VERTEX else 2
        if len(self.center) != want:
            raise ValueError(f"{self.subtree.shape.value} placement needs {want} centre vertices")

    def vertices(self, ball: Ball) -> set[int]:
        if len(self.center) == 2 and ball.dist(*self.center) != 1:
            raise ValueError("edge placement endpoints are not adjacent")
        if max(ball.depth[c] for c in self.center) + self.subtree.r > ball.radius:
            raise InsufficientRadius(f"placement {self.describe(ball)} leaves the ball")
        return vertices_within(ball, self.center, self.subtree.r)

    def fits(self, ball: Ball) -> bool:
        return max(ball.depth[c] for c in self.center) + self.subtree.r <= ball.radius

    def describe(self, ball: Ball) -> str:
        c = ",".join(repr(str(ball.addr(v))) for v in self.center)
        if self.subtree.shape is Shape.VERTEX:
            return f"B(v={c}, {self.subtree.r})"
        return f"B(e={{{c}}}, {self.subtree.r})"


def placements(ball: Ball, subtree: GenericSubtree) -> list[Placement]:
    """All placements of the subtree inside the ball, in address order."""
    if subtree.shape is Shape.VERTEX:
        cands = [Placement(subtree, (v,)) for v in sorted(range(len(ball)), key=lambda v: ball.paths[v])]
    else:
        es = sorted(ball.edges(), key=lambda e: (ball.paths[e[0]], ball.paths[e[1]]))
        cands = [Placement(subtree, e) for e in es]
    return [p for p in cands if p.fits(ball)]


def _fix(group, verts) -> frozenset[tuple[int, ...]]:
    return frozenset(g.image for g in pointwise_stabilizer(group, verts))


def _product(A: Iterable[tuple[int, ...]], B: Iterable[tuple[int, ...]]) -> set[tuple[int, ...]]:
    B = list(B)
    return {tuple(a[i] for i in b) for a in A for b in B}


@dataclass
class FactorizationResult:
    found: bool
    witness: Placement | None
    witness_text: str | None
    candidates_tried: int
    depth: int

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "witness": self.witness_text,
            "candidates_tried": self.candidates_tried,
            "depth": self.depth,
        }


def check_factorization_i(
    ball: Ball,
    U: Placement,
    V: Placement,
    group: list[BallAutomorphism] | None = None,
) -> FactorizationResult:
    """Search a depth l-1 placement W with Fix(U) <= Fix(W) <= Fix(V) Fix(U)."""
    if group is None:
        group = enumerate_automorphisms(ball)
    l = filtration_depth(U.subtree)
    if l < 1:
        raise ValueError("U must have depth >= 1")
    fU = _fix(group, U.vertices(ball))
    fV = _fix(group, V.vertices(ball))
    if fV <= fU:
        raise ValueError("Fix(V) is contained in Fix(U); nothing to factorise")
    VU = _product(fV, fU)
    tried = 0
    for W in placements(ball, subtree_at_depth(l - 1)):
        tried += 1
        fW = _fix(group, W.vertices(ball))
        if fU <= fW and fW <= VU:
            return FactorizationResult(True, W, W.describe(ball), tried, l)
    return FactorizationResult(False, None, None, tried, l)


def _normalises(W: Iterable[tuple[int, ...]], U: frozenset[tuple[int, ...]]) -> bool:
    for w in W:
        winv = [0] * len(w)
        for i, j in enumerate(w):
            winv[j] = i
        for u in U:
            # w^-1 u w
            if tuple(winv[u[w[i]]] for i in range(len(w))) not in U:
                return False
    return True


def check_factorization_plus(
    ball: Ball,
    U: Placement,
    V: Placement,
    group: list[BallAutomorphism] | None = None,
) -> tuple[FactorizationResult, bool]:
    """Condition (i) plus: every depth l-1 W above U normalises Fix(U)."""
    if group is None:
        group = enumerate_automorphisms(ball)
    res = check_factorization_i(ball, U, V, group)
    fU = _fix(group, U.vertices(ball))
    plus = True
    for W in placements(ball, subtree_at_depth(res.depth - 1)):
        fW = _fix(group, W.vertices(ball))
        if fU <= fW and not _normalises(fW, fU):
            plus = False
            break
    return res, plus


def half_tree(ball: Ball, x: int, y: int) -> set[int]:
    """Vertices of the ball closer to x than to y, for an edge (x, y)."""
    return {w for w in range(len(ball)) if ball.dist(w, x) < ball.dist(w, y)}


@dataclass
class IPkReport:
    holds: bool
    k: int
    fix_order: int
    left_order: int
    right_order: int
    product_size: int


def check_ipk(
    ball: Ball,
    k: int,
    e: tuple[int, int],
    group: list[BallAutomorphism] | None = None,
) -> IPkReport:
    """Fix(e^(k-1)) = [Fix(T_e) cap Fix(e^(k-1))] [Fix(T_ebar) cap Fix(e^(k-1))] on the ball."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x, y = e
    if ball.dist(x, y) != 1:
        raise ValueError("e is not an edge")
    if max(ball.depth[x], ball.depth[y]) + (k - 1) + 1 > ball.radius:
        raise InsufficientRadius(f"e^({k - 1}) needs a margin of 1 inside the ball")
    if group is None:
        group = enumerate_automorphisms(ball)
    core = vertices_within(ball, (x, y), k - 1)
    F = pointwise_stabilizer(group, core)
    Fset = frozenset(g.image for g in F)
    left = _fix(F, half_tree(ball, x, y))
    right = _fix(F, half_tree(ball, y, x))
    prod = _product(left, right)
    return IPkReport(prod == Fset, k, len(Fset), len(left), len(right), len(prod))
