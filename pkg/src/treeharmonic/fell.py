"""Finite combinatorial model of the dual of G near its spherical and special part.

The spherical stratum is a closed interval of parameters alpha.  Its two
ends are doubled: each end carries a second point that every sequence
converging to the end also converges to.  Cuspidal representations enter as
opaque isolated points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational

from .spherical import param_interval
from .tree import GroupKind


def _exact(alpha):
    if isinstance(alpha, (int, Rational)) and not isinstance(alpha, bool):
        return Fraction(alpha)
    f = float(alpha)
    return Fraction(f).limit_denominator(10**12) if f == f else f


class PointType(str, Enum):
    SPHERICAL = "spherical"
    EXCEPTIONAL_V = "pi_v"
    EXCEPTIONAL_VPRIME = "pi_v'"
    SPECIAL_PLUS = "sigma+"
    SPECIAL_MINUS = "sigma-"
    SPECIAL_SIGMA = "sigma"
    CUSPIDAL = "cuspidal"


@dataclass(frozen=True, order=True)
class DualPoint:
    type: PointType
    alpha: Fraction | None = None
    id: int | None = None

    def __str__(self):
        if self.type is PointType.SPHERICAL:
            return f"spherical({self.alpha})"
        if self.type is PointType.CUSPIDAL:
            return f"cuspidal({self.id})"
        return self.type.value

    @classmethod
    def spherical(cls, alpha) -> DualPoint:
        return cls(PointType.SPHERICAL, _exact(alpha))

    @classmethod
    def cuspidal(cls, i: int) -> DualPoint:
        return cls(PointType.CUSPIDAL, id=i)


TRIVIAL = DualPoint.spherical(1)
SIGMA_PLUS = DualPoint(PointType.SPECIAL_PLUS)
SIGMA_MINUS = DualPoint(PointType.SPECIAL_MINUS)
SIGMA = DualPoint(PointType.SPECIAL_SIGMA)
PI_V = DualPoint(PointType.EXCEPTIONAL_V)
PI_VPRIME = DualPoint(PointType.EXCEPTIONAL_VPRIME)


def _end_points(kind: GroupKind) -> dict[Fraction, frozenset[DualPoint]]:
    """Limit set of a sequence of interior spherical points tending to each end."""
    lo = param_interval(kind).lo
    if kind.transitive:
        return {
            Fraction(-1): frozenset({DualPoint.spherical(-1), SIGMA_PLUS}),
            Fraction(1): frozenset({TRIVIAL, SIGMA_MINUS}),
        }
    # the lower end of the two-orbit interval is pi_v itself
    return {lo: frozenset({PI_V, PI_VPRIME}), Fraction(1): frozenset({TRIVIAL, SIGMA})}


def limit_set(kind: GroupKind, alpha_star) -> frozenset[DualPoint]:
    """All limits of pi_{alpha_n} for interior alpha_n -> alpha_star."""
    alpha_star = _exact(alpha_star)
    interval = param_interval(kind)
    if alpha_star not in interval:
        raise ValueError(f"alpha={alpha_star} outside [{interval.lo}, {interval.hi}]")
    ends = _end_points(kind)
    if alpha_star in ends:
        return ends[alpha_star]
    return frozenset({DualPoint.spherical(alpha_star)})


def non_hausdorff_pairs(kind: GroupKind) -> list[tuple[DualPoint, DualPoint]]:
    return [tuple(sorted(pair)) for _, pair in sorted(_end_points(kind).items())]


def cortex(kind: GroupKind) -> frozenset[DualPoint]:
    """Points not separated from the trivial representation."""
    return frozenset({TRIVIAL, SIGMA_MINUS if kind.transitive else SIGMA})


@dataclass
class DualModel:
    kind: GroupKind
    cuspidal_ids: list[int]
    points: list[DualPoint]
    closure_relation: dict[DualPoint, frozenset[DualPoint]]
    approached_by_interior: dict[DualPoint, bool]
    cuspidal_integrable: bool = True
    notes: list[str] = field(default_factory=list)

    def is_isolated(self, p: DualPoint) -> bool:
        return not self.approached_by_interior[p]

    def is_clopen(self, p: DualPoint) -> bool:
        # closed by T1; open iff no sequence of other points converges to it
        return self.closure_relation[p] == frozenset({p}) and self.is_isolated(p)

    def dense_open(self) -> list[DualPoint]:
        """Point part of the dense locally compact open subset (plus the interval interior)."""
        removed = {SIGMA_PLUS, SIGMA_MINUS} if self.kind.transitive else {SIGMA, PI_V, PI_VPRIME}
        return [p for p in self.points if p not in removed]

    def to_json(self) -> dict:
        interval = param_interval(self.kind)
        return {
            "kind": self.kind.label(),
            "spherical_interval": interval.to_json(),
            "cuspidal_assumption": "integrable and square-integrable" if self.cuspidal_integrable else "not assumed",
            "points": [str(p) for p in self.points],
            "closure_relation": {str(p): sorted(str(q) for q in c) for p, c in self.closure_relation.items()},
            "non_hausdorff_pairs": [[str(a), str(b)] for a, b in non_hausdorff_pairs(self.kind)],
            "cortex": sorted(str(p) for p in cortex(self.kind)),
            "dense_open": [str(p) for p in self.dense_open()],
            "isolated": [str(p) for p in self.points if self.is_isolated(p)],
            "notes": self.notes,
        }


def dual_model(kind: GroupKind, cuspidal_count: int = 0, cuspidal_integrable: bool = True) -> DualModel:
    """Model with the interval's distinguished points and ``cuspidal_count`` cuspidal ones.

    Isolation of the cuspidal points rests on every cuspidal representation
    being integrable and square-integrable; with ``cuspidal_integrable`` off
    the model still lists them but does not declare them isolated.
    """
    if cuspidal_count < 0:
        raise ValueError("cuspidal_count must be non-negative")
    ends = _end_points(kind)
    pts = sorted({p for pair in ends.values() for p in pair})
    cusp = [DualPoint.cuspidal(i) for i in range(cuspidal_count)]
    points = pts + cusp
    closure = {p: frozenset({p}) for p in points}
    approached = {p: True for p in pts}
    approached.update({c: not cuspidal_integrable for c in cusp})
    notes = []
    if not cuspidal_integrable:
        notes.append("cuspidal isolation not asserted without the integrability assumption")
    return DualModel(kind, list(range(cuspidal_count)), points, closure, approached, cuspidal_integrable, notes)
