"""Restriction and induction of spherical parameters between G and G+.

G is vertex-transitive on a d-regular tree and G+ its type-preserving
subgroup of index 2.  Also the change of reference vertex for two-orbit
groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .tree import GroupKind
from .spherical import param_interval


@dataclass(frozen=True)
class RestrictResult:
    gamma: Fraction | float | None  # None for the exceptional pair

    @property
    def exceptional_pair(self) -> bool:
        return self.gamma is None

    def to_json(self) -> dict:
        if self.exceptional_pair:
            return {"type": "exceptional_pair", "points": ["pi_v", "pi_v'"]}
        return {"type": "single", "gamma": str(self.gamma)}


@dataclass(frozen=True)
class InduceResult:
    alpha_plus: Fraction | float
    exact: bool
    exceptional: bool = False  # induced from pi_v, single image alpha = 0

    @property
    def alpha_minus(self):
        return -self.alpha_plus

    @property
    def alphas(self) -> tuple:
        if self.exceptional:
            return (self.alpha_plus,)
        return (self.alpha_minus, self.alpha_plus)

    def to_json(self) -> dict:
        if self.exceptional:
            return {"type": "exceptional_image", "alpha": str(self.alpha_plus), "exact": self.exact}
        return {
            "type": "pair",
            "alpha_minus": str(self.alpha_minus),
            "alpha_plus": str(self.alpha_plus),
            "exact": self.exact,
        }


def _as_number(x):
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    return float(x)


def _check_degree(d: int):
    if d < 3:
        raise ValueError("degree must be >= 3")


def restrict_to_plus(d: int, alpha) -> RestrictResult:
    _check_degree(d)
    alpha = _as_number(alpha)
    if not -1 <= alpha <= 1:
        raise ValueError(f"alpha={alpha} outside [-1, 1]")
    if alpha == 0:
        return RestrictResult(None)
    return RestrictResult((d * alpha * alpha - 1) / (d - 1))


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Square root of a non-negative rational if it is rational."""
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def induce_from_plus(d: int, gamma) -> InduceResult:
    _check_degree(d)
    gamma = _as_number(gamma)
    lo = Fraction(-1, d - 1)
    if not lo <= gamma <= 1:
        raise ValueError(f"gamma={gamma} outside [{lo}, 1]")
    if gamma == lo:
        return InduceResult(Fraction(0), exact=True, exceptional=True)
    radicand = ((d - 1) * gamma + 1) / d
    if isinstance(radicand, Fraction):
        root = exact_sqrt(radicand)
        if root is not None:
            return InduceResult(root, exact=True)
    return InduceResult(math.sqrt(float(radicand)), exact=False)


def base_change_map(d: int, dprime: int) -> tuple[Fraction, Fraction]:
    """Coefficients (a, b) of the affine map alpha_v -> a * alpha_v + b."""
    _check_degree(d)
    _check_degree(dprime)
    return Fraction(d * (dprime - 1), dprime * (d - 1)), Fraction(d - dprime, dprime * (d - 1))


def apply_base_change(d: int, dprime: int, alpha):
    """The affine map itself, defined on the whole closed interval."""
    a, b = base_change_map(d, dprime)
    alpha = _as_number(alpha)
    if isinstance(alpha, float):
        return float(a) * alpha + float(b)
    return a * alpha + b


def base_change(d: int, dprime: int, alpha_v):
    """Parameter at the neighbouring vertex type of the same representation.

    The exceptional endpoint -1/(d'-1) is rejected: pi_v has no vector fixed
    by the other vertex stabiliser, so it has no parameter there.
    """
    alpha_v = _as_number(alpha_v)
    interval = param_interval(GroupKind.two_orbits(d, dprime))
    if alpha_v == interval.lo:
        raise ValueError("the exceptional representation has no parameter at the other vertex type")
    if not interval.lo < alpha_v <= interval.hi:
        raise ValueError(f"alpha={alpha_v} outside ({interval.lo}, 1]")
    return apply_base_change(d, dprime, alpha_v)


SPECIAL_DYNAMICS = {
    "Res": {"sigma+": ["sigma"], "sigma-": ["sigma"]},
    "Ind": {"sigma": ["sigma+", "sigma-"]},
}


def special_dynamics(d: int) -> dict:
    _check_degree(d)
    return {op: {k: list(v) for k, v in rows.items()} for op, rows in SPECIAL_DYNAMICS.items()}
