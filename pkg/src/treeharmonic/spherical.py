"""Spherical functions: recursions, radial kernels on balls, principal series."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .tree import Ball, CenterKind, GroupKind

__all__ = [
    "GroupKind",
    "Interval",
    "SphericalParam",
    "param_interval",
    "spherical_sequence",
    "radial_gram",
    "psd_check",
    "principal_param",
    "principal_interval",
    "PSD_TOL",
]

PSD_TOL = 1e-9


@dataclass(frozen=True)
class Interval:
    lo: Fraction | float
    hi: Fraction | float

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> list[str]:
        return [str(self.lo), str(self.hi)]


@dataclass(frozen=True)
class SphericalParam:
    kind: GroupKind
    alpha: Fraction | float

    def is_classified(self) -> bool:
        return self.alpha in param_interval(self.kind)


def param_interval(kind: GroupKind) -> Interval:
    if kind.transitive:
        return Interval(Fraction(-1), Fraction(1))
    return Interval(Fraction(-1, kind.dprime - 1), Fraction(1))


def _recursion_coeffs(kind: GroupKind, alpha):
    d = kind.d
    if kind.transitive:
        return Fraction(d, d - 1) * alpha, Fraction(1, d - 1)
    dp = kind.dprime
    a = Fraction(d, d - 1) * alpha - Fraction(dp - 2, (dp - 1) * (d - 1))
    return a, Fraction(1, (dp - 1) * (d - 1))


def spherical_sequence(kind: GroupKind, alpha, N: int) -> list:
    """phi(tau^0), ..., phi(tau^N) for the spherical function with phi(tau) = alpha.

    Rational input stays exact; floats are carried through as floats.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if isinstance(alpha, (int, Rational)) and not isinstance(alpha, bool):
        alpha = Fraction(alpha)
        one = Fraction(1)
    else:
        alpha = float(alpha)
        one = 1.0
    a, b = _recursion_coeffs(kind, alpha)
    if isinstance(alpha, float):
        a, b = float(a), float(b)
    seq = [one, alpha]
    for _ in range(2, N + 1):
        seq.append(a * seq[-1] - b * seq[-2])
    return seq[: N + 1]


def radial_gram(ball: Ball, kind: GroupKind, alpha) -> np.ndarray:
    """Matrix (phi(d(x, y) / step))_{x, y} over the centre's type orbit in the ball."""
    if ball.center is not CenterKind.VERTEX:
        raise ValueError("radial kernels are built on vertex-centred balls")
    step = kind.step
    if kind.transitive:
        pts = list(range(len(ball)))
    else:
        pts = [v for v in range(len(ball)) if ball.parity[v] == ball.center_parity]
    phi = [float(x) for x in spherical_sequence(kind, alpha, (2 * ball.radius) // step)]
    n = len(pts)
    M = np.empty((n, n))
    for i, x in enumerate(pts):
        for j in range(i, n):
            dist = ball.dist(x, pts[j])
            if dist % step:
                raise AssertionError(f"odd distance {dist} between same-type vertices")
            M[i, j] = M[j, i] = phi[dist // step]
    return M


def psd_check(matrix, tol: float = PSD_TOL) -> tuple[bool, float]:
    """(smallest eigenvalue >= -tol, smallest eigenvalue)."""
    M = np.asarray(matrix, dtype=float)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(M, M.T, atol=1e-12):
        raise ValueError("matrix must be symmetric")
    lam = float(np.linalg.eigvalsh((M + M.T) / 2)[0]) if M.size else 0.0
    return lam >= -tol, lam


def principal_param(kind: GroupKind, s: complex) -> float:
    """alpha of the principal-series representation with parameter s, |s| = 1."""
    s = complex(s)
    if abs(abs(s) - 1) > 1e-12:
        raise ValueError(f"|s| must be 1, got {abs(s)!r}")
    d = kind.d
    if kind.transitive:
        return 2 * math.sqrt(d - 1) / d * s.real
    dp = kind.dprime
    return 2 * math.sqrt(d - 1) / (d * math.sqrt(dp - 1)) * (s * s).real + (dp - 2) / (d * (dp - 1))


def principal_interval(kind: GroupKind) -> Interval:
    d = kind.d
    if kind.transitive:
        r = 2 * math.sqrt(d - 1) / d
        return Interval(-r, r)
    dp = kind.dprime
    c = 2 * math.sqrt(d - 1) / (d * math.sqrt(dp - 1))
    shift = (dp - 2) / (d * (dp - 1))
    return Interval(shift - c, shift + c)


def unit_roots(count: int) -> list[complex]:
    return [cmath.exp(2j * math.pi * k / count) for k in range(count)]
