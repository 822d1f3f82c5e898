"""Special functions on edge double cosets and their square-integrability.

Tables are normalised by phi(1) = 1.  Keys follow the coset families of
``haar``: ``tau_n`` and ``tau_n_h`` (vertex-transitive), ``tau_n``,
``tau_m_kv`` and ``tau_negm_kv`` (two orbits; ``tau_negm_kv`` at m stands for
the coset of tau^-(m-1) k_v).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .haar import CosetFamily, CosetTag, edge_coset_measure
from .tree import GroupKind, TreeParams


class SpecialKind(str, Enum):
    VT_PLUS = "vt_plus"  # sigma^{+1}, phi(h) = +1
    VT_MINUS = "vt_minus"  # sigma^{-1}, phi(h) = -1
    TWO_ORBIT_SIGMA = "two_orbit_sigma"

    @property
    def transitive(self) -> bool:
        return self is not SpecialKind.TWO_ORBIT_SIGMA


@dataclass
class SpecialTable:
    kind: SpecialKind
    params: TreeParams
    N: int
    values: dict[str, dict[int, Fraction]] = field(default_factory=dict)
    phi1: Fraction = Fraction(1)

    def __getitem__(self, key: tuple[str, int]) -> Fraction:
        fam, n = key
        return self.values[fam][n]

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "d0": self.params.d0,
            "d1": self.params.d1,
            "N": self.N,
            "phi1": str(self.phi1),
            "families": {
                fam: {str(n): str(v) for n, v in sorted(vals.items())}
                for fam, vals in sorted(self.values.items())
            },
        }


def _group_kind(kind: SpecialKind, params: TreeParams) -> GroupKind:
    if kind.transitive:
        if params.d0 != params.d1:
            raise ValueError("vertex-transitive special kinds need d0 = d1")
        return GroupKind.vertex_transitive(params.d0)
    return GroupKind.two_orbits(params.d0, params.d1)


def special_sequence(kind: SpecialKind, params: TreeParams, N: int) -> SpecialTable:
    if N < 1:
        raise ValueError("N must be >= 1")
    kind = SpecialKind(kind)
    _group_kind(kind, params)
    table = SpecialTable(kind, params, N)
    if kind.transitive:
        q = Fraction(-1, params.d0 - 1)
        eps = Fraction(1 if kind is SpecialKind.VT_PLUS else -1)
        h = (Fraction(1), eps)  # phi(h_0), phi(h_1)
        table.values["tau_n"] = {n: q ** abs(n) * h[n % 2] for n in range(-N, N + 1)}
        table.values["tau_n_h"] = {n: q ** abs(n) * h[(n + 1) % 2] for n in range(-N, N + 1)}
        return table
    d, dp = params.d0, params.d1
    p = Fraction(1, (d - 1) * (dp - 1))
    table.values["tau_n"] = {n: p ** abs(n) for n in range(-N, N + 1)}
    table.values["tau_m_kv"] = {m: -Fraction(1, (d - 1) ** (m - 1) * (dp - 1) ** m) for m in range(1, N + 1)}
    table.values["tau_negm_kv"] = {m: -Fraction(1, (d - 1) ** m * (dp - 1) ** (m - 1)) for m in range(1, N + 1)}
    return table


@dataclass
class RelationReport:
    ok: bool
    checked: int
    first_violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _relations(table: SpecialTable):
    """Yield (n, name, lhs, rhs) for the four annihilation recurrences."""
    v = table.values
    tn = v["tau_n"]
    if table.kind.transitive:
        q = Fraction(1, table.params.d0 - 1)
        th = v["tau_n_h"]
        for n in range(1, table.N + 1):
            yield n, "phi(tau^n) = -q phi(tau^(n-1) h)", tn[n], -q * th[n - 1]
            yield n, "phi(tau^-n h) = -q phi(tau^-(n-1))", th[-n], -q * tn[-(n - 1)]
            yield n, "phi(tau^n h) = -q phi(tau^(n-1))", th[n], -q * tn[n - 1]
            yield n, "phi(tau^-n) = -q phi(tau^-(n-1) h)", tn[-n], -q * th[-(n - 1)]
        return
    d, dp = table.params.d0, table.params.d1
    p = Fraction(1, (d - 1) * (dp - 1))
    kv, kn = v["tau_m_kv"], v["tau_negm_kv"]
    for n in range(1, table.N + 1):
        yield n, "phi(tau^n) = phi(tau^(n-1)) / p", tn[n], p * tn[n - 1]
        yield n, "phi(tau^-n) = phi(tau^-(n-1)) / p", tn[-n], p * tn[-(n - 1)]
        yield n, "phi(tau^n k_v) = -phi(tau^(n-1)) / (d'-1)", kv[n], -tn[n - 1] / (dp - 1)
        yield n, "phi(tau^-(n-1) k_v) = -(d'-1) phi(tau^-n)", kn[n], -(dp - 1) * tn[-n]


def verify_defining_relations(
    kind: SpecialKind, params: TreeParams, N: int, table: SpecialTable | None = None
) -> RelationReport:
    """Check the four recurrences exactly for 1 <= n <= N.

    ``table`` may be supplied (e.g. a perturbed one); otherwise it is computed.
    """
    if table is None:
        table = special_sequence(kind, params, N)
    count = 0
    for n, name, lhs, rhs in _relations(table):
        if n > N:
            break
        count += 1
        if lhs != rhs:
            return RelationReport(False, count, f"n={n}: {name} ({lhs} != {rhs})")
    return RelationReport(True, count)


_TAGS = {
    "tau_n": CosetTag.EDGE,
    "tau_n_h": CosetTag.EDGE_INVERSION,
    "tau_m_kv": CosetTag.EDGE_KV,
    "tau_negm_kv": CosetTag.EDGE_KV_NEG,
}


def l2_partial(kind: SpecialKind, params: TreeParams, N: int) -> Fraction:
    """Sum of |phi|^2 * mu over edge double cosets with |n| <= N and m <= N.

    mu(Fix(e)) = 1.  At N = 0 only the n = 0 cosets contribute.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    kind = SpecialKind(kind)
    gk = _group_kind(kind, params)
    table = special_sequence(kind, params, max(N, 1))
    total = Fraction(0)
    for fam, vals in table.values.items():
        for n, phi in vals.items():
            if fam in ("tau_m_kv", "tau_negm_kv"):
                if n > N:
                    continue
            elif abs(n) > N:
                continue
            mu = edge_coset_measure(CosetFamily(_TAGS[fam], n, gk)).value
            total += phi * phi * mu
    return total


def l2_closed_form(kind: SpecialKind, params: TreeParams) -> Fraction:
    """Limit of ``l2_partial`` as N grows, by summing the geometric series."""
    kind = SpecialKind(kind)
    _group_kind(kind, params)
    if kind.transitive:
        d = params.d0
        return Fraction(2 * d, d - 2)
    d, dp = params.d0, params.d1
    p = (d - 1) * (dp - 1)
    # tau^n over Z, then the two k_v families, each a series in 1/p
    return Fraction(p + 1, p - 1) + Fraction(p, p - 1) * (Fraction(1, dp - 1) + Fraction(1, d - 1))
