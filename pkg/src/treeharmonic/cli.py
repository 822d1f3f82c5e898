"""Command-line front end.

Every command prints either CSV or a JSON envelope carrying ``schema_version``.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import dynamics, fell, haar, perm, radu, special, spherical
from .tree import (
    BallAutomorphism,
    CapExceeded,
    CenterKind,
    GroupKind,
    InsufficientRadius,
    TreeParams,
    build_ball,
    enumerate_automorphisms,
)

SCHEMA_VERSION = "1.0"


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_set(text: str) -> frozenset[int]:
    if not text.strip():
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated naturals, got {text!r}") from None


def _kind(args) -> GroupKind:
    if args.kind == "vt":
        return GroupKind.vertex_transitive(args.d)
    if args.dprime is None:
        raise UsageError("--dprime is required for --kind two-orbit")
    return GroupKind.two_orbits(args.d, args.dprime)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    return x


def _emit(command: str, result, fmt: str, rows: list[list] | None = None, header: list[str] | None = None) -> str:
    if fmt == "csv":
        if rows is None:
            raise UsageError(f"{command} has no CSV form; use --format json")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    env = {"schema_version": SCHEMA_VERSION, "command": command, "result": _jsonable(result)}
    return json.dumps(env, indent=2, sort_keys=True) + "\n"


# --- commands -----------------------------------------------------------------


def cmd_spherical(args) -> str:
    kind = _kind(args)
    seq = spherical.spherical_sequence(kind, args.alpha, args.n)
    rows = [[n, v.numerator, v.denominator] for n, v in enumerate(seq)]
    result = {
        "kind": kind.label(),
        "alpha": args.alpha,
        "classified": spherical.SphericalParam(kind, args.alpha).is_classified(),
        "interval": spherical.param_interval(kind).to_json(),
        "phi": [str(v) for v in seq],
    }
    return _emit("spherical", result, args.format, rows, ["n", "phi_num", "phi_den"])


_SPECIAL_KINDS = {"vt-plus": "vt_plus", "vt-minus": "vt_minus", "two-orbit": "two_orbit_sigma"}


def cmd_special(args) -> str:
    sk = special.SpecialKind(_SPECIAL_KINDS[args.kind])
    if sk.transitive:
        params = TreeParams(args.d, args.d, transitive=True)
    else:
        params = TreeParams(args.d, args.dprime if args.dprime is not None else args.d)
    table = special.special_sequence(sk, params, args.n)
    rel = special.verify_defining_relations(sk, params, args.n, table)
    rows = [
        [fam, n, v.numerator, v.denominator]
        for fam, vals in sorted(table.values.items())
        for n, v in sorted(vals.items())
    ]
    result = {
        "table": table.to_json(),
        "relations_hold": rel.ok,
        "first_violation": rel.first_violation,
        "l2_partial": special.l2_partial(sk, params, args.n),
        "l2_closed_form": special.l2_closed_form(sk, params),
    }
    return _emit("special", result, args.format, rows, ["family", "n", "phi_num", "phi_den"])


def cmd_psd(args) -> str:
    kind = _kind(args)
    if kind.transitive:
        params = TreeParams(kind.d, kind.d, transitive=True)
    else:
        params = TreeParams(kind.d, kind.dprime)
    ball = build_ball(params, CenterKind.VERTEX, args.radius, 0)
    M = spherical.radial_gram(ball, kind, args.alpha)
    ok, lam = spherical.psd_check(M, args.tol)
    result = {"kind": kind.label(), "alpha": args.alpha, "radius": args.radius, "size": M.shape[0], "psd": ok, "min_eigenvalue": lam}
    return _emit("psd", result, args.format, [[str(args.alpha), args.radius, M.shape[0], ok, repr(lam)]],
                 ["alpha", "radius", "size", "psd", "min_eigenvalue"])


def cmd_dynamics(args) -> str:
    result: dict = {"d": args.d}
    if args.alpha is not None:
        res = dynamics.restrict_to_plus(args.d, args.alpha)
        result["restrict"] = res.to_json()
        if not res.exceptional_pair:
            back = dynamics.induce_from_plus(args.d, res.gamma)
            result["round_trip"] = back.to_json()
            result["round_trip_ok"] = set(back.alphas) == {args.alpha, -args.alpha}
    if args.gamma is not None:
        ind = dynamics.induce_from_plus(args.d, args.gamma)
        result["induce"] = ind.to_json()
        if not ind.exceptional:
            result["restrict_back"] = [dynamics.restrict_to_plus(args.d, a).to_json() for a in ind.alphas]
    if args.alpha_v is not None:
        if args.dprime is None:
            raise UsageError("--alpha-v needs --dprime")
        a, b = dynamics.base_change_map(args.d, args.dprime)
        result["base_change"] = {
            "coefficients": [a, b],
            "alpha_vprime": dynamics.base_change(args.d, args.dprime, args.alpha_v),
        }
    if args.special:
        result["special"] = dynamics.special_dynamics(args.d)
    if len(result) == 1:
        raise UsageError("give at least one of --alpha, --gamma, --alpha-v, --special")
    return _emit("dynamics", result, args.format)


def cmd_fell(args) -> str:
    kind = _kind(args)
    model = fell.dual_model(kind, args.cuspidal, cuspidal_integrable=not args.no_integrability)
    result = {"model": model.to_json()}
    if args.target is not None:
        result["target"] = args.target
        result["limit_set"] = sorted(str(p) for p in fell.limit_set(kind, args.target))
    rows = None
    if args.target is not None:
        rows = [[str(args.target), p] for p in result["limit_set"]]
    return _emit("fell", result, args.format, rows, ["target", "point"])


def cmd_coset(args) -> str:
    kind = _kind(args)
    fams = haar.edge_families(kind, args.N)
    if args.vertex:
        fams = [haar.CosetFamily(haar.CosetTag.VERTEX, n, kind) for n in range(args.N + 1)] + fams
    if args.format == "csv" and args.brute_radius is None:
        return haar.measures_csv(fams)
    result: dict = {
        "kind": kind.label(),
        "measures": [
            {"family": f.tag.value, "n": f.n, "measure": haar.edge_coset_measure(f).value,
             "normalization": haar.edge_coset_measure(f).normalization}
            for f in fams
        ],
    }
    if args.brute_radius is not None:
        params = TreeParams(kind.d, kind.neighbour_degree, transitive=kind.transitive)
        for center in ("vertex", "edge"):
            ball = build_ball(params, center, args.brute_radius, 0)
            rep = haar.verify_coset_partition(ball, kind)
            result[f"brute_{center}"] = {
                "ok": rep.ok,
                "group_order": rep.group_order,
                "classes": rep.classes,
                "expected": rep.expected,
                "details": rep.details,
            }
    return _emit("coset", result, "json")


def cmd_perm(args) -> str:
    G = perm.PermGroup.from_cycles(args.degree, args.gens)
    two = perm.is_two_transitive(G) if args.degree >= 2 else None
    result = {
        "degree": args.degree,
        "generators": [perm.to_cycles(g) for g in G.generators],
        "order": G.order(),
        "two_transitive": two,
        "orbits_on_pairs": perm.orbit_count_on_pairs(G) if args.degree >= 2 else None,
        "conjugacy_classes": perm.conjugacy_class_count(G),
        "standard_rep_exists": perm.standard_rep_exists_2trans(G) if two else None,
        "contains_alternating": perm.contains_alternating(G) if args.degree <= perm.ALT_DEGREE_CAP else None,
    }
    return _emit("perm", result, args.format, [[k, result[k]] for k in sorted(result) if k != "generators"], ["field", "value"])


def _ball_from_args(args, transitive: bool):
    params = TreeParams(args.d0, args.d1, transitive=transitive and args.d0 == args.d1)
    return build_ball(params, args.center, args.radius, 0)


def cmd_radu(args) -> str:
    if args.theta:
        return _emit("radu", {"theta_prefix": radu.theta_prefix()}, args.format,
                     [[i, t] for i, t in enumerate(radu.theta_prefix())], ["index", "theta"])
    if args.family is None:
        raise UsageError("--family is required unless --theta is given")
    ball = _ball_from_args(args, transitive=True)
    col = radu.canonical_legal_coloring(ball)
    variant = radu.RaduVariant(args.family, X=args.X, Y0=args.Y0, Y1=args.Y1, eps0=args.eps0, eps1=args.eps1)
    autos = []
    for path in args.auto or []:
        with open(path) as fh:
            data = json.load(fh)
        maps = data if isinstance(data, list) else [data]
        autos += [(path, BallAutomorphism.from_json(ball, m)) for m in maps]
    if not autos:
        autos = [("identity", BallAutomorphism(tuple(range(len(ball)))))]
    reports = []
    for name, g in autos:
        rep = radu.membership_report(col, g, variant)
        local = {str(ball.addr(v)): perm.to_cycles(radu.local_action(col, g, v)) for v in sorted(col.by_colour)}
        reports.append({"source": name, **rep.to_json(), "local_actions": local})
    result = {"variant": variant.to_json(), "ball": {"d0": args.d0, "d1": args.d1, "radius": args.radius, "center": args.center}, "reports": reports}
    return _emit("radu", result, "json")


def cmd_brute(args) -> str:
    params = TreeParams(args.d, args.d, transitive=True)
    ball = build_ball(params, CenterKind.VERTEX, args.radius, 0)
    group = enumerate_automorphisms(ball)
    kind = GroupKind.vertex_transitive(args.d)
    rep = haar.verify_coset_partition(ball, kind, group)
    result: dict = {
        "d": args.d,
        "radius": args.radius,
        "vertices": len(ball),
        "automorphisms": len(group),
        "coset_partition": {"ok": rep.ok, "classes": rep.classes, "expected": rep.expected},
    }
    e = (0, ball.vid("0"))
    ipk = {}
    for k in range(1, args.radius):
        try:
            r = radu.check_ipk(ball, k, e, group)
            ipk[str(k)] = {"holds": r.holds, "fix_order": r.fix_order, "product_size": r.product_size}
        except InsufficientRadius:
            break
    result["ipk"] = ipk
    if args.radius >= 2:
        U = radu.Placement(radu.GenericSubtree("vertex", 1), (0,))
        V = radu.Placement(radu.GenericSubtree("vertex", 1), (ball.vid("0"),))
        res, plus = radu.check_factorization_plus(ball, U, V, group)
        result["factorization"] = {**res.to_json(), "plus": plus}
    return _emit("brute", result, "json")


# --- parser ---------------------------------------------------------------------


def _add_kind(p, d_default=None):
    p.add_argument("--kind", choices=["vt", "two-orbit"], default="vt")
    p.add_argument("--d", type=int, required=d_default is None, default=d_default)
    p.add_argument("--dprime", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treeharmonic", description="Harmonic analysis on semi-regular trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spherical", help="spherical function values phi(tau^n)")
    _add_kind(p)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_spherical)

    p = sub.add_parser("special", help="special function table and L2 norm")
    p.add_argument("--kind", choices=sorted(_SPECIAL_KINDS), default="vt-plus")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--dprime", type=int)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("psd", help="positive semi-definiteness of a radial kernel on a ball")
    _add_kind(p)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--tol", type=float, default=spherical.PSD_TOL)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_psd)

    p = sub.add_parser("dynamics", help="restriction/induction to the type-preserving subgroup")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--dprime", type=int)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--alpha-v", dest="alpha_v", type=_rational)
    p.add_argument("--special", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("fell", help="finite model of the dual near sphe and spe")
    _add_kind(p)
    p.add_argument("--target", type=_rational)
    p.add_argument("--cuspidal", type=int, default=0)
    p.add_argument("--no-integrability", action="store_true", help="drop the integrability assumption on cuspidal points")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_fell)

    p = sub.add_parser("coset", help="Haar measures of double cosets")
    _add_kind(p)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--vertex", action="store_true", help="also list vertex double cosets")
    p.add_argument("--brute-radius", type=int, help="cross-check on balls of this radius")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_coset)

    p = sub.add_parser("perm", help="permutation group facts")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--gens", nargs="*", default=[], help='generators in 1-based cycle notation, e.g. "(1 2 3)"')
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("radu", help="sign-condition membership of ball automorphisms")
    p.add_argument("--theta", action="store_true", help="print the published prefix of Theta")
    p.add_argument("--d0", type=int, default=4)
    p.add_argument("--d1", type=int, default=4)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--center", choices=["vertex", "edge"], default="vertex")
    p.add_argument("--family", choices=[f.value for f in radu.RaduFamily])
    p.add_argument("--X", type=_int_set, default=frozenset())
    p.add_argument("--Y0", type=_int_set, default=frozenset())
    p.add_argument("--Y1", type=_int_set, default=frozenset())
    p.add_argument("--eps0", type=int, choices=[-1, 1])
    p.add_argument("--eps1", type=int, choices=[-1, 1])
    p.add_argument("--auto", nargs="*", help="JSON files holding address maps")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_radu)

    p = sub.add_parser("brute", help="brute-force checks on a regular ball")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_brute)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (ValueError, CapExceeded, InsufficientRadius, OSError) as exc:
        print(f"error: {args.command}: {exc}", file=stderr)
        return 1
    stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
