"""Command-line surface: exact counting, enumeration, statistics tables,
bijection application, series expansion, and named verification checks.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
parse error, 3 domain violation (invalid tree, non-avoiding permutation,
unsupported parameters, node index out of range).

Output is deterministic: identical inputs produce byte-identical stdout,
including JSON key order; --jobs changes wall time only.  There is no
randomness anywhere (--seedless is accepted for scripting symmetry and is
a no-op).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bijections as bij
from . import identities as idn
from .core import (
    BinaryNode,
    DomainError,
    Multiset,
    MultisetSyntaxError,
    PlaneNode,
    TreeSyntaxError,
    count_wit,
    enumerate_wibt,
    enumerate_wit,
    parse_wibt,
    parse_wit,
    render_wibt,
    render_wit,
    wibt_to_json,
    wit_to_json,
)
from .perms import (
    Lambda,
    Upsilon,
    lambda_inv,
    lambda_map,
    parse_permutation,
    perm_stats,
    render_permutation,
    PERM_STAT_NAMES,
)
from .series import SeriesDomainError
from .stats import (
    UnknownStatisticError,
    binary_stats,
    distribution_polynomial,
    stat_value,
    wit_stats,
    _SIMPLE_STATS,
)
from .verify import CHECKS, ScopeError, run_check, scope_cap


class UsageError(ValueError):
    pass


def _dumps(payload) -> str:
    return json.dumps(payload, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Shared argument handling


def _multiset_from_args(args) -> Multiset:
    if getattr(args, "multiset", None) is not None and getattr(args, "n", None) is not None:
        raise UsageError("give exactly one of --multiset and --n")
    if getattr(args, "multiset", None) is not None:
        return Multiset.parse(args.multiset)
    if getattr(args, "n", None) is not None:
        if args.n < 1:
            raise UsageError("--n must be at least 1")
        return Multiset((args.n,))
    raise UsageError("one of --multiset or --n is required")


def _enforce_family_cap(ms: Multiset) -> None:
    kind = "plane" if ms.largest_value == 1 else "multiset"
    cap = scope_cap(kind)
    if ms.size > cap:
        raise UsageError(
            f"family size {ms.size} exceeds the desk-scale cap {cap}; "
            "set TREELAB_MAX_SCOPE to raise it"
        )


# ---------------------------------------------------------------------------
# count / enumerate


def cmd_count(args) -> int:
    ms = _multiset_from_args(args)
    value = count_wit(ms)
    if args.format == "json":
        print(_dumps({"multiset": ms.render(), "count": value}))
    else:
        print(value)
    return 0


def cmd_enumerate(args) -> int:
    ms = _multiset_from_args(args)
    _enforce_family_cap(ms)
    if args.family == "wibt":
        for b in enumerate_wibt(ms):
            print(_dumps(wibt_to_json(b)) if args.format == "json" else render_wibt(b))
        return 0
    trees = enumerate_wit(ms)
    if args.family == "tip":
        trees = tuple(t for t in trees if wit_stats(t).yint == 0)
    for t in trees:
        print(_dumps(wit_to_json(t)) if args.format == "json" else render_wit(t))
    return 0


# ---------------------------------------------------------------------------
# map

# name -> (input kind, needs node index)
_MAP_TABLE: dict[str, tuple[str, bool]] = {
    "rho": ("wit", False),
    "rho_inv": ("wibt", False),
    "phi_at": ("wibt", True),
    "mirror": ("wibt", False),
    "Phi": ("wit", False),
    "psi": ("wibt", False),
    "Psi": ("wit", False),
    "varphi": ("wibt", True),
    "orbit_canonical": ("wibt", False),
    "theta": ("wibt", False),
    "theta_inv": ("wibt", False),
    "Theta": ("wit", False),
    "Theta_inv": ("wit", False),
    "hat": ("wit", False),
    "parity_toggle": ("wit", False),
    "partner_map": ("wit", False),
    "Lambda": ("perm", False),
    "Upsilon": ("perm", False),
    "lambda": ("perm", False),
    "lambda_inv": ("btree", False),
}


def _apply_map(name: str, payload, node: int | None):
    if name == "rho":
        return ("wibt", bij.rho(payload))
    if name == "rho_inv":
        return ("wit", bij.rho_inv(payload))
    if name == "phi_at":
        return ("wibt", bij.switch_at(payload, node))
    if name == "mirror":
        return ("wibt", bij.mirror(payload))
    if name == "Phi":
        return ("wit", bij.Phi(payload))
    if name == "psi":
        return ("wibt", bij.psi(payload))
    if name == "Psi":
        return ("wit", bij.Psi(payload))
    if name == "varphi":
        return ("wibt", bij.varphi(payload, node))
    if name == "orbit_canonical":
        return ("wibt", bij.orbit_canonical(payload))
    if name == "theta":
        return ("wibt", bij.theta(payload))
    if name == "theta_inv":
        return ("wibt", bij.theta_inv(payload))
    if name == "Theta":
        return ("wit", bij.Theta(payload))
    if name == "Theta_inv":
        return ("wit", bij.Theta_inv(payload))
    if name == "hat":
        return ("wit", bij.hat_recursive(payload))
    if name == "parity_toggle":
        return ("wit", bij.parity_toggle(payload))
    if name == "partner_map":
        return ("partner", bij.partner_map(payload))
    if name == "Lambda":
        return ("perm", Lambda(payload))
    if name == "Upsilon":
        return ("perm", Upsilon(payload))
    if name == "lambda":
        return ("btree", lambda_map(payload))
    if name == "lambda_inv":
        return ("perm", lambda_inv(payload))
    raise UsageError(f"unknown map {name!r}")


def cmd_map(args) -> int:
    name = args.map
    node = args.node
    if ":" in name:
        name, _, suffix = name.partition(":")
        if not suffix.isdigit():
            raise UsageError(f"map suffix must be an integer, got {suffix!r}")
        node = int(suffix)
    if name not in _MAP_TABLE:
        raise UsageError(
            f"unknown map {name!r}; known: {', '.join(sorted(_MAP_TABLE))}"
        )
    kind, needs_node = _MAP_TABLE[name]
    if needs_node and node is None:
        raise UsageError(f"map {name!r} needs a node index (--node or {name}:<i>)")
    if kind == "wit":
        payload = parse_wit(args.input)
    elif kind in ("wibt", "btree"):
        payload = parse_wibt(args.input)
    else:
        payload = parse_permutation(args.input)
    out_kind, result = _apply_map(name, payload, node)
    if out_kind == "wit":
        print(_dumps(wit_to_json(result)) if args.format == "json" else render_wit(result))
    elif out_kind in ("wibt", "btree"):
        print(_dumps(wibt_to_json(result)) if args.format == "json" else render_wibt(result))
    elif out_kind == "perm":
        print(_dumps(list(result)) if args.format == "json" else render_permutation(result))
    else:  # partner map
        if args.format == "json":
            print(
                _dumps(
                    {
                        "pairs": [
                            {
                                "node": e.node,
                                "partner": e.partner,
                                "case": e.case,
                                "pathLength": e.path_length,
                            }
                            for e in result.entries
                        ]
                    }
                )
            )
        else:
            for e in result.entries:
                tail = f" k={e.path_length}" if e.path_length is not None else ""
                print(f"{e.node} -> {e.partner} {e.case}{tail}")
    return 0


# ---------------------------------------------------------------------------
# table

_DEFAULT_VARS: dict[tuple[str, ...], tuple[str, ...]] = {
    ("sleaf", "etleaf", "entleaf", "yerleaf", "syleaf"): ("u1", "u2", "u3", "v1", "v2"),
    ("oleaf", "yleaf", "oint", "yint"): ("x1", "x2", "y1", "y2"),
    ("sleaf", "eleaf", "yleaf", "yint"): ("x1", "x2", "x3", "x4"),
    ("oleaf", "yleaf"): ("x1", "x2"),
    ("dd", "da", "pk1", "pk2"): ("x", "y", "z1", "z2"),
}


def cmd_table(args) -> int:
    ms = _multiset_from_args(args)
    _enforce_family_cap(ms)
    stats = tuple(s.strip() for s in args.stats.split(","))
    if args.vars:
        variables = tuple(v.strip() for v in args.vars.split(","))
        if len(variables) != len(stats):
            raise UsageError("--vars must name one variable per statistic")
    else:
        variables = _DEFAULT_VARS.get(stats, stats)
    family = "tip_augmented" if args.tip_augmented else "all"
    poly = distribution_polynomial(ms, stats, variables, family=family)
    if args.format == "json":
        print(_dumps(poly.to_json()))
    elif args.format == "csv":
        for exps, coef in poly.sorted_terms():
            print(",".join(str(e) for e in exps) + f",{coef}")
    else:
        print(poly.render())
    return 0


# ---------------------------------------------------------------------------
# series

_SERIES_CHOICES = ("narayana", "riccati", "pk1", "elizalde-noy", "carlitz")


def _series_for(args):
    order = args.order
    if order < 1:
        raise UsageError("--order must be at least 1")
    if args.which in ("narayana", "pk1", "elizalde-noy", "carlitz"):
        cap = scope_cap("order")
        if order > cap:
            raise UsageError(f"--order {order} exceeds the cap {cap}; set TREELAB_MAX_SCOPE")
    if args.which == "riccati":
        cap = scope_cap("perm")
        if order > cap:
            raise UsageError(
                f"riccati needs brute force through {order}; cap is {cap} (TREELAB_MAX_SCOPE raises it)"
            )
    if args.which == "narayana":
        return idn.narayana_gf_closed(order)
    if args.which == "riccati":
        return idn.riccati_residual(order)
    if args.which == "pk1":
        return idn.pk1_egf_closed(order)
    if args.which == "elizalde-noy":
        return idn.elizalde_noy_egf(order)
    if any(v is None for v in (args.x, args.y, args.z)):
        raise UsageError("carlitz requires --x, --y and --z")
    x, y, z = (Fraction(v) for v in (args.x, args.y, args.z))
    return idn.carlitz_scoville_series(x, y, z, order)


def cmd_series(args) -> int:
    series = _series_for(args)
    if args.format == "json":
        print(
            _dumps(
                {
                    "which": args.which,
                    "order": series.order,
                    "coefficients": [c.to_json() for c in series.coeffs],
                }
            )
        )
    else:
        for n, coef in enumerate(series.coeffs):
            print(f"[t^{n}] {coef.render()}")
    return 0


# ---------------------------------------------------------------------------
# stats


def cmd_stats(args) -> int:
    if args.kind == "perm":
        word = parse_permutation(args.input)
        v = perm_stats(word)
        entries = [(name, getattr(v, name)) for name in PERM_STAT_NAMES]
        entries.append(("des_set", sorted(v.des_set)))
        entries.append(("asc_set", sorted(v.asc_set)))
    elif args.kind == "wibt":
        b = parse_wibt(args.input)
        v = binary_stats(b)
        entries = [
            (name, getattr(v, name))
            for name in (
                "leaf_count", "right_leaf", "left_leaf", "only_left", "only_right",
                "rl_parent_has_left", "rl_parent_no_left", "ll_parent_no_right",
                "ll_parent_has_right", "ol_left_has_left", "ol_left_no_left", "twin",
            )
        ]
    else:
        t = parse_wit(args.input)
        v = wit_stats(t)
        entries = [(name, stat_value(v, name)) for name in _SIMPLE_STATS]
        entries.extend((f"deg:{q}", c) for q, c in sorted(v.deg.items()))
        entries.extend((f"od:{q}", c) for q, c in sorted(v.od.items()))
    if args.format == "json":
        print(_dumps({name: value for name, value in entries}))
    else:
        for name, value in entries:
            if isinstance(value, list):
                print(f"{name} {','.join(str(x) for x in value)}")
            else:
                print(f"{name} {value}")
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.list:
        for check in CHECKS.values():
            scope = ",".join(f"{k}={v}" for k, v in check.default_scope.items())
            print(f"{check.check_id}\t{check.kind}\t{scope}\t{check.description}")
        return 0
    if args.all:
        ids = list(CHECKS)
    elif args.check:
        ids = [args.check]
    else:
        raise UsageError("give --check ID, --all, or --list")
    unknown = [check_id for check_id in ids if check_id not in CHECKS]
    if unknown:
        raise UsageError(
            f"unknown check {unknown[0]!r}; known: {', '.join(CHECKS)}"
        )
    failures = 0
    for check_id in ids:
        report = run_check(
            check_id,
            n=args.n,
            multiset=args.multiset,
            order=args.order,
            jobs=args.jobs,
            timing=args.timing,
        )
        print(_dumps(report))
        if report["status"] != "pass":
            failures += 1
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treelab",
        description="Exact combinatorics of weakly increasing trees, binary images, and 312-avoiders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--seedless", action="store_true", help="no-op; the engine never uses randomness")

    p = sub.add_parser("count", help="count weakly increasing trees on a multiset")
    p.add_argument("--multiset", help="label multiset, e.g. 1^2,2^4")
    p.add_argument("--n", type=int, help="shorthand for the multiset {1^N}")
    add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list a tree family in canonical order")
    p.add_argument("--multiset")
    p.add_argument("--n", type=int)
    p.add_argument("--family", choices=("wit", "wibt", "tip"), default="wit")
    add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("map", help="apply a named bijection or involution")
    p.add_argument("--map", required=True, help="e.g. rho, Phi, theta, phi_at:3, Lambda")
    p.add_argument("--input", required=True)
    p.add_argument("--node", type=int, help="node index for phi_at (0-based) / varphi (1-based)")
    add_common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("table", help="distribution polynomial of statistics over a family")
    p.add_argument("--multiset")
    p.add_argument("--n", type=int)
    p.add_argument("--stats", required=True, help="comma-separated statistic names")
    p.add_argument("--vars", help="comma-separated variable names (defaults per known tuples)")
    p.add_argument("--tip-augmented", action="store_true", dest="tip_augmented")
    add_common(p, formats=("text", "json", "csv"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", help="expand a named generating function")
    p.add_argument("--which", choices=_SERIES_CHOICES, required=True)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    add_common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("stats", help="all statistics of one tree or permutation")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=("wit", "wibt", "perm"), default="wit")
    add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="run a named verification check")
    p.add_argument("--check", help="check id, e.g. thm1.2")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true", help="print the check registry")
    p.add_argument("--n", type=int)
    p.add_argument("--multiset")
    p.add_argument("--order", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsedMs in the report")
    p.add_argument("--seedless", action="store_true")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return int(args.func(args) or 0)
    except (UsageError, MultisetSyntaxError, UnknownStatisticError, ScopeError, ValueError) as exc:
        if isinstance(exc, (TreeSyntaxError, DomainError, SeriesDomainError)):
            print(f"error: {exc}", file=sys.stderr)
            return 3
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
