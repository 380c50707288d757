"""Named verification checks and their machine-readable reports.

Every check exhaustively examines a finite family (trees on a multiset
range, permutations up to a length, series coefficients up to an order)
and either passes or returns the first counterexample in canonical order.
Default scopes are desk scale; the TREELAB_MAX_SCOPE environment variable
raises the caps.

Per-object checks shard their index space across a thread pool when
jobs > 1; the merge keeps the earliest failure, so output is identical for
any worker count.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from . import bijections as bij
from . import identities as idn
from .core import (
    Multiset,
    PlaneNode,
    compositions,
    count_wit,
    enumerate_wibt,
    enumerate_wit,
    increasing_trees,
    plane_trees,
    render_wibt,
    render_wit,
    tag_wit_preorder,
)
from .perms import Lambda, Upsilon, enumerate_avoiding_312, lemma31_check, perm_stats, render_permutation
from .polynomials import Polynomial
from .stats import TRANSPORT_PAIRS, binary_stats, distribution_polynomial, transport_check, wit_stats

SCHEMA_VERSION = 1

DEFAULT_CAPS = {"multiset": 8, "perm": 9, "plane": 10, "order": 12}


class ScopeError(ValueError):
    pass


def scope_cap(kind: str) -> int:
    base = DEFAULT_CAPS[kind]
    raw = os.environ.get("TREELAB_MAX_SCOPE", "")
    if raw.isdigit():
        return max(base, int(raw))
    return base


@dataclass
class CheckOutcome:
    ok: bool
    counterexample: str | None = None
    count: int = 0
    details: dict | None = None


@dataclass(frozen=True)
class Check:
    check_id: str
    kind: str  # "multiset" | "perm" | "plane" | "series"
    default_scope: dict
    description: str
    runner: Callable[[dict, int], CheckOutcome]


# ---------------------------------------------------------------------------
# Shared machinery


def _sharded_first_failure(
    items: Sequence, test: Callable, jobs: int
) -> tuple[int | None, str | None]:
    """Earliest failing index and message, or (None, None); deterministic
    for every worker count."""
    n = len(items)
    if jobs <= 1 or n < 2:
        for i in range(n):
            msg = test(items[i])
            if msg is not None:
                return i, msg
        return None, None
    jobs = min(jobs, n)
    bounds = [(k * n // jobs, (k + 1) * n // jobs) for k in range(jobs)]

    def work(span: tuple[int, int]) -> tuple[int, str] | None:
        lo, hi = span
        for i in range(lo, hi):
            msg = test(items[i])
            if msg is not None:
                return i, msg
        return None

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        hits = [hit for hit in pool.map(work, bounds) if hit is not None]
    if not hits:
        return None, None
    index, msg = min(hits)
    return index, msg


def _scope_multisets(scope: dict, min_m: int = 1) -> list[Multiset]:
    if scope.get("multiset"):
        ms = Multiset.parse(scope["multiset"])
        return [ms] if ms.size >= min_m else []
    top = scope["maxM"]
    return [
        Multiset(parts)
        for m in range(min_m, top + 1)
        for parts in compositions(m)
    ]


def _per_tree_check(
    scope: dict, jobs: int, test: Callable, min_m: int = 1
) -> CheckOutcome:
    examined = 0
    for ms in _scope_multisets(scope, min_m=min_m):
        trees = enumerate_wit(ms)
        index, msg = _sharded_first_failure(trees, test, jobs)
        if index is not None:
            return CheckOutcome(False, msg, examined + index + 1)
        examined += len(trees)
    return CheckOutcome(True, None, examined)


def _joint_counter(trees: Iterable[PlaneNode], keys: Callable) -> dict:
    counts: dict = {}
    for t in trees:
        k = keys(wit_stats(t))
        counts[k] = counts.get(k, 0) + 1
    return counts


def _counter_poly(variables: tuple[str, ...], counts: dict) -> Polynomial:
    return Polynomial(variables, {k: Fraction(c) for k, c in counts.items()})


# ---------------------------------------------------------------------------
# Runners


def _check_count_formula(scope: dict, jobs: int) -> CheckOutcome:
    max_part_cap = scope.get("maxPartAtTop")
    examined = 0
    for ms in _scope_multisets(scope):
        if (
            max_part_cap is not None
            and ms.size == scope.get("maxM")
            and max(ms.multiplicities) > max_part_cap
        ):
            continue
        got = len(enumerate_wit(ms))
        want = count_wit(ms)
        examined += got
        if got != want:
            return CheckOutcome(
                False, f"{ms.render()}: enumerated {got}, formula says {want}", examined
            )
    return CheckOutcome(True, None, examined)


def _thm12_tree(t: PlaneNode) -> str | None:
    image = bij.Phi(t)
    if bij.Phi(image) != t:
        return f"{render_wit(t)}: applying the mirror involution twice moved the tree"
    a, b = wit_stats(t), wit_stats(image)
    if (a.sleaf, a.eleaf, a.yleaf, a.yint) != (b.eleaf, b.sleaf, b.yint, b.yleaf):
        return f"{render_wit(t)}: (sleaf,eleaf,yleaf,yint) not transformed to (eleaf,sleaf,yint,yleaf)"
    return None


def _check_thm12(scope: dict, jobs: int) -> CheckOutcome:
    return _per_tree_check(scope, jobs, _thm12_tree, min_m=2)


def _thm18_tree(t: PlaneNode) -> str | None:
    image = bij.Psi(t)
    if bij.Psi(image) != t:
        return f"{render_wit(t)}: unbalanced-switch involution applied twice moved the tree"
    a, b = wit_stats(t), wit_stats(image)
    preserved = ("snuleaf", "etleaf", "syleaf", "yerleaf", "yint")
    for name in preserved:
        if getattr(a, name) != getattr(b, name):
            return f"{render_wit(t)}: {name} not preserved"
    if (a.suleaf, a.entleaf) != (b.entleaf, b.suleaf):
        return f"{render_wit(t)}: (suleaf, entleaf) not exchanged"
    return None


def _check_thm18(scope: dict, jobs: int) -> CheckOutcome:
    return _per_tree_check(scope, jobs, _thm18_tree, min_m=2)


_LEM21_PAIRS = tuple(
    p for p in TRANSPORT_PAIRS
    if p[0] in ("sleaf", "eleaf", "yleaf", "yint", "oleaf")
)
_LEM22_PAIRS = tuple(
    p for p in TRANSPORT_PAIRS
    if p[0] in ("suleaf", "snuleaf", "etleaf", "entleaf", "yerleaf", "syleaf")
)


def _check_lem21(scope: dict, jobs: int) -> CheckOutcome:
    return _per_tree_check(
        scope, jobs, lambda t: transport_check(t, _LEM21_PAIRS), min_m=2
    )


def _check_lem22(scope: dict, jobs: int) -> CheckOutcome:
    return _per_tree_check(
        scope, jobs, lambda t: transport_check(t, _LEM22_PAIRS), min_m=2
    )


_TIP_VARS = ("x1", "x2", "y1", "y2")


def _tip_sides(trees: Sequence[PlaneNode]) -> tuple[Polynomial, Polynomial]:
    """Both sides of the tip-augmentation identity over one family."""
    lhs_counts: dict = {}
    rhs_counts: dict = {}
    for t in trees:
        v = wit_stats(t)
        key = (v.oleaf, v.yleaf, v.oint, v.yint)
        lhs_counts[key] = lhs_counts.get(key, 0) + 1
        if v.yint == 0:
            k2 = (v.oleaf, v.yleaf)
            rhs_counts[k2] = rhs_counts.get(k2, 0) + 1
    lhs = _counter_poly(_TIP_VARS, lhs_counts)
    x1, x2, y1, y2 = (Polynomial.variable(_TIP_VARS, v) for v in _TIP_VARS)
    base, mix = x1 * y1, x2 + y2
    base_pow: list[Polynomial] = [Polynomial.constant(_TIP_VARS, 1)]
    mix_pow: list[Polynomial] = [Polynomial.constant(_TIP_VARS, 1)]
    rhs = Polynomial.zero(_TIP_VARS)
    for (a, b), c in sorted(rhs_counts.items()):
        while len(base_pow) <= a:
            base_pow.append(base_pow[-1] * base)
        while len(mix_pow) <= b:
            mix_pow.append(mix_pow[-1] * mix)
        rhs = rhs + base_pow[a] * mix_pow[b] * c
    return lhs, rhs


def _check_thm14(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for ms in _scope_multisets(scope):
        trees = enumerate_wit(ms)
        examined += len(trees)
        lhs, rhs = _tip_sides(trees)
        if lhs != rhs:
            return CheckOutcome(
                False,
                f"{ms.render()}: full distribution differs from the tip-augmented expansion",
                examined,
            )
    return CheckOutcome(True, None, examined)


def _check_cor15(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    x1, x2, y1, y2 = (Polynomial.variable(_TIP_VARS, v) for v in _TIP_VARS)
    for n in range(1, scope["maxN"] + 1):
        trees = plane_trees(n)
        examined += len(trees)
        lhs = _counter_poly(
            _TIP_VARS,
            _joint_counter(trees, lambda v: (v.oleaf, v.yleaf, v.oint, v.yint)),
        )
        rhs = idn.motzkin_poly(n - 1).substitute(
            _TIP_VARS, {"u": x1 * y1, "v": x2 + y2}
        )
        if lhs != rhs:
            return CheckOutcome(
                False, f"n={n}: distribution differs from the Motzkin expansion", examined
            )
    return CheckOutcome(True, None, examined)


def _check_sym17(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(2, scope["maxN"] + 1):
        poly = distribution_polynomial(
            Multiset((n + 1,)),
            ("sleaf", "etleaf", "entleaf", "yerleaf", "syleaf"),
            idn.NARAYANA_VARS,
            family="tip_augmented",
        )
        examined += len(plane_trees(n + 1))
        if poly != poly.permute_vars({"u1": "u3", "u3": "u1"}):
            return CheckOutcome(
                False, f"n={n}: quintuple over tip-augmented trees is not u1/u3 symmetric", examined
            )
    return CheckOutcome(True, None, examined)


def _check_cor24(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for ms in _scope_multisets(scope, min_m=2):
        trees = enumerate_wit(ms)
        examined += len(trees)
        m = ms.size
        counts: dict = {}
        for t in trees:
            v = wit_stats(t)
            key = (v.oleaf, v.yleaf % 2)
            counts[key] = counts.get(key, 0) + 1
        for k in range(1, m // 2 + 1):
            even, odd = counts.get((k, 0), 0), counts.get((k, 1), 0)
            if even != odd:
                return CheckOutcome(
                    False, f"{ms.render()}, oleaf={k}: even {even} vs odd {odd}", examined
                )

        def toggle_test(t: PlaneNode) -> str | None:
            v = wit_stats(t)
            if not 1 <= v.oleaf <= m // 2:
                return None
            image = bij.parity_toggle(t)
            w = wit_stats(image)
            if w.oleaf != v.oleaf or (w.yleaf - v.yleaf) % 2 == 0:
                return f"{render_wit(t)}: toggle changed oleaf or kept yleaf parity"
            if bij.parity_toggle(image) != t:
                return f"{render_wit(t)}: toggle is not an involution"
            return None

        index, msg = _sharded_first_failure(trees, toggle_test, jobs)
        if index is not None:
            return CheckOutcome(False, msg, examined)
    return CheckOutcome(True, None, examined)


def _check_cor26(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(1, scope["maxN"] + 1):
        trees = plane_trees(n)
        examined += len(trees)
        joint = _joint_counter(trees, lambda v: (v.oleaf, v.yleaf))
        formula = {
            (k, l): idn.refined_narayana_count(n, k, l)
            for k in range(1, n + 1)
            for l in range(0, n + 1)
            if idn.refined_narayana_count(n, k, l)
        }
        if joint != formula:
            return CheckOutcome(
                False, f"n={n}: (oleaf, yleaf) counts differ from the closed form", examined
            )
        by_oleaf: dict[int, int] = {}
        for (k, _), c in joint.items():
            by_oleaf[k] = by_oleaf.get(k, 0) + c
        closed = {
            k: idn.plane_tree_old_leaf_count(n, k)
            for k in range(1, n + 2)
            if idn.plane_tree_old_leaf_count(n, k)
        }
        if by_oleaf != closed:
            return CheckOutcome(
                False, f"n={n}: oleaf counts differ from 2^(n-2k+1) C(n-1,2k-2) C_(k-1)", examined
            )
    return CheckOutcome(True, None, examined)


def _check_thm27(scope: dict, jobs: int) -> CheckOutcome:
    order = scope["order"]
    closed = idn.narayana_gf_closed(order)
    fixed = idn.narayana_gf_fixedpoint(order)
    if closed != fixed:
        return CheckOutcome(False, "closed form and fixed point disagree", 0)
    examined = 0
    for n in range(1, order + 1):
        examined += len(plane_trees(n))
        if closed.coefficient(n) != idn.narayana_from_trees(n):
            return CheckOutcome(False, f"order {n}: series differs from enumeration", examined)
    reference_orders = [n for n in sorted(idn.REFERENCE_REFINED_NARAYANA) if n <= order]
    for n in reference_orders:
        if closed.coefficient(n) != idn.reference_refined_narayana(n):
            return CheckOutcome(False, f"order {n}: series differs from the reference expansion", examined)
    details = {
        "referenceOrdersChecked": reference_orders,
        "order5_u1v1v2_coefficient": 2,
        "order5_u2v2sq_coefficient": 2,
    }
    return CheckOutcome(True, None, examined, details)


def _tag_info(t: PlaneNode) -> dict[int, tuple[int, int]]:
    out: dict[int, tuple[int, int]] = {}

    def walk(node: PlaneNode, level: int) -> None:
        out[node.tag] = (level, node.degree)  # type: ignore[index]
        for c in node.children:
            walk(c, level + 1)

    walk(t, 0)
    return out


def _thm28_tree(t: PlaneNode) -> str | None:
    tagged = tag_wit_preorder(t)
    image = bij.Theta(tagged)
    # the correspondence drops and re-creates the root; restore its tag
    image = PlaneNode(image.label, image.children, tag=0)
    source = _tag_info(tagged)
    target = _tag_info(image)
    pm = bij.partner_map(t)
    if not pm.is_permutation():
        return f"{render_wit(t)}: partner map is not a permutation"
    for entry in pm.entries:
        _, v_degree = source[entry.node]
        level, degree = target[entry.partner]
        if entry.case == "internal":
            if level % 2 == 0 or degree != v_degree - 1:
                return f"{render_wit(t)}, node {entry.node}: internal case violated"
        elif entry.case == "non-youngest-leaf":
            if level % 2 == 1 or degree != 0:
                return f"{render_wit(t)}, node {entry.node}: non-youngest leaf case violated"
        else:
            if level % 2 == 1 or degree != entry.path_length or not entry.path_length:
                return f"{render_wit(t)}, node {entry.node}: youngest leaf case violated"
    a, b = wit_stats(t), wit_stats(image)
    if a.oleaf != b.oleaf:
        return f"{render_wit(t)}: oleaf not preserved"
    if a.ystleaf != b.elint:
        return f"{render_wit(t)}: ystleaf does not equal elint of the image"
    return None


def _check_thm28(scope: dict, jobs: int) -> CheckOutcome:
    return _per_tree_check(scope, jobs, _thm28_tree)


def _deutsch_tree(t: PlaneNode) -> str | None:
    image = bij.Theta(t)
    if image != bij.hat_recursive(t):
        return f"{render_wit(t)}: switch route and recursive route disagree"
    if bij.Theta_inv(image) != t:
        return f"{render_wit(t)}: inverse route failed"
    a, b = wit_stats(t), wit_stats(image)
    degrees = set(a.deg) | {q + 1 for q in b.od}
    for q in degrees:
        if q >= 1 and a.deg.get(q, 0) != b.od.get(q - 1, 0):
            return f"{render_wit(t)}: deg_{q} differs from od_{q-1} of the image"
    if a.leaf != b.el:
        return f"{render_wit(t)}: leaf count differs from even-level count of the image"
    return None


def _check_deutsch(scope: dict, jobs: int) -> CheckOutcome:
    return _per_tree_check(scope, jobs, _deutsch_tree)


def _check_cor29(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(1, scope["maxN"] + 1):
        trees = plane_trees(n)
        examined += len(trees)
        joint = _joint_counter(trees, lambda v: (v.oleaf, v.elint))
        for (a, b), c in joint.items():
            if joint.get((b, a), 0) != c:
                return CheckOutcome(
                    False, f"n={n}: (oleaf, elint)=({a},{b}) occurs {c} times but the swap does not", examined
                )
        by_elint: dict[int, int] = {}
        for (_, b), c in joint.items():
            by_elint[b] = by_elint.get(b, 0) + c
        closed = {
            k: idn.plane_tree_old_leaf_count(n, k)
            for k in range(1, n + 2)
            if idn.plane_tree_old_leaf_count(n, k)
        }
        if by_elint != closed:
            return CheckOutcome(False, f"n={n}: elint counts differ from the closed form", examined)
    # On increasing trees with four nodes the pair (ystleaf, elint) must
    # NOT be jointly symmetric; confirm the asymmetry strictly.
    inc = increasing_trees(4)
    examined += len(inc)
    joint = _joint_counter(inc, lambda v: (v.ystleaf, v.elint))
    swapped = {(b, a): c for (a, b), c in joint.items()}
    if joint == swapped:
        return CheckOutcome(
            False, "(ystleaf, elint) unexpectedly symmetric on 4-node increasing trees", examined
        )
    return CheckOutcome(
        True, None, examined, {"increasingTreeAsymmetryConfirmed": True}
    )


def _check_cor210(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(1, scope["maxN"] + 1):
        trees = plane_trees(n)
        examined += len(trees)
        lhs = _joint_counter(trees, lambda v: (v.oleaf, v.yleaf))
        rhs = _joint_counter(trees, lambda v: (v.elint, v.elleaf))
        if lhs != rhs:
            return CheckOutcome(
                False, f"n={n}: (oleaf, yleaf) and (elint, elleaf) distributions differ", examined
            )
    return CheckOutcome(True, None, examined)


def _check_lem31(scope: dict, jobs: int) -> CheckOutcome:
    import itertools as it

    examined = 0
    for n in range(2, scope["maxN"] + 1):
        words = [tuple(w) for w in it.permutations(range(1, n + 1))]
        index, msg = _sharded_first_failure(words, lemma31_check, jobs)
        if index is not None:
            return CheckOutcome(False, msg, examined + index + 1)
        examined += len(words)
    return CheckOutcome(True, None, examined)


def _check_thm32(scope: dict, jobs: int) -> CheckOutcome:
    top = scope["maxN"]
    examined = 0
    for n in range(4, top + 1):
        examined += factorial(n)
        if not idn.eulerian_recurrence_residual(n).is_zero:
            return CheckOutcome(False, f"n={n}: recurrence residual is nonzero", examined)
    order = min(8, top - 1)
    if not idn.riccati_residual(order).is_zero:
        return CheckOutcome(False, f"Riccati residual nonzero through order {order - 1}", examined)
    return CheckOutcome(True, None, examined, {"riccatiResidualOrder": order - 1})


def _check_prop33(scope: dict, jobs: int) -> CheckOutcome:
    top = scope["maxN"]
    egf = idn.pk1_egf_closed(top)
    examined = 0
    for n in range(1, top + 1):
        examined += factorial(n)
        if egf.coefficient(n) * factorial(n) != idn.pk1_distribution(n):
            return CheckOutcome(False, f"n={n}: EGF coefficient differs from the distribution", examined)
    return CheckOutcome(True, None, examined)


def _check_eq31(scope: dict, jobs: int) -> CheckOutcome:
    top = scope["maxN"]
    msg = idn.carlitz_scoville_check(1, 4, 6, top)
    examined = sum(factorial(n) for n in range(1, top + 1))
    if msg is not None:
        return CheckOutcome(False, msg, examined)
    series = idn.carlitz_scoville_series(1, 4, 6, min(3, top))
    low = [str(series.coefficient(n).constant_term()) for n in range(1, min(3, top) + 1)]
    return CheckOutcome(True, None, examined, {"parameters": [1, 4, 6], "lowOrderEgf": low})


def _check_cor34(scope: dict, jobs: int) -> CheckOutcome:
    top = scope["maxN"]
    examined = 0
    variant: dict[str, str] = {}
    for n in range(2, top + 1):
        examined += factorial(n)
        report = idn.corollary34_check(n)
        variant[str(n)] = "pass" if report.binomial_variant_ok else "fail"
        if not report.multinomial_ok:
            return CheckOutcome(
                False, f"n={n}: multinomial form fails", examined, {"binomialVariant": variant}
            )
    details = {
        "multinomialForm": "pass",
        "binomialVariant": variant,
        "binomialVariantNote": "the plain-binomial coefficient variant is expected to fail for n >= 3",
    }
    return CheckOutcome(True, None, examined, details)


_EIGHT_TUPLE = ("mnd", "mna", "des", "asc", "ldr", "rar", "lmin", "rmin")
_EIGHT_TUPLE_SWAP = ("mna", "mnd", "asc", "des", "rar", "ldr", "rmin", "lmin")


def _check_thm35(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(1, scope["maxN"] + 1):
        words = enumerate_avoiding_312(n)
        examined += len(words)
        lhs: dict = {}
        rhs: dict = {}
        for w in words:
            v = perm_stats(w)
            a = tuple(getattr(v, name) for name in _EIGHT_TUPLE)
            b = tuple(getattr(v, name) for name in _EIGHT_TUPLE_SWAP)
            lhs[a] = lhs.get(a, 0) + 1
            rhs[b] = rhs.get(b, 0) + 1
        if lhs != rhs:
            return CheckOutcome(False, f"n={n}: the two 8-tuples are not equidistributed", examined)
    return CheckOutcome(True, None, examined)


def _thm36_word(w: tuple[int, ...]) -> str | None:
    image = Lambda(w)
    if Lambda(image) != w:
        return f"{render_permutation(w)}: reflection applied twice moved the word"
    a, b = perm_stats(w), perm_stats(image)
    if a.des_set != b.tilde_asc:
        return f"{render_permutation(w)}: DES does not map to the reflected ascent set"
    # the peak/leaf dictionary starts at two letters; a single letter is a
    # type-1 peak by the zero-boundary convention and has no counterpart
    if len(w) >= 2 and a.pk1 != b.pk2:
        return f"{render_permutation(w)}: pk1 does not map to pk2"
    if a.lmin != b.rmin:
        return f"{render_permutation(w)}: lmin does not map to rmin"
    lhs = tuple(getattr(a, name) for name in _EIGHT_TUPLE)
    rhs = tuple(getattr(b, name) for name in _EIGHT_TUPLE_SWAP)
    if lhs != rhs:
        return f"{render_permutation(w)}: 8-tuple transformation violated"
    return None


def _check_thm36(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(1, scope["maxN"] + 1):
        words = enumerate_avoiding_312(n)
        index, msg = _sharded_first_failure(words, _thm36_word, jobs)
        if index is not None:
            return CheckOutcome(False, msg, examined + index + 1)
        examined += len(words)
    return CheckOutcome(True, None, examined)


def _thm37_word(w: tuple[int, ...]) -> str | None:
    image = Upsilon(w)
    if Upsilon(image) != w:
        return f"{render_permutation(w)}: unbalanced-switch applied twice moved the word"
    a, b = perm_stats(w), perm_stats(image)
    if (a.pk, a.dd, a.da) != (b.pk, b.dd, b.da):
        return f"{render_permutation(w)}: (pk, dd, da) not preserved"
    if (a.st1, a.st2) != (b.st2, b.st1):
        return f"{render_permutation(w)}: (st1, st2) not exchanged"
    return None


def _check_thm37(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for n in range(1, scope["maxN"] + 1):
        words = enumerate_avoiding_312(n)
        index, msg = _sharded_first_failure(words, _thm37_word, jobs)
        if index is not None:
            return CheckOutcome(False, msg, examined + index + 1)
        examined += len(words)
    return CheckOutcome(True, None, examined)


def _check_orbit_structure(scope: dict, jobs: int) -> CheckOutcome:
    examined = 0
    for ms in _scope_multisets(scope):
        trees = enumerate_wibt(ms)
        examined += len(trees)
        orbits: dict[str, list] = {}
        for b in trees:
            orbits.setdefault(render_wibt(bij.orbit_canonical(b)), []).append(b)
        total = 0
        for key, members in sorted(orbits.items()):
            reps = [b for b in members if binary_stats(b).only_right == 0]
            if len(reps) != 1:
                return CheckOutcome(
                    False, f"{ms.render()}: orbit of {key} has {len(reps)} canonical members", examined
                )
            expected = 2 ** bij.single_child_count(reps[0])
            if len(members) != expected:
                return CheckOutcome(
                    False, f"{ms.render()}: orbit of {key} has size {len(members)}, expected {expected}", examined
                )
            total += len(members)
        if total != len(trees):
            return CheckOutcome(False, f"{ms.render()}: orbits do not partition the family", examined)
        # the orbit decomposition reproduces the tip-augmented expansion
        lhs_counts: dict = {}
        rhs_counts: dict = {}
        for b in trees:
            s = binary_stats(b)
            key3 = (s.leaf_count, s.only_left, s.only_right)
            lhs_counts[key3] = lhs_counts.get(key3, 0) + 1
        for key, members in orbits.items():
            rep = next(b for b in members if binary_stats(b).only_right == 0)
            s = binary_stats(rep)
            rhs_counts[(s.leaf_count, s.only_left)] = (
                rhs_counts.get((s.leaf_count, s.only_left), 0) + 1
            )
        V = _TIP_VARS
        x1, x2, y1, y2 = (Polynomial.variable(V, v) for v in V)
        lhs = Polynomial.zero(V)
        for (a, b_, c_), c in sorted(lhs_counts.items()):
            lhs = lhs + (x1 * y1) ** a * x2**b_ * y2**c_ * c
        rhs = Polynomial.zero(V)
        for (a, b_), c in sorted(rhs_counts.items()):
            rhs = rhs + (x1 * y1) ** a * (x2 + y2) ** b_ * c
        if lhs != rhs:
            return CheckOutcome(
                False, f"{ms.render()}: orbit representatives do not reproduce the distribution", examined
            )
    return CheckOutcome(True, None, examined)


# ---------------------------------------------------------------------------
# Registry


def _check(check_id: str, kind: str, default_scope: dict, description: str, runner) -> Check:
    return Check(check_id, kind, default_scope, description, runner)


CHECKS: dict[str, Check] = {
    c.check_id: c
    for c in (
        _check(
            "count-formula", "multiset", {"maxM": 7, "maxPartAtTop": 4},
            "enumeration size equals the product counting formula",
            _check_count_formula,
        ),
        _check(
            "thm1.2", "multiset", {"maxM": 7},
            "mirror involution swaps (sleaf,eleaf) and (yleaf,yint)",
            _check_thm12,
        ),
        _check(
            "thm1.4", "multiset", {"maxM": 7},
            "quadruple distribution equals the tip-augmented (x1y1)/(x2+y2) expansion",
            _check_thm14,
        ),
        _check(
            "cor1.5", "plane", {"maxN": 10},
            "plane-tree quadruple distribution equals the Motzkin polynomial expansion",
            _check_cor15,
        ),
        _check(
            "sym1.7", "plane", {"maxN": 9},
            "tip-augmented quintuple distribution is symmetric in u1 and u3",
            _check_sym17,
        ),
        _check(
            "thm1.8", "multiset", {"maxM": 7},
            "unbalanced-switch involution preserves four refined kinds and swaps (suleaf, entleaf)",
            _check_thm18,
        ),
        _check(
            "lem2.1", "multiset", {"maxM": 7},
            "coarse statistic transport to the binary image",
            _check_lem21,
        ),
        _check(
            "lem2.2", "multiset", {"maxM": 7},
            "refined statistic transport to the binary image",
            _check_lem22,
        ),
        _check(
            "cor2.4", "multiset", {"maxM": 7},
            "even and odd yleaf classes are equinumerous at each oleaf value; toggle bijection",
            _check_cor24,
        ),
        _check(
            "cor2.6", "plane", {"maxN": 10},
            "refined Narayana closed forms match enumeration",
            _check_cor26,
        ),
        _check(
            "thm2.7", "series", {"order": 8},
            "refined Narayana series: closed form = fixed point = enumeration, plus reference expansions",
            _check_thm27,
        ),
        _check(
            "thm2.8", "multiset", {"maxM": 7},
            "per-node partner claims under the level/degree exchange",
            _check_thm28,
        ),
        _check(
            "deutsch-eq", "multiset", {"maxM": 7},
            "switch route equals the recursive construction; degree/level laws",
            _check_deutsch,
        ),
        _check(
            "cor2.9", "plane", {"maxN": 9},
            "(oleaf, elint) symmetric on plane trees; elint counts; increasing-tree asymmetry",
            _check_cor29,
        ),
        _check(
            "cor2.10", "plane", {"maxN": 9},
            "(oleaf, yleaf) equidistributed with (elint, elleaf) on plane trees",
            _check_cor210,
        ),
        _check(
            "lem3.1", "perm", {"maxN": 7},
            "letter classification matches the min-split tree; pattern identities for pk1/pk2",
            _check_lem31,
        ),
        _check(
            "thm3.2", "perm", {"maxN": 9},
            "refined Eulerian recurrence and Riccati residual",
            _check_thm32,
        ),
        _check(
            "prop3.3", "perm", {"maxN": 9},
            "pk1 EGF closed form matches brute force",
            _check_prop33,
        ),
        _check(
            "eq3.1", "perm", {"maxN": 9},
            "two-root exponential formula matches at the (1,4,6) specialisation",
            _check_eq31,
        ),
        _check(
            "cor3.4", "perm", {"maxN": 9},
            "pk1 distribution versus consecutive-132 enumerators; multinomial form",
            _check_cor34,
        ),
        _check(
            "thm3.5", "perm", {"maxN": 9},
            "the two 8-tuples of run statistics are equidistributed over 312-avoiders",
            _check_thm35,
        ),
        _check(
            "thm3.6", "perm", {"maxN": 9},
            "shape reflection transports (DES, pk1, lmin) per permutation",
            _check_thm36,
        ),
        _check(
            "thm3.7", "perm", {"maxN": 9},
            "shape unbalanced-switch preserves (pk, dd, da) and swaps (st1, st2)",
            _check_thm37,
        ),
        _check(
            "orbit-structure", "multiset", {"maxM": 6},
            "switch-action orbits: unique canonical member, power-of-two sizes, distribution",
            _check_orbit_structure,
        ),
    )
}


def resolve_scope(
    check: Check,
    n: int | None = None,
    multiset: str | None = None,
    order: int | None = None,
) -> dict:
    scope = dict(check.default_scope)
    if check.kind == "multiset":
        if multiset is not None:
            scope = {"multiset": multiset}
        elif n is not None:
            scope = {"maxM": n}
            if "maxPartAtTop" in check.default_scope:
                scope["maxPartAtTop"] = check.default_scope["maxPartAtTop"]
    elif check.kind in ("perm", "plane"):
        if n is not None:
            scope = {"maxN": n}
    elif check.kind == "series":
        if order is not None:
            scope = {"order": order}
    cap_kind = {"multiset": "multiset", "perm": "perm", "plane": "plane", "series": "order"}[check.kind]
    cap = scope_cap(cap_kind)
    requested = scope.get("maxM") or scope.get("maxN") or scope.get("order")
    if requested is not None and requested > cap:
        raise ScopeError(
            f"requested scope {requested} exceeds the cap {cap} for {check.kind} checks; "
            "set TREELAB_MAX_SCOPE to raise it"
        )
    if "multiset" in scope:
        ms = Multiset.parse(scope["multiset"])
        if ms.size > cap:
            raise ScopeError(
                f"multiset size {ms.size} exceeds the cap {cap}; set TREELAB_MAX_SCOPE to raise it"
            )
    return scope


def run_check(
    check_id: str,
    n: int | None = None,
    multiset: str | None = None,
    order: int | None = None,
    jobs: int = 1,
    timing: bool = False,
) -> dict:
    """Run one named check and return its report as a JSON-ready dict."""
    if check_id not in CHECKS:
        raise KeyError(
            f"unknown check {check_id!r}; known: {', '.join(sorted(CHECKS))}"
        )
    check = CHECKS[check_id]
    scope = resolve_scope(check, n=n, multiset=multiset, order=order)
    started = time.perf_counter()
    outcome = check.runner(scope, jobs)
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    return {
        "schemaVersion": SCHEMA_VERSION,
        "checkId": check_id,
        "scope": scope,
        "status": "pass" if outcome.ok else "fail",
        "counterexample": outcome.counterexample,
        "elapsedMs": elapsed_ms if timing else None,
        "counts": outcome.count,
        "details": outcome.details,
    }


def check_ids() -> tuple[str, ...]:
    return tuple(CHECKS)
