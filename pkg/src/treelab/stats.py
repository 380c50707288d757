"""Node-classification statistics on both tree representations, the
transport dictionary between them, and exact distribution polynomials.

Leaf taxonomy on a weakly increasing tree: a leaf is *old* when it is the
leftmost child of its parent and *young* otherwise; an old leaf is a
*singleton* (only child) or an *elder* (has siblings).  An internal node is
classified after its leftmost child: singleton internal, elder internal, or
young internal when that child is itself internal.  The refined kinds split
each class once more (uncle/no uncle for singletons, twin/non-twin for
elders, second/younger for young leaves).

Levels are counted by edges from the root, so level 0 is even and the root
always counts toward el; deg_q / od_q profiles map a degree to the number
of nodes (nodes at odd levels) with that degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import BinaryNode, DomainError, Multiset, PlaneNode, enumerate_wit, wit_size
from .polynomials import Polynomial


class UnknownStatisticError(ValueError):
    pass


@dataclass
class WitStatVector:
    sleaf: int = 0
    eleaf: int = 0
    yleaf: int = 0
    sint: int = 0
    eint: int = 0
    yint: int = 0
    suleaf: int = 0
    snuleaf: int = 0
    etleaf: int = 0
    entleaf: int = 0
    syleaf: int = 0
    yerleaf: int = 0
    ystleaf: int = 0
    el: int = 0
    elint: int = 0
    elleaf: int = 0
    deg: dict[int, int] = field(default_factory=dict)
    od: dict[int, int] = field(default_factory=dict)

    @property
    def oleaf(self) -> int:
        return self.sleaf + self.eleaf

    @property
    def oint(self) -> int:
        return self.sint + self.eint

    @property
    def leaf(self) -> int:
        return self.deg.get(0, 0)


@dataclass
class BinaryStatVector:
    right_leaf: int = 0
    left_leaf: int = 0
    only_left: int = 0
    only_right: int = 0
    leaf_count: int = 0
    rl_parent_has_left: int = 0
    rl_parent_no_left: int = 0
    ll_parent_no_right: int = 0
    ll_parent_has_right: int = 0
    ol_left_has_left: int = 0
    ol_left_no_left: int = 0
    twin: int = 0


def wit_stats(t: PlaneNode) -> WitStatVector:
    """All statistics of a weakly increasing tree in one pass."""
    v = WitStatVector()

    def walk(node: PlaneNode, level: int, has_elder_sibling: bool) -> None:
        degree = node.degree
        v.deg[degree] = v.deg.get(degree, 0) + 1
        if level % 2:
            v.od[degree] = v.od.get(degree, 0) + 1
        else:
            v.el += 1
            if degree:
                v.elint += 1
            else:
                v.elleaf += 1
        if degree:
            first = node.children[0]
            if first.is_leaf:
                if degree == 1:
                    v.sint += 1
                else:
                    v.eint += 1
            else:
                v.yint += 1
        for j, child in enumerate(node.children):
            if child.is_leaf:
                if j == 0:
                    if degree == 1:
                        v.sleaf += 1
                        if has_elder_sibling:
                            v.suleaf += 1
                        else:
                            v.snuleaf += 1
                    else:
                        v.eleaf += 1
                        if node.children[1].is_leaf:
                            v.etleaf += 1
                        else:
                            v.entleaf += 1
                else:
                    v.yleaf += 1
                    if j == 1:
                        v.syleaf += 1
                    else:
                        v.yerleaf += 1
                if j == degree - 1:
                    v.ystleaf += 1
            walk(child, level + 1, j > 0)

    walk(t, 0, False)
    return v


def binary_stats(b: BinaryNode) -> BinaryStatVector:
    """Structural counts on a binary tree; labels are never inspected."""
    v = BinaryStatVector()

    def walk(node: BinaryNode, is_left: bool, is_right: bool) -> None:
        left, right = node.left, node.right
        if node.is_leaf:
            v.leaf_count += 1
            if is_left:
                v.left_leaf += 1
            if is_right:
                v.right_leaf += 1
            return
        if left is not None and right is not None and left.is_leaf and right.is_leaf:
            v.twin += 1
        if right is not None and right.is_leaf:
            if left is not None:
                v.rl_parent_has_left += 1
            else:
                v.rl_parent_no_left += 1
        if left is not None and left.is_leaf:
            if right is not None:
                v.ll_parent_has_right += 1
            else:
                v.ll_parent_no_right += 1
        if left is not None and right is None:
            v.only_left += 1
            if left.left is not None:
                v.ol_left_has_left += 1
            else:
                v.ol_left_no_left += 1
        if right is not None and left is None:
            v.only_right += 1
        if left is not None:
            walk(left, True, False)
        if right is not None:
            walk(right, False, True)

    walk(b, False, False)
    return v


# The dictionary of Lemma-style statistic transport between a weakly
# increasing tree and its binary image, valid for trees with >= 2 edges.
TRANSPORT_PAIRS: tuple[tuple[str, str], ...] = (
    ("sleaf", "right_leaf"),
    ("eleaf", "left_leaf"),
    ("yleaf", "only_left"),
    ("yint", "only_right"),
    ("suleaf", "rl_parent_has_left"),
    ("snuleaf", "rl_parent_no_left"),
    ("etleaf", "ll_parent_no_right"),
    ("entleaf", "ll_parent_has_right"),
    ("yerleaf", "ol_left_has_left"),
    ("syleaf", "ol_left_no_left"),
    ("oleaf", "leaf_count"),
)


def transport_check(t: PlaneNode, pairs: Iterable[tuple[str, str]] = TRANSPORT_PAIRS) -> str | None:
    """None when every statistic matches its binary counterpart under the
    transport dictionary, else a mismatch description."""
    from .bijections import rho
    from .core import render_wit

    if wit_size(t) < 3:
        raise DomainError("transport dictionary requires at least two edges")
    ws = wit_stats(t)
    bs = binary_stats(rho(t))
    for wit_name, bin_name in pairs:
        lhs = getattr(ws, wit_name)
        rhs = getattr(bs, bin_name)
        if lhs != rhs:
            return (
                f"{wit_name}={lhs} but {bin_name}={rhs} on {render_wit(t)}"
            )
    return None


# ---------------------------------------------------------------------------
# Statistic access by name

_SIMPLE_STATS = (
    "sleaf", "eleaf", "yleaf", "sint", "eint", "yint", "oleaf", "oint", "leaf",
    "suleaf", "snuleaf", "etleaf", "entleaf", "syleaf", "yerleaf", "ystleaf",
    "el", "elint", "elleaf",
)


def stat_names() -> tuple[str, ...]:
    return _SIMPLE_STATS + ("deg:<q>", "od:<q>")


def stat_value(v: WitStatVector, name: str) -> int:
    if name in _SIMPLE_STATS:
        return getattr(v, name)
    for prefix, profile in (("deg:", v.deg), ("od:", v.od)):
        if name.startswith(prefix):
            arg = name[len(prefix):]
            if not arg.isdigit():
                raise UnknownStatisticError(
                    f"{name!r}: expected an integer after {prefix!r}"
                )
            return profile.get(int(arg), 0)
    raise UnknownStatisticError(
        f"unknown statistic {name!r}; valid names: {', '.join(stat_names())}"
    )


# ---------------------------------------------------------------------------
# Distribution polynomials

FAMILIES = ("all", "tip_augmented")


def distribution_polynomial(
    ms: Multiset,
    stats: Sequence[str],
    var_names: Sequence[str],
    family: str = "all",
) -> Polynomial:
    """Sum over the chosen family of the monomial prod_i var_i^stat_i(T),
    with exact integer coefficients."""
    if len(stats) != len(var_names):
        raise ValueError("stats and vars must have equal length")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    for name in stats:
        stat_value(WitStatVector(), name)  # validates the name
    counts: dict[tuple[int, ...], int] = {}
    for tree in enumerate_wit(ms):
        v = wit_stats(tree)
        if family == "tip_augmented" and v.yint != 0:
            continue
        key = tuple(stat_value(v, name) for name in stats)
        counts[key] = counts.get(key, 0) + 1
    return Polynomial(tuple(var_names), {k: Fraction(c) for k, c in counts.items()})


def quadruple_convention_polynomial(n: int) -> Polynomial:
    """Distribution of (sleaf, eleaf, yleaf, yint) over plane trees with n
    edges in variables (x1, x2, x3, x4).  For n == 1 the conventional seed
    x2 is returned instead of the directly computed x1."""
    variables = ("x1", "x2", "x3", "x4")
    if n == 1:
        return Polynomial.variable(variables, "x2")
    return distribution_polynomial(
        Multiset((n,)), ("sleaf", "eleaf", "yleaf", "yint"), variables
    )
