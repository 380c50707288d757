"""Core data model: label multisets, weakly increasing trees, weakly
increasing binary trees, their text/JSON encodings, validation, exact
counting and exhaustive enumeration.

Conventions used throughout the package:

* Plane trees are rooted and ordered.  A weakly increasing tree (WIT) on a
  multiset M carries label 0 at the root and the elements of M on the other
  nodes, weakly increasing along every root-to-leaf path and weakly
  increasing right-to-left among siblings.
* A weakly increasing binary tree (WIBT) on M carries exactly the elements
  of M, weakly increasing downward.
* Node identity is the preorder index (root = 0).  Binary preorder visits
  node, left subtree, right subtree; plane preorder visits node, then the
  children left to right.
* Canonical text encodings carry no whitespace and are injective, so byte
  order on encodings is a total order on trees.  All enumeration streams
  are sorted by it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class MultisetSyntaxError(ValueError):
    pass


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidTreeError(DomainError):
    pass


class NodeIndexError(DomainError):
    pass


# ---------------------------------------------------------------------------
# Multisets


@dataclass(frozen=True)
class Multiset:
    """The label multiset {1^p1, ..., n^pn}, stored as (p1, ..., pn)."""

    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.multiplicities:
            raise MultisetSyntaxError("a multiset needs at least one value")
        for value, p in enumerate(self.multiplicities, start=1):
            if not isinstance(p, int) or p < 1:
                raise MultisetSyntaxError(
                    f"multiplicity of value {value} must be a positive integer, got {p!r}"
                )

    @property
    def size(self) -> int:
        return sum(self.multiplicities)

    @property
    def largest_value(self) -> int:
        return len(self.multiplicities)

    def partial_sums(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.multiplicities))

    def values(self) -> tuple[int, ...]:
        """All elements, weakly increasing, e.g. (1, 1, 2) for 1^2,2^1."""
        out: list[int] = []
        for value, p in enumerate(self.multiplicities, start=1):
            out.extend([value] * p)
        return tuple(out)

    def render(self) -> str:
        return ",".join(f"{v}^{p}" for v, p in enumerate(self.multiplicities, start=1))

    @classmethod
    def parse(cls, text: str) -> "Multiset":
        """Parse ``v^m,...`` with values 1..n contiguous ascending."""
        tokens = [tok.strip() for tok in text.split(",")]
        mults: list[int] = []
        for expected, tok in enumerate(tokens, start=1):
            head, sep, tail = tok.partition("^")
            if not sep or not head.isdigit() or not tail.isdigit():
                raise MultisetSyntaxError(f"malformed multiset item {tok!r}")
            value, p = int(head), int(tail)
            if value != expected:
                raise MultisetSyntaxError(
                    f"item {tok!r}: values must run 1..n without gaps (expected {expected})"
                )
            if p == 0:
                raise MultisetSyntaxError(f"item {tok!r}: zero multiplicity is not representable")
            mults.append(p)
        return cls(tuple(mults))


def parse_multiset(text: str) -> Multiset:
    return Multiset.parse(text)


def compositions(m: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of positive integers summing to m."""
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions(m - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Tree node types
#
# ``tag`` is an optional stable identifier used to follow individual nodes
# through compositions of maps; it never participates in equality.


@dataclass(frozen=True)
class PlaneNode:
    label: int
    children: tuple["PlaneNode", ...] = ()
    tag: int | None = field(default=None, compare=False, repr=False)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def degree(self) -> int:
        return len(self.children)


@dataclass(frozen=True)
class BinaryNode:
    label: int
    left: "BinaryNode | None" = None
    right: "BinaryNode | None" = None
    tag: int | None = field(default=None, compare=False, repr=False)

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None

    @property
    def child_count(self) -> int:
        return (self.left is not None) + (self.right is not None)


def wit_size(t: PlaneNode) -> int:
    return 1 + sum(wit_size(c) for c in t.children)


def wibt_size(b: BinaryNode | None) -> int:
    if b is None:
        return 0
    return 1 + wibt_size(b.left) + wibt_size(b.right)


def wit_preorder(t: PlaneNode) -> list[PlaneNode]:
    out: list[PlaneNode] = []
    stack = [t]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(reversed(node.children))
    return out


def wibt_preorder(b: BinaryNode | None) -> list[BinaryNode]:
    out: list[BinaryNode] = []

    def walk(node: BinaryNode | None) -> None:
        if node is None:
            return
        out.append(node)
        walk(node.left)
        walk(node.right)

    walk(b)
    return out


def tag_wit_preorder(t: PlaneNode) -> PlaneNode:
    """Copy of t whose tags are the preorder indices."""
    counter = itertools.count()

    def walk(node: PlaneNode) -> PlaneNode:
        tag = next(counter)
        return PlaneNode(node.label, tuple(walk(c) for c in node.children), tag=tag)

    return walk(t)


# ---------------------------------------------------------------------------
# Text encodings
#
#   WIT:   tree  := label | label "(" tree {"," tree} ")"
#   WIBT:  btree := label | label "(" child ";" child ")"
#          child := btree | "-"
#
# A bare label is a leaf; whitespace is insignificant on input and absent
# from canonical output.


def render_wit(t: PlaneNode) -> str:
    if not t.children:
        return str(t.label)
    return f"{t.label}({','.join(render_wit(c) for c in t.children)})"


def render_wibt(b: BinaryNode) -> str:
    if b.is_leaf:
        return str(b.label)
    left = render_wibt(b.left) if b.left is not None else "-"
    right = render_wibt(b.right) if b.right is not None else "-"
    return f"{b.label}({left};{right})"


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise TreeSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            found = self.text[start] if start < len(self.text) else "end of input"
            raise TreeSyntaxError(f"expected a label, found {found!r}", start)
        return int(self.text[start : self.pos])

    def done(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise TreeSyntaxError(f"trailing input {self.text[self.pos]!r}", self.pos)


def parse_wit(text: str) -> PlaneNode:
    cur = _Cursor(text)
    node = _parse_wit(cur)
    cur.done()
    return node


def _parse_wit(cur: _Cursor) -> PlaneNode:
    label = cur.number()
    if cur.peek() != "(":
        return PlaneNode(label)
    cur.expect("(")
    children = [_parse_wit(cur)]
    while cur.peek() == ",":
        cur.expect(",")
        children.append(_parse_wit(cur))
    cur.expect(")")
    return PlaneNode(label, tuple(children))


def parse_wibt(text: str) -> BinaryNode:
    cur = _Cursor(text)
    node = _parse_wibt(cur)
    cur.done()
    return node


def _parse_wibt(cur: _Cursor) -> BinaryNode:
    label = cur.number()
    if cur.peek() != "(":
        return BinaryNode(label)
    cur.expect("(")
    left = _parse_wibt_child(cur)
    cur.expect(";")
    right = _parse_wibt_child(cur)
    cur.expect(")")
    return BinaryNode(label, left, right)


def _parse_wibt_child(cur: _Cursor) -> BinaryNode | None:
    if cur.peek() == "-":
        cur.expect("-")
        return None
    return _parse_wibt(cur)


def wit_to_json(t: PlaneNode) -> list:
    return [t.label, [wit_to_json(c) for c in t.children]]


def wit_from_json(data: list) -> PlaneNode:
    label, children = data
    return PlaneNode(int(label), tuple(wit_from_json(c) for c in children))


def wibt_to_json(b: BinaryNode | None) -> list | None:
    if b is None:
        return None
    return [b.label, wibt_to_json(b.left), wibt_to_json(b.right)]


def wibt_from_json(data: list | None) -> BinaryNode | None:
    if data is None:
        return None
    label, left, right = data
    return BinaryNode(int(label), wibt_from_json(left), wibt_from_json(right))


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    node: int  # preorder index of the offending node
    rule: str

    def __str__(self) -> str:
        return f"node {self.node}: {self.rule}"


def _contiguity_violation(labels: list[int]) -> Violation | None:
    present = set(labels)
    for value in range(1, max(present) + 1):
        if value not in present:
            return Violation(0, f"label values must cover 1..n contiguously (missing {value})")
    return None


def validate_wit(t: PlaneNode) -> Violation | None:
    """None if t is a weakly increasing tree on some multiset, else the
    first violation in preorder."""
    if t.label != 0:
        return Violation(0, "root label must be 0")
    if not t.children:
        return Violation(0, "a weakly increasing tree needs at least one edge")
    counter = itertools.count()
    labels: list[int] = []

    def walk(node: PlaneNode, parent_label: int, is_root: bool) -> Violation | None:
        index = next(counter)
        if not is_root:
            if node.label < 1:
                return Violation(index, "non-root labels must be positive")
            if node.label < parent_label:
                return Violation(index, "labels along a root path must weakly increase")
            labels.append(node.label)
        for j in range(len(node.children) - 1):
            if node.children[j].label < node.children[j + 1].label:
                return Violation(
                    index,
                    f"child labels must weakly decrease left to right (children {j} and {j + 1})",
                )
        for c in node.children:
            v = walk(c, node.label, False)
            if v is not None:
                return v
        return None

    v = walk(t, 0, True)
    if v is not None:
        return v
    return _contiguity_violation(labels)


def validate_wibt(b: BinaryNode) -> Violation | None:
    """None if b is a weakly increasing binary tree on some multiset."""
    counter = itertools.count()
    labels: list[int] = []

    def walk(node: BinaryNode, parent_label: int) -> Violation | None:
        index = next(counter)
        if node.label < 1:
            return Violation(index, "labels must be positive")
        if node.label < parent_label:
            return Violation(index, "labels must weakly increase downward")
        labels.append(node.label)
        for child in (node.left, node.right):
            if child is not None:
                v = walk(child, node.label)
                if v is not None:
                    return v
        return None

    v = walk(b, 0)
    if v is not None:
        return v
    return _contiguity_violation(labels)


def require_wit(t: PlaneNode) -> None:
    v = validate_wit(t)
    if v is not None:
        raise InvalidTreeError(f"not a weakly increasing tree: {v}")


def require_wibt(b: BinaryNode) -> None:
    v = validate_wibt(b)
    if v is not None:
        raise InvalidTreeError(f"not a weakly increasing binary tree: {v}")


def multiset_of_wit(t: PlaneNode) -> Multiset:
    labels = sorted(node.label for node in wit_preorder(t) if node is not t)
    mults = [0] * max(labels)
    for lab in labels:
        mults[lab - 1] += 1
    return Multiset(tuple(mults))


def multiset_of_wibt(b: BinaryNode) -> Multiset:
    labels = sorted(node.label for node in wibt_preorder(b))
    mults = [0] * max(labels)
    for lab in labels:
        mults[lab - 1] += 1
    return Multiset(tuple(mults))


# ---------------------------------------------------------------------------
# Exact counting


def count_wit(ms: Multiset) -> int:
    """Number of weakly increasing trees on ms, by the product formula
    (1/(1+N_n)) * prod_i C(N_i + p_i, p_i) with N_i the partial sums."""
    sums = ms.partial_sums()
    prod = 1
    for n_i, p_i in zip(sums, ms.multiplicities):
        prod *= comb(n_i + p_i, p_i)
    quotient, remainder = divmod(prod, 1 + sums[-1])
    if remainder:
        raise ArithmeticError("counting formula did not divide exactly")
    return quotient


# ---------------------------------------------------------------------------
# Enumeration
#
# Shape-first strategy: generate all binary shapes on m nodes, then all
# weakly increasing labelings of each shape (the root of every subtree must
# take a copy of the minimum of its own sub-multiset), then obtain the
# plane-tree family as the preimage under the plane/binary correspondence.


@lru_cache(maxsize=None)
def binary_shapes(n: int) -> tuple[BinaryNode | None, ...]:
    """All binary shapes on n nodes (labels 0, shared immutable nodes)."""
    if n == 0:
        return (None,)
    out: list[BinaryNode] = []
    for left_size in range(n):
        for left in binary_shapes(left_size):
            for right in binary_shapes(n - 1 - left_size):
                out.append(BinaryNode(0, left, right))
    return tuple(out)


def _take_splits(
    counts: tuple[tuple[int, int], ...], k: int
) -> Iterator[tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]]:
    """Split a multiset given as ((value, mult), ...) into a size-k part and
    the rest, in all ways."""
    if k == 0:
        yield (), counts
        return
    if not counts:
        return
    (value, mult), rest = counts[0], counts[1:]
    for take in range(min(mult, k), -1, -1):
        for left, right in _take_splits(rest, k - take):
            taken = ((value, take),) + left if take else left
            kept = ((value, mult - take),) + right if mult - take else right
            yield taken, kept


def _label_shape(
    shape: BinaryNode | None, counts: tuple[tuple[int, int], ...]
) -> Iterator[BinaryNode | None]:
    if shape is None:
        yield None
        return
    value, mult = counts[0]
    rest = ((value, mult - 1),) + counts[1:] if mult > 1 else counts[1:]
    left_size = wibt_size(shape.left)
    for left_counts, right_counts in _take_splits(rest, left_size):
        for left in _label_shape(shape.left, left_counts):
            for right in _label_shape(shape.right, right_counts):
                yield BinaryNode(value, left, right)


@lru_cache(maxsize=None)
def _enumerate_wibt(mults: tuple[int, ...]) -> tuple[BinaryNode, ...]:
    counts = tuple((v, p) for v, p in enumerate(mults, start=1))
    m = sum(mults)
    trees: list[BinaryNode] = []
    for shape in binary_shapes(m):
        trees.extend(_label_shape(shape, counts))  # type: ignore[arg-type]
    trees.sort(key=render_wibt)
    return tuple(trees)


def enumerate_wibt(ms: Multiset) -> tuple[BinaryNode, ...]:
    """All weakly increasing binary trees on ms, each exactly once, sorted
    by canonical encoding."""
    return _enumerate_wibt(ms.multiplicities)


@lru_cache(maxsize=None)
def _enumerate_wit(mults: tuple[int, ...]) -> tuple[PlaneNode, ...]:
    from .bijections import rho_inv

    trees = [rho_inv(b) for b in _enumerate_wibt(mults)]
    trees.sort(key=render_wit)
    return tuple(trees)


def enumerate_wit(ms: Multiset) -> tuple[PlaneNode, ...]:
    """All weakly increasing trees on ms, sorted by canonical encoding."""
    return _enumerate_wit(ms.multiplicities)


def plane_trees(n: int) -> tuple[PlaneNode, ...]:
    """Plane trees with n edges, as weakly increasing trees on {1^n}."""
    return _enumerate_wit((n,))


def increasing_trees(n: int) -> tuple[PlaneNode, ...]:
    """Increasing trees on {1, ..., n}."""
    return _enumerate_wit((1,) * n)
