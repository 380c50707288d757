"""Tree-to-tree maps built from branch switching.

The plane/binary correspondence ``rho`` sends a weakly increasing tree T to
the binary tree in which, for every non-root node x of T,

* the right child of x is the rightmost child of x in T, and
* the left child of x is the closest elder sibling of x in T,

with the rightmost child of T's root as the binary root.  Every other map
in this module is ``rho_inv . f . rho`` for some f that switches the left
and right branches at a structurally defined set of nodes: all nodes
(``mirror``), the unbalanced nodes (``psi``), the heads (``theta``), one
chosen node (``switch_at``/``varphi``).

Switches at distinct nodes commute, so a set-indexed product of switches is
well defined; all such products are computed in a single rebuild pass whose
predicates are evaluated on the *input* tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    BinaryNode,
    DomainError,
    NodeIndexError,
    PlaneNode,
    require_wibt,
    require_wit,
    wibt_size,
)


# ---------------------------------------------------------------------------
# The correspondence rho and its inverse


def rho(t: PlaneNode) -> BinaryNode:
    require_wit(t)
    binary = _forest_to_binary(t.children)
    assert binary is not None
    return binary


def _forest_to_binary(children: tuple[PlaneNode, ...]) -> BinaryNode | None:
    # Fold the sibling list left to right: each node's right branch encodes
    # its own children, its left branch its closest elder sibling.
    acc: BinaryNode | None = None
    for child in children:
        acc = BinaryNode(
            child.label,
            left=acc,
            right=_forest_to_binary(child.children),
            tag=child.tag,
        )
    return acc


def rho_inv(b: BinaryNode) -> PlaneNode:
    require_wibt(b)
    return PlaneNode(0, tuple(_binary_to_forest(b)))


def _binary_to_forest(b: BinaryNode | None) -> list[PlaneNode]:
    chain: list[BinaryNode] = []
    node = b
    while node is not None:
        chain.append(node)
        node = node.left
    chain.reverse()
    return [
        PlaneNode(x.label, tuple(_binary_to_forest(x.right)), tag=x.tag) for x in chain
    ]


# ---------------------------------------------------------------------------
# Switching primitives


def switch_at(b: BinaryNode, index: int) -> BinaryNode:
    """Exchange the two branches of the node at the given 0-based preorder
    index; involutive, and switches at distinct nodes commute."""
    require_wibt(b)
    size = wibt_size(b)
    if not 0 <= index < size:
        raise NodeIndexError(f"node index {index} out of range for a {size}-node tree")
    counter = itertools.count()

    def rebuild(node: BinaryNode | None) -> BinaryNode | None:
        if node is None:
            return None
        me = next(counter)
        left = rebuild(node.left)
        right = rebuild(node.right)
        if me == index:
            left, right = right, left
        return BinaryNode(node.label, left, right, tag=node.tag)

    result = rebuild(b)
    assert result is not None
    return result


def _switch_where(b: BinaryNode, keep) -> BinaryNode:
    """Rebuild b switching at every node for which keep(node) is true; the
    predicate sees nodes of the input tree."""

    def rebuild(node: BinaryNode | None) -> BinaryNode | None:
        if node is None:
            return None
        left = rebuild(node.left)
        right = rebuild(node.right)
        if keep(node):
            left, right = right, left
        return BinaryNode(node.label, left, right, tag=node.tag)

    result = rebuild(b)
    assert result is not None
    return result


def mirror(b: BinaryNode) -> BinaryNode:
    """Switch at every node (the minor symmetry)."""
    require_wibt(b)
    return _switch_where(b, lambda node: True)


def Phi(t: PlaneNode) -> PlaneNode:
    """Involution swapping (sleaf, eleaf) and (yleaf, yint)."""
    return rho_inv(mirror(rho(t)))


def is_unbalanced(node: BinaryNode) -> bool:
    """Both children present and exactly one of them a leaf."""
    if node.left is None or node.right is None:
        return False
    return node.left.is_leaf != node.right.is_leaf


def unbalanced_set(b: BinaryNode) -> frozenset[int]:
    require_wibt(b)
    return frozenset(
        i for i, node in enumerate(_preorder(b)) if is_unbalanced(node)
    )


def psi(b: BinaryNode) -> BinaryNode:
    """Switch at every unbalanced node; an involution since unbalancedness
    is preserved by the switch."""
    require_wibt(b)
    return _switch_where(b, is_unbalanced)


def Psi(t: PlaneNode) -> PlaneNode:
    """Involution preserving (snuleaf, etleaf, syleaf, yerleaf, yint) and
    exchanging (suleaf, entleaf)."""
    return rho_inv(psi(rho(t)))


def _preorder(b: BinaryNode) -> list[BinaryNode]:
    out: list[BinaryNode] = []

    def walk(node: BinaryNode | None) -> None:
        if node is None:
            return
        out.append(node)
        walk(node.left)
        walk(node.right)

    walk(b)
    return out


def varphi(b: BinaryNode, i: int) -> BinaryNode:
    """Generator of the sign-flip group action: switch at the i-th preorder
    node (1-based) when it has exactly one child, else do nothing.  The
    preorder sequence of nodes is unchanged either way."""
    require_wibt(b)
    size = wibt_size(b)
    if not 1 <= i <= size:
        raise NodeIndexError(f"position {i} out of range 1..{size}")
    node = _preorder(b)[i - 1]
    if node.child_count != 1:
        return b
    return switch_at(b, i - 1)


def orbit_canonical(b: BinaryNode) -> BinaryNode:
    """The unique member of b's switch-action orbit with no only-right
    node: every single child is forced into the left slot.  Idempotent."""
    require_wibt(b)

    def rebuild(node: BinaryNode | None) -> BinaryNode | None:
        if node is None:
            return None
        left = rebuild(node.left)
        right = rebuild(node.right)
        if left is None and right is not None:
            left, right = right, None
        return BinaryNode(node.label, left, right, tag=node.tag)

    result = rebuild(b)
    assert result is not None
    return result


def single_child_count(b: BinaryNode) -> int:
    return sum(1 for node in _preorder(b) if node.child_count == 1)


# ---------------------------------------------------------------------------
# Heads, odd right-levels, and the level/degree exchange


def heads(b: BinaryNode) -> frozenset[int]:
    """Preorder indices of the heads: the root and every right child."""
    require_wibt(b)
    found: set[int] = set()
    counter = itertools.count()

    def walk(node: BinaryNode | None, is_head: bool) -> None:
        if node is None:
            return
        index = next(counter)
        if is_head:
            found.add(index)
        walk(node.left, False)
        walk(node.right, True)

    walk(b, True)
    return frozenset(found)


def theta(b: BinaryNode) -> BinaryNode:
    """Switch at every head of b."""
    require_wibt(b)

    def rebuild(node: BinaryNode | None, is_head: bool) -> BinaryNode | None:
        if node is None:
            return None
        left = rebuild(node.left, False)
        right = rebuild(node.right, True)
        if is_head:
            left, right = right, left
        return BinaryNode(node.label, left, right, tag=node.tag)

    result = rebuild(b, True)
    assert result is not None
    return result


def odd_right_level_set(b: BinaryNode) -> frozenset[int]:
    """Preorder indices of nodes at odd right-level, i.e. with an even
    number of right edges on their root path (the root always qualifies)."""
    require_wibt(b)
    found: set[int] = set()
    counter = itertools.count()

    def walk(node: BinaryNode | None, right_edges: int) -> None:
        if node is None:
            return
        index = next(counter)
        if right_edges % 2 == 0:
            found.add(index)
        walk(node.left, right_edges)
        walk(node.right, right_edges + 1)

    walk(b, 0)
    return frozenset(found)


def theta_inv(b: BinaryNode) -> BinaryNode:
    """Switch at every node at odd right-level; inverse of theta."""
    require_wibt(b)

    def rebuild(node: BinaryNode | None, right_edges: int) -> BinaryNode | None:
        if node is None:
            return None
        left = rebuild(node.left, right_edges)
        right = rebuild(node.right, right_edges + 1)
        if right_edges % 2 == 0:
            left, right = right, left
        return BinaryNode(node.label, left, right, tag=node.tag)

    result = rebuild(b, 0)
    assert result is not None
    return result


def Theta(t: PlaneNode) -> PlaneNode:
    """Level/degree-exchanging bijection: deg_q becomes od_{q-1} (q >= 1)
    and the leaf count becomes the even-level node count."""
    return rho_inv(theta(rho(t)))


def Theta_inv(t: PlaneNode) -> PlaneNode:
    return rho_inv(theta_inv(rho(t)))


def hat_recursive(t: PlaneNode) -> PlaneNode:
    """Recursive form of Theta.

    Detach the subtree H at the root's rightmost child, transform it
    recursively, give its root the old root's label, attach a fresh node
    carrying H's root label as the new rightmost child, and hang the
    recursively transformed remaining branches under that node, rightmost
    branch first.
    """
    require_wit(t)
    return _hat(t)


def _hat(node: PlaneNode) -> PlaneNode:
    if not node.children:
        return PlaneNode(node.label)
    rightmost = node.children[-1]
    transformed = _hat(rightmost)
    new_head = PlaneNode(rightmost.label, tuple(_hat(c) for c in node.children[:-1]))
    return PlaneNode(node.label, transformed.children + (new_head,))


# ---------------------------------------------------------------------------
# Partner map


@dataclass(frozen=True)
class PartnerEntry:
    node: int
    partner: int
    case: str  # "internal" | "non-youngest-leaf" | "youngest-leaf"
    path_length: int | None  # edges from node to partner; youngest leaves only


@dataclass(frozen=True)
class PartnerMap:
    entries: tuple[PartnerEntry, ...]

    def as_dict(self) -> dict[int, int]:
        return {e.node: e.partner for e in self.entries}

    def is_permutation(self) -> bool:
        images = [e.partner for e in self.entries]
        return sorted(images) == list(range(len(self.entries)))


def partner_map(t: PlaneNode) -> PartnerMap:
    """Associate to every node its partner: internal nodes pair with their
    youngest (rightmost) child, non-youngest leaves with themselves, and
    youngest leaves with their first non-youngest ancestor (the root
    qualifies).  The result is a permutation of the preorder indices."""
    require_wit(t)
    parent: dict[int, int] = {}
    youngest: dict[int, bool] = {}
    last_child: dict[int, int] = {}
    is_leaf: dict[int, bool] = {}
    counter = itertools.count()

    def walk(node: PlaneNode, parent_index: int | None, is_youngest: bool) -> int:
        index = next(counter)
        youngest[index] = is_youngest
        is_leaf[index] = node.is_leaf
        if parent_index is not None:
            parent[index] = parent_index
        child_indices = [
            walk(c, index, j == len(node.children) - 1)
            for j, c in enumerate(node.children)
        ]
        if child_indices:
            last_child[index] = child_indices[-1]
        return index

    walk(t, None, False)
    entries: list[PartnerEntry] = []
    for index in sorted(youngest):
        if not is_leaf[index]:
            entries.append(PartnerEntry(index, last_child[index], "internal", None))
        elif not youngest[index]:
            entries.append(PartnerEntry(index, index, "non-youngest-leaf", None))
        else:
            steps = 0
            current = index
            while youngest[current]:
                current = parent[current]
                steps += 1
            entries.append(PartnerEntry(index, current, "youngest-leaf", steps))
    return PartnerMap(tuple(entries))


# ---------------------------------------------------------------------------
# Parity toggle


def parity_toggle(t: PlaneNode) -> PlaneNode:
    """Switch at the first preorder single-child node of the binary image,
    flipping the parity of yleaf while preserving oleaf.  Involutive."""
    b = rho(t)
    target = next(
        (i for i, node in enumerate(_preorder(b)) if node.child_count == 1), None
    )
    if target is None:
        raise DomainError("no single-child node")
    return rho_inv(switch_at(b, target))
