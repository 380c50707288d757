"""Permutation statistics, consecutive patterns, the min-split tree map,
and the two shape involutions on 312-avoiding permutations.

The boundary convention pads a permutation with zeros on both sides, so
every position is exactly one of peak / double descent / double ascent /
valley; a peak is type 1 when its left neighbour is at most its right
neighbour and type 2 otherwise.

The min-split map sends a word with distinct letters to the binary tree
rooted at its least letter, with the prefix and suffix mapped recursively
to the branches; reading the tree in order recovers the word.  On
312-avoiders the node labels coincide with the preorder numbering, so the
underlying shape alone remembers the permutation; the involutions act on
that shape and re-read the word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import BinaryNode, DomainError, binary_shapes


class NotPermutationError(DomainError):
    pass


class RepeatedLetterError(DomainError):
    pass


class NotAvoidingError(DomainError):
    pass


def parse_permutation(text: str) -> tuple[int, ...]:
    tokens = text.replace(",", " ").split()
    word = []
    for tok in tokens:
        if not tok.isdigit():
            raise NotPermutationError(f"bad letter {tok!r}")
        word.append(int(tok))
    if not word:
        raise NotPermutationError("empty permutation")
    return tuple(word)


def render_permutation(word: tuple[int, ...]) -> str:
    return " ".join(str(x) for x in word)


def require_distinct(word: tuple[int, ...]) -> None:
    if len(set(word)) != len(word):
        raise RepeatedLetterError(f"letters must be distinct in {word}")


def require_sn(word: tuple[int, ...]) -> None:
    if sorted(word) != list(range(1, len(word) + 1)):
        raise NotPermutationError(f"{word} is not a permutation of 1..{len(word)}")


# ---------------------------------------------------------------------------
# Statistics


@dataclass(frozen=True)
class PermStatVector:
    des_set: frozenset[int]
    asc_set: frozenset[int]
    tilde_asc: frozenset[int]
    des: int
    asc: int
    pk: int
    pk1: int
    pk2: int
    dd: int
    da: int
    lmin: int
    rmin: int
    ldr: int
    rar: int
    mna: int
    mnd: int
    st1: int
    st2: int


def _greedy_nonadjacent(indices: frozenset[int]) -> int:
    # Left-to-right greedy selection is optimal for maximum independent
    # sets on a path of indices.
    count, last = 0, -2
    for i in sorted(indices):
        if i > last + 1:
            count += 1
            last = i
    return count


def perm_stats(word: tuple[int, ...]) -> PermStatVector:
    require_sn(word)
    n = len(word)
    des = frozenset(i for i in range(1, n) if word[i - 1] > word[i])
    asc = frozenset(i for i in range(1, n) if word[i - 1] < word[i])
    padded = (0,) + word + (0,)
    pk1 = pk2 = dd = da = 0
    for i in range(1, n + 1):
        prev, here, nxt = padded[i - 1], padded[i], padded[i + 1]
        if prev < here > nxt:
            if prev <= nxt:
                pk1 += 1
            else:
                pk2 += 1
        elif prev > here > nxt:
            dd += 1
        elif prev < here < nxt:
            da += 1
    lmin = rmin = 0
    running = n + 1
    for x in word:
        if x < running:
            lmin += 1
            running = x
    running = n + 1
    for x in reversed(word):
        if x < running:
            rmin += 1
            running = x
    ldr = 1
    while ldr < n and word[ldr - 1] > word[ldr]:
        ldr += 1
    rar = 1
    while rar < n and word[n - rar - 1] < word[n - rar]:
        rar += 1
    return PermStatVector(
        des_set=des,
        asc_set=asc,
        tilde_asc=frozenset(n - i for i in asc),
        des=len(des),
        asc=len(asc),
        pk=pk1 + pk2,
        pk1=pk1,
        pk2=pk2,
        dd=dd,
        da=da,
        lmin=lmin,
        rmin=rmin,
        ldr=ldr,
        rar=rar,
        mna=_greedy_nonadjacent(asc),
        mnd=_greedy_nonadjacent(des),
        st1=consecutive_pattern_count((0,) + word, (1, 3, 2, 4)),
        st2=consecutive_pattern_count(word + (0,), (3, 2, 4, 1)),
    )


PERM_STAT_NAMES = (
    "des", "asc", "pk", "pk1", "pk2", "dd", "da", "lmin", "rmin",
    "ldr", "rar", "mna", "mnd", "st1", "st2",
)


def perm_stat_value(v: PermStatVector, name: str) -> int:
    if name not in PERM_STAT_NAMES:
        raise ValueError(f"unknown statistic {name!r}; valid: {', '.join(PERM_STAT_NAMES)}")
    return getattr(v, name)


# ---------------------------------------------------------------------------
# Consecutive patterns


def _ranks(window: tuple[int, ...]) -> tuple[int, ...]:
    order = sorted(window)
    return tuple(order.index(x) + 1 for x in window)


def consecutive_pattern_count(word: tuple[int, ...], pattern: tuple[int, ...]) -> int:
    """Number of contiguous windows of the word order-isomorphic to the
    pattern; the word may carry boundary zeros but must be repetition-free."""
    require_distinct(word)
    k = len(pattern)
    if sorted(pattern) != list(range(1, k + 1)):
        raise NotPermutationError(f"pattern {pattern} is not a permutation of 1..{k}")
    return sum(
        1
        for i in range(len(word) - k + 1)
        if _ranks(word[i : i + k]) == pattern
    )


def st1(word: tuple[int, ...]) -> int:
    return consecutive_pattern_count((0,) + tuple(word), (1, 3, 2, 4))


def st2(word: tuple[int, ...]) -> int:
    return consecutive_pattern_count(tuple(word) + (0,), (3, 2, 4, 1))


# ---------------------------------------------------------------------------
# Min-split map


def lambda_map(word: tuple[int, ...]) -> BinaryNode | None:
    """Recursive min-split: the least letter becomes the root, the prefix
    the left branch and the suffix the right branch."""
    require_distinct(word)
    if any(x < 1 for x in word):
        raise NotPermutationError("letters must be positive")
    return _lambda(tuple(word))


def _lambda(word: tuple[int, ...]) -> BinaryNode | None:
    if not word:
        return None
    i = word.index(min(word))
    return BinaryNode(word[i], _lambda(word[:i]), _lambda(word[i + 1 :]))


def lambda_inv(b: BinaryNode | None) -> tuple[int, ...]:
    """In-order reading: left subtree, node, right subtree."""
    word = tuple(_inorder(b))
    require_distinct(word)
    return word


def _inorder(b: BinaryNode | None):
    if b is None:
        return
    yield from _inorder(b.left)
    yield b.label
    yield from _inorder(b.right)


def lemma31_check(word: tuple[int, ...]) -> str | None:
    """Verify, letter by letter, that the min-split tree classifies peaks
    by type, double descents and double ascents; also the consecutive
    pattern identities pk1 = #132(0 pi) and pk2 = #231(pi 0)."""
    require_sn(word)
    n = len(word)
    if n < 2:
        raise DomainError("letter classification needs n >= 2")
    b = lambda_map(word)
    kinds: dict[int, str] = {}

    def walk(node: BinaryNode | None, side: str) -> None:
        if node is None:
            return
        if node.is_leaf:
            kinds[node.label] = f"{side}-leaf"
        elif node.left is not None and node.right is None:
            kinds[node.label] = "only-left"
        elif node.right is not None and node.left is None:
            kinds[node.label] = "only-right"
        else:
            kinds[node.label] = "both"
        walk(node.left, "left")
        walk(node.right, "right")

    walk(b, "root")
    padded = (0,) + tuple(word) + (0,)
    for i in range(1, n + 1):
        prev, here, nxt = padded[i - 1], padded[i], padded[i + 1]
        if prev < here > nxt:
            expected = "left-leaf" if prev <= nxt else "right-leaf"
        elif prev > here > nxt:
            expected = "only-left"
        elif prev < here < nxt:
            expected = "only-right"
        else:
            expected = "both"
        if kinds[here] != expected:
            return f"letter {here}: expected {expected}, tree says {kinds[here]}"
    v = perm_stats(tuple(word))
    c132 = consecutive_pattern_count((0,) + tuple(word), (1, 3, 2))
    c231 = consecutive_pattern_count(tuple(word) + (0,), (2, 3, 1))
    if v.pk1 != c132:
        return f"pk1={v.pk1} but #132(0 pi)={c132}"
    if v.pk2 != c231:
        return f"pk2={v.pk2} but #231(pi 0)={c231}"
    return None


# ---------------------------------------------------------------------------
# 312-avoiders and the shape involutions


def is_312_avoiding(word: tuple[int, ...]) -> bool:
    n = len(word)
    for i in range(n):
        for j in range(i + 1, n):
            if word[i] <= word[j]:
                continue
            for k in range(j + 1, n):
                if word[i] > word[k] > word[j]:
                    return False
    return True


def relabel_preorder(b: BinaryNode | None) -> BinaryNode | None:
    """Copy of b labeled 1..n in preorder; the canonical form of a shape."""
    counter = itertools.count(1)

    def walk(node: BinaryNode | None) -> BinaryNode | None:
        if node is None:
            return None
        label = next(counter)
        return BinaryNode(label, walk(node.left), walk(node.right))

    return walk(b)


def shape_of(word: tuple[int, ...]) -> BinaryNode:
    """The unlabeled min-split shape of a 312-avoider, canonically labeled
    1..n in preorder (which matches the letters exactly)."""
    word = tuple(word)
    require_sn(word)
    if not is_312_avoiding(word):
        raise NotAvoidingError(f"{render_permutation(word)} contains a 312 pattern")
    shape = relabel_preorder(lambda_map(word))
    assert shape is not None
    return shape


def from_shape(shape: BinaryNode | None) -> tuple[int, ...]:
    """Relabel a shape 1..n in preorder and read it in order; the inverse
    of shape_of."""
    return lambda_inv(relabel_preorder(shape))


@lru_cache(maxsize=None)
def enumerate_avoiding_312(n: int) -> tuple[tuple[int, ...], ...]:
    """All 312-avoiding permutations of 1..n in word order."""
    if n == 0:
        return ((),)
    return tuple(sorted(from_shape(shape) for shape in binary_shapes(n)))


def Lambda(word: tuple[int, ...]) -> tuple[int, ...]:
    """Involution on 312-avoiders carrying DES to the reflected ascent set,
    pk1 to pk2 and lmin to rmin: mirror the min-split shape."""
    from .bijections import mirror

    return from_shape(mirror(shape_of(word)))


def Upsilon(word: tuple[int, ...]) -> tuple[int, ...]:
    """Involution on 312-avoiders preserving (pk, dd, da) and exchanging
    the consecutive 1324/3241 counts: switch the unbalanced shape nodes."""
    from .bijections import psi

    return from_shape(psi(shape_of(word)))
