"""Independent brute-force oracles.

Nothing here calls the canonicalizers, the cutting code, or the normalizers
of :mod:`treecut.presentation`; values are built directly from state labels.
"""
from __future__ import annotations

from itertools import combinations

_P = ("p",)


def extensional_cut(labels, root: int, depth: int, set_prefix: str = "set"):
    """The depth-``depth`` cutting of a set-labelled system as a nested frozenset.

    Frontier nodes become the marker ``("p",)``; variables become ``("var", name)``.
    """
    memo = {}

    def go(s, d):
        key = (s, d)
        if key not in memo:
            lab = labels[s]
            if d == 0:
                memo[key] = _P
            elif lab.is_var:
                memo[key] = ("var", lab.head)
            else:
                assert lab.head.startswith(set_prefix)
                memo[key] = frozenset(go(c, d - 1) for c in lab.args)
        return memo[key]

    return go(root, depth)


def extensional_equal(a, b, depth: int) -> bool:
    """Levelwise comparison of two set-labelled systems up to ``depth``."""
    return all(
        extensional_cut(a.labels, a.root, n) == extensional_cut(b.labels, b.root, n)
        for n in range(depth + 1)
    )


def hereditary_sets(n: int, base=()) -> set:
    """Stage ``n`` of the powerset chain starting from ``base`` by brute force."""
    level = set(base)
    for _ in range(n):
        elems = list(level)
        level = {frozenset(c) for r in range(len(elems) + 1) for c in combinations(elems, r)}
    return level


def doubling(n: int, start: int) -> int:
    size = start
    for _ in range(n):
        size = 2 ** size
    return size


def alternating_word(letters, n: int, leaf: str) -> str:
    """``a(b(a(...(leaf))))`` with ``n`` letters, built by string concatenation."""
    out = "".join(f"{letters[i % len(letters)]}(" for i in range(n))
    return out + leaf + ")" * n


def am23_equivalent(s, t) -> bool:
    """Decide ``s ~ t`` for the three binary symbols directly.

    The equations only relabel a node whose two children are equivalent, so
    equivalent trees have the same shape and leaves, and at each node either
    the symbols agree or both pairs of children are equivalent.
    """
    if type(s) is not type(t):
        return False
    if not hasattr(s, "children"):
        return s.name == t.name
    if len(s.children) != len(t.children) or len(s.children) != 2:
        return s.name == t.name and len(s.children) == len(t.children) == 0
    if not (am23_equivalent(s.children[0], t.children[0]) and am23_equivalent(s.children[1], t.children[1])):
        return False
    return s.name == t.name or am23_equivalent(s.children[0], s.children[1])
