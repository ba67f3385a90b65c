"""Order by cutting on normal forms.

``[s] <= [s']`` holds when the classes coincide or ``s`` is congruent to a
cutting of ``s'``.  The least element is the class of the cut point leaf.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InfiniteTree, MixedPresentations, NotAChain, Undecided
from .presentation import CanonicalTree, Presentation, equiv_finite, nf, nf_rational, nf_tree
from .trees import CutPoint, cut, join_chain, leaf_label


@dataclass(frozen=True)
class OrderedElement:
    value: CanonicalTree
    pres: Presentation
    p: CutPoint

    @classmethod
    def of(cls, pres: Presentation, t, p: CutPoint) -> "OrderedElement":
        leaf_label(p)
        return cls(nf(pres, t), pres, p)

    @property
    def finite(self) -> bool:
        return self.value.finite


def leq_quotient(a: OrderedElement, b: OrderedElement, depth_bound: int = 16) -> bool:
    if a.pres != b.pres or a.p != b.p:
        raise MixedPresentations(f"{a.pres.name}/{a.p!r} vs {b.pres.name}/{b.p!r}")
    if a.value == b.value:
        return True
    if not a.value.finite:
        return False
    pres = a.pres
    if pres.height_preserving:
        # a cutting at any other depth has a different height or is b itself
        depths = [a.value.height]
    else:
        depths = range(depth_bound + 1)
    for n in depths:
        if pres.hereditary_exact:
            if _cut_class(pres, b.value, n, a.p) == a.value:
                return True
        elif equiv_finite(pres, a.value, cut(b.value.system, n, a.p)):
            return True
    if pres.height_preserving:
        return False
    raise Undecided(f"no cutting up to depth {depth_bound} matched")


@lru_cache(maxsize=1 << 16)
def _cut_class(pres: Presentation, value: CanonicalTree, n: int, p: CutPoint) -> CanonicalTree:
    return nf_tree(pres, cut(value.system, n, p))


def less_than(a: OrderedElement, b: OrderedElement) -> bool:
    return a.value != b.value and leq_quotient(a, b)


def least_element(pres: Presentation, p: CutPoint) -> OrderedElement:
    return OrderedElement(nf_tree(pres, p), pres, p)


def join(chain: list[OrderedElement], bound: int | None = None) -> OrderedElement:
    """Join of an increasing list, via periodic closure of its top element."""
    if not chain:
        raise NotAChain("empty chain")
    head = chain[0]
    for a, b in zip(chain, chain[1:]):
        if not leq_quotient(a, b):
            raise NotAChain("chain is not increasing")
    raw = join_chain([c.value.system for c in chain], head.p, bound, head.pres.normalize)
    return OrderedElement(nf_rational(head.pres, raw), head.pres, head.p)


def compactness_check(a: OrderedElement, chain: list[OrderedElement]) -> bool:
    """Evaluate "a <= join(chain) implies a <= some element" on one instance."""
    if not a.finite:
        raise InfiniteTree("compactness is only claimed for finite elements")
    j = join(chain)
    if not leq_quotient(a, j):
        return True
    return any(leq_quotient(a, c) for c in chain)
