"""Finite stages of the initial-algebra and terminal-coalgebra chains.

Stages are enumerated through the presentation's canonical flat terms, so
schematic signatures (one symbol per arity) still give finite stages.
Initial stage ``n`` holds the closed normal forms of height ``< n``;
terminal stage ``n`` holds the normal forms of ``n`` nested layers over the
one-point set ``{p}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import CapExceeded, NoEnumerator
from .presentation import CanonicalTree, Presentation
from .trees import CutPoint, Interner, Var, leaf_label

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class StageSet:
    n: int
    kind: str
    pres: Presentation
    p: CutPoint | None
    _interner: Interner = field(repr=False, compare=False)
    _ids: tuple = field(repr=False, compare=False)

    def __len__(self):
        return len(self._ids)

    @cached_property
    def elements(self) -> frozenset[CanonicalTree]:
        it = self._interner
        return frozenset(CanonicalTree(it.system(i), self.pres.name) for i in self._ids)


def _grow(pres: Presentation, it: Interner, ids, steps: int, cap: int):
    if pres.enumerate_flat is None:
        raise NoEnumerator(pres.name)
    for _ in range(steps):
        if ids and not pres.finite_stages:
            raise CapExceeded(f"{pres.name} has infinite stages over a nonempty set")
        ordered = sorted(ids, key=it.skeys.__getitem__)
        seen = {}
        for head, args in pres.enumerate_flat(len(ordered)):
            node = it.node(head, [ordered[a] for a in args])
            seen[node] = None
            if len(seen) > cap:
                raise CapExceeded(f"stage exceeds {cap} elements")
        ids = tuple(seen)
    return tuple(ids)


def enumerate_initial_stage(pres: Presentation, n: int, cap: int = DEFAULT_CAP) -> StageSet:
    it = Interner(pres.normalize)
    ids = _grow(pres, it, (), n, cap)
    return StageSet(n, "initial", pres, None, it, ids)


def enumerate_terminal_stage(pres: Presentation, n: int, p: CutPoint, cap: int = DEFAULT_CAP) -> StageSet:
    lab = leaf_label(p)
    it = Interner(pres.normalize)
    base = it.var(lab.head) if isinstance(p, Var) else it.node(lab.head, [])
    ids = _grow(pres, it, (base,), n, cap)
    return StageSet(n, "terminal", pres, p, it, ids)
