"""Seeded random trees, systems and equivalent variants for property suites."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import CapacityExceeded
from .presentation import Presentation
from .signature import FlatTerm
from .solver import Param, RecEquationSystem
from .trees import Label, Op, RationalTree, Var


@dataclass(frozen=True)
class GenConfig:
    max_states: int = 6
    max_branch: int = 4
    leaf_prob: float = 0.3
    leaf_vars: tuple = ("y",)
    max_vars: int = 3
    param_prob: float = 0.3
    param_height: int = 2


def rng_for(seed, *tags) -> random.Random:
    """A generator that depends only on ``seed`` and the tags."""
    return random.Random(":".join(map(str, (seed,) + tags)))


def branch_limit(pres: Presentation, wanted: int) -> int:
    """Largest arity up to ``wanted`` that the normalizer accepts with distinct children."""
    sig = pres.sig
    if sig.schema is None:
        return wanted
    for m in range(wanted, 0, -1):
        try:
            pres.normalize(sig.schema.name_for(m), tuple(range(m)))
            return m
        except CapacityExceeded:
            continue
    return 0


def _ops(pres: Presentation, max_branch: int) -> tuple[list, list]:
    """(inner ops, nullary ops) as (name, arity) pairs."""
    sig = pres.sig
    if sig.schema is None:
        ops = sorted(sig.finite_ops().items())
        inner = [(n, a) for n, a in ops if 0 < a <= max(max_branch, 1)]
        return inner, [(n, a) for n, a in ops if a == 0]
    top = branch_limit(pres, max_branch)
    inner = [(sig.schema.name_for(m), m) for m in range(1, top + 1)]
    return inner, [(sig.schema.name_for(0), 0)]


def _leaf(rng, nullary, cfg):
    if nullary and rng.random() < 0.6:
        return Label(rng.choice(nullary)[0])
    return Label(rng.choice(cfg.leaf_vars), (), True)


def random_system(pres: Presentation, rng: random.Random, cfg: GenConfig = GenConfig()) -> RationalTree:
    inner, nullary = _ops(pres, cfg.max_branch)
    n = rng.randint(1, cfg.max_states)
    labels = []
    for _ in range(n):
        if not inner or rng.random() < cfg.leaf_prob:
            labels.append(_leaf(rng, nullary, cfg))
        else:
            head, arity = rng.choice(inner)
            labels.append(Label(head, tuple(rng.randrange(n) for _ in range(arity))))
    return RationalTree.from_labels(labels, 0)


def random_finite_tree(pres: Presentation, rng: random.Random, height: int, cfg: GenConfig = GenConfig()):
    inner, nullary = _ops(pres, cfg.max_branch)

    def go(h):
        if h == 0 or not inner or rng.random() < cfg.leaf_prob:
            lab = _leaf(rng, nullary, cfg)
            return Var(lab.head) if lab.is_var else Op(lab.head)
        head, arity = rng.choice(inner)
        return Op(head, [go(h - 1) for _ in range(arity)])

    return go(height)


def variant(pres: Presentation, t: RationalTree, rng: random.Random) -> RationalTree:
    """A bisimilar (and hence congruent) re-presentation of ``t``.

    Duplicates states and redirects references to the copies; under set
    presentations children are also shuffled and repeated.
    """
    labels = list(t.labels)
    for _ in range(rng.randint(1, 3)):
        s = rng.randrange(len(labels))
        copy = len(labels)
        labels.append(labels[s])
        for i, lab in enumerate(labels):
            if lab.args and rng.random() < 0.5:
                labels[i] = lab._replace(args=tuple(copy if a == s and rng.random() < 0.5 else a for a in lab.args))
    root = t.root
    if rng.random() < 0.5:
        root = len(labels)
        labels.append(labels[t.root])
    if pres.brace_prefix is not None:
        schema = pres.sig.schema
        for i, lab in enumerate(labels):
            if lab.is_var or not lab.args:
                continue
            args = list(lab.args)
            if rng.random() < 0.5:
                args.append(rng.choice(args))
            rng.shuffle(args)
            labels[i] = Label(schema.name_for(len(args)), tuple(args))
    return RationalTree.from_labels(labels, root)


def random_guarded_system(pres: Presentation, rng: random.Random, cfg: GenConfig = GenConfig()) -> RecEquationSystem:
    """One flat layer or one parameter per variable.

    Parameters are small finite trees or two-state rational trees, which keeps
    every solution periodic with a short prefix.
    """
    inner, nullary = _ops(pres, cfg.max_branch)
    names = [f"x{i}" for i in range(rng.randint(1, cfg.max_vars))]
    rhs = {}
    for v in names:
        if not inner or rng.random() < cfg.param_prob:
            if rng.random() < 0.2:
                small = GenConfig(max_states=2, max_branch=min(cfg.max_branch, 2), leaf_vars=cfg.leaf_vars)
                rhs[v] = Param(random_system(pres, rng, small))
            else:
                rhs[v] = Param(random_finite_tree(pres, rng, rng.randint(0, cfg.param_height), cfg))
        else:
            head, arity = rng.choice(inner)
            rhs[v] = FlatTerm(head, tuple(rng.choice(names) for _ in range(arity)))
    return RecEquationSystem(pres, rhs)
