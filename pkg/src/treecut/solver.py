"""Guarded recursive equation systems and their solutions.

A system assigns each recursion variable either one flat layer
``sigma(x1, ..., xn)`` over recursion variables or a parameter tree.  The
exact solution is obtained by tying the equations into one state system and
normalizing each variable's rooted subsystem.  Approximate solutions live in
the free algebra: stage 0 is the cut point everywhere, and stage ``k + 1``
applies one layer to stage ``k`` (flat equations) or cuts the parameter at
depth ``k + 1`` (parameter equations).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import NotAChain, NotGuarded, NotRational, UnknownOp
from .order import OrderedElement, leq_quotient
from .presentation import (
    CanonicalTree,
    Presentation,
    check_tree,
    equiv_finite,
    equiv_star,
    nf_rational,
    nf_tree,
)
from .signature import FlatTerm, validate_flat
from .trees import (
    CutPoint,
    Interner,
    Label,
    RationalTree,
    as_system,
    cut,
    join_chain,
    leaf_label,
)


@dataclass(frozen=True)
class Param:
    """A right-hand side taken from the parameter algebra of rational trees."""

    tree: object

    @property
    def system(self) -> RationalTree:
        t = self.tree
        return t.system if isinstance(t, CanonicalTree) else as_system(t)


@dataclass
class RecEquationSystem:
    pres: Presentation
    rhs: Mapping[str, FlatTerm | Param]
    # variables introduced by the user, as opposed to flattening auxiliaries
    declared: tuple = ()

    def __post_init__(self):
        self.rhs = dict(self.rhs)
        if not self.declared:
            self.declared = tuple(self.rhs)
        for var, r in self.rhs.items():
            if isinstance(r, FlatTerm):
                if r.is_var:
                    raise NotGuarded(f"{var} = {r.head}")
                validate_flat(self.pres.sig, r)
                for a in r.args:
                    if a not in self.rhs:
                        raise UnknownOp(f"{a} is not a recursion variable")
            elif isinstance(r, Param):
                check_tree(self.pres, r.system)
            else:
                raise TypeError(f"bad right-hand side for {var}: {r!r}")

    @property
    def variables(self) -> tuple:
        return tuple(self.rhs)

    @classmethod
    def from_text(cls, text: str, pres: Presentation) -> "RecEquationSystem":
        from .syntax import parse_equations

        parsed = parse_equations(text, pres)
        rhs = {
            v: r if isinstance(r, FlatTerm) else Param(r)
            for v, r in parsed.rhs.items()
        }
        return cls(pres, rhs, parsed.declared)

    def tied(self) -> tuple[list[Label], dict[str, int]]:
        """One state per variable; parameter systems are spliced in."""
        index = {v: i for i, v in enumerate(self.rhs)}
        labels: list = [None] * len(index)
        for v, r in self.rhs.items():
            if isinstance(r, FlatTerm):
                labels[index[v]] = Label(r.head, tuple(index[a] for a in r.args))
                continue
            sys_ = r.system
            offset = len(labels)
            shifted = [Label(l.head, tuple(a + offset for a in l.args), l.is_var) for l in sys_.labels]
            labels.extend(shifted)
            labels[index[v]] = shifted[sys_.root]
        return labels, index


@dataclass(frozen=True)
class CoalgebraSystem:
    pres: Presentation
    structure: Mapping[str, FlatTerm]

    def as_equations(self) -> RecEquationSystem:
        return RecEquationSystem(self.pres, dict(self.structure))


@dataclass
class SolutionMap:
    assignment: dict
    kind: str = "exact"
    k: int | None = None
    # False when the presentation has no canonical forms for infinite trees
    minimized: bool = True

    def __getitem__(self, var):
        return self.assignment[var]


def solve(e: RecEquationSystem) -> SolutionMap:
    labels, index = e.tied()
    out = {}
    for v, i in index.items():
        r = RationalTree.from_labels(labels, i)
        out[v] = nf_rational(e.pres, r) if e.pres.hereditary_exact else r
    return SolutionMap(out, "exact", minimized=e.pres.hereditary_exact)


def _layer(pres: Presentation, head: str, children) -> CanonicalTree:
    it = Interner(pres.normalize)
    ids = [it.add_system(c.system) for c in children]
    return CanonicalTree(it.system(it.node(head, ids)), pres.name)


def approx_chain(e: RecEquationSystem, k: int, p: CutPoint) -> Iterator[SolutionMap]:
    """Approximate solutions for stages ``0..k``."""
    leaf_label(p)
    bottom = nf_tree(e.pres, p)
    current = {v: bottom for v in e.rhs}
    yield SolutionMap(dict(current), "approximate", 0)
    for stage in range(1, k + 1):
        nxt = {}
        for v, r in e.rhs.items():
            if isinstance(r, FlatTerm):
                nxt[v] = _layer(e.pres, r.head, [current[a] for a in r.args])
            else:
                nxt[v] = nf_tree(e.pres, cut(r.system, stage, p))
        current = nxt
        yield SolutionMap(dict(current), "approximate", stage)


def approx_solution(e: RecEquationSystem, k: int, p: CutPoint) -> SolutionMap:
    for sol in approx_chain(e, k, p):
        pass
    return sol


def approx_homomorphism(c: CoalgebraSystem, n: int, p: CutPoint) -> SolutionMap:
    return approx_solution(c.as_equations(), n, p)


def verify_solution(e: RecEquationSystem, sol: SolutionMap, depth: int, p: CutPoint | None = None) -> bool:
    """Check the solution square: each variable equals its right-hand side
    with the solution substituted one layer deep."""
    for v, r in e.rhs.items():
        value = sol[v]
        if isinstance(r, FlatTerm):
            other = _substitute(r, sol)
        else:
            other = r.system
        if not equiv_star(e.pres, value, other, depth, p):
            return False
    return True


def _substitute(r: FlatTerm, sol: SolutionMap) -> RationalTree:
    labels = [None]
    args = []
    for a in r.args:
        t = sol[a]
        t = t.system if isinstance(t, CanonicalTree) else as_system(t)
        offset = len(labels)
        labels.extend(Label(l.head, tuple(x + offset for x in l.args), l.is_var) for l in t.labels)
        args.append(t.root + offset)
    labels[0] = Label(r.head, tuple(args))
    return RationalTree.from_labels(labels, 0)


@dataclass
class ApproxChainReport:
    N: int
    chain: dict = field(default_factory=dict)
    cut_law: dict = field(default_factory=dict)
    join: dict = field(default_factory=dict)
    # variables whose join needed more than the first N + 1 stages
    join_stages: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.chain.values()) and all(self.cut_law.values()) and all(self.join.values())

    def rows(self):
        for name in ("chain", "cut_law", "join"):
            checks = getattr(self, name)
            yield name, sum(checks.values()), len(checks)


def verify_approx_chain(
    e: RecEquationSystem,
    N: int,
    p: CutPoint,
    join_bound: int | None = None,
    max_stages: int | None = None,
) -> ApproxChainReport:
    """Monotone chain and cut law for stages ``0..N``; join of the chain.

    The join is first sought from stages ``0..N``.  A finite prefix does not
    always determine the join, so when no periodic closure fits, further
    stages are drawn from the chain, up to ``max_stages`` (default ``4N``).
    """
    exact = solve(e)
    stream = approx_chain(e, max(max_stages or 4 * N, N + 1), p)
    stages = [next(stream).assignment for _ in range(N + 2)]
    pres = e.pres
    report = ApproxChainReport(N)
    for v in e.rhs:
        elems = [OrderedElement(s[v], pres, p) for s in stages]
        report.chain[v] = all(leq_quotient(elems[n], elems[n + 1]) for n in range(N + 1))
        report.cut_law[v] = all(
            equiv_finite(pres, stages[n][v], cut(_system(exact[v]), n, p)) for n in range(N + 1)
        )
    for v in e.rhs:
        m = N + 1
        while True:
            try:
                raw = join_chain([stages[n][v].system for n in range(m)], p, join_bound, pres.normalize)
                break
            except (NotAChain, NotRational) as exc:
                if m == len(stages):
                    nxt = next(stream, None)
                    if isinstance(exc, NotAChain) or nxt is None:
                        raw = None
                        report.notes.append(f"{v}: {type(exc).__name__}: {exc}")
                        break
                    stages.append(nxt.assignment)
                m += 1
        if raw is None:
            report.join[v] = False
            continue
        if m > N + 1:
            report.join_stages[v] = m
        if pres.hereditary_exact:
            report.join[v] = nf_rational(pres, raw) == exact[v]
        else:
            report.join[v] = equiv_star(pres, raw, exact[v], N, p)
    return report


def _system(t) -> RationalTree:
    return t.system if isinstance(t, CanonicalTree) else as_system(t)
