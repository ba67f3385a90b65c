"""Presentations of finitary set functors by signatures and normalizers.

A presentation supplies a *flat normalizer*: given a one-layer term whose
arguments are totally ordered keys (ints), it returns the chosen canonical
representative of its equivalence class.  Merging flat terms with equal
normal forms generates the congruence on finite trees; refining it level by
level generates the congruence on rational trees.  Both are computed by the
canonicalizers in :mod:`treecut.trees`, parameterized by the normalizer.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import (
    BadCutPoint,
    BadParams,
    CapacityExceeded,
    DepthRequired,
    NoEnumerator,
    NotExact,
    Undecided,
    UnknownBuiltin,
)
from .signature import ArityScheme, FlatTerm, Signature, validate_flat
from .trees import (
    FiniteTree,
    Normalizer,
    Op,
    RationalTree,
    Tree,
    Var,
    as_system,
    canonical_finite,
    cut,
    identity_normalize,
    is_finite,
    minimize,
    to_finite,
)

# (sorted list of keys) -> iterator over normalized (head, args) pairs
Enumerator = Callable[[int], Iterator[tuple]]


@dataclass(frozen=True, eq=False)
class Presentation:
    name: str
    sig: Signature
    normalize: Normalizer = identity_normalize
    hereditary_exact: bool = True
    height_preserving: bool = True
    enumerate_flat: Enumerator | None = None
    # schema prefix rendered as {...} by the printer
    brace_prefix: str | None = None
    equations: tuple = ()
    # False when a stage over a nonempty set is already infinite
    finite_stages: bool = True

    def __eq__(self, other):
        return isinstance(other, Presentation) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Presentation({self.name!r})"

    def normalize_flat(self, t: FlatTerm) -> FlatTerm:
        """Canonical flat representative; ``t.args`` must be totally ordered."""
        validate_flat(self.sig, t)
        if t.is_var:
            return t
        distinct = sorted(set(t.args))
        local = {k: i for i, k in enumerate(distinct)}
        head, args = self.normalize(t.head, tuple(local[a] for a in t.args))
        return FlatTerm(head, tuple(distinct[a] for a in args))

    def stage_enumerator(self, keys) -> Iterator[FlatTerm]:
        """Canonical flat terms whose arguments are drawn from ``keys``."""
        if self.enumerate_flat is None:
            raise NoEnumerator(self.name)
        keys = sorted(keys)
        for head, args in self.enumerate_flat(len(keys)):
            yield FlatTerm(head, tuple(keys[a] for a in args))

    def default_cut_point(self) -> Op:
        nullaries = sorted(self.sig.nullaries)
        if not nullaries:
            raise BadCutPoint(f"{self.name} has no constants; choose a variable")
        return Op(nullaries[0])


@dataclass(frozen=True)
class CanonicalTree:
    """A tree in normal form for the presentation named ``pres``."""

    system: RationalTree
    pres: str

    @property
    def finite(self) -> bool:
        return self.system.is_finite()

    @property
    def height(self):
        return self.system.height

    def tree(self) -> FiniteTree:
        return to_finite(self.system)


def check_tree(pres: Presentation, t: Tree) -> None:
    """Raise UnknownOp/ArityMismatch unless every node fits ``pres.sig``."""
    if isinstance(t, RationalTree):
        for s in t.reachable():
            lab = t.labels[s]
            validate_flat(pres.sig, FlatTerm(lab.head, lab.args, lab.is_var))
        return
    seen = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Var):
            continue
        validate_flat(pres.sig, FlatTerm(node.name, node.children))
        stack.extend(node.children)


def _system_of(t) -> RationalTree:
    return t.system if isinstance(t, CanonicalTree) else as_system(t)


def nf_tree(pres: Presentation, t) -> CanonicalTree:
    if isinstance(t, CanonicalTree) and t.pres == pres.name and t.finite:
        return t
    t = t.system if isinstance(t, CanonicalTree) else t
    check_tree(pres, t)
    return CanonicalTree(canonical_finite(t, pres.normalize), pres.name)


def nf_rational(pres: Presentation, r) -> CanonicalTree:
    if not pres.hereditary_exact:
        raise NotExact(pres.name)
    if isinstance(r, CanonicalTree) and r.pres == pres.name:
        return r
    r = _system_of(r)
    check_tree(pres, r)
    return CanonicalTree(minimize(r, pres.normalize), pres.name)


def nf(pres: Presentation, t) -> CanonicalTree:
    """Normal form of a finite or rational tree."""
    if is_finite(_system_of(t)):
        return nf_tree(pres, t)
    return nf_rational(pres, t)


def equiv_finite(pres: Presentation, s, s2, cap: int = 10_000) -> bool:
    a, b = nf_tree(pres, s), nf_tree(pres, s2)
    if a == b or pres.hereditary_exact:
        return a == b
    return _rewrite_search(pres, a.tree(), b.tree(), cap)


def equiv_star(pres: Presentation, r, r2, depth: int | None = None, p=None) -> bool:
    """Infinite-application congruence.

    Exact presentations compare minimal canonical systems.  Otherwise the
    cuttings are compared up to ``depth``, which only semi-decides the
    relation: a True answer means "not separated within depth".
    """
    if pres.hereditary_exact:
        return nf_rational(pres, r) == nf_rational(pres, r2)
    if depth is None:
        raise DepthRequired(pres.name)
    p = pres.default_cut_point() if p is None else p
    a, b = _system_of(r), _system_of(r2)
    return all(equiv_finite(pres, cut(a, n, p), cut(b, n, p)) for n in range(depth + 1))


# -- declarative equations (non-exact, bounded search) ----------------------


def _match(pattern: FlatTerm, node) -> dict | None:
    if not isinstance(node, Op) or node.name != pattern.head:
        return None
    if len(node.children) != len(pattern.args):
        return None
    env = {}
    for var, child in zip(pattern.args, node.children):
        if var in env and env[var] != child:
            return None
        env[var] = child
    return env


def _rewrites(eqs, node) -> Iterator[FiniteTree]:
    for lhs, rhs in eqs:
        for src, dst in ((lhs, rhs), (rhs, lhs)):
            env = _match(src, node)
            if env is not None and set(dst.args) <= env.keys():
                yield Op(dst.head, [env[v] for v in dst.args])
    if isinstance(node, Op):
        for i, child in enumerate(node.children):
            for new in _rewrites(eqs, child):
                kids = list(node.children)
                kids[i] = new
                yield Op(node.name, kids)


def _rewrite_search(pres: Presentation, s: FiniteTree, target: FiniteTree, cap: int) -> bool:
    seen = {s}
    queue = deque([s])
    while queue:
        t = queue.popleft()
        for u in _rewrites(pres.equations, t):
            if u == target:
                return True
            if u not in seen:
                if len(seen) >= cap:
                    raise Undecided(f"rewrite search exceeded {cap} trees")
                seen.add(u)
                queue.append(u)
    return False


def from_equations(sig: Signature, equations, name: str = "custom") -> Presentation:
    """Presentation given by flat equations ``(lhs, rhs)`` over variable names.

    No canonical forms exist in general, so equivalence falls back to a
    bounded search and the presentation is flagged non-exact.
    """
    eqs = []
    for lhs, rhs in equations:
        for side in (lhs, rhs):
            validate_flat(sig, side)
        eqs.append((lhs, rhs))
    return Presentation(
        name=name,
        sig=sig,
        hereditary_exact=not eqs,
        height_preserving=not eqs,
        enumerate_flat=_all_flat(sig) if not eqs and sig.is_finite else None,
        equations=tuple(eqs),
    )


# -- built-ins -------------------------------------------------------------


def _all_flat(sig: Signature) -> Enumerator:
    ops = sorted(sig.finite_ops().items())

    def enum(m):
        for head, arity in ops:
            for args in itertools.product(range(m), repeat=arity):
                yield head, args

    return enum


def _set_normalize(head, args):
    args = tuple(sorted(set(args)))
    return f"set{len(args)}", args


def _bounded_set_normalize(k):
    def normalize(head, args):
        head, args = _set_normalize(head, args)
        if len(args) > k:
            raise CapacityExceeded(f"{len(args)} distinct elements, at most {k} allowed")
        return head, args

    return normalize


def _subsets(max_size=None):
    def enum(m):
        top = m if max_size is None else min(m, max_size)
        for size in range(top + 1):
            for combo in itertools.combinations(range(m), size):
                yield f"set{size}", combo

    return enum


def _lists(m):
    if m == 0:
        yield "tup0", ()
        return
    for n in itertools.count():
        for args in itertools.product(range(m), repeat=n):
            yield f"tup{n}", args


def _am23_normalize(head, args):
    if args[0] == args[1]:
        return "sigma1", args
    return head, args


def _am23_enum(m):
    for x, y in itertools.product(range(m), repeat=2):
        yield "sigma1", (x, y)
    for head in ("sigma2", "sigma3"):
        for x, y in itertools.product(range(m), repeat=2):
            if x != y:
                yield head, (x, y)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def builtin(name: str, *params) -> Presentation:
    """Built-in presentations of the worked functors.

    ``id``, ``product(a, b, ...)``, ``list``, ``pf``, ``pk(k)``,
    ``automata(n)`` or ``automata(i1, i2, ...)``, and ``am23``.
    """
    if name == "id":
        _no_params(name, params)
        sig = Signature({"s": 1})
        return Presentation("id", sig, enumerate_flat=_all_flat(sig))
    if name == "product":
        if not params:
            raise BadParams("product needs at least one letter")
        letters = [str(a) for a in params]
        if len(set(letters)) != len(letters) or not all(_IDENT.match(a) for a in letters):
            raise BadParams(f"bad letters {letters}")
        sig = Signature({a: 1 for a in letters})
        return Presentation(f"product({','.join(letters)})", sig, enumerate_flat=_all_flat(sig))
    if name == "list":
        _no_params(name, params)
        return Presentation(
            "list", Signature({}, ArityScheme("tup")), enumerate_flat=_lists, finite_stages=False,
        )
    if name == "pf":
        _no_params(name, params)
        return Presentation(
            "pf", Signature({}, ArityScheme("set")), _set_normalize,
            enumerate_flat=_subsets(), brace_prefix="set",
        )
    if name == "pk":
        if len(params) != 1:
            raise BadParams("pk takes exactly one bound")
        k = _int_param(params[0])
        if k < 1:
            raise BadParams("pk needs k >= 1")
        return Presentation(
            f"pk({k})", Signature({}, ArityScheme("set")), _bounded_set_normalize(k),
            enumerate_flat=_subsets(k), brace_prefix="set",
        )
    if name == "automata":
        if len(params) == 1 and str(params[0]).isdigit():
            n = int(params[0])
        else:
            n = len(params)
            if len(set(map(str, params))) != n:
                raise BadParams("repeated input letter")
        if n < 1:
            raise BadParams("automata needs a nonempty input alphabet")
        sig = Signature({"a": n, "b": n})
        return Presentation(f"automata({n})", sig, enumerate_flat=_all_flat(sig))
    if name == "am23":
        _no_params(name, params)
        sig = Signature({"sigma1": 2, "sigma2": 2, "sigma3": 2})
        return Presentation("am23", sig, _am23_normalize, enumerate_flat=_am23_enum)
    raise UnknownBuiltin(name)


def _no_params(name, params):
    if params:
        raise BadParams(f"{name} takes no parameters")


def _int_param(value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise BadParams(f"expected an integer, got {value!r}") from None


_CALL = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*\Z")


def parse_builtin(text: str) -> Presentation:
    """``"pk(2)"`` -> ``builtin("pk", "2")``."""
    m = _CALL.match(text)
    if not m:
        raise UnknownBuiltin(text)
    name, inner = m.group(1), m.group(2)
    params = [] if not inner or not inner.strip() else [x.strip() for x in inner.split(",")]
    return builtin(name, *params)


BUILTIN_EXAMPLES = ("id", "product(a,b)", "list", "pf", "pk(2)", "automata(2)", "am23")
