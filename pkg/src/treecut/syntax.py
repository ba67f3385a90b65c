"""Text formats: prefix terms, rational trees, equation systems, DOT.

Terms are written ``a(b(x), c)``; under the power-set presentations
``{t1, ..., tn}`` is sugar for ``setn(t1, ..., tn)``.  A bare name is a bound
state, a constant of the signature, or else a variable, in that order.

Rational trees are ``rec s. a(s)`` or named-state blocks
``rec s0. a(s1); s1 = b(s0)``.  Equation systems are ``x = a(y); y = b(x)``
inline, or one ``eq x = a(y)`` per line in files; ``param`` marks a
right-hand side taken verbatim from the parameter algebra.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, BadCutPoint, NameClash, NotGuarded, ParseError, UnknownOp
from .presentation import CanonicalTree, Presentation
from .signature import FlatTerm, validate_flat
from .trees import Label, Op, RationalTree, Var, as_system, to_finite

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(.))")
_PUNCT = set("(){},;=.")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2)
        if tok is None:
            break
        if m.group(2) is not None and tok not in _PUNCT:
            raise ParseError(f"unexpected character {tok!r} at {m.start(2)}")
        out.append(tok)
        pos = m.end()
    return out


# AST: ("name", n) | ("app", head, [children]) | ("set", [children]) | ("rec", root, {name: ast})


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, found {tok!r}")
        self.i += 1
        return tok

    def name(self):
        tok = self.take()
        if tok in _PUNCT:
            raise ParseError(f"expected a name, found {tok!r}")
        return tok

    def done(self):
        return self.i >= len(self.toks)

    def tree(self):
        if self.peek() == "rec":
            return self.rec()
        return self.term()

    def rec(self):
        self.take("rec")
        root = self.name()
        self.take(".")
        states = {root: self.term()}
        while (
            self.peek() == ";"
            and self.peek(2) == "="
            and self.peek(1) in _free_names(states)
        ):
            self.take(";")
            name = self.name()
            self.take("=")
            states[name] = self.term()
        return ("rec", root, states)

    def term(self):
        tok = self.peek()
        if tok == "{":
            self.take("{")
            kids = self.args("}")
            return ("set", kids)
        if tok == "rec":
            return self.rec()
        name = self.name()
        if self.peek() == "(":
            self.take("(")
            return ("app", name, self.args(")"))
        return ("name", name)

    def args(self, close):
        kids = []
        if self.peek() == close:
            self.take(close)
            return kids
        while True:
            kids.append(self.tree())
            if self.peek() == ",":
                self.take(",")
                continue
            self.take(close)
            return kids


def _free_names(states) -> set[str]:
    names = set()

    def walk(ast):
        kind = ast[0]
        if kind == "name":
            names.add(ast[1])
        elif kind == "app":
            for c in ast[2]:
                walk(c)
        elif kind == "set":
            for c in ast[1]:
                walk(c)
        else:
            for c in ast[2].values():
                walk(c)

    for ast in states.values():
        walk(ast)
    return names - states.keys()


class _Alias:
    __slots__ = ("target",)

    def __init__(self, target):
        self.target = target


class _Builder:
    """Turns an AST into state-system labels."""

    def __init__(self, pres: Presentation | None, variables=frozenset()):
        self.pres = pres
        self.variables = frozenset(variables)
        self.labels: list = []
        self.index: dict = {}

    def _op(self, head, nargs):
        if self.pres is None:
            return
        arity = self.pres.sig.arity(head)
        if arity is None:
            raise UnknownOp(head)
        if arity != nargs:
            raise ArityMismatch(f"{head} expects {arity} arguments, got {nargs}")

    def fresh(self):
        self.labels.append(None)
        return len(self.labels) - 1

    def intern(self, lab):
        if lab not in self.index:
            self.index[lab] = len(self.labels)
            self.labels.append(lab)
        return self.index[lab]

    def leaf(self, name):
        if self.pres is not None and name in self.pres.sig:
            if name in self.variables:
                raise NameClash(name)
            self._op(name, 0)
            return Label(name, ())
        return Label(name, (), True)

    def build(self, ast, env) -> int:
        kind = ast[0]
        if kind == "name":
            if ast[1] in env:
                return env[ast[1]]
            return self.intern(self.leaf(ast[1]))
        if kind == "app":
            self._op(ast[1], len(ast[2]))
            return self.intern(Label(ast[1], tuple(self.build(c, env) for c in ast[2])))
        if kind == "set":
            prefix = self.pres.brace_prefix if self.pres is not None else None
            if prefix is None:
                raise ParseError("braces need a power-set presentation")
            head = f"{prefix}{len(ast[1])}"
            self._op(head, len(ast[1]))
            return self.intern(Label(head, tuple(self.build(c, env) for c in ast[1])))
        _, root, states = ast
        env = dict(env)
        slots = {name: self.fresh() for name in states}
        env.update(slots)
        for name, body in states.items():
            target = self.build(body, env)
            self.labels[slots[name]] = _Alias(target)
        return slots[root]

    def system(self, root) -> RationalTree:
        # resolve aliases introduced by named states
        def resolve(s, seen=()):
            lab = self.labels[s]
            if isinstance(lab, _Alias):
                if s in seen:
                    raise NotGuarded("state defined as itself")
                return resolve(lab.target, seen + (s,))
            return s

        labels = []
        for s in range(len(self.labels)):
            lab = self.labels[resolve(s)]
            labels.append(Label(lab.head, tuple(resolve(a) for a in lab.args), lab.is_var))
        return RationalTree.from_labels(labels, resolve(root))


def parse_tree(text: str, pres: Presentation | None = None, variables=frozenset()):
    """Parse a term or ``rec`` block; finite results come back as FiniteTree."""
    parser = _Parser(text)
    ast = parser.tree()
    if not parser.done():
        raise ParseError(f"trailing input at token {parser.peek()!r}")
    b = _Builder(pres, variables)
    system = b.system(b.build(ast, {}))
    return to_finite(system) if system.is_finite() else system


def parse_cut_point(text: str, pres: Presentation | None = None, variables=frozenset()):
    t = parse_tree(text, pres, variables)
    if not isinstance(t, (Op, Var)) or t.children:
        raise BadCutPoint(f"{text!r} is not a leaf")
    return t


# -- printing --------------------------------------------------------------


def _head_text(head, args_text, pres):
    prefix = pres.brace_prefix if pres is not None else None
    if prefix is not None and head.startswith(prefix) and head[len(prefix):].isdigit():
        return "{" + ", ".join(args_text) + "}"
    if not args_text:
        return head
    return f"{head}({', '.join(args_text)})"


def format_tree(t, pres: Presentation | None = None) -> str:
    if isinstance(t, CanonicalTree):
        t = t.system
    if isinstance(t, RationalTree):
        if t.is_finite():
            t = to_finite(t)
        else:
            return _format_system(t, pres)
    memo: dict[int, str] = {}

    def go(node):
        key = id(node)
        if key not in memo:
            if isinstance(node, Var):
                memo[key] = node.name
            else:
                memo[key] = _head_text(node.name, [go(c) for c in node.children], pres)
        return memo[key]

    return go(t)


def _cyclic_states(t: RationalTree) -> set[int]:
    """States lying on a cycle (Tarjan's SCCs, iteratively)."""
    labels = t.labels
    index, low, on, stack, out = {}, {}, set(), [], set()
    counter = 0
    for start in t.reachable():
        if start in index:
            continue
        work = [(start, 0)]
        while work:
            s, i = work.pop()
            if i == 0:
                index[s] = low[s] = counter
                counter += 1
                stack.append(s)
                on.add(s)
            args = labels[s].args
            if i < len(args):
                work.append((s, i + 1))
                a = args[i]
                if a not in index:
                    work.append((a, 0))
                elif a in on:
                    low[s] = min(low[s], index[a])
                continue
            for a in args:
                if a in on:
                    low[s] = min(low[s], low[a])
            if low[s] == index[s]:
                comp = []
                while True:
                    x = stack.pop()
                    on.discard(x)
                    comp.append(x)
                    if x == s:
                        break
                if len(comp) > 1 or s in args:
                    out.update(comp)
    return out


def _format_system(t: RationalTree, pres) -> str:
    named = [s for s in t.reachable() if s == t.root or s in _cyclic_states(t)]
    heads = {lab.head for lab in t.labels}
    prefix = next(p for p in ("s", "q", "st", "state") if not any(f"{p}{i}" in heads for i in range(len(named))))
    names = {s: f"{prefix}{i}" for i, s in enumerate(named)}

    def go(s, top=False):
        if s in names and not top:
            return names[s]
        lab = t.labels[s]
        if lab.is_var:
            return lab.head
        return _head_text(lab.head, [go(a) for a in lab.args], pres)

    parts = [f"rec {names[named[0]]}. {go(named[0], True)}"]
    parts += [f"{names[s]} = {go(s, True)}" for s in named[1:]]
    return "; ".join(parts)


def to_dot(t, pres: Presentation | None = None, name: str = "tree") -> str:
    """Graphviz digraph of a state system; successor edges carry positions."""
    if isinstance(t, CanonicalTree):
        t = t.system
    t = as_system(t).gc()
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for s, lab in enumerate(t.labels):
        shape = "doublecircle" if s == t.root else "circle"
        text = lab.head
        if pres is not None and pres.brace_prefix and lab.head.startswith(pres.brace_prefix):
            text = "{" + "," * max(len(lab.args) - 1, 0) + "}" if lab.args else "{}"
        style = ' style="dashed"' if lab.is_var else ""
        lines.append(f'  n{s} [label="{text}" shape={shape}{style}];')
    for s, lab in enumerate(t.labels):
        for i, a in enumerate(lab.args):
            lines.append(f'  n{s} -> n{a} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- equation systems ------------------------------------------------------


@dataclass(frozen=True)
class ParsedEquations:
    rhs: dict          # var -> FlatTerm (args are variables) | RationalTree/FiniteTree param
    declared: tuple    # user-visible variables, in order of appearance


def _split_equations(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line[3:].strip() if line.startswith("eq ") else line)
    return lines


def parse_equations(text: str, pres: Presentation) -> ParsedEquations:
    """Parse a guarded system, flattening deep right-hand sides.

    Subterms mentioning no recursion variable become parameters; other
    nested subterms get auxiliary variables named ``_x1``, ``_x2``, ...
    """
    asts: list[tuple[str, str, object]] = []
    for chunk in _split_equations(text):
        p = _Parser(chunk)
        while not p.done():
            var = p.name()
            p.take("=")
            if p.peek() == "param":
                p.take("param")
                asts.append((var, "param", p.tree()))
            else:
                asts.append((var, "term", p.tree()))
            if p.peek() == ";":
                p.take(";")
            elif not p.done():
                raise ParseError(f"unexpected {p.peek()!r} after equation for {var}")
    rec_vars = [v for v, _, _ in asts]
    if len(set(rec_vars)) != len(rec_vars):
        raise ParseError("variable defined twice")
    for v in rec_vars:
        if v in pres.sig:
            raise NameClash(v)
    recs = set(rec_vars)
    rhs: dict = {}
    counter = {}

    def mentions(ast):
        if ast[0] == "name":
            return ast[1] in recs
        if ast[0] == "app":
            return any(mentions(c) for c in ast[2])
        if ast[0] == "set":
            return any(mentions(c) for c in ast[1])
        return False

    def as_param(ast):
        b = _Builder(pres)
        s = b.system(b.build(ast, {}))
        return to_finite(s) if s.is_finite() else s

    def fresh(owner):
        counter[owner] = counter.get(owner, 0) + 1
        name = f"_{owner}{counter[owner]}"
        while name in recs or name in rhs:
            counter[owner] += 1
            name = f"_{owner}{counter[owner]}"
        return name

    def define(var, ast, owner):
        if not mentions(ast):
            rhs[var] = as_param(ast)
            return
        if ast[0] == "name":
            raise NotGuarded(f"{var} = {ast[1]} is not guarded")
        if ast[0] == "rec":
            raise ParseError("recursion variables cannot occur inside rec blocks")
        if ast[0] == "set":
            prefix = pres.brace_prefix
            if prefix is None:
                raise ParseError("braces need a power-set presentation")
            head, kids = f"{prefix}{len(ast[1])}", ast[1]
        else:
            head, kids = ast[1], ast[2]
        args = []
        for kid in kids:
            if kid[0] == "name" and kid[1] in recs:
                args.append(kid[1])
            else:
                aux = fresh(owner)
                rhs[aux] = None
                define(aux, kid, owner)
                args.append(aux)
        term = FlatTerm(head, tuple(args))
        validate_flat(pres.sig, term)
        rhs[var] = term

    for var, kind, ast in asts:
        if kind == "param":
            rhs[var] = as_param(ast)
        else:
            define(var, ast, var)
    return ParsedEquations(rhs, tuple(rec_vars))


def _flat_side(ast, sig) -> FlatTerm:
    if ast[0] == "name" and ast[1] in sig:
        return FlatTerm(ast[1])
    if ast[0] != "app" or not all(c[0] == "name" and c[1] not in sig for c in ast[2]):
        raise ParseError("equation sides must be one operation over variables")
    t = FlatTerm(ast[1], tuple(c[1] for c in ast[2]))
    validate_flat(sig, t)
    return t


def parse_flat_equation(text: str, sig) -> tuple[FlatTerm, FlatTerm]:
    """``sigma1(x, x) = sigma2(x, x)`` as a pair of flat terms."""
    p = _Parser(text)
    lhs = p.term()
    p.take("=")
    rhs = p.term()
    if not p.done():
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return _flat_side(lhs, sig), _flat_side(rhs, sig)
