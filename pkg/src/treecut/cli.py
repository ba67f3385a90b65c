"""Command-line interface.

Exit status is 0 on success, 1 on a domain error (the error class name is
printed on one line to stderr) or a failing check, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import checks
from .chains import DEFAULT_CAP, enumerate_initial_stage, enumerate_terminal_stage
from .errors import TreecutError
from .order import OrderedElement, leq_quotient
from .presentation import Presentation, equiv_finite, equiv_star, from_equations, nf, parse_builtin
from .signature import parse_signature
from .solver import CoalgebraSystem, RecEquationSystem, approx_chain, solve
from .syntax import format_tree, parse_cut_point, parse_flat_equation, parse_tree, to_dot
from .trees import cut

COMMANDS = ("nf", "cut", "leq", "equiv", "solve", "approx", "hom", "enumerate", "check", "dot")


@dataclass(frozen=True)
class Workspace:
    pres: Presentation
    p: object
    variables: frozenset
    depth: int
    seed: int
    cases: int
    cap: int


def _env_int(name, default):
    value = os.environ.get(f"TREECUT_{name.upper()}")
    return int(value) if value is not None else default


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treecut", description="Free algebras and rational trees by cutting.")
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--pres", default="pf", help='built-in presentation, e.g. pf, "pk(2)", "product(a,b)"')
    src.add_argument("--sig", metavar="FILE", help="signature file with op/schema/eq lines")
    ap.add_argument("--p", help="cut point: a constant or a variable name")
    ap.add_argument("--vars", default="", help="comma-separated variable names")
    ap.add_argument("--term")
    ap.add_argument("--term2")
    ap.add_argument("--n", type=int, default=None)
    ap.add_argument("--depth", type=int, default=_env_int("depth", 8))
    ap.add_argument("--eqs", help='inline system, e.g. "x=a(y);y=b(x)"')
    ap.add_argument("--eqs-file", metavar="FILE")
    ap.add_argument("--format", choices=("text", "dot"), default="text")
    ap.add_argument("--kind", choices=("initial", "terminal"), default="initial")
    ap.add_argument("--list", action="store_true", help="enumerate: print every element")
    ap.add_argument("--seed", type=int, default=_env_int("seed", 0))
    ap.add_argument("--cases", type=int, default=_env_int("cases", 0))
    ap.add_argument("--cap", type=int, default=_env_int("cap", DEFAULT_CAP))
    ap.add_argument("--suite", choices=sorted(checks.SUITES))
    return ap


def _presentation(args) -> Presentation:
    if args.sig is None:
        return parse_builtin(args.pres)
    with open(args.sig) as fh:
        text = fh.read()
    sig = parse_signature("\n".join(l for l in text.splitlines() if not l.strip().startswith("eq ")))
    eqs = "\n".join(l for l in text.splitlines() if l.strip().startswith("eq "))
    equations = [parse_flat_equation(line.strip()[3:], sig) for line in eqs.splitlines()]
    return from_equations(sig, equations, os.path.basename(args.sig))


def _workspace(args) -> Workspace:
    pres = _presentation(args)
    variables = frozenset(v.strip() for v in args.vars.split(",") if v.strip())
    if args.p is None:
        p = pres.default_cut_point()
    else:
        p = parse_cut_point(args.p, pres, variables | {args.p} if args.p not in pres.sig else variables)
    return Workspace(pres, p, variables, args.depth, args.seed, args.cases, args.cap)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise _Usage(f"{args.command} needs {', '.join(missing)}")


class _Usage(Exception):
    pass


def _term(ws, text):
    return parse_tree(text, ws.pres, ws.variables | _leaf_vars(ws))


def _leaf_vars(ws):
    return {ws.p.name} if not hasattr(ws.p, "children") else set()


def _system(args, ws) -> RecEquationSystem:
    if args.eqs_file is not None:
        with open(args.eqs_file) as fh:
            return RecEquationSystem.from_text(fh.read(), ws.pres)
    _need(args, "eqs")
    return RecEquationSystem.from_text(args.eqs, ws.pres)


def _emit(t, ws, fmt, name="tree"):
    print(to_dot(t, ws.pres, name) if fmt == "dot" else format_tree(t, ws.pres), end="" if fmt == "dot" else "\n")


def run(args) -> int:
    ws = _workspace(args)
    cmd = args.command
    if cmd == "nf":
        _need(args, "term")
        _emit(nf(ws.pres, _term(ws, args.term)), ws, args.format)
    elif cmd == "dot":
        _need(args, "term")
        print(to_dot(nf(ws.pres, _term(ws, args.term)), ws.pres), end="")
    elif cmd == "cut":
        _need(args, "term", "n")
        t = nf(ws.pres, _term(ws, args.term))
        _emit(nf(ws.pres, cut(t.system, args.n, ws.p)), ws, args.format)
    elif cmd == "leq":
        _need(args, "term", "term2")
        a = OrderedElement.of(ws.pres, _term(ws, args.term), ws.p)
        b = OrderedElement.of(ws.pres, _term(ws, args.term2), ws.p)
        result = leq_quotient(a, b, ws.depth)
        print("true" if result else "false")
    elif cmd == "equiv":
        _need(args, "term", "term2")
        s, t = _term(ws, args.term), _term(ws, args.term2)
        if hasattr(s, "children") and hasattr(t, "children"):
            result = equiv_finite(ws.pres, s, t, ws.cap)
        else:
            result = equiv_star(ws.pres, s, t, ws.depth, ws.p)
        print("true" if result else "false")
    elif cmd == "solve":
        e = _system(args, ws)
        sol = solve(e)
        for v in e.declared:
            if args.format == "dot":
                print(to_dot(sol[v], ws.pres, v), end="")
                continue
            print(f"{v} = {format_tree(sol[v], ws.pres)}")
            print(f"  depth {ws.depth}: {format_tree(cut(_as_system(sol[v]), ws.depth, ws.p), ws.pres)}")
    elif cmd in ("approx", "hom"):
        e = _system(args, ws)
        if cmd == "hom":
            e = CoalgebraSystem(ws.pres, e.rhs).as_equations()
        k = ws.depth if args.n is None else args.n
        for stage in approx_chain(e, k, ws.p):
            cells = ", ".join(f"{v} = {format_tree(stage[v], ws.pres)}" for v in e.declared)
            print(f"{stage.k}: {cells}")
    elif cmd == "enumerate":
        _need(args, "n")
        if args.kind == "initial":
            stage = enumerate_initial_stage(ws.pres, args.n, ws.cap)
        else:
            stage = enumerate_terminal_stage(ws.pres, args.n, ws.p, ws.cap)
        print(f"{args.kind} stage {args.n}: {len(stage)} elements")
        if args.list:
            for line in sorted(format_tree(t, ws.pres) for t in stage.elements):
                print(line)
    elif cmd == "check":
        _need(args, "suite")
        rows = checks.SUITES[args.suite](ws.seed, ws.cases)
        width = max(len(r.name) for r in rows)
        for r in rows:
            status = "PASS" if r.ok else "FAIL"
            extra = f"  {r.detail}" if r.detail else ""
            print(f"{status}  {r.name:<{width}}  {r.passed}/{r.total}{extra}")
        return 0 if all(r.ok for r in rows) else 1
    return 0


def _as_system(t):
    return t.system if hasattr(t, "system") else t


def main(argv=None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"treecut: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"treecut: error: {exc}", file=sys.stderr)
        return 2
    except TreecutError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
