"""Ranked alphabets and one-layer terms.

A signature is a finite table of operation symbols with arities, optionally
extended by a *schema* that admits one symbol per arity (``tup0``, ``tup1``,
...).  Variables never live in the signature; they are leaves in their own
namespace, which is how ``Sigma + X`` is modelled throughout the package.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import ArityMismatch, DuplicateOp, ParseError, UnknownOp

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class ArityScheme:
    """One operation ``prefix + str(n)`` for every arity ``n`` up to ``max_arity``."""

    prefix: str
    max_arity: int | None = None

    def arity_of(self, name: str) -> int | None:
        if not name.startswith(self.prefix):
            return None
        digits = name[len(self.prefix):]
        if not digits.isdigit() or (len(digits) > 1 and digits[0] == "0"):
            return None
        n = int(digits)
        if self.max_arity is not None and n > self.max_arity:
            return None
        return n

    def name_for(self, n: int) -> str:
        return f"{self.prefix}{n}"


@dataclass(frozen=True)
class Signature:
    ops: Mapping[str, int] = field(default_factory=dict)
    schema: ArityScheme | None = None

    def __post_init__(self):
        ops = dict(self.ops)
        for name, arity in ops.items():
            if not _NAME.match(name):
                raise ParseError(f"bad operation name {name!r}")
            if arity < 0:
                raise ArityMismatch(f"negative arity for {name}")
            if self.schema is not None and self.schema.arity_of(name) is not None:
                raise DuplicateOp(f"{name} is also generated by the schema")
        object.__setattr__(self, "ops", ops)

    def __hash__(self):
        return hash((tuple(sorted(self.ops.items())), self.schema))

    def arity(self, name: str) -> int | None:
        """Arity of ``name``, or None when the symbol is not in the signature."""
        if name in self.ops:
            return self.ops[name]
        if self.schema is not None:
            return self.schema.arity_of(name)
        return None

    def __contains__(self, name: str) -> bool:
        return self.arity(name) is not None

    @property
    def nullaries(self) -> frozenset[str]:
        names = {n for n, a in self.ops.items() if a == 0}
        if self.schema is not None:
            names.add(self.schema.name_for(0))
        return frozenset(names)

    @property
    def is_finite(self) -> bool:
        return self.schema is None or self.schema.max_arity is not None

    def finite_ops(self) -> dict[str, int]:
        """All symbols with arities; only defined for finite signatures."""
        if not self.is_finite:
            raise ValueError("schematic signature has infinitely many operations")
        out = dict(self.ops)
        if self.schema is not None:
            for n in range(self.schema.max_arity + 1):
                out[self.schema.name_for(n)] = n
        return out


@dataclass(frozen=True)
class FlatTerm:
    """``head(args...)`` where the args are opaque, totally ordered keys."""

    head: str
    args: tuple = ()
    is_var: bool = False

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if self.is_var and self.args:
            raise ArityMismatch(f"variable {self.head} cannot take arguments")


def validate_flat(sig: Signature, t: FlatTerm) -> None:
    if t.is_var:
        return
    arity = sig.arity(t.head)
    if arity is None:
        raise UnknownOp(t.head)
    if arity != len(t.args):
        raise ArityMismatch(f"{t.head} expects {arity} arguments, got {len(t.args)}")


def parse_signature(text: str) -> Signature:
    """Parse ``op NAME ARITY`` and ``schema PREFIX [MAX]`` lines.

    Blank lines and ``#`` comments are ignored.
    """
    ops: dict[str, int] = {}
    schema = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "op" and len(words) == 3:
            name, arity = words[1], words[2]
            if not _NAME.match(name) or not arity.isdigit():
                raise ParseError(f"line {lineno}: {raw.strip()!r}")
            if name in ops:
                raise DuplicateOp(f"line {lineno}: {name}")
            ops[name] = int(arity)
        elif words[0] == "schema" and len(words) in (2, 3):
            if schema is not None:
                raise DuplicateOp(f"line {lineno}: second schema")
            if not _NAME.match(words[1]):
                raise ParseError(f"line {lineno}: bad prefix {words[1]!r}")
            bound = None
            if len(words) == 3:
                if not words[2].isdigit():
                    raise ParseError(f"line {lineno}: bad schema bound {words[2]!r}")
                bound = int(words[2])
            schema = ArityScheme(words[1], bound)
        else:
            raise ParseError(f"line {lineno}: {raw.strip()!r}")
    return Signature(ops, schema)


def format_signature(sig: Signature) -> str:
    lines = [f"op {name} {arity}" for name, arity in sig.ops.items()]
    if sig.schema is not None:
        bound = "" if sig.schema.max_arity is None else f" {sig.schema.max_arity}"
        lines.append(f"schema {sig.schema.prefix}{bound}")
    return "\n".join(lines) + ("\n" if lines else "")
