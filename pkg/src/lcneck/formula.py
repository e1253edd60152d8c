"""Formulas and sequents of the Lambek calculus with cyclic shift and friends.

Surface syntax (ASCII)::

    atom    = ident | "(" formula ")"
    post    = atom { "^c" | "^r" | "^b" }
    prod    = post { "*" post }
    formula = prod [ ("\\" | "/") prod ]

``\\`` and ``/`` are non-associative, so ``s/q/p`` must be written ``(s/q)/p``.
``B \\ A`` is :class:`Under` with ``left=B`` (denominator) and ``right=A``;
``A / B`` is :class:`Over` with ``left=A`` and ``right=B`` (denominator).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Formula", "Prim", "Under", "Over", "Prod", "Shift", "Rev", "Brac",
    "Sequent", "Polarity", "SystemId", "ParseError", "FragmentError",
    "RESERVED_PREFIX", "parse_formula", "parse_sequent", "print_formula",
    "size", "subformulas", "primitives", "classify_parity",
    "is_even_cyclic", "is_odd_cyclic", "connectives", "check_fragment",
]

RESERVED_PREFIX = "__"


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class FragmentError(ValueError):
    """A formula uses a connective outside the requested fragment."""


class _Node:
    __slots__ = ()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self._key()))

    def __str__(self) -> str:
        return print_formula(self)


def _hashed(cls):
    # frozen dataclasses rehash recursively on every lookup; cache it once
    cls.__hash__ = lambda self: self._hash
    return cls


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Prim(_Node):
    name: str
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.name,)

    def __repr__(self):
        return f"Prim({self.name!r})"


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Under(_Node):
    """``left \\ right``: the left child is the denominator."""
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Under({self.left!r}, {self.right!r})"


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Over(_Node):
    """``left / right``: the right child is the denominator."""
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Over({self.left!r}, {self.right!r})"


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Prod(_Node):
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Prod({self.left!r}, {self.right!r})"


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Shift(_Node):
    inner: "Formula"
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.inner,)

    def __repr__(self):
        return f"Shift({self.inner!r})"


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Rev(_Node):
    inner: "Formula"
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.inner,)

    def __repr__(self):
        return f"Rev({self.inner!r})"


@_hashed
@dataclass(frozen=True, eq=True, repr=False)
class Brac(_Node):
    inner: "Formula"
    _hash: int = field(init=False, compare=False, default=0)

    def _key(self):
        return (self.inner,)

    def __repr__(self):
        return f"Brac({self.inner!r})"


Formula = Union[Prim, Under, Over, Prod, Shift, Rev, Brac]
BINARY = (Under, Over, Prod)
UNARY = (Shift, Rev, Brac)
_POSTFIX = {Shift: "c", Rev: "r", Brac: "b"}
_INFIX = {Under: "\\", Over: "/", Prod: "*"}


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple
    succedent: Formula

    def __post_init__(self):
        if not isinstance(self.antecedent, tuple):
            object.__setattr__(self, "antecedent", tuple(self.antecedent))
        if not self.antecedent:
            raise ValueError("sequent antecedent must be nonempty")

    def __str__(self) -> str:
        return ", ".join(map(print_formula, self.antecedent)) + " -> " + print_formula(self.succedent)

    def formulas(self) -> Iterator[Formula]:
        yield from self.antecedent
        yield self.succedent

    @property
    def total_size(self) -> int:
        return sum(size(f) for f in self.formulas())


class Polarity(enum.Enum):
    EVEN = "Even"
    ODD = "Odd"

    def flip(self) -> "Polarity":
        return Polarity.ODD if self is Polarity.EVEN else Polarity.EVEN


class SystemId(enum.Enum):
    L = "L"
    LNECK = "Lneck"
    LCS = "LCS"
    LREV = "Lrev"
    LBRAC = "Lbrac"

    @classmethod
    def parse(cls, text: str) -> "SystemId":
        for member in cls:
            if member.value.lower() == text.lower() or member.name.lower() == text.lower():
                return member
        raise ValueError(f"unknown system {text!r}")


# connectives each system admits in formulas
_ALLOWED = {
    SystemId.L: frozenset(),
    SystemId.LCS: frozenset(),
    SystemId.LNECK: frozenset({Shift}),
    SystemId.LREV: frozenset({Rev}),
    SystemId.LBRAC: frozenset({Rev, Brac}),
}


def connectives(f: Formula) -> set:
    out = set()
    for g in subformulas(f):
        if not isinstance(g, Prim):
            out.add(type(g))
    return out


def check_fragment(seq_or_formula, system: SystemId) -> None:
    """Raise :class:`FragmentError` if a unary connective is not admitted by ``system``."""
    formulas = seq_or_formula.formulas() if isinstance(seq_or_formula, Sequent) else [seq_or_formula]
    allowed = _ALLOWED[system]
    for f in formulas:
        bad = {c for c in connectives(f) if c in UNARY and c not in allowed}
        if bad:
            names = ", ".join(sorted("^" + _POSTFIX[c] for c in bad))
            raise FragmentError(f"{print_formula(f)} uses {names}, not allowed in {system.value}")


# ---------------------------------------------------------------- printing

def print_formula(f: Formula) -> str:
    if isinstance(f, Prim):
        return f.name
    if isinstance(f, BINARY):
        return f"({print_formula(f.left)} {_INFIX[type(f)]} {print_formula(f.right)})"
    inner = print_formula(f.inner)
    if isinstance(f.inner, UNARY):
        inner = f"({inner})"
    return f"{inner}^{_POSTFIX[type(f)]}"


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<post>\^[crb])|(?P<arrow>->)|(?P<op>[\\/*(),]))")


def _tokenize(text: str):
    data = text.encode("utf-8")
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", len(text[:pos].encode("utf-8")))
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), len(text[:start].encode("utf-8"))))
        pos = m.end()
    out.append(("eof", "", len(data)))
    return out


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, got {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.prod()
        kind, val, _ = self.peek()
        if kind == "op" and val in ("\\", "/"):
            self.take()
            right = self.prod()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] in ("\\", "/"):
                raise ParseError("mixed or chained division needs parentheses", nxt[2])
            return Under(left, right) if val == "\\" else Over(left, right)
        return left

    def prod(self) -> Formula:
        f = self.post()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            f = Prod(f, self.post())
        return f

    def post(self) -> Formula:
        f = self.atom()
        while self.peek()[0] == "post":
            c = self.take()[1][1]
            f = {"c": Shift, "r": Rev, "b": Brac}[c](f)
        return f

    def atom(self) -> Formula:
        kind, val, off = self.peek()
        if kind == "ident":
            if val.startswith(RESERVED_PREFIX) and not self.allow_reserved:
                raise ParseError(f"identifier {val!r} uses the reserved prefix {RESERVED_PREFIX!r}", off)
            self.take()
            return Prim(val)
        if (kind, val) == ("op", "("):
            self.take()
            f = self.formula()
            self.take("op", ")")
            return f
        raise ParseError(f"expected a formula, got {val or 'end of input'!r}", off)


def parse_formula(text: str, *, allow_reserved: bool = False) -> Formula:
    p = _Parser(text, allow_reserved)
    f = p.formula()
    p.take("eof")
    return f


def parse_sequent(text: str, *, allow_reserved: bool = False) -> Sequent:
    """Parse ``F1, ..., Fn -> G``."""
    p = _Parser(text, allow_reserved)
    ant = [p.formula()]
    while p.peek()[:2] == ("op", ","):
        p.take()
        ant.append(p.formula())
    p.take("arrow")
    succ = p.formula()
    p.take("eof")
    return Sequent(tuple(ant), succ)


# ----------------------------------------------------------------- analysis

def size(f: Formula) -> int:
    """Number of connectives."""
    if isinstance(f, Prim):
        return 0
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    return 1 + size(f.inner)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, UNARY):
        yield from subformulas(f.inner)


def primitives(f: Formula) -> set:
    return {g.name for g in subformulas(f) if isinstance(g, Prim)}


def classify_parity(f: Formula) -> list:
    """Tag every subformula occurrence with its polarity.

    Returns ``(path, subformula, Polarity)`` triples in preorder; a path is a
    tuple of child indices (0 = left/inner, 1 = right). Denominators of ``\\``
    and ``/`` flip polarity; everything else preserves it.
    """
    out = []

    def walk(g, path, pol):
        out.append((path, g, pol))
        if isinstance(g, Under):
            walk(g.left, path + (0,), pol.flip())
            walk(g.right, path + (1,), pol)
        elif isinstance(g, Over):
            walk(g.left, path + (0,), pol)
            walk(g.right, path + (1,), pol.flip())
        elif isinstance(g, Prod):
            walk(g.left, path + (0,), pol)
            walk(g.right, path + (1,), pol)
        elif isinstance(g, UNARY):
            walk(g.inner, path + (0,), pol)

    walk(f, (), Polarity.EVEN)
    return out


def _require_neck_fragment(f: Formula) -> None:
    if connectives(f) & {Rev, Brac}:
        raise FragmentError(f"{print_formula(f)} is outside the ^c fragment")


def is_even_cyclic(f: Formula) -> bool:
    """No odd occurrence of a ``^c`` subformula."""
    _require_neck_fragment(f)
    return not any(isinstance(g, Shift) and pol is Polarity.ODD for _, g, pol in classify_parity(f))


def is_odd_cyclic(f: Formula) -> bool:
    """No even occurrence of a ``^c`` subformula."""
    _require_neck_fragment(f)
    return not any(isinstance(g, Shift) and pol is Polarity.EVEN for _, g, pol in classify_parity(f))
