r"""Formula trees, the textual grammar and syntactic complement.

Formulas are immutable and hashable.  Every node carries its canonical,
fully parenthesised text, which doubles as a total order and as a cheap
equality key.

Grammar (ASCII)::

    ~        negation
    *  &  /\  .          products   (tensor, with, classical and, Lambek product)
    +  |  \/             sums       (plus, par, classical or)
    ->  -o  ~>  \  //    implications (right associative)
    1  bot  top  0       units

Precedence: negation > products > sums > implications.
"""

from __future__ import annotations

import re
from typing import Iterator

from ncja.logics import LogicSpec

__all__ = [
    "Formula", "Atom", "Unit", "Neg", "Bin", "BOT", "ONE", "TOP", "ZERO",
    "ParseError", "FragmentError", "parse", "to_text", "complement",
    "negate", "is_negated", "validate", "atoms", "depth", "subformulas",
]


CONNECTIVES = {
    # name: (token, class)
    "and": ("/\\", "product"),
    "tensor": ("*", "product"),
    "with": ("&", "product"),
    "lprod": (".", "product"),
    "or": ("\\/", "sum"),
    "par": ("|", "sum"),
    "plus": ("+", "sum"),
    "imp": ("->", "implication"),
    "lolli": ("-o", "implication"),
    "addimp": ("~>", "implication"),
    "lunder": ("\\", "implication"),
    "lover": ("//", "implication"),
}
TOKEN_TO_CONNECTIVE = {tok: name for name, (tok, _) in CONNECTIVES.items()}
UNIT_TOKENS = {"one": "1", "bot": "bot", "top": "top", "zero": "0"}
TOKEN_TO_UNIT = {tok: kind for kind, tok in UNIT_TOKENS.items()}


class Formula:
    __slots__ = ("_text", "_hash")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self._hash == other._hash and self._text == other._text

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Formula") -> bool:
        return self._text < other._text

    def __str__(self) -> str:
        return self._text

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def _init(self, text: str) -> None:
        object.__setattr__(self, "_text", text)
        object.__setattr__(self, "_hash", hash(text))

    @property
    def text(self) -> str:
        return self._text


class Atom(Formula):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        if not name or not _IDENT.fullmatch(name) or name in _RESERVED:
            raise ValueError(f"invalid atom name {name!r}")
        object.__setattr__(self, "name", name)
        self._init(name)

    def __reduce__(self):
        return Atom, (self.name,)

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


class Unit(Formula):
    __slots__ = ("kind",)
    __match_args__ = ("kind",)

    def __init__(self, kind: str):
        if kind not in UNIT_TOKENS:
            raise ValueError(f"unknown unit {kind!r}")
        object.__setattr__(self, "kind", kind)
        self._init(UNIT_TOKENS[kind])

    def __reduce__(self):
        return Unit, (self.kind,)

    def __repr__(self) -> str:
        return f"Unit({self.kind!r})"


class Neg(Formula):
    __slots__ = ("body",)
    __match_args__ = ("body",)

    def __init__(self, body: Formula):
        object.__setattr__(self, "body", body)
        self._init("~" + body._text)

    def __reduce__(self):
        return Neg, (self.body,)

    def __repr__(self) -> str:
        return f"Neg({self.body!r})"


class Bin(Formula):
    __slots__ = ("op", "left", "right")
    __match_args__ = ("op", "left", "right")

    def __init__(self, op: str, left: Formula, right: Formula):
        if op not in CONNECTIVES:
            raise ValueError(f"unknown connective {op!r}")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._init(f"({left._text} {CONNECTIVES[op][0]} {right._text})")

    def __reduce__(self):
        return Bin, (self.op, self.left, self.right)

    def __repr__(self) -> str:
        return f"Bin({self.op!r}, {self.left!r}, {self.right!r})"


ONE, BOT, TOP, ZERO = Unit("one"), Unit("bot"), Unit("top"), Unit("zero")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FragmentError(ValueError):
    pass


def to_text(f: Formula) -> str:
    return f._text


# ---------------------------------------------------------------- parsing

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_RESERVED = {"bot", "top"}
# longest tokens first
_SYMBOLS = ["/\\", "\\/", "->", "-o", "~>", "//", "~", "*", "&", ".", "+", "|",
            "\\", "(", ")"]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(("sym", sym, i))
                i += len(sym)
                break
        else:
            if ch in "01":
                tokens.append(("unit", ch, i))
                i += 1
                continue
            m = _IDENT.match(text, i)
            if m is None:
                raise ParseError(f"unexpected character {ch!r}", i)
            word = m.group()
            tokens.append(("unit" if word in _RESERVED else "atom", word, i))
            i = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


_PRODUCTS = {"*", "&", "/\\", "."}
_SUMS = {"+", "|", "\\/"}
_IMPLICATIONS = {"->", "-o", "~>", "\\", "//"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self.implication()
        kind, value, at = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", at)
        return f

    def implication(self) -> Formula:
        left = self.sum()
        kind, value, _ = self.peek()
        if kind == "sym" and value in _IMPLICATIONS:
            self.take()
            right = self.implication()
            return Bin(TOKEN_TO_CONNECTIVE[value], left, right)
        return left

    def sum(self) -> Formula:
        f = self.product()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in _SUMS:
                self.take()
                f = Bin(TOKEN_TO_CONNECTIVE[value], f, self.product())
            else:
                return f

    def product(self) -> Formula:
        f = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in _PRODUCTS:
                self.take()
                f = Bin(TOKEN_TO_CONNECTIVE[value], f, self.unary())
            else:
                return f

    def unary(self) -> Formula:
        kind, value, at = self.take()
        if kind == "sym" and value == "~":
            return Neg(self.unary())
        if kind == "sym" and value == "(":
            f = self.implication()
            kind2, value2, at2 = self.take()
            if value2 != ")":
                raise ParseError("expected ')'", at2)
            return f
        if kind == "atom":
            return Atom(value)
        if kind == "unit":
            return Unit(TOKEN_TO_UNIT[value])
        if kind == "end":
            raise ParseError("unexpected end of input", at)
        raise ParseError(f"unexpected token {value!r}", at)


def parse(text: str, spec: LogicSpec | None = None) -> Formula:
    """Parse `text`; with `spec`, encode negation and check the fragment.

    In logics whose negation is defined (IL: ``A -> bot``, L: ``A \\ bot``)
    a ``~`` in the input is stored in that implication form.
    """
    f = _Parser(text).parse()
    if spec is not None:
        f = encode_negation(f, spec)
        validate(f, spec)
    return f


def encode_negation(f: Formula, spec: LogicSpec) -> Formula:
    if spec.negation == "primitive":
        return f
    match f:
        case Neg(body):
            return negate(encode_negation(body, spec), spec)
        case Bin(op, left, right):
            return Bin(op, encode_negation(left, spec), encode_negation(right, spec))
    return f


def validate(f: Formula, spec: LogicSpec) -> Formula:
    """Raise FragmentError unless every connective and unit of `f` is in `spec`."""
    for g in subformulas(f):
        match g:
            case Neg():
                if spec.negation != "primitive":
                    raise FragmentError(f"negation is not primitive in {spec.id}")
            case Bin(op, _, _):
                if op not in spec.connectives:
                    raise FragmentError(
                        f"connective {op!r} ({CONNECTIVES[op][0]}) is not in the {spec.id} fragment")
            case Unit(kind):
                if kind not in spec.units:
                    raise FragmentError(f"unit {UNIT_TOKENS[kind]!r} is not in the {spec.id} fragment")
    return f


# ---------------------------------------------------------------- complement

def negate(f: Formula, spec: LogicSpec | None = None) -> Formula:
    """Syntactic negation in the style of `spec` (primitive by default)."""
    style = "primitive" if spec is None else spec.negation
    if style == "imp-bot":
        return Bin("imp", f, BOT)
    if style == "under-bot":
        return Bin("lunder", f, BOT)
    return Neg(f)


def is_negated(f: Formula, spec: LogicSpec | None = None) -> bool:
    return _unnegated(f, spec) is not None


def _unnegated(f: Formula, spec: LogicSpec | None) -> Formula | None:
    style = "primitive" if spec is None else spec.negation
    match f:
        case Neg(body) if style == "primitive":
            return body
        case Bin("imp", body, Unit("bot")) if style == "imp-bot":
            return body
        case Bin("lunder", body, Unit("bot")) if style == "under-bot":
            return body
    return None


def complement(f: Formula, spec: LogicSpec | None = None) -> Formula:
    """Strip one negation if `f` is negated, otherwise add one.

    Double negations are not cancelled: the complement of ``~~A`` is ``~A``.
    """
    body = _unnegated(f, spec)
    return negate(f, spec) if body is None else body


# ---------------------------------------------------------------- traversal

def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        match g:
            case Neg(body):
                stack.append(body)
            case Bin(_, left, right):
                stack.append(right)
                stack.append(left)


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def depth(f: Formula) -> int:
    match f:
        case Neg(body):
            return 1 + depth(body)
        case Bin(_, left, right):
            return 1 + max(depth(left), depth(right))
    return 0


def has_units(f: Formula) -> bool:
    return any(isinstance(g, Unit) for g in subformulas(f))
