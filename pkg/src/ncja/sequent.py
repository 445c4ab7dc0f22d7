"""Sequents, proof trees and their text/JSON forms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ncja.formula import Formula, ParseError, _Parser, encode_negation, validate
from ncja.logics import LogicSpec

__all__ = ["Sequent", "ProofTree", "parse_sequent", "normalize", "context_key"]

TURNSTILE = "|-"


@dataclass(frozen=True)
class Sequent:
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))

    def __str__(self) -> str:
        lhs = ", ".join(f.text for f in self.left)
        rhs = ", ".join(f.text for f in self.right)
        return f"{lhs} {TURNSTILE} {rhs}".strip()

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)

    def formulas(self) -> Iterator[Formula]:
        yield from self.left
        yield from self.right


def context_key(ctx: Iterable[Formula], mode: str) -> tuple:
    """Canonical form of a context under `mode` (set, multiset or list)."""
    if mode == "set":
        return tuple(sorted(set(ctx)))
    if mode == "multiset":
        return tuple(sorted(ctx))
    return tuple(ctx)


def normalize(s: Sequent, spec: LogicSpec) -> Sequent:
    return Sequent(context_key(s.left, spec.context), context_key(s.right, spec.context))


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p for p in (p.strip() for p in parts) if p]


def parse_context(text: str, spec: LogicSpec | None = None) -> list[Formula]:
    out = []
    for part in _split_top_level(text):
        f = _Parser(part).parse()
        if spec is not None:
            f = validate(encode_negation(f, spec), spec)
        out.append(f)
    return out


def parse_sequent(text: str, spec: LogicSpec | None = None) -> Sequent:
    """Parse ``"A, B |- A * B"``; either side may be empty."""
    if text.count(TURNSTILE) != 1:
        raise ParseError(f"a sequent needs exactly one {TURNSTILE!r}", 0)
    lhs, rhs = text.split(TURNSTILE)
    s = Sequent(parse_context(lhs, spec), parse_context(rhs, spec))
    if spec is not None and spec.single_conclusion and len(s.right) > 1:
        raise ValueError(f"{spec.id} sequents have at most one formula on the right")
    return s


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    premises: tuple["ProofTree", ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def nodes(self) -> Iterator["ProofTree"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def rules_used(self) -> Counter:
        return Counter(n.rule for n in self.nodes())

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "conclusion": str(self.conclusion),
            "premises": [p.to_dict() for p in self.premises],
        }

    @classmethod
    def from_dict(cls, data: dict, spec: LogicSpec | None = None) -> "ProofTree":
        return cls(
            parse_sequent(data["conclusion"], spec),
            data["rule"],
            tuple(cls.from_dict(p, spec) for p in data["premises"]),
        )

    def to_text(self, indent: int = 0) -> str:
        """Indented rendering, conclusion first, premises nested below."""
        lines = [f"{'  ' * indent}{self.conclusion}   [{self.rule}]"]
        lines.extend(p.to_text(indent + 1) for p in self.premises)
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()
