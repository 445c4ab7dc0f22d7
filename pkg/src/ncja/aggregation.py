"""Aggregation rules, aggregation of profiles and exhaustive axiom checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterable, Iterator

from ncja.formula import Formula, parse
from ncja.judgment import (ROBUST, Agenda, JudgmentStructure, Profile, RationalityClass,
                           is_complement_free, is_complete)
from ncja.logics import LogicSpec, get_logic

__all__ = [
    "AggregationRule", "AggregationOutcome", "Verdict", "EnumerationBoundError",
    "ENUMERATION_BOUND", "AXIOMS", "parse_rule", "aggregate", "aggregate_list", "check_axiom",
    "monotone_h_vectors",
]

ENUMERATION_BOUND = 10 ** 7
AXIOMS = ("A", "N", "I", "M", "WR", "arN")
STAR = "*"


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class AggregationRule:
    """A rule deciding each issue from the profile.

    ``majority``, ``quota``, ``custom`` and ``inversion`` accept an issue
    according to its number of supporters only; ``list-majority`` is the
    positional majority on list agendas; ``constant`` ignores the profile.
    """

    kind: str
    m: int | None = None
    h: tuple[int, ...] | None = None
    constant: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("majority", "quota", "list-majority", "custom", "inversion", "constant"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "quota" and (self.m is None or self.m < 0):
            raise ValueError("quota rules need a threshold m >= 0")
        if self.kind == "custom":
            if not self.h or any(x not in (0, 1) for x in self.h):
                raise ValueError("custom rules need a 0/1 vector indexed by supporter count")
            object.__setattr__(self, "h", tuple(self.h))
        if self.kind == "constant":
            if self.constant is None:
                raise ValueError("constant rules need the accepted formulas")
            object.__setattr__(self, "constant", tuple(self.constant))

    @classmethod
    def majority(cls) -> "AggregationRule":
        return cls("majority")

    @classmethod
    def quota(cls, m: int) -> "AggregationRule":
        return cls("quota", m=m)

    @classmethod
    def custom(cls, h: Iterable[int]) -> "AggregationRule":
        return cls("custom", h=tuple(h))

    @property
    def count_based(self) -> bool:
        return self.kind != "constant"

    def h_vector(self, n: int) -> tuple[int, ...]:
        """Acceptance by supporter count 0..n."""
        if self.kind in ("majority", "list-majority"):
            return tuple(int(2 * c > n) for c in range(n + 1))
        if self.kind == "quota":
            if self.m > n + 1:
                raise ValueError(f"quota {self.m} outside 0..{n + 1}")
            return tuple(int(c >= self.m) for c in range(n + 1))
        if self.kind == "inversion":
            return tuple(int(c <= 1) for c in range(n + 1))
        if self.kind == "custom":
            if len(self.h) != n + 1:
                raise ValueError(f"h-vector has {len(self.h)} entries, {n + 1} needed for n = {n}")
            return self.h
        raise ValueError("constant rules do not depend on supporter counts")

    def constant_mask(self, agenda: Agenda) -> int:
        wanted = agenda.structure(parse(t, agenda.spec) for t in self.constant)
        return wanted.mask

    def __str__(self) -> str:
        if self.kind == "quota":
            return f"quota:{self.m}"
        if self.kind == "custom":
            return "custom:" + ",".join(map(str, self.h))
        if self.kind == "constant":
            return "constant:" + json.dumps(list(self.constant))
        return self.kind


def monotone_h_vectors(n: int) -> list[tuple[int, ...]]:
    """All non-decreasing 0/1 vectors on 0..n (the uniform quota rules)."""
    return [tuple(int(c >= m) for c in range(n + 1)) for m in range(n + 1, -1, -1)]


def parse_rule(text: str) -> AggregationRule:
    """``majority``, ``quota:M``, ``list-majority``, ``custom:h0,h1,...``,
    ``inversion`` or ``constant:FILE`` (a JSON list of formulas)."""
    name, _, arg = text.strip().partition(":")
    if name in ("majority", "list-majority", "inversion") and not arg:
        return AggregationRule(name)
    if name == "quota" and arg:
        return AggregationRule.quota(int(arg))
    if name == "custom" and arg:
        return AggregationRule.custom(int(x) for x in arg.split(","))
    if name == "constant" and arg:
        return AggregationRule("constant", constant=tuple(json.loads(Path(arg).read_text())))
    raise ValueError(f"cannot parse aggregation rule {text!r}")


# ---------------------------------------------------------------- aggregation

@dataclass(frozen=True)
class AggregationOutcome:
    collective: JudgmentStructure
    tallies: tuple[int, ...]
    rule: AggregationRule
    padded: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        data = {
            "rule": str(self.rule),
            "logic": self.collective.spec.id,
            "outcome": self.collective.to_list(),
            "tallies": {f.text: c for f, c in zip(self.collective.agenda.issues, self.tallies)}
            if self.collective.spec.context == "set"
            else [[f.text, c] for f, c in zip(self.collective.agenda.issues, self.tallies)],
        }
        if self.padded is not None:
            data["positions"] = list(self.padded)
        return data


def _collective_agenda(p: Profile, collective: LogicSpec | str | None) -> Agenda:
    spec = p.agenda.spec if collective is None else get_logic(collective)
    if spec.context == "list" and p.agenda.spec.context != "list":
        raise ValueError("a list-valued collective logic needs a list agenda")
    return p.agenda.retype(spec)


def outcome_mask(h: tuple[int, ...], masks: Iterable[int], width: int) -> int:
    masks = tuple(masks)
    out = 0
    for i in range(width):
        if h[sum(m >> i & 1 for m in masks)]:
            out |= 1 << i
    return out


def aggregate(p: Profile, rule: AggregationRule,
              collective: LogicSpec | str | None = None) -> AggregationOutcome:
    """Apply `rule` issue by issue; the outcome is typed in the collective logic."""
    target = _collective_agenda(p, collective)
    tallies = p.tallies()
    if rule.kind == "list-majority":
        if p.agenda.spec.context != "list":
            raise ValueError("list-majority needs a list agenda")
        return aggregate_list(p, target)
    if rule.kind == "constant":
        mask = rule.constant_mask(target)
    else:
        h = rule.h_vector(p.n)
        mask = sum(1 << i for i, c in enumerate(tallies) if h[c])
    return AggregationOutcome(JudgmentStructure.from_mask(target, mask), tallies, rule)


def aggregate_list(p: Profile, target: Agenda | None = None) -> AggregationOutcome:
    """Positional majority: position j keeps its issue iff at least (n+1)/2
    voters hold that issue at position j of their star-padded lists."""
    target = target or p.agenda
    padded = [v.padded() for v in p.voters]
    threshold = (p.n + 1) // 2
    row, tallies = [], []
    for j, phi in enumerate(p.agenda.issues):
        support = sum(1 for lst in padded if lst[j] == phi)
        tallies.append(support)
        row.append(phi if support >= threshold else None)
    accepted = tuple(j for j, x in enumerate(row) if x is not None)
    shown = tuple(STAR if x is None else target.issues[j].text for j, x in enumerate(row))
    return AggregationOutcome(JudgmentStructure(target, accepted), tuple(tallies),
                              AggregationRule("list-majority"), shown)


# ---------------------------------------------------------------- axiom checks

@dataclass(frozen=True)
class Verdict:
    axiom: str
    holds: bool
    profiles_checked: int
    counterexample: tuple[Profile, ...] | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "profiles_checked": self.profiles_checked,
            "counterexample": None if self.counterexample is None
            else [[v.to_list() for v in prof.voters] for prof in self.counterexample],
            "note": self.note,
        }


class _Evaluator:
    """Rule outcomes over bitmask profiles of one agenda."""

    def __init__(self, rule: AggregationRule, agenda: Agenda, n: int):
        self.rule = rule
        self.agenda = agenda
        self.width = len(agenda)
        self.n = n
        self.h = rule.h_vector(n) if rule.count_based else None
        self.const = None if rule.count_based else rule.constant_mask(agenda)
        self.comp = [agenda.complement_index(i) for i in range(self.width)]

    def outcome(self, prof: tuple[int, ...]) -> int:
        if self.const is not None:
            return self.const
        return outcome_mask(self.h, prof, self.width)

    def support(self, prof: tuple[int, ...], i: int) -> tuple[int, ...]:
        return tuple(k for k, m in enumerate(prof) if m >> i & 1)

    def profile(self, prof: tuple[int, ...]) -> Profile:
        return Profile(tuple(JudgmentStructure.from_mask(self.agenda, m) for m in prof))


def _profiles(masks: list[int], n: int) -> Iterator[tuple[int, ...]]:
    return product(masks, repeat=n)


def check_axiom(rule: AggregationRule, agenda: Agenda, axiom: str, n: int = 3,
                rationality: RationalityClass = ROBUST,
                bound: int = ENUMERATION_BOUND) -> Verdict:
    """Verify `axiom` for `rule` over every profile of admissible voters.

    Axioms: A (anonymity), N (neutrality), I (independence), M
    (monotonicity), WR (complete and complement-free outcomes) and arN
    (acceptance-rejection neutrality over agenda pairs).  For M a voter not
    accepting phi may switch to any admissible structure containing phi.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOMS)}")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3 (got {n})")
    members = rationality.members(agenda)
    masks = [j.mask for j in members]
    if len(masks) ** n > bound:
        raise EnumerationBoundError(f"{len(masks)}^{n} profiles exceed the bound {bound}")
    ev = _Evaluator(rule, agenda, n)
    checker = {"A": _check_a, "N": _check_n, "I": _check_i, "M": _check_m,
               "WR": _check_wr, "arN": _check_arn}[axiom]
    return checker(ev, masks)


def _fail(axiom: str, checked: int, ev: _Evaluator, *profs: tuple[int, ...], note: str = "") -> Verdict:
    return Verdict(axiom, False, checked, tuple(ev.profile(p) for p in profs), note)


def _check_a(ev: _Evaluator, masks: list[int]) -> Verdict:
    checked = 0
    for prof in _profiles(masks, ev.n):
        checked += 1
        base = ev.outcome(prof)
        for perm in permutations(prof):
            if ev.outcome(perm) != base:
                return _fail("A", checked, ev, prof, perm)
    return Verdict("A", True, checked)


def _check_n(ev: _Evaluator, masks: list[int]) -> Verdict:
    checked = 0
    for prof in _profiles(masks, ev.n):
        checked += 1
        out = ev.outcome(prof)
        sup = [ev.support(prof, i) for i in range(ev.width)]
        for i, j in combinations(range(ev.width), 2):
            if sup[i] == sup[j] and (out >> i & 1) != (out >> j & 1):
                return _fail("N", checked, ev, prof,
                             note=f"{ev.agenda.issues[i].text} and {ev.agenda.issues[j].text}")
    return Verdict("N", True, checked)


def _check_i(ev: _Evaluator, masks: list[int]) -> Verdict:
    checked = 0
    seen: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]] = {}
    for prof in _profiles(masks, ev.n):
        checked += 1
        out = ev.outcome(prof)
        for i in range(ev.width):
            key = (i, ev.support(prof, i))
            bit = out >> i & 1
            prev = seen.setdefault(key, (bit, prof))
            if prev[0] != bit:
                return _fail("I", checked, ev, prev[1], prof, note=ev.agenda.issues[i].text)
    return Verdict("I", True, checked)


def _check_m(ev: _Evaluator, masks: list[int]) -> Verdict:
    checked = 0
    for prof in _profiles(masks, ev.n):
        checked += 1
        out = ev.outcome(prof)
        for i in range(ev.width):
            if not out >> i & 1:
                continue
            bit = 1 << i
            for k, m in enumerate(prof):
                if m & bit:
                    continue
                for new in masks:
                    if not new & bit:
                        continue
                    other = prof[:k] + (new,) + prof[k + 1:]
                    if not ev.outcome(other) & bit:
                        return _fail("M", checked, ev, prof, other, note=ev.agenda.issues[i].text)
    return Verdict("M", True, checked)


def _check_wr(ev: _Evaluator, masks: list[int]) -> Verdict:
    checked = 0
    for prof in _profiles(masks, ev.n):
        checked += 1
        j = JudgmentStructure.from_mask(ev.agenda, ev.outcome(prof))
        if not (is_complete(j) and is_complement_free(j)):
            return _fail("WR", checked, ev, prof, note=str(j))
    return Verdict("WR", True, checked)


def _check_arn(ev: _Evaluator, masks: list[int]) -> Verdict:
    checked = 0
    full = (1 << ev.n) - 1
    for prof in _profiles(masks, ev.n):
        checked += 1
        out = ev.outcome(prof)
        acc = [sum(1 << k for k in ev.support(prof, i)) for i in range(ev.width)]
        for i, j in combinations(range(ev.width), 2):
            if acc[i] ^ acc[j] == full and (out >> i & 1) == (out >> j & 1):
                return _fail("arN", checked, ev, prof,
                             note=f"{ev.agenda.issues[i].text} and {ev.agenda.issues[j].text}")
    return Verdict("arN", True, checked, note="pairs range over agenda issues")
