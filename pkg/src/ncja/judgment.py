"""Agendas, judgment structures, profiles and the rationality predicates.

A judgment structure is stored as a sorted tuple of positions into its
agenda.  This one representation covers all three context disciplines:
a subset of a set agenda, a submultiset (repeated issues occupy distinct
positions, so multiplicities can never exceed the agenda's) and an
order-preserving sublist of a list agenda.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from ncja.formula import Bin, Formula, Neg, Unit, _unnegated, complement, parse
from ncja.logics import LogicSpec, get_logic
from ncja.prover import ProofResult, SearchBudget, inconsistent, prove
from ncja.sequent import Sequent, context_key

__all__ = [
    "Agenda", "JudgmentStructure", "Profile", "RationalityClass", "UndecidedError",
    "ROBUST", "ROBUST_COMPLETE", "CONSISTENT", "RATIONALITY", "inconsistency", "entails",
    "is_consistent", "is_robustly_consistent", "is_complement_free", "is_complete",
    "is_deductively_closed", "substructures", "formulas_consistent",
]


class UndecidedError(RuntimeError):
    """A bounded engine answered UNKNOWN where a yes/no verdict was needed."""

    def __init__(self, what: str, result: ProofResult):
        super().__init__(f"undecided: {what} ({result.reason})")
        self.what = what
        self.result = result


# ---------------------------------------------------------------- engine calls

@lru_cache(maxsize=None)
def _inconsistency(spec: LogicSpec, key: tuple, budget: SearchBudget) -> ProofResult:
    return inconsistent(key, spec, budget)


@lru_cache(maxsize=None)
def _entailment(spec: LogicSpec, key: tuple, goal: Formula, budget: SearchBudget) -> ProofResult:
    return prove(Sequent(key, (goal,)), spec, budget)


def inconsistency(formulas: Iterable[Formula], spec: LogicSpec | str,
                  budget: SearchBudget | None = None) -> ProofResult:
    """Memoized inconsistency search keyed by the canonical context."""
    spec = get_logic(spec)
    return _inconsistency(spec, context_key(formulas, spec.context), budget or SearchBudget.default())


def entails(formulas: Iterable[Formula], goal: Formula, spec: LogicSpec | str,
            budget: SearchBudget | None = None) -> ProofResult:
    spec = get_logic(spec)
    return _entailment(spec, context_key(formulas, spec.context), goal, budget or SearchBudget.default())


def _consistent(formulas: Sequence[Formula], spec: LogicSpec, budget: SearchBudget | None) -> bool:
    r = inconsistency(formulas, spec, budget)
    if r.unknown:
        raise UndecidedError(f"consistency of [{', '.join(f.text for f in formulas)}] in {spec.id}", r)
    return r.refuted


@lru_cache(maxsize=None)
def _robust(spec: LogicSpec, key: tuple, budget: SearchBudget) -> bool:
    # Smaller substructures first: an inconsistent one settles every superstructure.
    for i in range(len(key)):
        if i and key[i] == key[i - 1] and spec.context != "list":
            continue
        if not _robust(spec, key[:i] + key[i + 1:], budget):
            return False
    return _consistent(key, spec, budget)


# ---------------------------------------------------------------- agendas

def _has_units(f: Formula, spec: LogicSpec) -> bool:
    """Unit occurrences other than the bot inside a defined negation."""
    body = _unnegated(f, spec)
    if body is not None and spec.negation != "primitive":
        return _has_units(body, spec)
    match f:
        case Unit():
            return True
        case Neg(inner):
            return _has_units(inner, spec)
        case Bin(_, left, right):
            return _has_units(left, spec) or _has_units(right, spec)
    return False


@dataclass(frozen=True)
class Agenda:
    """A complement-closed collection of issues for one logic.

    Construction checks complement closure, the absence of units (unless
    ``allow_units``) and, where the engine decides, that no issue is a
    tautology or a contradiction.  Issues the engine could not decide are
    listed in ``unchecked``.
    """

    spec: LogicSpec
    issues: tuple[Formula, ...]
    unchecked: tuple[Formula, ...] = field(default=(), compare=False)
    allow_units: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "spec", get_logic(self.spec))
        object.__setattr__(self, "issues", tuple(self.issues))
        if self.spec.context == "set" and len(set(self.issues)) != len(self.issues):
            raise ValueError("a set agenda cannot repeat an issue")
        present = set(self.issues)
        for f in self.issues:
            if not self.allow_units and _has_units(f, self.spec):
                raise ValueError(f"agenda issue {f.text} contains a unit")
            if complement(f, self.spec) not in present:
                raise ValueError(f"agenda is not closed under complements: {complement(f, self.spec).text} missing")

    @classmethod
    def build(cls, logic: LogicSpec | str, issues: Iterable[Formula | str], *,
              close: bool = False, check: bool = True, allow_units: bool = False,
              budget: SearchBudget | None = None) -> "Agenda":
        """Parse and validate an agenda; ``close`` adds missing complements."""
        spec = get_logic(logic)
        parsed = [parse(f, spec) if isinstance(f, str) else f for f in issues]
        if close:
            seen = set(parsed)
            for f in list(parsed):
                c = complement(f, spec)
                if c not in seen:
                    parsed.append(c)
                    seen.add(c)
        agenda = cls(spec, tuple(parsed), allow_units=allow_units)
        return agenda.checked(budget) if check else agenda

    def checked(self, budget: SearchBudget | None = None) -> "Agenda":
        """Reject tautologies and contradictions; record undecided issues."""
        unchecked = []
        for f in dict.fromkeys(self.issues):
            contra = inconsistency((f,), self.spec, budget)
            if contra.proved:
                raise ValueError(f"agenda issue {f.text} is a contradiction in {self.spec.id}")
            taut = entails((), f, self.spec, budget)
            if taut.proved:
                raise ValueError(f"agenda issue {f.text} is a theorem of {self.spec.id}")
            if contra.unknown or taut.unknown:
                unchecked.append(f)
        return Agenda(self.spec, self.issues, tuple(unchecked), self.allow_units)

    def __len__(self) -> int:
        return len(self.issues)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.issues)

    def complement_index(self, i: int) -> tuple[int, ...]:
        """Positions holding the complement of issue `i`."""
        c = complement(self.issues[i], self.spec)
        return tuple(j for j, f in enumerate(self.issues) if f == c)

    def structure(self, formulas: Iterable[Formula | str]) -> "JudgmentStructure":
        """The judgment structure accepting `formulas` (a sublist, for list agendas)."""
        wanted = [parse(f, self.spec) if isinstance(f, str) else f for f in formulas]
        chosen: list[int] = []
        if self.spec.context == "list":
            pos = 0
            for f in wanted:
                while pos < len(self.issues) and self.issues[pos] != f:
                    pos += 1
                if pos == len(self.issues):
                    raise ValueError(f"[{', '.join(g.text for g in wanted)}] is not a sublist of the agenda")
                chosen.append(pos)
                pos += 1
        else:
            free = [True] * len(self.issues)
            for f in wanted:
                for j, g in enumerate(self.issues):
                    if free[j] and g == f:
                        free[j] = False
                        chosen.append(j)
                        break
                else:
                    raise ValueError(f"{f.text} is not (or not often enough) on the agenda")
        return JudgmentStructure(self, tuple(sorted(chosen)))

    def full(self) -> "JudgmentStructure":
        return JudgmentStructure(self, tuple(range(len(self.issues))))

    def retype(self, spec: LogicSpec | str) -> "Agenda":
        """The same issues read in another logic, translated connective-wise when needed."""
        spec = get_logic(spec)
        if spec == self.spec:
            return self
        from ncja.translate import translate
        return Agenda(spec, tuple(translate(f, self.spec, spec) for f in self.issues),
                      allow_units=self.allow_units)

    def to_dict(self) -> dict:
        data = {"logic": self.spec.id, "structure": self.spec.context,
                "issues": [f.text for f in self.issues]}
        if self.allow_units:
            data["allow_units"] = True
        return data

    @classmethod
    def from_dict(cls, data: dict, check: bool = True) -> "Agenda":
        spec = get_logic(data["logic"])
        structure = data.get("structure", spec.context)
        if structure != spec.context:
            raise ValueError(f"{spec.id} agendas are {spec.context}s, not {structure}s")
        issues = []
        for item in data["issues"]:
            if isinstance(item, dict):
                issues.extend([item["formula"]] * int(item.get("multiplicity", 1)))
            else:
                issues.append(item)
        return cls.build(spec, issues, check=check, allow_units=bool(data.get("allow_units")))


# ---------------------------------------------------------------- judgment structures

@dataclass(frozen=True)
class JudgmentStructure:
    agenda: Agenda = field(repr=False)
    accepted: tuple[int, ...]

    def __post_init__(self):
        acc = tuple(self.accepted)
        if list(acc) != sorted(set(acc)) or any(not 0 <= i < len(self.agenda) for i in acc):
            raise ValueError(f"invalid agenda positions {acc}")
        object.__setattr__(self, "accepted", acc)

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return tuple(self.agenda.issues[i] for i in self.accepted)

    @property
    def spec(self) -> LogicSpec:
        return self.agenda.spec

    @property
    def key(self) -> tuple:
        return context_key(self.formulas, self.spec.context)

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.accepted)

    @classmethod
    def from_mask(cls, agenda: Agenda, mask: int) -> "JudgmentStructure":
        return cls(agenda, tuple(i for i in range(len(agenda)) if mask >> i & 1))

    def __contains__(self, f: Formula) -> bool:
        return f in self.formulas

    def __len__(self) -> int:
        return len(self.accepted)

    def __str__(self) -> str:
        inner = ", ".join(f.text for f in self.formulas)
        if self.spec.context == "list":
            return f"[{inner}]"
        return "{" + inner + "}"

    def padded(self) -> tuple[Formula | None, ...]:
        """Agenda-length view with None standing for an absent position."""
        acc = set(self.accepted)
        return tuple(f if i in acc else None for i, f in enumerate(self.agenda.issues))

    def to_list(self) -> list[str]:
        return [f.text for f in self.formulas]


def substructures(j: JudgmentStructure, proper: bool = False) -> Iterator[JudgmentStructure]:
    """Distinct substructures of `j`, smallest first.

    Repeated issues of a multiset are interchangeable, so a multiset with
    multiplicities m1..mk yields exactly (m1+1)...(mk+1) substructures.
    """
    seen = set()
    top = len(j.accepted) - 1 if proper else len(j.accepted)
    for size in range(top + 1):
        for combo in combinations(j.accepted, size):
            sub = JudgmentStructure(j.agenda, combo)
            key = sub.key if j.spec.context == "multiset" else combo
            if key not in seen:
                seen.add(key)
                yield sub


# ---------------------------------------------------------------- predicates

def is_consistent(j: JudgmentStructure, budget: SearchBudget | None = None) -> bool:
    return _consistent(j.key, j.spec, budget)


def is_robustly_consistent(j: JudgmentStructure, budget: SearchBudget | None = None) -> bool:
    return _robust(j.spec, j.key, budget or SearchBudget.default())


def formulas_consistent(formulas: Iterable[Formula], spec: LogicSpec | str,
                        budget: SearchBudget | None = None, robust: bool = False) -> bool:
    """Consistency of a bare context, outside any agenda; raises UndecidedError on UNKNOWN."""
    spec = get_logic(spec)
    key = context_key(formulas, spec.context)
    if robust:
        return _robust(spec, key, budget or SearchBudget.default())
    return _consistent(key, spec, budget)


def is_complement_free(j: JudgmentStructure) -> bool:
    present = set(j.formulas)
    return not any(complement(f, j.spec) in present for f in present)


def is_complete(j: JudgmentStructure) -> bool:
    present = set(j.formulas)
    return all(f in present or complement(f, j.spec) in present for f in j.agenda.issues)


def is_deductively_closed(j: JudgmentStructure, budget: SearchBudget | None = None) -> bool:
    present = Counter(j.formulas)
    for f in dict.fromkeys(j.agenda.issues):
        if present[f]:
            continue
        r = entails(j.formulas, f, j.spec, budget)
        if r.unknown:
            raise UndecidedError(f"{j} |- {f.text} in {j.spec.id}", r)
        if r.proved:
            return False
    return True


@dataclass(frozen=True)
class RationalityClass:
    """Which rationality conditions individual structures must meet."""

    consistent: bool = True
    robustly_consistent: bool = True
    complete: bool = False
    complement_free: bool = False
    deductively_closed: bool = False

    def __post_init__(self):
        if self.robustly_consistent and not self.consistent:
            object.__setattr__(self, "consistent", True)

    def admits(self, j: JudgmentStructure, budget: SearchBudget | None = None) -> bool:
        if self.complement_free and not is_complement_free(j):
            return False
        if self.complete and not is_complete(j):
            return False
        if self.robustly_consistent and not is_robustly_consistent(j, budget):
            return False
        if self.consistent and not is_consistent(j, budget):
            return False
        if self.deductively_closed and not is_deductively_closed(j, budget):
            return False
        return True

    def violations(self, j: JudgmentStructure, budget: SearchBudget | None = None) -> list[str]:
        checks = [
            ("consistent", self.consistent, lambda: is_consistent(j, budget)),
            ("robustly consistent", self.robustly_consistent, lambda: is_robustly_consistent(j, budget)),
            ("complete", self.complete, lambda: is_complete(j)),
            ("complement-free", self.complement_free, lambda: is_complement_free(j)),
            ("deductively closed", self.deductively_closed, lambda: is_deductively_closed(j, budget)),
        ]
        return [name for name, wanted, test in checks if wanted and not test()]

    def members(self, agenda: Agenda, budget: SearchBudget | None = None) -> list[JudgmentStructure]:
        """Every admissible judgment structure over `agenda`, in a fixed order."""
        return [j for j in substructures(agenda.full()) if self.admits(j, budget)]

    @property
    def tag(self) -> str:
        return "robust+complete" if self.complete else "robust" if self.robustly_consistent else "consistent"


ROBUST = RationalityClass()
ROBUST_COMPLETE = RationalityClass(complete=True)
CONSISTENT = RationalityClass(robustly_consistent=False)
RATIONALITY = {"consistent": CONSISTENT, "robust": ROBUST, "robust-complete": ROBUST_COMPLETE}


# ---------------------------------------------------------------- profiles

@dataclass(frozen=True)
class Profile:
    voters: tuple[JudgmentStructure, ...]

    def __post_init__(self):
        voters = tuple(self.voters)
        object.__setattr__(self, "voters", voters)
        n = len(voters)
        if n < 3 or n % 2 == 0:
            raise ValueError(f"profiles need an odd number of voters, at least 3 (got {n})")
        if any(v.agenda != voters[0].agenda for v in voters):
            raise ValueError("all voters must share one agenda")

    @classmethod
    def build(cls, agenda: Agenda, voters: Iterable[Iterable[Formula | str]],
              rationality: RationalityClass | None = ROBUST,
              budget: SearchBudget | None = None) -> "Profile":
        """Build a profile, checking each voter against `rationality` (None skips the check)."""
        p = cls(tuple(agenda.structure(v) for v in voters))
        if rationality is not None:
            p.validate(rationality, budget)
        return p

    def validate(self, rationality: RationalityClass, budget: SearchBudget | None = None) -> None:
        for i, v in enumerate(self.voters, 1):
            bad = rationality.violations(v, budget)
            if bad:
                raise ValueError(f"voter {i} {v} is not {' and '.join(bad)} in {v.spec.id}")

    @property
    def agenda(self) -> Agenda:
        return self.voters[0].agenda

    @property
    def n(self) -> int:
        return len(self.voters)

    def supporters(self, i: int) -> frozenset[int]:
        """Voters (0-based) accepting agenda position `i`."""
        return frozenset(k for k, v in enumerate(self.voters) if i in v.accepted)

    def tallies(self) -> tuple[int, ...]:
        return tuple(sum(i in v.accepted for v in self.voters) for i in range(len(self.agenda)))

    def to_dict(self) -> dict:
        return {"agenda": self.agenda.to_dict(), "voters": [v.to_list() for v in self.voters]}

    @classmethod
    def from_dict(cls, data: dict, agenda: Agenda | None = None,
                  rationality: RationalityClass | None = ROBUST) -> "Profile":
        agenda = agenda or Agenda.from_dict(data["agenda"])
        return cls.build(agenda, data["voters"], rationality)
