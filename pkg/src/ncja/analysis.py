"""Minimal inconsistent substructures, agenda properties and safety checks."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ncja.aggregation import ENUMERATION_BOUND, AggregationRule, EnumerationBoundError
from ncja.check import check
from ncja.formula import Formula, complement
from ncja.judgment import (ROBUST, ROBUST_COMPLETE, Agenda, JudgmentStructure, Profile,
                           UndecidedError, entails, inconsistency, is_complement_free, is_complete,
                           is_robustly_consistent, substructures)
from ncja.kernels import outcome_classes
from ncja.logics import LogicSpec, get_logic
from ncja.prover import ProofResult, SearchBudget, Status
from ncja.sequent import ProofTree

__all__ = [
    "MisReport", "PropertyVerdict", "SafetyReport", "SafetyMismatch",
    "enumerate_mis", "check_property", "check_safety", "quota_threshold_safe",
]

CLASSES = ("maj", "quota", "wr-a-n-i", "wr-a-n", "wr-a-i")


class SafetyMismatch(AssertionError):
    """Profile enumeration contradicts the agenda-property characterization."""


# ---------------------------------------------------------------- MIS

@dataclass(frozen=True)
class MisReport:
    agenda: Agenda
    minimal: tuple[JudgmentStructure, ...]
    proofs: tuple[ProofTree | None, ...] = field(repr=False, default=())

    @property
    def max_size(self) -> int:
        return max((len(y) for y in self.minimal), default=0)

    @property
    def sizes(self) -> list[int]:
        return [len(y) for y in self.minimal]

    def to_dict(self) -> dict:
        return {
            "logic": self.agenda.spec.id,
            "minimal_inconsistent": [y.to_list() for y in self.minimal],
            "max_size": self.max_size,
        }


def _inconsistent(j: JudgmentStructure, budget: SearchBudget | None):
    r = inconsistency(j.key, j.spec, budget)
    if r.unknown:
        raise UndecidedError(f"consistency of {j} in {j.spec.id}", r)
    return r


def enumerate_mis(agenda: Agenda, budget: SearchBudget | None = None) -> MisReport:
    """All minimally inconsistent substructures of the agenda, smallest first.

    A candidate is decided only when every proper substructure is
    consistent; a superstructure of an inconsistent structure can never be
    minimal, whatever the structural rules.  Each result is re-verified:
    its proof is replayed by the checker and its maximal proper
    substructures are confirmed consistent.
    """
    undecided = []
    minimal, proofs = [], []
    for y in substructures(agenda.full()):
        if not len(y):
            continue
        try:
            if not all(is_robustly_consistent(JudgmentStructure(agenda, sub), budget)
                       for sub in combinations(y.accepted, len(y) - 1)):
                continue
            r = _inconsistent(y, budget)
        except UndecidedError as e:
            undecided.append((y, e))
            continue
        if r.proved:
            minimal.append(y)
            proofs.append(r.tree)
    if undecided:
        listing = "; ".join(str(y) for y, _ in undecided)
        raise UndecidedError(f"substructures {listing}", undecided[0][1].result)
    for y, tree in zip(minimal, proofs):
        if tree is not None and not check(tree, agenda.spec) and agenda.spec.engine == "sequent":
            raise AssertionError(f"inconsistency proof of {y} does not check")
        for sub in combinations(y.accepted, len(y) - 1):
            if _inconsistent(JudgmentStructure(agenda, sub), budget).proved:
                raise AssertionError(f"{y} is not minimal")
    return MisReport(agenda, tuple(minimal), tuple(proofs))


# ---------------------------------------------------------------- agenda properties

@dataclass(frozen=True)
class PropertyVerdict:
    prop: str
    holds: bool
    witness: JudgmentStructure | None = None
    k: int | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"property": self.prop, "k": self.k, "holds": self.holds,
                "witness": None if self.witness is None else self.witness.to_list()}


def _equivalent(phi: Formula, psi: Formula, spec: LogicSpec, budget: SearchBudget | None) -> bool:
    """phi |- ~psi and ~psi |- phi."""
    neg = complement(psi, spec)
    for left, right in ((phi, neg), (neg, phi)):
        r = entails((left,), right, spec, budget)
        if r.unknown:
            raise UndecidedError(f"{left.text} |- {right.text} in {spec.id}", r)
        if not r.proved:
            return False
    return True


def _nontrivially_inconsistent(agenda: Agenda, budget: SearchBudget | None):
    """Inconsistent substructures without an inconsistent singleton."""
    bad_single = {i for i in range(len(agenda))
                  if _inconsistent(JudgmentStructure(agenda, (i,)), budget).proved}
    for y in substructures(agenda.full()):
        if len(y) and not bad_single & set(y.accepted) and _inconsistent(y, budget).proved:
            yield y


def _decided_large_mis(agenda: Agenda, bound: int, budget: SearchBudget | None) -> JudgmentStructure | None:
    """A minimal inconsistent substructure larger than `bound` whose verdicts were all decided."""
    for y in substructures(agenda.full()):
        if len(y) <= bound:
            continue
        r = inconsistency(y.key, y.spec, budget)
        if not r.proved:
            continue
        try:
            if all(is_robustly_consistent(JudgmentStructure(agenda, sub), budget)
                   for sub in combinations(y.accepted, len(y) - 1)):
                return y
        except UndecidedError:
            continue
    return None


def check_property(agenda: Agenda, prop: str, k: int | None = None,
                   budget: SearchBudget | None = None) -> PropertyVerdict:
    """MP, kMP (with `k`), SMP or SSMP; the witness is a violating substructure."""
    prop = prop.upper()
    spec = agenda.spec
    if prop in ("MP", "KMP"):
        bound = 2 if prop == "MP" else k
        if bound is None:
            raise ValueError("kMP needs k")
        name = "MP" if prop == "MP" else "kMP"
        try:
            report = enumerate_mis(agenda, budget)
        except UndecidedError:
            # Semidecidable logics: a decided large minimal set still refutes the property.
            worst = _decided_large_mis(agenda, bound, budget)
            if worst is None:
                raise
            return PropertyVerdict(name, False, worst, bound)
        worst = next((y for y in report.minimal if len(y) > bound), None)
        return PropertyVerdict(name, worst is None, worst, bound)
    if prop in ("SMP", "SSMP"):
        for y in _nontrivially_inconsistent(agenda, budget):
            pairs = combinations(y.accepted, 2)
            if prop == "SSMP":
                ok = any(agenda.issues[j] == complement(agenda.issues[i], spec) for i, j in pairs)
            else:
                ok = any(_equivalent(agenda.issues[i], agenda.issues[j], spec, budget)
                         or _equivalent(agenda.issues[j], agenda.issues[i], spec, budget)
                         for i, j in pairs)
            if not ok:
                return PropertyVerdict(prop, False, y)
        return PropertyVerdict(prop, True)
    raise ValueError(f"unknown agenda property {prop!r}")


# ---------------------------------------------------------------- safety

@dataclass(frozen=True)
class SafetyReport:
    individual: str
    collective: str
    axiom_class: str
    safe: bool
    profiles_checked: int
    voter_structures: int
    n: int
    complete: bool
    witness: Profile | None = None
    outcome: JudgmentStructure | None = None
    inconsistent_part: JudgmentStructure | None = None
    proof: ProofTree | None = None
    characterization: dict | None = None
    bounds: dict = field(default_factory=dict)
    note: str = ""
    outcome_test: str = "robust"
    violations: int = 0

    def to_dict(self) -> dict:
        return {
            "individual_logic": self.individual,
            "collective_logic": self.collective,
            "class": self.axiom_class,
            "n": self.n,
            "complete_voters": self.complete,
            "verdict": "safe" if self.safe else "unsafe",
            "outcome_test": self.outcome_test,
            "profiles_checked": self.profiles_checked,
            "voter_structures": self.voter_structures,
            "violating_outcomes": self.violations,
            "witness": None if self.witness is None else [v.to_list() for v in self.witness.voters],
            "outcome": None if self.outcome is None else self.outcome.to_list(),
            "inconsistent_part": None if self.inconsistent_part is None else self.inconsistent_part.to_list(),
            "proof": None if self.proof is None else self.proof.to_dict(),
            "characterization": self.characterization,
            "bounds": self.bounds,
            "note": self.note,
        }

    def summary(self) -> str:
        quality = "robustly consistent" if self.outcome_test == "robust" else "consistent"
        if self.safe:
            return (f"safe ({self.profiles_checked} of {self.profiles_checked} voter-set combinations "
                    f"checked, all outcomes {quality} in {self.collective})")
        return f"unsafe: outcome {self.outcome} is not {quality} in {self.collective}"


def quota_threshold_safe(m: int, n: int, k: int) -> bool:
    """m > n - n/k, with k the size of the largest minimal inconsistent set."""
    if k <= 1:
        return k == 0 or m > n
    return Fraction(m) > n - Fraction(n, k)


def _smallest_inconsistent(j: JudgmentStructure, budget: SearchBudget | None):
    for sub in substructures(j):
        r = inconsistency(sub.key, sub.spec, budget)
        if r.proved:
            return sub, r.tree
    return None, None


def _characterization(individual: Agenda, collective: Agenda, axiom_class: str, m: int | None,
                      n: int, complete: bool, budget: SearchBudget | None) -> dict | None:
    """What the agenda-property theorems predict, when they apply to this setting."""
    same = individual.spec == collective.spec
    if not same or (complete and not collective.spec.weakening):
        return None
    if axiom_class == "maj":
        v = check_property(collective, "MP", budget=budget)
        return {"property": "MP", "holds": v.holds, "predicts_safe": v.holds}
    if axiom_class == "quota":
        k = enumerate_mis(collective, budget).max_size
        ok = quota_threshold_safe(m, n, k)
        return {"property": f"quota threshold m > n - n/k (k={k})", "k": k, "holds": ok,
                "predicts_safe": ok}
    return None


def check_safety(individual: Agenda, collective: LogicSpec | str | None = None,
                 axiom_class: str = "maj", n: int = 3, *, m: int | None = None,
                 complete: bool = False, outcome_test: str = "robust", jobs: int = 1,
                 replay_from_mall: bool = False, budget: SearchBudget | None = None, bound: int = ENUMERATION_BOUND) -> SafetyReport:
    """Exhaustive safety check of an agenda for a class of rules.

    ``maj`` and ``quota`` (with threshold `m`) run the rule over every
    anonymous profile of robustly consistent voters (complete ones if
    `complete`) and test each outcome in the collective logic: robust
    consistency by default, plain consistency with ``outcome_test =
    "consistent"``.  Where the characterization theorems apply (same logic
    on both sides, robust outcome test, and either no completeness
    requirement or a logic with weakening) the verdict is cross-checked
    against MP or the kMP threshold; a disagreement raises SafetyMismatch.

    The classes ``wr-a-n-i``/``wr-a-n`` are decided by SMP and ``wr-a-i``
    by SSMP; unsafe verdicts come with a witness built from the inversion
    rule or a constant rule respectively.

    For R the enumeration is attempted directly; if some outcome cannot be
    decided (or `replay_from_mall` is set) the witness is searched in MALL
    and replayed in R instead.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3 (got {n})")
    if axiom_class not in CLASSES:
        raise ValueError(f"unknown class {axiom_class!r}; choose from {', '.join(CLASSES)}")
    if outcome_test not in ("robust", "consistent"):
        raise ValueError("outcome_test is 'robust' or 'consistent'")
    coll_spec = individual.spec if collective is None else get_logic(collective)
    coll_agenda = individual.retype(coll_spec)
    bounds = (budget or SearchBudget.default()).to_dict()
    common = dict(individual=individual.spec.id, collective=coll_spec.id, n=n, complete=complete, bounds=bounds)

    if axiom_class in ("wr-a-n-i", "wr-a-n", "wr-a-i"):
        return _class_by_property(individual, coll_agenda, axiom_class, n, budget, common)
    if axiom_class == "quota" and m is None:
        raise ValueError("the quota class needs m")
    args = (individual, coll_agenda, axiom_class, n, m, complete, outcome_test, jobs, budget, bound, common)
    if individual.spec.id == "R" and coll_spec.id == "R":
        if replay_from_mall:
            return _relevant_safety(individual, axiom_class, n, m, complete, budget, bound)
        try:
            return _enumerated(*args)
        except UndecidedError:
            return _relevant_safety(individual, axiom_class, n, m, complete, budget, bound)
    return _enumerated(*args)


def _outcome_ok(item: tuple[Agenda, int, str, SearchBudget | None]) -> bool:
    agenda, mask, test, budget = item
    out = JudgmentStructure.from_mask(agenda, mask)
    if test == "robust":
        return is_robustly_consistent(out, budget)
    return not _inconsistent(out, budget).proved


def _enumerated(individual: Agenda, coll_agenda: Agenda, axiom_class: str, n: int, m: int | None,
                complete: bool, outcome_test: str, jobs: int, budget: SearchBudget | None,
                bound: int, common: dict) -> SafetyReport:
    rule = AggregationRule.majority() if axiom_class == "maj" else AggregationRule.quota(m)
    tag = "maj" if axiom_class == "maj" else f"quota:{m}"
    rationality = ROBUST_COMPLETE if complete else ROBUST
    members = rationality.members(individual, budget)
    masks = [j.mask for j in members]
    if len(masks) ** n > bound:
        raise EnumerationBoundError(f"{len(masks)}^{n} profiles exceed the bound {bound}")
    classes, total = outcome_classes(masks, n, len(individual), rule.h_vector(n))

    items = [(coll_agenda, mask, outcome_test, budget) for mask in classes]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_outcome_ok, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        verdicts = [_outcome_ok(item) for item in items]
    bad = [(JudgmentStructure.from_mask(coll_agenda, mask), combo)
           for (mask, combo), ok in zip(classes.items(), verdicts) if not ok]
    # Deterministic witness: the smallest offending outcome.
    witness = min(bad, key=lambda oc: (len(oc[0]), oc[0].accepted), default=None)

    char = None
    if outcome_test == "robust":
        char = _characterization(individual, coll_agenda, axiom_class, m, n, complete, budget)
    safe = witness is None
    if char is not None:
        char["agrees"] = char["predicts_safe"] == safe
        if not char["agrees"]:
            raise SafetyMismatch(f"{tag} on {individual.spec.id}: enumeration says "
                                 f"{'safe' if safe else 'unsafe'}, {char['property']} predicts otherwise")
    extra = dict(axiom_class=tag, profiles_checked=total, voter_structures=len(masks),
                 characterization=char, outcome_test=outcome_test, violations=len(bad), **common)
    if safe:
        return SafetyReport(safe=True, **extra)
    out, combo = witness
    profile = Profile(tuple(members[k] for k in combo))
    part, tree = _smallest_inconsistent(out, budget)
    if tree is not None and coll_agenda.spec.engine == "sequent" and not check(tree, coll_agenda.spec):
        raise AssertionError("witness inconsistency proof does not check")
    return SafetyReport(safe=False, witness=profile, outcome=out, inconsistent_part=part, proof=tree, **extra)


def _class_by_property(individual: Agenda, coll: Agenda, axiom_class: str, n: int,
                       budget: SearchBudget | None, common: dict) -> SafetyReport:
    prop = "SSMP" if axiom_class == "wr-a-i" else "SMP"
    verdict = check_property(coll, prop, budget=budget)
    char = {"property": prop, "holds": verdict.holds, "predicts_safe": verdict.holds}
    members = ROBUST_COMPLETE.members(individual, budget)
    witness = out = None
    checked = 0
    if axiom_class == "wr-a-i":
        # A constant rule returning a complete, complement-free structure
        # that is not robustly consistent satisfies WR, A and I.
        for j in substructures(coll.full()):
            checked += 1
            if is_complete(j) and is_complement_free(j) and not is_robustly_consistent(j, budget):
                out = j
                if members:
                    witness = Profile(tuple(members[:1]) * n)
                break
        rule_note = "constant rule"
    else:
        # The inversion rule (accept iff at most one supporter) satisfies
        # WR, A, N and I on complete voters when n = 3.
        h = AggregationRule("inversion").h_vector(n)
        masks = [j.mask for j in members]
        classes, checked = outcome_classes(masks, n, len(individual), h)
        for mask, combo in classes.items():
            cand = JudgmentStructure.from_mask(coll, mask)
            if not is_robustly_consistent(cand, budget):
                out, witness = cand, Profile(tuple(members[k] for k in combo))
                break
        rule_note = "inversion rule"
    found = out is not None
    if found and verdict.holds:
        raise SafetyMismatch(f"{rule_note} breaks consistency although {prop} holds")
    part, tree = _smallest_inconsistent(out, budget) if found else (None, None)
    note = "" if verdict.holds or found else f"{prop} fails; no {rule_note} witness found"
    char["agrees"] = True
    return SafetyReport(axiom_class=axiom_class, safe=verdict.holds, profiles_checked=checked,
                        voter_structures=len(members), witness=witness, outcome=out,
                        inconsistent_part=part, proof=tree, characterization=char,
                        note=note or (f"witness: {rule_note}" if found else ""), **common)


def _relevant_safety(agenda: Agenda, axiom_class: str, n: int, m: int | None, complete: bool,
                     budget: SearchBudget | None, bound: int) -> SafetyReport:
    """R is only semidecided, so an unsafe verdict is found in MALL and replayed in R.

    R extends MALL, so a MALL proof of the outcome's inconsistency is an R
    proof; the witness voters are then re-checked for robust consistency
    in R.  A safe MALL verdict says nothing about R and raises.
    """
    linear = check_safety(agenda.retype("MALL"), None, axiom_class, n, m=m, complete=complete,
                          budget=budget, bound=bound)
    if linear.safe:
        raise UndecidedError(f"safety of the R agenda ({axiom_class}): MALL finds no witness",
                             ProofResult(Status.UNKNOWN, None, "no MALL witness to replay"))
    voters = tuple(JudgmentStructure(agenda, v.accepted) for v in linear.witness.voters)
    for v in voters:
        if not is_robustly_consistent(v, budget):
            raise UndecidedError(f"MALL witness voter {v} is not robustly consistent in R",
                                 ProofResult(Status.UNKNOWN, None, "witness does not replay"))
    outcome = JudgmentStructure(agenda, linear.outcome.accepted)
    part = JudgmentStructure(agenda, linear.inconsistent_part.accepted)
    if not inconsistency(part.key, part.spec, budget).proved:
        raise UndecidedError(f"{part} not proved inconsistent in R",
                             ProofResult(Status.UNKNOWN, None, "witness does not replay"))
    mp = check_property(agenda, "MP", budget=budget) if axiom_class == "maj" else None
    char = None
    if mp is not None:
        char = {"property": "MP", "holds": mp.holds, "predicts_safe": mp.holds, "agrees": not mp.holds}
        if mp.holds:
            raise SafetyMismatch("R witness found although MP holds")
    return SafetyReport(individual="R", collective="R", axiom_class=linear.axiom_class, safe=False,
                        profiles_checked=linear.profiles_checked, voter_structures=linear.voter_structures,
                        n=n, complete=complete, witness=Profile(voters), outcome=outcome,
                        inconsistent_part=part, proof=linear.proof, characterization=char,
                        bounds=linear.bounds, note="witness found in MALL and replayed in R")
