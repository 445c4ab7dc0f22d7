"""Hilbert-style derivations for linear and relevant logic.

A derivation concludes ``Gamma |- B`` with ``Gamma`` a multiset of
assumptions.  Leaves are assumptions ``A |- A``, axiom instances ``|- B``
and, when distributivity is enabled, the two distributivity leaves.  The
inner rules are modus ponens (``mp``, premises ``[Gamma |- A, Gamma' |- A -o B]``),
the ``&``-rule (``adj``, identical assumptions) and contraction on an
assumption (``HC``).

:func:`derive` is a bounded goal-directed search (a semidecision: UNKNOWN
never means underivable).  :func:`ar_inconsistent` decides inconsistency
for the additive fragment pairwise with the sequent engine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from ncja.check import _distrib_d1_lhs, _distrib_d1_rhs, _distrib_d2_lhs, d1_target, d_common
from ncja.formula import BOT, ONE, Atom, Bin, Formula, Neg, Unit, _Parser, validate
from ncja.logics import LOGICS
from ncja.prover import (
    ProofResult, SearchBudget, Status, _Linear, _OutOfBudget, prove,
)
from ncja.semantics import sugihara_countermodel
from ncja.sequent import Sequent

__all__ = [
    "HilbertDerivation", "RelevantSpec", "HMALL", "R_SPEC", "AR_SPEC", "AXIOMS",
    "derive", "check_derivation", "deduction_theorem", "eliminate_hc",
    "ar_inconsistent", "r_inconsistent", "prove_relevant", "axiom_instance",
]


def _schema(text: str) -> Formula:
    return _Parser(text).parse()


# X, Y, Z are metavariables.  Ids with two schemas are equivalences.
AXIOMS: dict[str, tuple[Formula, ...]] = {
    k: tuple(_schema(t) for t in v)
    for k, v in {
        "ax1": ["X -o X"],
        "ax2": ["(X -o Y) -o ((Y -o Z) -o (X -o Z))"],
        "ax3": ["(X -o (Y -o Z)) -o (Y -o (X -o Z))"],
        "ax4": ["~~X -o X"],
        "ax5": ["(X -o Y) -o (~Y -o ~X)"],
        "ax6": ["X -o (Y -o X * Y)"],
        "ax7": ["(X -o (Y -o Z)) -o (X * Y -o Z)"],
        "ax8": ["1"],
        "ax9": ["1 -o (X -o X)"],
        "ax10": ["0 -o ~1"],
        "ax11": ["~1 -o ~0"],
        "ax12": ["X & Y -o X"],
        "ax13": ["X & Y -o Y"],
        "ax14": ["(X -o Y) & (X -o Z) -o (X -o Y & Z)"],
        "ax15": ["X -o X + Y"],
        "ax16": ["Y -o X + Y"],
        "ax17": ["X & Y -o ~(~X + ~Y)", "~(~X + ~Y) -o X & Y"],
        "ax18": ["X | Y -o (~X -o Y)", "(~X -o Y) -o X | Y"],
        "ax19": ["X * Y -o ~(~X | ~Y)", "~(~X | ~Y) -o X * Y"],
        "ax20": ["(X -o Z) & (Y -o Z) -o (X + Y -o Z)"],
        "W": ["X -o (Y -o X)"],
        "C": ["(X -o (X -o Y)) -o (X -o Y)"],
        "D1": ["X & (Y + Z) -o (X & Y) + (X & Z)"],
        "D2": ["(X + Y) & (X + Z) -o X & (Y + Z)"],
    }.items()
}
_METAVARS = {"X", "Y", "Z"}


def _match(schema: Formula, f: Formula, env: dict) -> bool:
    match schema:
        case Atom(name) if name in _METAVARS:
            if name in env:
                return env[name] == f
            env[name] = f
            return True
        case Unit():
            return schema == f
        case Neg(body):
            return isinstance(f, Neg) and _match(body, f.body, env)
        case Bin(op, left, right):
            return (isinstance(f, Bin) and f.op == op
                    and _match(left, f.left, env) and _match(right, f.right, env))
    return schema == f


def axiom_instance(axiom: str, f: Formula) -> bool:
    return any(_match(s, f, {}) for s in AXIOMS[axiom])


def _instantiate(schema: Formula, env: dict) -> Formula:
    match schema:
        case Atom(name) if name in _METAVARS:
            return env[name]
        case Neg(body):
            return Neg(_instantiate(body, env))
        case Bin(op, left, right):
            return Bin(op, _instantiate(left, env), _instantiate(right, env))
    return schema


def lolli(a: Formula, b: Formula) -> Formula:
    return Bin("lolli", a, b)


@dataclass(frozen=True)
class RelevantSpec:
    fragment: str  # mall | full-R | additive-AR
    axioms: frozenset[str]
    rules: frozenset[str] = frozenset()

    @property
    def logic(self):
        return LOGICS["AR"] if self.fragment == "additive-AR" else LOGICS["R"]


_BASE = frozenset(f"ax{i}" for i in range(1, 21))
HMALL = RelevantSpec("mall", _BASE)
R_SPEC = RelevantSpec("full-R", _BASE | {"C", "D1", "D2"}, frozenset({"HC", "HD1", "HD2"}))
AR_SPEC = RelevantSpec("additive-AR", R_SPEC.axioms, R_SPEC.rules)


@dataclass(frozen=True)
class HilbertDerivation:
    assumptions: tuple[Formula, ...]
    goal: Formula
    rule: str
    premises: tuple["HilbertDerivation", ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "assumptions", tuple(sorted(self.assumptions)))
        object.__setattr__(self, "premises", tuple(self.premises))

    @property
    def conclusion(self) -> Sequent:
        return Sequent(self.assumptions, (self.goal,))

    def nodes(self) -> Iterator["HilbertDerivation"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def rules_used(self) -> Counter:
        return Counter(n.rule for n in self.nodes())

    def to_dict(self) -> dict:
        return {"rule": self.rule, "conclusion": str(self.conclusion),
                "premises": [p.to_dict() for p in self.premises]}

    def to_text(self, indent: int = 0) -> str:
        lines = [f"{'  ' * indent}{self.conclusion}   [{self.rule}]"]
        lines.extend(p.to_text(indent + 1) for p in self.premises)
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()


# ---------------------------------------------------------------- constructors

def assume(a: Formula) -> HilbertDerivation:
    return HilbertDerivation((a,), a, "assumption")


def axiom(name: str, **env: Formula) -> HilbertDerivation:
    """Instance of the first schema of `name` with metavariables bound by `env`."""
    return HilbertDerivation((), _instantiate(AXIOMS[name][0], env), name)


def mp(minor: HilbertDerivation, major: HilbertDerivation) -> HilbertDerivation:
    g = major.goal
    if not (isinstance(g, Bin) and g.op == "lolli" and g.left == minor.goal):
        raise ValueError(f"cannot apply {g} to {minor.goal}")
    return HilbertDerivation(minor.assumptions + major.assumptions, g.right, "mp", (minor, major))


def adj(d1: HilbertDerivation, d2: HilbertDerivation) -> HilbertDerivation:
    if Counter(d1.assumptions) != Counter(d2.assumptions):
        raise ValueError("the &-rule needs identical assumptions")
    return HilbertDerivation(d1.assumptions, Bin("with", d1.goal, d2.goal), "adj", (d1, d2))


def contract(d: HilbertDerivation, phi: Formula) -> HilbertDerivation:
    rest = list(d.assumptions)
    rest.remove(phi)
    if phi not in rest:
        raise ValueError(f"{phi} does not occur twice")
    return HilbertDerivation(tuple(rest), d.goal, "HC", (d,))


def _without(assumptions: Iterable[Formula], a: Formula) -> tuple[Formula, ...]:
    rest = list(assumptions)
    rest.remove(a)
    return tuple(rest)


# ---------------------------------------------------------------- deduction theorem

def deduction_theorem(d: HilbertDerivation, discharged: Formula) -> HilbertDerivation:
    """From ``Gamma, A |- B`` build ``Gamma |- A -o B`` (one occurrence of A).

    The contraction case where the discharged formula is the contracted
    one is handled with axiom C.
    """
    if discharged not in d.assumptions:
        raise ValueError(f"{discharged} is not an assumption of the derivation")
    a = discharged
    match d.rule:
        case "assumption":
            return axiom("ax1", X=a)
        case "HD1" | "HD2":
            return HilbertDerivation((), lolli(a, d.goal), "D1" if d.rule == "HD1" else "D2")
        case "mp":
            minor, major = d.premises
            x, y = minor.goal, d.goal
            if a in minor.assumptions:
                # A -o X, then (X -o Y) -o (A -o Y)
                step = mp(deduction_theorem(minor, a), axiom("ax2", X=a, Y=x, Z=y))
                return mp(major, step)
            inner = deduction_theorem(major, a)  # A -o (X -o Y)
            swapped = mp(inner, axiom("ax3", X=a, Y=x, Z=y))  # X -o (A -o Y)
            return mp(minor, swapped)
        case "adj":
            d1, d2 = d.premises
            both = adj(deduction_theorem(d1, a), deduction_theorem(d2, a))
            return mp(both, axiom("ax14", X=a, Y=d1.goal, Z=d2.goal))
        case "HC":
            (inner,) = d.premises
            phi = next(iter(Counter(inner.assumptions) - Counter(d.assumptions)))
            if a != phi or Counter(d.assumptions)[phi] > 1:
                # discharge an untouched occurrence, then contract again
                return contract(deduction_theorem(inner, a), phi)
            twice = deduction_theorem(deduction_theorem(inner, phi), phi)  # phi -o (phi -o B)
            return mp(twice, axiom("C", X=phi, Y=d.goal))
    raise ValueError(f"rule {d.rule} has no assumptions to discharge")


def eliminate_hc(d: HilbertDerivation) -> HilbertDerivation:
    """Replace every HC step by uses of axiom C (contraction rule is admissible)."""
    if d.rule == "HC":
        (inner,) = d.premises
        inner = eliminate_hc(inner)
        phi = next(iter(Counter(inner.assumptions) - Counter(d.assumptions)))
        twice = deduction_theorem(deduction_theorem(inner, phi), phi)
        return mp(assume(phi), mp(twice, axiom("C", X=phi, Y=d.goal)))
    if not d.premises:
        return d
    return HilbertDerivation(d.assumptions, d.goal, d.rule, tuple(eliminate_hc(p) for p in d.premises))


# ---------------------------------------------------------------- checking

def _hd_leaf_ok(d: HilbertDerivation) -> bool:
    if len(d.assumptions) != 1:
        return False
    (src,) = d.assumptions
    if d.rule == "HD1":
        parts = _distrib_d1_lhs(src)
        return parts is not None and d.goal == d1_target(*parts)
    parts = _distrib_d2_lhs(src)
    return parts is not None and d.goal == d_common(*parts)


def check_derivation(d: HilbertDerivation, spec: RelevantSpec = R_SPEC) -> bool:
    for node in d.nodes():
        if not _check_hilbert_node(node, spec):
            return False
    return True


def _check_hilbert_node(d: HilbertDerivation, spec: RelevantSpec) -> bool:
    rule = d.rule
    if rule == "assumption":
        return not d.premises and d.assumptions == (d.goal,)
    if rule in AXIOMS:
        return rule in spec.axioms and not d.premises and not d.assumptions and axiom_instance(rule, d.goal)
    if rule in ("HD1", "HD2"):
        return rule in spec.rules and not d.premises and _hd_leaf_ok(d)
    if rule == "mp":
        if len(d.premises) != 2:
            return False
        minor, major = d.premises
        return (major.goal == lolli(minor.goal, d.goal)
                and Counter(d.assumptions) == Counter(minor.assumptions) + Counter(major.assumptions))
    if rule == "adj":
        if len(d.premises) != 2:
            return False
        d1, d2 = d.premises
        same = Counter(d.assumptions) == Counter(d1.assumptions) == Counter(d2.assumptions)
        return same and d.goal == Bin("with", d1.goal, d2.goal)
    if rule == "HC":
        if "HC" not in spec.rules or len(d.premises) != 1:
            return False
        (inner,) = d.premises
        extra = Counter(inner.assumptions) - Counter(d.assumptions)
        missing = Counter(d.assumptions) - Counter(inner.assumptions)
        return (not missing and sum(extra.values()) == 1 and next(iter(extra)) in d.assumptions
                and inner.goal == d.goal)
    return False


# ---------------------------------------------------------------- search

def _msplits(ctx: tuple) -> Iterator[tuple[tuple, tuple]]:
    from ncja.prover import _splits
    return _splits(ctx)


class _Deriver:
    def __init__(self, spec: RelevantSpec, budget: SearchBudget):
        self.spec = spec
        self.budget = budget
        self.nodes = 0
        self.failed: set = set()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget

    def run(self, gamma: tuple, goal: Formula, max_depth: int = 12) -> HilbertDerivation | None:
        for depth in range(1, max_depth + 1):
            d = self.search(tuple(sorted(gamma)), goal, depth, self.budget.multiplicity)
            if d is not None:
                return d
        return None

    def search(self, gamma, goal, depth, hc) -> HilbertDerivation | None:
        if depth <= 0:
            return None
        key = (gamma, goal, depth, hc)
        if key in self.failed:
            return None
        self.tick()
        d = self._search(gamma, goal, depth - 1, hc)
        if d is None:
            self.failed.add(key)
        return d

    def _axiom_leaf(self, goal):
        for name in sorted(self.spec.axioms):
            if axiom_instance(name, goal):
                return HilbertDerivation((), goal, name)
        return None

    def _search(self, gamma, goal, depth, hc):
        if gamma == (goal,):
            return assume(goal)
        if not gamma:
            leaf = self._axiom_leaf(goal)
            if leaf is not None:
                return leaf
        for d in self._right(gamma, goal, depth, hc):
            if d is not None:
                return d
        for d in self._left(gamma, goal, depth, hc):
            if d is not None:
                return d
        if hc > 0 and "HC" in self.spec.rules:
            for h in dict.fromkeys(gamma):
                d = self.search(tuple(sorted(gamma + (h,))), goal, depth, hc - 1)
                if d is not None:
                    return contract(d, h)
        return None

    def _right(self, gamma, goal, depth, hc):
        s = self.search
        if isinstance(goal, Bin):
            x, y = goal.left, goal.right
            if goal.op == "lolli":
                d = s(tuple(sorted(gamma + (x,))), y, depth, hc)
                yield deduction_theorem(d, x) if d is not None else None
            elif goal.op == "with":
                d1 = s(gamma, x, depth, hc)
                d2 = s(gamma, y, depth, hc) if d1 is not None else None
                yield adj(d1, d2) if d2 is not None else None
            elif goal.op == "tensor":
                for g1, g2 in _msplits(gamma):
                    d1 = s(g1, x, depth, hc)
                    d2 = s(g2, y, depth, hc) if d1 is not None else None
                    if d2 is not None:
                        yield mp(d2, mp(d1, axiom("ax6", X=x, Y=y)))
            elif goal.op == "plus":
                d = s(gamma, x, depth, hc)
                yield mp(d, axiom("ax15", X=x, Y=y)) if d is not None else None
                d = s(gamma, y, depth, hc)
                yield mp(d, axiom("ax16", X=x, Y=y)) if d is not None else None
        if "HD1" in self.spec.rules and (parts := _distrib_d1_rhs(goal)) is not None:
            src = d_common(*parts)
            d = s(gamma, src, depth, hc)
            yield _cut(d, HilbertDerivation((src,), goal, "HD1"), src) if d is not None else None
        if "HD2" in self.spec.rules and (parts := _distrib_d1_lhs(goal)) is not None:
            a, b, c = parts
            src = Bin("with", Bin("plus", a, b), Bin("plus", a, c))
            d = s(gamma, src, depth, hc)
            yield _cut(d, HilbertDerivation((src,), goal, "HD2"), src) if d is not None else None
        if isinstance(goal, Neg):
            # contraposition against a negated assumption
            for h in dict.fromkeys(gamma):
                if isinstance(h, Neg):
                    d = s(_without(gamma, h), lolli(goal.body, h.body), depth, hc)
                    if d is not None:
                        yield mp(assume(h), mp(d, axiom("ax5", X=goal.body, Y=h.body)))

    def _left(self, gamma, goal, depth, hc):
        s = self.search
        for h in dict.fromkeys(gamma):
            delta = _without(gamma, h)
            if isinstance(h, Bin):
                x, y = h.left, h.right
                if h.op == "lolli":
                    for d1_, d2_ in _msplits(delta):
                        e = s(d1_, x, depth, hc)
                        if e is None:
                            continue
                        d = s(tuple(sorted(d2_ + (y,))), goal, depth, hc)
                        if d is not None:
                            yield _cut(mp(e, assume(h)), d, y)
                elif h.op == "tensor":
                    d = s(tuple(sorted(delta + (x, y))), goal, depth, hc)
                    if d is not None:
                        curried = deduction_theorem(deduction_theorem(d, y), x)  # X -o (Y -o G)
                        yield mp(assume(h), mp(curried, axiom("ax7", X=x, Y=y, Z=goal)))
                elif h.op == "with":
                    for part, name in ((x, "ax12"), (y, "ax13")):
                        d = s(tuple(sorted(delta + (part,))), goal, depth, hc)
                        if d is not None:
                            yield _cut(mp(assume(h), axiom(name, X=x, Y=y)), d, part)
                elif h.op == "plus":
                    d1 = s(tuple(sorted(delta + (x,))), goal, depth, hc)
                    d2 = s(tuple(sorted(delta + (y,))), goal, depth, hc) if d1 is not None else None
                    if d2 is not None:
                        both = adj(deduction_theorem(d1, x), deduction_theorem(d2, y))
                        yield mp(assume(h), mp(both, axiom("ax20", X=x, Y=y, Z=goal)))
            elif h == ONE:
                d = s(delta, goal, depth, hc)
                if d is not None:
                    yield mp(d, mp(assume(ONE), axiom("ax9", X=goal)))
            elif isinstance(h, Neg) and isinstance(h.body, Neg):
                inner = h.body.body
                d = s(tuple(sorted(delta + (inner,))), goal, depth, hc)
                if d is not None:
                    yield _cut(mp(assume(h), axiom("ax4", X=inner)), d, inner)
            if "HD1" in self.spec.rules and (parts := _distrib_d1_lhs(h)) is not None:
                tgt = d1_target(*parts)
                d = s(tuple(sorted(delta + (tgt,))), goal, depth, hc)
                if d is not None:
                    yield _cut(HilbertDerivation((h,), tgt, "HD1"), d, tgt)
            if "HD2" in self.spec.rules and (parts := _distrib_d2_lhs(h)) is not None:
                tgt = d_common(*parts)
                d = s(tuple(sorted(delta + (tgt,))), goal, depth, hc)
                if d is not None:
                    yield _cut(HilbertDerivation((h,), tgt, "HD2"), d, tgt)


def _cut(e: HilbertDerivation, d: HilbertDerivation, x: Formula) -> HilbertDerivation:
    """From ``Sigma |- X`` and ``Delta, X |- G`` build ``Sigma, Delta |- G``."""
    return mp(e, deduction_theorem(d, x))


def derive(assumptions: Iterable[Formula], goal: Formula, spec: RelevantSpec = R_SPEC,
           budget: SearchBudget | None = None, max_depth: int = 12) -> ProofResult:
    """Bounded search for a derivation of ``assumptions |- goal``.

    Returns PROVED with a checkable derivation, or UNKNOWN; never REFUTED.
    """
    budget = budget or SearchBudget(max_nodes=100_000)
    gamma = tuple(assumptions)
    for f in (*gamma, goal):
        validate(f, LOGICS["R"])
    engine = _Deriver(spec, budget)
    try:
        d = engine.run(gamma, goal, max_depth)
    except _OutOfBudget:
        return ProofResult(Status.UNKNOWN, None, f"node budget of {budget.max_nodes} exhausted",
                           engine.nodes, budget.to_dict())
    if d is None:
        return ProofResult(Status.UNKNOWN, None, f"no derivation up to depth {max_depth}",
                           engine.nodes, budget.to_dict())
    return ProofResult(Status.PROVED, d, "", engine.nodes, budget.to_dict())


# ---------------------------------------------------------------- R and AR

def prove_relevant(s: Sequent, budget: SearchBudget | None = None) -> ProofResult:
    """Semidecision for R: linear proof, Hilbert derivation or Sugihara countermodel."""
    budget = budget or SearchBudget.default()
    linear = prove(s, LOGICS["MALL"], budget)
    if linear.proved:
        return ProofResult(Status.PROVED, linear.tree, "derivable in MALL, which R extends",
                           linear.nodes, linear.bounds)
    model = sugihara_countermodel(s.left, s.right)
    if model is not None:
        k, v = model
        text = ", ".join(f"{a}={x}" for a, x in sorted(v.items()))
        return ProofResult(Status.REFUTED, None, f"Sugihara countermodel S{2 * k}: {text}", linear.nodes)
    if len(s.right) <= 1:
        goal = s.right[0] if s.right else BOT
        hilbert = derive(s.left, goal, R_SPEC, SearchBudget(max_nodes=min(budget.max_nodes, 100_000)))
        if hilbert.proved:
            return hilbert
    return ProofResult(Status.UNKNOWN, None, "not decided: no MALL proof, no Hilbert derivation "
                       "within budget, no Sugihara countermodel up to S6", linear.nodes)


def r_inconsistent(j: Iterable[Formula], budget: SearchBudget | None = None) -> ProofResult:
    return prove_relevant(Sequent(tuple(j), ()), budget)


def _ar_pair(pair: tuple[Formula, ...], budget: SearchBudget) -> ProofResult:
    engine = _Linear(LOGICS["AR"], budget, distributive=True)
    try:
        tree = engine.run(Sequent(tuple(sorted(pair)), ()))
    except _OutOfBudget:
        return ProofResult(Status.UNKNOWN, None, "node budget exhausted", engine.nodes, budget.to_dict())
    if tree is not None:
        return ProofResult(Status.PROVED, tree, "", engine.nodes, budget.to_dict())
    if engine.bound_hit:
        return ProofResult(Status.UNKNOWN, None, "distributivity bound reached", engine.nodes, budget.to_dict())
    return ProofResult(Status.REFUTED, None, "", engine.nodes, budget.to_dict())


def ar_inconsistent(j: Iterable[Formula], budget: SearchBudget | None = None) -> ProofResult:
    """AR inconsistency: some one- or two-element submultiset is inconsistent.

    Each candidate is decided by the additive sequent engine with contraction
    and bounded distributivity rewriting.  PROVED carries the proof for the
    clashing submultiset; UNKNOWN is returned when a candidate hit the bound
    and no other candidate clashed.
    """
    budget = budget or SearchBudget.default()
    j = tuple(j)
    for f in j:
        validate(f, LOGICS["AR"])
    unknown = None
    total = 0
    for size in (1, 2):
        for combo in combinations(range(len(j)), size):
            r = _ar_pair(tuple(j[i] for i in combo), budget)
            total += r.nodes
            if r.proved:
                return ProofResult(Status.PROVED, r.tree, "", total, r.bounds)
            if r.unknown:
                unknown = r
    if unknown is not None:
        return ProofResult(Status.UNKNOWN, None, unknown.reason, total, unknown.bounds)
    return ProofResult(Status.REFUTED, None, "no inconsistent pair", total, budget.to_dict())
