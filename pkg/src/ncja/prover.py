"""Cut-free backward proof search for the sequent-presented logics.

One engine per context discipline:

* classical (CL): set contexts, every rule invertible, no backtracking;
* intuitionistic (IL): set contexts, principal implication kept in the left
  premise of ``impL``, loop check on the branch;
* Lambek (L): list contexts, contiguous splits, empty antecedents allowed;
* linear (MALL, MLL, ALL, IMALL, ALLW, ALLC and the pairwise engine behind
  AR): multiset contexts, invertible rules applied eagerly, 2-partitions for
  multiplicative rules.  Weakening is pushed to the leaves and emitted as
  explicit ``WL``/``WR`` steps; contraction is an explicit search step;
* ALLCW: with both weakening and contraction the additive rules behave
  classically, so the search uses derived invertible rules spelled out with
  ``CL``/``CR`` steps.

Every returned tree is accepted by :func:`ncja.check.check`.
"""

from __future__ import annotations

import enum
import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from ncja.formula import BOT, ONE, TOP, ZERO, Bin, Formula, Neg, Unit, has_units, validate
from ncja.logics import LogicSpec, get_logic
from ncja.sequent import ProofTree, Sequent, normalize

__all__ = [
    "Status", "ProofResult", "SearchBudget", "prove", "inconsistent",
    "DEFAULT_MAX_NODES", "BUDGET_ENV",
]

BUDGET_ENV = "NCJA_MAX_NODES"
DEFAULT_MAX_NODES = 200_000


class Status(enum.Enum):
    PROVED = "proved"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a single search.

    ``multiplicity`` caps how many extra copies contraction may create of one
    formula on a branch when the search is not otherwise bounded;
    ``distributivity`` caps each distributivity rewrite per branch.
    """

    max_nodes: int = DEFAULT_MAX_NODES
    multiplicity: int = 2
    distributivity: int = 2

    @classmethod
    def default(cls) -> "SearchBudget":
        raw = os.environ.get(BUDGET_ENV)
        return cls(max_nodes=int(raw)) if raw else cls()

    def to_dict(self) -> dict:
        return {"max_nodes": self.max_nodes, "multiplicity": self.multiplicity,
                "distributivity": self.distributivity}


@dataclass(frozen=True)
class ProofResult:
    status: Status
    tree: ProofTree | None = None
    reason: str = ""
    nodes: int = 0
    bounds: dict = field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN


class _OutOfBudget(Exception):
    pass


# ---------------------------------------------------------------- multisets

def _remove(ctx: tuple, f: Formula) -> tuple:
    i = ctx.index(f)
    return ctx[:i] + ctx[i + 1:]


def _add(ctx: tuple, *fs: Formula) -> tuple:
    return tuple(sorted(ctx + fs))


def _splits(ctx: tuple) -> Iterator[tuple[tuple, tuple]]:
    items = sorted(Counter(ctx).items())
    for counts in product(*(range(m + 1) for _, m in items)):
        a = tuple(f for (f, _), k in zip(items, counts) for _ in range(k))
        b = tuple(f for (f, m), k in zip(items, counts) for _ in range(m - k))
        yield a, b


def _distinct(ctx: Iterable[Formula]) -> list[Formula]:
    return list(dict.fromkeys(ctx))


def _is(f: Formula, op: str) -> bool:
    return isinstance(f, Bin) and f.op == op


class _Search:
    def __init__(self, spec: LogicSpec, budget: SearchBudget):
        self.spec = spec
        self.budget = budget
        self.nodes = 0
        self.bound_hit = False

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget

    def weaken(self, tree: ProofTree, left: tuple, right: tuple) -> ProofTree:
        """Extend `tree` with WL/WR steps until its conclusion is left |- right."""
        cur_l, cur_r = list(tree.conclusion.left), list(tree.conclusion.right)
        extra_l = list((Counter(left) - Counter(cur_l)).elements())
        extra_r = list((Counter(right) - Counter(cur_r)).elements())
        for f in sorted(extra_l):
            cur_l = sorted(cur_l + [f])
            tree = ProofTree(Sequent(cur_l, cur_r), "WL", (tree,))
        for f in sorted(extra_r):
            cur_r = sorted(cur_r + [f])
            tree = ProofTree(Sequent(cur_l, cur_r), "WR", (tree,))
        return tree


# ---------------------------------------------------------------- classical

class _Classical(_Search):
    def run(self, s: Sequent) -> ProofTree | None:
        return self.search(frozenset(s.left), frozenset(s.right))

    def search(self, left: frozenset, right: frozenset) -> ProofTree | None:
        self.tick()
        seq = Sequent(sorted(left), sorted(right))
        if left & right:
            return ProofTree(seq, "ax")
        if BOT in left:
            return ProofTree(seq, "botL")
        if TOP in right:
            return ProofTree(seq, "topR")
        for f in sorted(left):
            rest = left - {f}
            if isinstance(f, Neg):
                return self._node(seq, "negL", [(rest, right | {f.body})])
            if _is(f, "and"):
                return self._node(seq, "andL", [(rest | {f.left, f.right}, right)])
            if _is(f, "or"):
                return self._node(seq, "orL", [(rest | {f.left}, right), (rest | {f.right}, right)])
            if _is(f, "imp"):
                return self._node(seq, "impL", [(rest, right | {f.left}), (rest | {f.right}, right)])
        for f in sorted(right):
            rest = right - {f}
            if isinstance(f, Neg):
                return self._node(seq, "negR", [(left | {f.body}, rest)])
            if _is(f, "and"):
                return self._node(seq, "andR", [(left, rest | {f.left}), (left, rest | {f.right})])
            if _is(f, "or"):
                return self._node(seq, "orR", [(left, rest | {f.left, f.right})])
            if _is(f, "imp"):
                return self._node(seq, "impR", [(left | {f.left}, rest | {f.right})])
        return None

    def _node(self, seq, rule, premises) -> ProofTree | None:
        subs = []
        for l, r in premises:
            t = self.search(l, r)
            if t is None:
                return None
            subs.append(t)
        return ProofTree(seq, rule, tuple(subs))


# ---------------------------------------------------------------- intuitionistic

class _Intuitionistic(_Search):
    def __init__(self, spec, budget):
        super().__init__(spec, budget)
        self.proved: dict = {}
        self.failed: set = set()

    def run(self, s: Sequent) -> ProofTree | None:
        tree, _ = self.search(frozenset(s.left), frozenset(s.right), frozenset())
        return tree

    def search(self, left, right, history) -> tuple[ProofTree | None, bool]:
        """Returns (tree, whether the loop check cut off part of the search)."""
        key = (left, right)
        if key in self.proved:
            return self.proved[key], False
        if key in self.failed:
            return None, False
        if key in history:
            return None, True
        self.tick()
        tree, looped = self._search(left, right, history | {key})
        if tree is not None:
            self.proved[key] = tree
        elif not looped:
            self.failed.add(key)
        return tree, looped

    def _search(self, left, right, history):
        seq = Sequent(sorted(left), sorted(right))
        if left & right:
            return ProofTree(seq, "ax"), False
        if BOT in left:
            return ProofTree(seq, "botL"), False
        # invertible rules first
        for f in sorted(left):
            rest = left - {f}
            if _is(f, "and"):
                return self._all(seq, "andL", [(rest | {f.left, f.right}, right)], history)
            if _is(f, "or"):
                return self._all(seq, "orL", [(rest | {f.left}, right), (rest | {f.right}, right)], history)
        for f in right:
            if _is(f, "and"):
                return self._all(seq, "andR", [(left, frozenset({f.left})), (left, frozenset({f.right}))], history)
            if _is(f, "imp"):
                return self._all(seq, "impR", [(left | {f.left}, frozenset({f.right}))], history)
        looped = False
        alternatives = []
        for f in right:
            if _is(f, "or"):
                alternatives.append(("orR1", [(left, frozenset({f.left}))]))
                alternatives.append(("orR2", [(left, frozenset({f.right}))]))
        for f in sorted(left):
            if _is(f, "imp"):
                alternatives.append(("impL", [(left, frozenset({f.left})), ((left - {f}) | {f.right}, right)]))
        for rule, premises in alternatives:
            tree, lp = self._all(seq, rule, premises, history)
            looped |= lp
            if tree is not None:
                return tree, False
        return None, looped

    def _all(self, seq, rule, premises, history):
        subs = []
        for l, r in premises:
            t, looped = self.search(l, r, history)
            if t is None:
                return None, looped
            subs.append(t)
        return ProofTree(seq, rule, tuple(subs)), False


# ---------------------------------------------------------------- Lambek

class _Lambek(_Search):
    def __init__(self, spec, budget):
        super().__init__(spec, budget)
        self.memo: dict = {}

    def run(self, s: Sequent) -> ProofTree | None:
        return self.search(tuple(s.left), tuple(s.right))

    def search(self, left: tuple, right: tuple) -> ProofTree | None:
        key = (left, right)
        if key in self.memo:
            return self.memo[key]
        self.tick()
        tree = self._search(left, right)
        self.memo[key] = tree
        return tree

    def _search(self, left, right):
        seq = Sequent(left, right)
        if len(left) == 1 and left == right:
            return ProofTree(seq, "ax")
        # invertible: right implications and left products
        if right:
            g = right[0]
            if _is(g, "lunder"):
                return self._all(seq, "lunderR", [((g.left,) + left, (g.right,))])
            if _is(g, "lover"):
                return self._all(seq, "loverR", [(left + (g.right,), (g.left,))])
        for i, f in enumerate(left):
            if _is(f, "lprod"):
                return self._all(seq, "lprodL", [(left[:i] + (f.left, f.right) + left[i + 1:], right)])
        if right and _is(right[0], "lprod"):
            g = right[0]
            for k in range(len(left) + 1):
                t = self._all(seq, "lprodR", [(left[:k], (g.left,)), (left[k:], (g.right,))])
                if t is not None:
                    return t
        for i, f in enumerate(left):
            if _is(f, "lunder"):  # Delta[Gamma ; A \ B]
                for j in range(i, -1, -1):
                    t = self._all(seq, "lunderL", [(left[j:i], (f.left,)),
                                                   (left[:j] + (f.right,) + left[i + 1:], right)])
                    if t is not None:
                        return t
            elif _is(f, "lover"):  # Delta[B / A ; Gamma]
                for j in range(i + 1, len(left) + 1):
                    t = self._all(seq, "loverL", [(left[i + 1:j], (f.right,)),
                                                  (left[:i] + (f.left,) + left[j:], right)])
                    if t is not None:
                        return t
        return None

    def _all(self, seq, rule, premises):
        subs = []
        for l, r in premises:
            t = self.search(l, r)
            if t is None:
                return None
            subs.append(t)
        return ProofTree(seq, rule, tuple(subs))


# ---------------------------------------------------------------- linear family

_LINEAR_INVERTIBLE = ("negL", "negR", "tensorL", "parR", "lolliR", "withR", "plusL", "addimpL", "oneL", "botR")


class _Linear(_Search):
    """Multiset search; also the pairwise engine for additive relevant logic.

    Without units, contraction and the distributivity rewrites never change
    the number of formulas in a sequent and every axiom has exactly two, so
    a provable sequent has at most two formulas.  Larger sequents are cut off
    at once and contraction is only tried on one-formula sequents, which
    keeps the contraction search finite and complete.
    """

    def __init__(self, spec, budget, distributive=False):
        super().__init__(spec, budget)
        self.weak = spec.weakening
        self.contract = spec.contraction
        self.single = spec.single_conclusion
        self.distributive = distributive
        self.two_formula = False
        self.memo: dict = {}

    def run(self, s: Sequent) -> ProofTree | None:
        if self.contract and not self.weak:
            self.two_formula = not any(has_units(f) for f in s.formulas())
        state = (0, 0, 0, 0) if self.distributive else ()
        return self.search(tuple(sorted(s.left)), tuple(sorted(s.right)), state, Counter())

    def search(self, left, right, hd, copies) -> ProofTree | None:
        if self.single and len(right) > 1:
            return None
        if self.two_formula and len(left) + len(right) > 2:
            return None
        key = (left, right, hd, tuple(sorted(copies.items())) if copies else ())
        if key in self.memo:
            return self.memo[key]
        self.tick()
        tree = self._search(left, right, hd, copies)
        self.memo[key] = tree
        return tree

    def _leaf(self, left, right) -> ProofTree | None:
        seq = Sequent(left, right)
        if TOP in right:
            return ProofTree(seq, "topR")
        if ZERO in left:
            return ProofTree(seq, "zeroL")
        if len(left) == 1 and left == right:
            return ProofTree(seq, "ax")
        if not left and right == (ONE,):
            return ProofTree(seq, "oneR")
        if left == (BOT,) and not right:
            return ProofTree(seq, "botL")
        if self.weak:
            for f in sorted(set(left) & set(right)):
                return self.weaken(ProofTree(Sequent((f,), (f,)), "ax"), left, right)
            if ONE in right:
                return self.weaken(ProofTree(Sequent((), (ONE,)), "oneR"), left, right)
            if BOT in left:
                return self.weaken(ProofTree(Sequent((BOT,), ()), "botL"), left, right)
        return None

    def _invertible(self, left, right):
        for f in _distinct(left):
            rest = _remove(left, f)
            if isinstance(f, Neg) and not self.single:
                return "negL", [(rest, _add(right, f.body))]
            if _is(f, "tensor"):
                return "tensorL", [(_add(rest, f.left, f.right), right)]
            if _is(f, "plus"):
                return "plusL", [(_add(rest, f.left), right), (_add(rest, f.right), right)]
            if _is(f, "addimp"):
                return "addimpL", [(rest, _add(right, f.left)), (_add(rest, f.right), right)]
            if f == ONE:
                return "oneL", [(rest, right)]
        for f in _distinct(right):
            rest = _remove(right, f)
            if isinstance(f, Neg):
                return "negR", [(_add(left, f.body), rest)]
            if _is(f, "par"):
                return "parR", [(left, _add(rest, f.left, f.right))]
            if _is(f, "lolli"):
                return "lolliR", [(_add(left, f.left), _add(rest, f.right))]
            if _is(f, "with"):
                return "withR", [(left, _add(rest, f.left)), (left, _add(rest, f.right))]
            if f == BOT:
                return "botR", [(left, rest)]
        return None

    def _alternatives(self, left, right):
        for f in _distinct(left):
            rest = _remove(left, f)
            if _is(f, "with"):
                yield "withL1", [(_add(rest, f.left), right)]
                yield "withL2", [(_add(rest, f.right), right)]
            elif _is(f, "par"):
                for l1, l2 in _splits(rest):
                    for r1, r2 in _splits(right):
                        yield "parL", [(_add(l1, f.left), r1), (_add(l2, f.right), r2)]
            elif _is(f, "lolli"):
                for l1, l2 in _splits(rest):
                    for r1, r2 in _splits(right):
                        yield "lolliL", [(l1, _add(r1, f.left)), (_add(l2, f.right), r2)]
            elif isinstance(f, Neg) and self.single and not right:
                yield "negL", [(rest, (f.body,))]
        for f in _distinct(right):
            rest = _remove(right, f)
            if _is(f, "tensor"):
                for l1, l2 in _splits(left):
                    for r1, r2 in _splits(rest):
                        yield "tensorR", [(l1, _add(r1, f.left)), (l2, _add(r2, f.right))]
            elif _is(f, "plus"):
                yield "plusR1", [(left, _add(rest, f.left))]
                yield "plusR2", [(left, _add(rest, f.right))]
            elif _is(f, "addimp"):
                yield "addimpR1", [(left, _add(rest, f.right))]
                yield "addimpR2", [(_add(left, f.left), rest)]

    def _distributivity(self, left, right, hd):
        from ncja.check import _distrib_d1_lhs, _distrib_d1_rhs, _distrib_d2_lhs, d1_target, d2_source, d_common
        rewrites = []
        for f in _distinct(left):
            if (parts := _distrib_d1_lhs(f)) is not None:
                rewrites.append((0, "HD1L", (_add(_remove(left, f), d1_target(*parts)), right)))
            if (parts := _distrib_d2_lhs(f)) is not None:
                rewrites.append((1, "HD2L", (_add(_remove(left, f), d_common(*parts)), right)))
        for f in _distinct(right):
            if (parts := _distrib_d1_rhs(f)) is not None:
                rewrites.append((2, "HD1R", (left, _add(_remove(right, f), d_common(*parts)))))
            if (parts := _distrib_d1_lhs(f)) is not None:
                rewrites.append((3, "HD2R", (left, _add(_remove(right, f), d2_source(*parts)))))
        for slot, rule, premise in rewrites:
            if hd[slot] >= self.budget.distributivity:
                self.bound_hit = True
                continue
            yield rule, premise, hd[:slot] + (hd[slot] + 1,) + hd[slot + 1:]

    def _contractions(self, left, right, copies):
        if self.two_formula:
            if len(left) + len(right) != 1:
                return
        for side, ctx in (("L", left), ("R", right)):
            for f in _distinct(ctx):
                if not self.two_formula and copies[f] >= self.budget.multiplicity - 1:
                    self.bound_hit = True
                    continue
                if side == "L":
                    yield "CL", (_add(left, f), right), f
                else:
                    yield "CR", (left, _add(right, f)), f

    def _search(self, left, right, hd, copies):
        leaf = self._leaf(left, right)
        if leaf is not None:
            return leaf
        seq = Sequent(left, right)
        inv = self._invertible(left, right)
        if inv is not None:
            rule, premises = inv
            return self._all(seq, rule, premises, hd, copies)
        for rule, premises in self._alternatives(left, right):
            t = self._all(seq, rule, premises, hd, copies)
            if t is not None:
                return t
        if self.distributive:
            for rule, premise, hd2 in self._distributivity(left, right, hd):
                t = self._all(seq, rule, [premise], hd2, copies)
                if t is not None:
                    return t
        if self.contract:
            for rule, premise, f in self._contractions(left, right, copies):
                more = copies.copy()
                more[f] += 1
                t = self._all(seq, rule, [premise], hd, more)
                if t is not None:
                    return t
        return None

    def _all(self, seq, rule, premises, hd, copies):
        subs = []
        for l, r in premises:
            t = self.search(l, r, hd, copies)
            if t is None:
                return None
            subs.append(t)
        return ProofTree(seq, rule, tuple(subs))


class _AdditiveClassical(_Search):
    """ALL with weakening and contraction: derived invertible rules."""

    def run(self, s: Sequent) -> ProofTree | None:
        return self.search(tuple(sorted(s.left)), tuple(sorted(s.right)))

    def search(self, left, right) -> ProofTree | None:
        self.tick()
        seq = Sequent(left, right)
        if TOP in right:
            return ProofTree(seq, "topR")
        if ZERO in left:
            return ProofTree(seq, "zeroL")
        common = sorted(set(left) & set(right))
        if common:
            f = common[0]
            return self.weaken(ProofTree(Sequent((f,), (f,)), "ax"), left, right)
        for f in _distinct(left):
            rest = _remove(left, f)
            if isinstance(f, Neg):
                return self._chain(seq, [("negL", (rest, _add(right, f.body)))])
            if _is(f, "with"):
                return self._chain(seq, [("CL", (_add(left, f), right)),
                                         ("withL1", (_add(rest, f, f.left), right)),
                                         ("withL2", (_add(rest, f.left, f.right), right))])
            if _is(f, "plus"):
                return self._branch(seq, "plusL", [(_add(rest, f.left), right), (_add(rest, f.right), right)])
            if _is(f, "addimp"):
                return self._branch(seq, "addimpL", [(rest, _add(right, f.left)), (_add(rest, f.right), right)])
        for f in _distinct(right):
            rest = _remove(right, f)
            if isinstance(f, Neg):
                return self._chain(seq, [("negR", (_add(left, f.body), rest))])
            if _is(f, "with"):
                return self._branch(seq, "withR", [(left, _add(rest, f.left)), (left, _add(rest, f.right))])
            if _is(f, "plus"):
                return self._chain(seq, [("CR", (left, _add(right, f))),
                                         ("plusR1", (left, _add(rest, f, f.left))),
                                         ("plusR2", (left, _add(rest, f.left, f.right)))])
            if _is(f, "addimp"):
                return self._chain(seq, [("CR", (left, _add(right, f))),
                                         ("addimpR1", (left, _add(rest, f, f.right))),
                                         ("addimpR2", (_add(left, f.left), _add(rest, f.right)))])
        return None

    def _chain(self, seq, steps) -> ProofTree | None:
        top = self.search(*steps[-1][1])
        if top is None:
            return None
        # steps[i] names the rule whose conclusion is the premise of steps[i-1]
        conclusions = [seq] + [Sequent(*premise) for _, premise in steps[:-1]]
        tree = top
        for (rule, _), concl in reversed(list(zip(steps, conclusions))):
            tree = ProofTree(concl, rule, (tree,))
        return tree

    def _branch(self, seq, rule, premises) -> ProofTree | None:
        subs = []
        for l, r in premises:
            t = self.search(l, r)
            if t is None:
                return None
            subs.append(t)
        return ProofTree(seq, rule, tuple(subs))


# ---------------------------------------------------------------- entry points

def _engine(spec: LogicSpec, budget: SearchBudget) -> _Search:
    if spec.id == "CL":
        return _Classical(spec, budget)
    if spec.id == "IL":
        return _Intuitionistic(spec, budget)
    if spec.context == "list":
        return _Lambek(spec, budget)
    if spec.id == "AR":
        return _Linear(spec, budget, distributive=True)
    if spec.weakening and spec.contraction:
        return _AdditiveClassical(spec, budget)
    return _Linear(spec, budget)


def _validate_sequent(s: Sequent, spec: LogicSpec) -> None:
    for f in s.formulas():
        validate(f, spec)
    if spec.single_conclusion and len(s.right) > 1:
        raise ValueError(f"{spec.id} sequents have at most one formula on the right")


def _complete(spec: LogicSpec, engine: _Search) -> bool:
    """Whether a failed search proves underivability."""
    return not engine.bound_hit


def prove(s: Sequent, spec: LogicSpec | str, budget: SearchBudget | None = None) -> ProofResult:
    """Search for a cut-free proof of `s` in `spec`.

    For the relevant logic R the search is delegated to the Hilbert engine
    (a semidecision); every other logic is handled here.
    """
    spec = get_logic(spec)
    budget = budget or SearchBudget.default()
    _validate_sequent(s, spec)
    if spec.id == "R":
        from ncja.hilbert import prove_relevant
        return prove_relevant(s, budget)
    s = normalize(s, spec) if spec.context != "set" else s
    engine = _engine(spec, budget)
    bounds = budget.to_dict()
    try:
        tree = engine.run(s)
    except _OutOfBudget:
        return ProofResult(Status.UNKNOWN, None, f"node budget of {budget.max_nodes} exhausted",
                           engine.nodes, bounds)
    except RecursionError:
        return ProofResult(Status.UNKNOWN, None, "search too deep", engine.nodes, bounds)
    if tree is not None:
        return ProofResult(Status.PROVED, tree, "", engine.nodes, bounds)
    if _complete(spec, engine):
        return ProofResult(Status.REFUTED, None, "search space exhausted", engine.nodes, bounds)
    return ProofResult(Status.UNKNOWN, None, "structural-rule bound reached without a proof",
                       engine.nodes, bounds)


def inconsistency_sequent(j: Iterable[Formula], spec: LogicSpec | str) -> Sequent:
    """J |- (nothing) in symmetric calculi, J |- bot in single-conclusion ones."""
    spec = get_logic(spec)
    j = tuple(j)
    return Sequent(j, (BOT,) if spec.single_conclusion else ())


def inconsistent(j: Iterable[Formula], spec: LogicSpec | str, budget: SearchBudget | None = None) -> ProofResult:
    """Decide whether the context `j` is inconsistent in `spec`.

    PROVED means inconsistent (with a proof of the inconsistency sequent),
    REFUTED means consistent.  For AR the pairwise decision is used; for R
    the answer is a semidecision that may be UNKNOWN.
    """
    spec = get_logic(spec)
    j = tuple(j)
    if spec.id in ("AR", "R"):
        from ncja import hilbert
        if spec.id == "AR":
            return hilbert.ar_inconsistent(j, budget)
        return hilbert.r_inconsistent(j, budget)
    return prove(inconsistency_sequent(j, spec), spec, budget)
