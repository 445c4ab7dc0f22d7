"""Independent proof checking: every node must instantiate a legal rule.

The checker never searches for proofs; it only tries the finitely many ways
a named rule could match a node (choice of principal formula, cut formula,
list position).  Cut is accepted in every logic.

Context accounting depends on the logic:

* set contexts (weakening and contraction built in): a premise may contain
  any subset of the conclusion context plus the rule's active formulas, so
  both additive and multiplicative textbook variants check;
* multiset contexts: exact accounting, structural rules must be explicit;
* list contexts: exact positional accounting.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Sequence

from ncja.formula import BOT, ONE, TOP, ZERO, Bin, Formula, FragmentError, Neg, validate
from ncja.logics import LogicSpec, get_logic
from ncja.sequent import ProofTree, Sequent

__all__ = ["check", "check_node", "first_error", "rule_allowed"]


def _bin(op: str) -> Callable[[Formula], tuple[Formula, Formula] | None]:
    def match(f: Formula):
        if isinstance(f, Bin) and f.op == op:
            return f.left, f.right
        return None
    return match


def _neg(f: Formula):
    return (f.body,) if isinstance(f, Neg) else None


def _distrib_d1_lhs(f: Formula):
    # A & (B + C)
    if isinstance(f, Bin) and f.op == "with" and isinstance(f.right, Bin) and f.right.op == "plus":
        return f.left, f.right.left, f.right.right
    return None


def _distrib_d1_rhs(f: Formula):
    # (A & B) + (A & C)
    if (isinstance(f, Bin) and f.op == "plus"
            and all(isinstance(g, Bin) and g.op == "with" for g in (f.left, f.right))
            and f.left.left == f.right.left):
        return f.left.left, f.left.right, f.right.right
    return None


def _distrib_d2_lhs(f: Formula):
    # (A + B) & (A + C)
    if (isinstance(f, Bin) and f.op == "with"
            and all(isinstance(g, Bin) and g.op == "plus" for g in (f.left, f.right))
            and f.left.left == f.right.left):
        return f.left.left, f.left.right, f.right.right
    return None


def d1_target(a, b, c) -> Formula:
    return Bin("plus", Bin("with", a, b), Bin("with", a, c))


def d2_source(a, b, c) -> Formula:
    return Bin("with", Bin("plus", a, b), Bin("plus", a, c))


def d_common(a, b, c) -> Formula:
    return Bin("with", a, Bin("plus", b, c))


# rule -> (side of the principal formula, matcher, builder of each premise's
# active formulas as (left additions, right additions), context discipline,
# connective the rule needs)
_LOGICAL: dict[str, tuple] = {
    "negL": ("L", _neg, lambda a: [([], [a])], "add", "neg"),
    "negR": ("R", _neg, lambda a: [([a], [])], "add", "neg"),
    "andL": ("L", _bin("and"), lambda a, b: [([a, b], [])], "add", "and"),
    "andR": ("R", _bin("and"), lambda a, b: [([], [a]), ([], [b])], "add", "and"),
    "orL": ("L", _bin("or"), lambda a, b: [([a], []), ([b], [])], "add", "or"),
    "orR": ("R", _bin("or"), lambda a, b: [([], [a, b])], "add", "or"),
    "orR1": ("R", _bin("or"), lambda a, b: [([], [a])], "add", "or"),
    "orR2": ("R", _bin("or"), lambda a, b: [([], [b])], "add", "or"),
    "impL": ("L", _bin("imp"), lambda a, b: [([], [a]), ([b], [])], "add", "imp"),
    "impR": ("R", _bin("imp"), lambda a, b: [([a], [b])], "add", "imp"),
    "impR_a1": ("R", _bin("imp"), lambda a, b: [([], [b])], "add", "imp"),
    "impR_a2": ("R", _bin("imp"), lambda a, b: [([a], [])], "add", "imp"),
    "tensorL": ("L", _bin("tensor"), lambda a, b: [([a, b], [])], "add", "tensor"),
    "tensorR": ("R", _bin("tensor"), lambda a, b: [([], [a]), ([], [b])], "mult", "tensor"),
    "parL": ("L", _bin("par"), lambda a, b: [([a], []), ([b], [])], "mult", "par"),
    "parR": ("R", _bin("par"), lambda a, b: [([], [a, b])], "add", "par"),
    "lolliL": ("L", _bin("lolli"), lambda a, b: [([], [a]), ([b], [])], "mult", "lolli"),
    "lolliR": ("R", _bin("lolli"), lambda a, b: [([a], [b])], "add", "lolli"),
    "withL1": ("L", _bin("with"), lambda a, b: [([a], [])], "add", "with"),
    "withL2": ("L", _bin("with"), lambda a, b: [([b], [])], "add", "with"),
    "withR": ("R", _bin("with"), lambda a, b: [([], [a]), ([], [b])], "add", "with"),
    "plusL": ("L", _bin("plus"), lambda a, b: [([a], []), ([b], [])], "add", "plus"),
    "plusR1": ("R", _bin("plus"), lambda a, b: [([], [a])], "add", "plus"),
    "plusR2": ("R", _bin("plus"), lambda a, b: [([], [b])], "add", "plus"),
    "addimpL": ("L", _bin("addimp"), lambda a, b: [([], [a]), ([b], [])], "add", "addimp"),
    "addimpR1": ("R", _bin("addimp"), lambda a, b: [([], [b])], "add", "addimp"),
    "addimpR2": ("R", _bin("addimp"), lambda a, b: [([a], [])], "add", "addimp"),
    "oneL": ("L", lambda f: () if f == ONE else None, lambda: [([], [])], "add", "one"),
    "botR": ("R", lambda f: () if f == BOT else None, lambda: [([], [])], "add", "bot"),
    "HD1L": ("L", _distrib_d1_lhs, lambda a, b, c: [([d1_target(a, b, c)], [])], "add", "distrib"),
    "HD2L": ("L", _distrib_d2_lhs, lambda a, b, c: [([d_common(a, b, c)], [])], "add", "distrib"),
    "HD1R": ("R", _distrib_d1_rhs, lambda a, b, c: [([], [d_common(a, b, c)])], "add", "distrib"),
    "HD2R": ("R", _distrib_d1_lhs, lambda a, b, c: [([], [d2_source(a, b, c)])], "add", "distrib"),
}

_LEAVES = {"ax", "topR", "zeroL", "oneR", "botL"}
_STRUCTURAL = {"WL": "W", "WR": "W", "CL": "C", "CR": "C", "EL": "E", "ER": "E"}
_LAMBEK = {"lprodL", "lprodR", "lunderL", "lunderR", "loverL", "loverR"}
_UNIT_OF_RULE = {"topR": "top", "zeroL": "zero", "oneR": "one", "botL": "bot",
                 "oneL": "one", "botR": "bot"}


def rule_allowed(rule: str, spec: LogicSpec) -> bool:
    if rule in ("ax", "cut"):
        return True
    if rule in _STRUCTURAL:
        return _STRUCTURAL[rule] in spec.structural
    if rule in _UNIT_OF_RULE:
        if spec.context == "list":
            return False  # bot behaves as an atom in the Lambek calculus
        return _UNIT_OF_RULE[rule] in spec.units
    if rule in _LAMBEK:
        return spec.context == "list" and rule[:-1] in spec.connectives
    if rule in _LOGICAL:
        need = _LOGICAL[rule][4]
        if need == "neg":
            return spec.negation == "primitive"
        if need == "distrib":
            return spec.id == "AR"
        return need in spec.connectives
    return False


def _fragment_ok(s: Sequent, spec: LogicSpec) -> bool:
    try:
        for f in s.formulas():
            validate(f, spec)
    except FragmentError:
        return False
    if spec.single_conclusion and len(s.right) > 1:
        return False
    return True


# ---------------------------------------------------------------- set / multiset

def _sub(c: Counter, items: Sequence[Formula]) -> Counter | None:
    out = c.copy()
    for f in items:
        if out[f] <= 0:
            return None
        out[f] -= 1
    return +out


def _premises_fit(concl: Sequent, prems: Sequence[Sequent], principal, side, actives, kind, spec) -> bool:
    if spec.context == "set":
        cl, cr = set(concl.left), set(concl.right)
        for p, (al, ar) in zip(prems, actives):
            if not set(p.left) <= cl | set(al) or not set(p.right) <= cr | set(ar):
                return False
        return True
    ctx_l, ctx_r = Counter(concl.left), Counter(concl.right)
    if principal is not None:
        if side == "L":
            ctx_l = _sub(ctx_l, [principal])
        else:
            ctx_r = _sub(ctx_r, [principal])
    rest = []
    for p, (al, ar) in zip(prems, actives):
        rl, rr = _sub(Counter(p.left), al), _sub(Counter(p.right), ar)
        if rl is None or rr is None:
            return False
        rest.append((rl, rr))
    if kind == "mult":
        tl, tr = Counter(), Counter()
        for rl, rr in rest:
            tl += rl
            tr += rr
        return tl == ctx_l and tr == ctx_r
    return all(rl == ctx_l and rr == ctx_r for rl, rr in rest)


def _check_logical(node: ProofTree, spec: LogicSpec) -> bool:
    side, match, build, kind, _ = _LOGICAL[node.rule]
    concl = node.conclusion
    prems = [p.conclusion for p in node.premises]
    candidates = concl.left if side == "L" else concl.right
    for f in set(candidates):
        parts = match(f)
        if parts is None:
            continue
        actives = build(*parts)
        if len(actives) != len(prems):
            continue
        if _premises_fit(concl, prems, f, side, actives, kind, spec):
            return True
    return False


def _check_leaf(node: ProofTree, spec: LogicSpec) -> bool:
    s = node.conclusion
    rule = node.rule
    if node.premises:
        return False
    if spec.context == "set":
        if rule == "ax":
            return bool(set(s.left) & set(s.right))
        if rule == "botL":
            return BOT in s.left
        if rule == "oneR":
            return ONE in s.right
    else:
        if rule == "ax":
            return len(s.left) == 1 and list(s.left) == list(s.right)
        if rule == "botL":
            return list(s.left) == [BOT] and not s.right
        if rule == "oneR":
            return not s.left and list(s.right) == [ONE]
    if rule == "topR":
        return TOP in s.right
    if rule == "zeroL":
        return ZERO in s.left
    return False


def _check_structural(node: ProofTree, spec: LogicSpec) -> bool:
    if len(node.premises) != 1:
        return False
    c, p = node.conclusion, node.premises[0].conclusion
    side = node.rule[1]
    c_ctx, p_ctx = (c.left, p.left) if side == "L" else (c.right, p.right)
    c_oth, p_oth = (c.right, p.right) if side == "L" else (c.left, p.left)
    if spec.context == "list":
        if list(c_oth) != list(p_oth):
            return False
        c_ctx, p_ctx = list(c_ctx), list(p_ctx)
        if node.rule[0] == "E":
            return any(p_ctx[:i] + [p_ctx[i + 1], p_ctx[i]] + p_ctx[i + 2:] == c_ctx
                       for i in range(len(p_ctx) - 1))
        if node.rule[0] == "W":
            return any(c_ctx[:i] + c_ctx[i + 1:] == p_ctx for i in range(len(c_ctx)))
        return any(c_ctx[:i + 1] + [c_ctx[i]] + c_ctx[i + 1:] == p_ctx for i in range(len(c_ctx)))
    if spec.context == "set":
        return set(p_oth) <= set(c_oth) and set(p_ctx) <= set(c_ctx)
    if Counter(c_oth) != Counter(p_oth):
        return False
    if node.rule[0] == "E":
        return Counter(c_ctx) == Counter(p_ctx)
    diff_up = Counter(p_ctx) - Counter(c_ctx)
    diff_down = Counter(c_ctx) - Counter(p_ctx)
    if node.rule[0] == "W":
        return not diff_up and sum(diff_down.values()) == 1
    return not diff_down and sum(diff_up.values()) == 1 and next(iter(diff_up)) in c_ctx


def _check_cut(node: ProofTree, spec: LogicSpec) -> bool:
    if len(node.premises) != 2:
        return False
    c = node.conclusion
    p0, p1 = (p.conclusion for p in node.premises)
    if spec.context == "list":
        return _check_lambek_cut(c, p0, p1)
    # p0: Gamma, A |- Delta ; p1: Gamma' |- A, Delta'
    for a in set(p0.left) & set(p1.right):
        if _premises_fit(c, [p0, p1], None, "L", [([a], []), ([], [a])], "mult", spec):
            return True
    return False


# ---------------------------------------------------------------- lists

def _check_lambek_cut(c: Sequent, p0: Sequent, p1: Sequent) -> bool:
    # either premise order: Gamma |- A and Delta[A] |- C
    for g, d in ((p0, p1), (p1, p0)):
        if len(g.right) != 1 or list(d.right) != list(c.right):
            continue
        a = g.right[0]
        for i, f in enumerate(d.left):
            if f == a and list(d.left[:i]) + list(g.left) + list(d.left[i + 1:]) == list(c.left):
                return True
    return False


def _check_lambek(node: ProofTree) -> bool:
    c = node.conclusion
    prems = [p.conclusion for p in node.premises]
    left, right = list(c.left), list(c.right)
    rule = node.rule
    op = rule[:-1]
    if rule.endswith("R"):
        if len(right) != 1 or not isinstance(right[0], Bin) or right[0].op != op:
            return False
        f = right[0]
        if op == "lprod":
            if len(prems) != 2 or any(len(p.right) != 1 for p in prems):
                return False
            return (list(prems[0].right) == [f.left] and list(prems[1].right) == [f.right]
                    and list(prems[0].left) + list(prems[1].left) == left)
        if len(prems) != 1:
            return False
        p = prems[0]
        if op == "lunder":  # A ; Gamma |- B  gives  Gamma |- A \ B
            return list(p.right) == [f.right] and list(p.left) == [f.left] + left
        return list(p.right) == [f.left] and list(p.left) == left + [f.right]
    for i, f in enumerate(left):
        if not isinstance(f, Bin) or f.op != op:
            continue
        if op == "lprod":
            if (len(prems) == 1 and list(prems[0].right) == right
                    and list(prems[0].left) == left[:i] + [f.left, f.right] + left[i + 1:]):
                return True
            continue
        if len(prems) != 2:
            return False
        arg, minor = prems
        if len(arg.right) != 1 or list(minor.right) != right:
            continue
        gamma = list(arg.left)
        if op == "lunder":  # Delta[Gamma ; A \ B]
            if arg.right[0] != f.left or i < len(gamma) or left[i - len(gamma):i] != gamma:
                continue
            if list(minor.left) == left[:i - len(gamma)] + [f.right] + left[i + 1:]:
                return True
        else:  # Delta[B / A ; Gamma], f = Bin(lover, B, A)
            if arg.right[0] != f.right or left[i + 1:i + 1 + len(gamma)] != gamma:
                continue
            if list(minor.left) == left[:i] + [f.left] + left[i + 1 + len(gamma):]:
                return True
    return False


# ---------------------------------------------------------------- entry points

def check_node(node: ProofTree, spec: LogicSpec) -> bool:
    """Check only the topmost inference of `node`."""
    if not _fragment_ok(node.conclusion, spec) or not rule_allowed(node.rule, spec):
        return False
    rule = node.rule
    if rule in _LEAVES:
        if spec.context == "list":
            return (rule == "ax" and not node.premises and len(node.conclusion.left) == 1
                    and list(node.conclusion.left) == list(node.conclusion.right))
        return _check_leaf(node, spec)
    if rule == "cut":
        return _check_cut(node, spec)
    if rule in _STRUCTURAL:
        return _check_structural(node, spec)
    if rule in _LAMBEK:
        return _check_lambek(node)
    if spec.context == "list":
        return False
    return _check_logical(node, spec)


def check(tree: ProofTree, spec: LogicSpec | str) -> bool:
    """True iff every node of `tree` is a correct instance of its rule in `spec`."""
    spec = get_logic(spec)
    stack = [tree]
    while stack:
        node = stack.pop()
        if not check_node(node, spec):
            return False
        stack.extend(node.premises)
    return True


def first_error(tree: ProofTree, spec: LogicSpec | str) -> ProofTree | None:
    """The first node (pre-order) that fails to check, or None."""
    spec = get_logic(spec)
    for node in tree.nodes():
        if not check_node(node, spec):
            return node
    return None
