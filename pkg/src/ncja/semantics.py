"""Finite-matrix semantics used as independent oracles and countermodels.

* two-valued truth tables for the classical language;
* Sugihara matrices S_2k (values -k..-1, 1..k, designated = positive), a
  sound semantics for the relevant logic R (every R-theorem is valid in
  RM, which these matrices characterise).  A failing valuation is therefore
  a certificate that a sequent is not derivable in R or any weaker logic.
"""

from __future__ import annotations

from functools import reduce
from itertools import product
from typing import Iterable, Mapping, Sequence

from ncja.formula import Atom, Bin, Formula, Neg, Unit, atoms

__all__ = [
    "classical_value", "classically_valid", "erase_to_classical",
    "sugihara_value", "sugihara_countermodel", "sugihara_consistent_model",
]


# ---------------------------------------------------------------- two-valued

def classical_value(f: Formula, v: Mapping[str, bool]) -> bool:
    match f:
        case Atom(name):
            return v[name]
        case Unit(kind):
            return kind in ("one", "top")
        case Neg(body):
            return not classical_value(body, v)
        case Bin(op, left, right):
            a = classical_value(left, v)
            b = classical_value(right, v)
            if op in ("and", "tensor", "with", "lprod"):
                return a and b
            if op in ("or", "par", "plus"):
                return a or b
            if op in ("imp", "lolli", "addimp", "lunder"):
                return (not a) or b
            if op == "lover":  # B / A
                return a or not b
    raise TypeError(f"not a formula: {f!r}")


def classically_valid(left: Sequence[Formula], right: Sequence[Formula]) -> bool:
    """Truth-table validity of the sequent: every model of `left` satisfies some of `right`."""
    names = sorted(set().union(*(atoms(f) for f in (*left, *right))) or set())
    for values in product((False, True), repeat=len(names)):
        v = dict(zip(names, values))
        if all(classical_value(f, v) for f in left) and not any(classical_value(f, v) for f in right):
            return False
    return True


_ERASE = {"tensor": "and", "with": "and", "plus": "or", "par": "or", "lolli": "imp", "addimp": "imp"}


def erase_to_classical(f: Formula) -> Formula:
    """Map a linear formula to its classical shadow (units map to top/bot)."""
    match f:
        case Unit(kind):
            return Unit("top" if kind in ("one", "top") else "bot")
        case Neg(body):
            return Neg(erase_to_classical(body))
        case Bin(op, left, right):
            return Bin(_ERASE.get(op, op), erase_to_classical(left), erase_to_classical(right))
    return f


# ---------------------------------------------------------------- Sugihara

def _imp(a: int, b: int) -> int:
    return max(-a, b) if a <= b else min(-a, b)


def _fuse(a: int, b: int) -> int:
    return -_imp(a, -b)


def sugihara_value(f: Formula, v: Mapping[str, int], k: int) -> int:
    match f:
        case Atom(name):
            return v[name]
        case Unit(kind):
            return {"one": 1, "bot": -1, "top": k, "zero": -k}[kind]
        case Neg(body):
            return -sugihara_value(body, v, k)
        case Bin(op, left, right):
            a = sugihara_value(left, v, k)
            b = sugihara_value(right, v, k)
            if op == "with":
                return min(a, b)
            if op == "plus":
                return max(a, b)
            if op == "lolli":
                return _imp(a, b)
            if op == "addimp":
                return max(-a, b)
            if op == "tensor":
                return _fuse(a, b)
            if op == "par":
                return _imp(-a, b)
    raise ValueError(f"no Sugihara interpretation for {f!r}")


def _valuations(names: Sequence[str], k: int):
    values = [x for x in range(-k, k + 1) if x != 0]
    for combo in product(values, repeat=len(names)):
        yield dict(zip(names, combo))


def _fusion(values: Iterable[int]) -> int:
    return reduce(_fuse, values, 1)


def sugihara_countermodel(left: Sequence[Formula], right: Sequence[Formula],
                          sizes: Sequence[int] = (1, 2, 3)) -> tuple[int, dict] | None:
    """A valuation in some S_2k falsifying ``left |- right``, or None.

    The sequent is read as ``fusion(left) -> par(right)`` (an empty right side
    is the constant f, an empty left side the constant t).
    """
    names = sorted(set().union(*(atoms(f) for f in (*left, *right))) or set())
    for k in sizes:
        for v in _valuations(names, k):
            lhs = _fusion(sugihara_value(f, v, k) for f in left)
            rhs = -1
            if right:
                vals = [sugihara_value(f, v, k) for f in right]
                rhs = reduce(lambda a, b: _imp(-a, b), vals[1:], vals[0])
            if lhs > rhs:
                return k, v
    return None


def sugihara_consistent_model(j: Sequence[Formula], sizes: Sequence[int] = (1, 2, 3)) -> tuple[int, dict] | None:
    """A valuation making the fusion of `j` designated, witnessing consistency."""
    return sugihara_countermodel(j, (), sizes)
