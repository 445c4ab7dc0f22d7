"""Rendering formulas of one logic in the language of another.

Used when individuals and the collective reason in different logics over
the same issues, e.g. classical voters whose outcome is assessed in
additive linear logic: ``A /\\ B`` is rendered ``A & B``.
"""

from __future__ import annotations

from ncja.formula import Atom, Bin, FragmentError, Formula, Neg, Unit, _unnegated, negate, validate
from ncja.logics import LogicSpec

__all__ = ["translate"]

# Connectives grouped by the role they play, preferred rendering first.
_FAMILIES = (
    ("and", "with", "tensor", "lprod"),
    ("or", "plus", "par"),
    ("imp", "addimp", "lolli", "lunder"),
)
_FAMILY_OF = {op: fam for fam in _FAMILIES for op in fam}


def _connective(op: str, target: LogicSpec) -> str:
    if op in target.connectives:
        return op
    for alt in _FAMILY_OF.get(op, ()):
        if alt in target.connectives:
            return alt
    raise FragmentError(f"no counterpart of {op!r} in {target.id}")


def translate(f: Formula, source: LogicSpec, target: LogicSpec) -> Formula:
    """Render `f` (a `source` formula) connective by connective in `target`."""
    body = _unnegated(f, source)
    if body is not None:
        return negate(translate(body, source, target), target)
    match f:
        case Atom():
            return f
        case Unit():
            return validate(f, target)
        case Neg(inner):
            return negate(translate(inner, source, target), target)
        case Bin(op, left, right):
            return Bin(_connective(op, target), translate(left, source, target), translate(right, source, target))
    raise TypeError(f"not a formula: {f!r}")
