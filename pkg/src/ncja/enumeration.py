"""Exhaustive generators of small formulas and sequents.

Sequents are produced up to renaming of atoms: atoms are renamed in order
of first occurrence, so ``B |- B`` and ``A |- A`` count once.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Iterator, Sequence

from ncja.formula import Atom, Bin, Formula, Neg, Unit, subformulas
from ncja.logics import LogicSpec, get_logic
from ncja.sequent import Sequent

__all__ = ["connective_count", "formulas", "sequents", "canonical"]

ATOM_NAMES = ("A", "B", "C")


def connective_count(f: Formula) -> int:
    return sum(1 for g in subformulas(f) if isinstance(g, (Neg, Bin)))


def formulas(spec: LogicSpec | str, n_atoms: int = 3, max_connectives: int = 2,
             units: bool = False) -> list[Formula]:
    """Every formula of `spec` with at most `max_connectives` connectives."""
    spec = get_logic(spec)
    by_size: list[list[Formula]] = [[Atom(a) for a in ATOM_NAMES[:n_atoms]]]
    if units:
        by_size[0] += [Unit(u) for u in sorted(spec.units)]
    ops = sorted(spec.connectives)
    neg = spec.negation == "primitive"
    for size in range(1, max_connectives + 1):
        level: list[Formula] = []
        if neg:
            level += [Neg(f) for f in by_size[size - 1]]
        for left_size in range(size):
            for op in ops:
                for left in by_size[left_size]:
                    for right in by_size[size - 1 - left_size]:
                        level.append(Bin(op, left, right))
        by_size.append(level)
    return [f for level in by_size for f in level]


def _rename(f: Formula, table: dict[str, str]) -> Formula:
    match f:
        case Atom(name):
            if name not in table:
                table[name] = ATOM_NAMES[len(table)]
            return Atom(table[name])
        case Neg(body):
            return Neg(_rename(body, table))
        case Bin(op, left, right):
            return Bin(op, _rename(left, table), _rename(right, table))
    return f


def canonical(s: Sequent) -> Sequent:
    """Rename atoms by first occurrence, reading left context then right."""
    table: dict[str, str] = {}
    left = tuple(_rename(f, table) for f in s.left)
    right = tuple(_rename(f, table) for f in s.right)
    return Sequent(left, right)


def _bags(pool: Sequence[Formula], weight: dict, size: int, budget: int, start: int = 0):
    """Multisets of `size` pool members (non-decreasing positions) within `budget` connectives."""
    if size == 0:
        yield ()
        return
    for i in range(start, len(pool)):
        w = weight[pool[i]]
        if w > budget:
            break
        for rest in _bags(pool, weight, size - 1, budget - w, i):
            yield (pool[i],) + rest


def sequents(spec: LogicSpec | str, n_atoms: int = 3, max_connectives: int = 2,
             max_formulas: int = 3, max_total_connectives: int = 2,
             pool: Sequence[Formula] | None = None) -> Iterator[Sequent]:
    """Distinct sequents of 1..`max_formulas` formulas up to atom renaming.

    Contexts are multisets (sorted), which is also right for set logics
    where repeats are harmless.  Single-conclusion logics get at most one
    formula on the right.  `max_total_connectives` caps the sequent size.
    """
    spec = get_logic(spec)
    pool = list(pool) if pool is not None else formulas(spec, n_atoms, max_connectives)
    weight = {f: connective_count(f) for f in pool}
    pool.sort(key=lambda f: (weight[f], f))
    seen: set[Sequent] = set()
    max_right = 1 if spec.single_conclusion else max_formulas
    for total in range(1, max_formulas + 1):
        for n_right in range(0, min(total, max_right) + 1):
            for left in _bags(pool, weight, total - n_right, max_total_connectives):
                rest = max_total_connectives - sum(weight[f] for f in left)
                for right in _bags(pool, weight, n_right, rest):
                    s = canonical(Sequent(left, right))
                    s = Sequent(tuple(sorted(s.left)), tuple(sorted(s.right)))
                    if s not in seen:
                        seen.add(s)
                        yield s
