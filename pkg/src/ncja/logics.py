"""Registry of the supported logics and their calculus parameters."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["LogicSpec", "LOGICS", "get_logic"]


@dataclass(frozen=True)
class LogicSpec:
    """Calculus identity of a logic.

    ``negation`` says how the complement is written: ``primitive`` (``~A``),
    ``imp-bot`` (``A -> bot``) or ``under-bot`` (``A \\ bot``).
    """

    id: str
    context: str  # set | multiset | list
    structural: frozenset[str]
    right_arity: str  # one | many
    engine: str  # sequent | hilbert
    connectives: frozenset[str]
    units: frozenset[str]
    negation: str = "primitive"

    def __post_init__(self):
        if self.context == "set" and not {"W", "C"} <= self.structural:
            raise ValueError("set contexts need both weakening and contraction")
        if self.context == "list" and "E" in self.structural:
            raise ValueError("list contexts are only for logics without exchange")

    @property
    def weakening(self) -> bool:
        return "W" in self.structural

    @property
    def contraction(self) -> bool:
        return "C" in self.structural

    @property
    def single_conclusion(self) -> bool:
        return self.right_arity == "one"

    def __str__(self) -> str:
        return self.id


_LINEAR_ALL = frozenset({"tensor", "par", "with", "plus", "lolli", "addimp"})
_ADDITIVE = frozenset({"with", "plus", "addimp"})
_MULTIPLICATIVE = frozenset({"tensor", "par", "lolli"})
_ALL_UNITS = frozenset({"one", "bot", "top", "zero"})
_WCE = frozenset("WCE")


def _spec(id, context, structural, arity, connectives, units, negation="primitive", engine="sequent"):
    return LogicSpec(id, context, frozenset(structural), arity, engine,
                     frozenset(connectives), frozenset(units), negation)


LOGICS: dict[str, LogicSpec] = {
    s.id: s
    for s in [
        _spec("CL", "set", _WCE, "many", {"and", "or", "imp"}, {"top", "bot"}),
        _spec("IL", "set", _WCE, "one", {"and", "or", "imp"}, {"bot"}, "imp-bot"),
        _spec("L", "list", (), "one", {"lprod", "lunder", "lover"}, {"bot"}, "under-bot"),
        _spec("MALL", "multiset", "E", "many", _LINEAR_ALL, _ALL_UNITS),
        _spec("MLL", "multiset", "E", "many", _MULTIPLICATIVE, {"one", "bot"}),
        _spec("ALL", "multiset", "E", "many", _ADDITIVE, {"top", "zero"}),
        _spec("IMALL", "multiset", "E", "one", {"tensor", "with", "plus", "lolli"}, _ALL_UNITS),
        _spec("ALLW", "multiset", "EW", "many", _ADDITIVE, {"top", "zero"}),
        _spec("ALLC", "multiset", "EC", "many", _ADDITIVE, {"top", "zero"}),
        _spec("ALLCW", "multiset", "ECW", "many", _ADDITIVE, {"top", "zero"}),
        _spec("R", "multiset", "EC", "many", _LINEAR_ALL, _ALL_UNITS, engine="hilbert"),
        _spec("AR", "multiset", "EC", "many", {"with", "plus"}, (), engine="hilbert"),
    ]
}


def get_logic(name: str | LogicSpec) -> LogicSpec:
    if isinstance(name, LogicSpec):
        return name
    try:
        return LOGICS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown logic {name!r}; choose from {', '.join(LOGICS)}") from None
