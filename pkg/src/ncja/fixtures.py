"""Loading agendas and profiles from JSON files or the bundled fixtures.

A reference is either a path to a JSON file or the name of a bundled
fixture (``dilemma-cl``, ``all-dilemma``, ...).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ncja.judgment import RATIONALITY, ROBUST, Agenda, Profile, RationalityClass
from ncja.logics import get_logic

__all__ = ["load_agenda", "load_profile", "bundled_names", "read_json"]


def _bundled(kind: str, name: str):
    return resources.files("ncja") / "data" / kind / f"{name}.json"


def bundled_names(kind: str) -> list[str]:
    folder = resources.files("ncja") / "data" / kind
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def read_json(ref: str | Path, kind: str) -> dict:
    path = Path(ref)
    if path.exists():
        return json.loads(path.read_text())
    item = _bundled(kind, str(ref))
    if item.is_file():
        return json.loads(item.read_text())
    raise FileNotFoundError(f"no file or bundled {kind[:-1]} named {ref!r}")


def load_agenda(ref: str | Path | dict, logic: str | None = None) -> Agenda:
    """Read an agenda; `logic` overrides the declared logic (same issue text)."""
    data = dict(ref) if isinstance(ref, dict) else read_json(ref, "agendas")
    if logic is not None:
        spec = get_logic(logic)
        data["logic"] = spec.id
        data["structure"] = spec.context
    return Agenda.from_dict(data)


def load_profile(ref: str | Path | dict, logic: str | None = None,
                 rationality: RationalityClass | str | None = None) -> Profile:
    """Read a profile; the file may name its voters' rationality class."""
    data = ref if isinstance(ref, dict) else read_json(ref, "profiles")
    agenda = load_agenda(data["agenda"], logic)
    if rationality is None:
        rationality = data.get("rationality", "robust")
    if isinstance(rationality, str):
        rationality = RATIONALITY[rationality]
    return Profile.build(agenda, data["voters"], rationality or ROBUST)
