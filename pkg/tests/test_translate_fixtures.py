import json

import pytest

from ncja.fixtures import bundled_names, load_agenda, load_profile, read_json
from ncja.formula import FragmentError, parse
from ncja.logics import LOGICS
from ncja.translate import translate


class TestTranslate:
    @pytest.mark.parametrize("text, target, expected", [
        ("~(A /\\ B)", "ALL", "~(A & B)"),
        ("A \\/ B", "MLL", "(A | B)"),
        ("A -> B", "MALL", "(A ~> B)"),
        ("A & B", "CL", "(A /\\ B)"),
        ("~A", "IL", "(A -> bot)"),
    ])
    def test_render(self, text, target, expected):
        source = LOGICS["MALL"] if "&" in text else LOGICS["CL"]
        assert translate(parse(text), source, LOGICS[target]).text == expected

    def test_defined_negation_back_to_primitive(self):
        f = parse("~A", LOGICS["IL"])
        assert translate(f, LOGICS["IL"], LOGICS["CL"]).text == "~A"

    def test_no_counterpart(self):
        with pytest.raises(FragmentError):
            translate(parse("A -> B"), LOGICS["CL"], LOGICS["AR"])


class TestFixtures:
    def test_bundled(self):
        assert "dilemma-cl" in bundled_names("agendas")
        assert "dilemma-cl" in bundled_names("profiles")

    def test_every_bundled_agenda_loads(self):
        for name in bundled_names("agendas"):
            assert len(load_agenda(name)) >= 4

    def test_every_bundled_profile_loads(self):
        for name in bundled_names("profiles"):
            assert load_profile(name).n == 3

    def test_path_beats_name(self, tmp_path):
        path = tmp_path / "agenda.json"
        path.write_text(json.dumps({"logic": "CL", "issues": ["A", "~A"]}))
        assert len(load_agenda(str(path))) == 2

    def test_logic_override(self):
        assert load_agenda("dilemma-mall", "MLL").spec.id == "MLL"

    def test_missing(self):
        with pytest.raises(FileNotFoundError):
            read_json("no-such-agenda", "agendas")
