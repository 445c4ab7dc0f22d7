from math import prod

import pytest

from ncja.fixtures import load_agenda, load_profile
from ncja.judgment import (CONSISTENT, ROBUST, ROBUST_COMPLETE, Agenda, JudgmentStructure, Profile,
                           RationalityClass, formulas_consistent, is_complement_free, is_complete,
                           is_consistent, is_deductively_closed, is_robustly_consistent, substructures)
from ncja.formula import parse


class TestAgenda:
    def test_closure_required(self):
        with pytest.raises(ValueError, match="closed under complements"):
            Agenda.build("CL", ["A", "~A", "B"])

    def test_close_adds_complements(self, two_pair):
        assert [f.text for f in two_pair] == ["A", "B", "~A", "~B"]

    def test_units_rejected_unless_allowed(self):
        with pytest.raises(ValueError, match="unit"):
            Agenda.build("MALL", ["C -o 1"], close=True)
        agenda = Agenda.build("MALL", ["C -o 1"], close=True, allow_units=True)
        assert agenda.allow_units

    def test_defined_negation_is_not_a_unit(self, lambek_agenda):
        assert any(f.text == "(A \\ bot)" for f in lambek_agenda)

    def test_theorems_and_contradictions_rejected(self):
        with pytest.raises(ValueError, match="theorem"):
            Agenda.build("CL", ["A \\/ ~A"], close=True)
        with pytest.raises(ValueError, match="contradiction"):
            Agenda.build("CL", ["A /\\ ~A"], close=True)

    def test_set_agendas_cannot_repeat(self):
        with pytest.raises(ValueError):
            Agenda.build("CL", ["A", "A", "~A"])

    def test_multiset_agendas_can_repeat(self):
        agenda = Agenda.from_dict({"logic": "MALL", "issues": [{"formula": "A", "multiplicity": 2}, "~A", "~A"]})
        assert len(agenda) == 4

    def test_structure_mismatch(self):
        with pytest.raises(ValueError):
            Agenda.from_dict({"logic": "CL", "structure": "list", "issues": ["A", "~A"]})

    def test_round_trip(self, dilemma_cl):
        assert Agenda.from_dict(dilemma_cl.to_dict()) == dilemma_cl

    def test_retype_translates_connectives(self, dilemma_cl):
        additive = dilemma_cl.retype("ALL")
        assert "~(A & B)" in [f.text for f in additive]
        assert dilemma_cl.retype("CL") is dilemma_cl

    def test_complement_index(self, dilemma_cl):
        i = [f.text for f in dilemma_cl].index("A")
        (j,) = dilemma_cl.complement_index(i)
        assert dilemma_cl.issues[j].text == "~A"


class TestStructures:
    def test_list_structures_follow_agenda_order(self, lambek_agenda):
        j = lambek_agenda.structure(["A", "B"])
        assert j.to_list() == ["A", "B"]
        with pytest.raises(ValueError, match="sublist"):
            lambek_agenda.structure(["B", "A"])

    def test_mask_round_trip(self, dilemma_cl):
        j = dilemma_cl.structure(["A", "B", "A /\\ B"])
        assert JudgmentStructure.from_mask(dilemma_cl, j.mask) == j

    def test_rendering(self, dilemma_cl, lambek_agenda):
        assert str(dilemma_cl.structure(["A"])) == "{A}"
        assert str(lambek_agenda.structure(["A"])) == "[A]"

    def test_substructure_count_set(self, dilemma_cl):
        assert sum(1 for _ in substructures(dilemma_cl.full())) == 2 ** len(dilemma_cl)

    @pytest.mark.parametrize("mults", [(1, 1), (2, 1), (3, 2), (2, 2, 1)])
    def test_substructure_count_multiset(self, mults):
        atoms = ["A", "B", "C"][:len(mults)]
        items = []
        for a, m in zip(atoms, mults):
            items += [{"formula": a, "multiplicity": m}, {"formula": f"~{a}", "multiplicity": 1}]
        agenda = Agenda.from_dict({"logic": "MALL", "issues": items})
        j = agenda.structure([a for a, m in zip(atoms, mults) for _ in range(m)])
        assert sum(1 for _ in substructures(j)) == prod(m + 1 for m in mults)

    def test_substructures_smallest_first(self, dilemma_cl):
        sizes = [len(s) for s in substructures(dilemma_cl.full())]
        assert sizes == sorted(sizes)


class TestPredicates:
    def test_dilemma_outcome(self, dilemma_cl):
        j = dilemma_cl.structure(["A", "B", "~(A /\\ B)"])
        assert not is_consistent(j)
        assert is_complement_free(j) and is_complete(j)

    def test_consistent_but_not_robust_in_lambek(self):
        agenda = load_agenda("lambek-incomplete")
        j = agenda.structure(["A", "A \\ bot", "C"])
        assert is_consistent(j) and not is_robustly_consistent(j)

    def test_bare_contexts(self):
        fs = [parse("A"), parse("A \\ bot"), parse("C")]
        assert formulas_consistent(fs, "L") and not formulas_consistent(fs, "L", robust=True)

    @pytest.mark.parametrize("name", ["dilemma-cl", "dilemma-il", "all-dilemma"])
    def test_robust_equals_consistent_with_weakening(self, name):
        agenda = load_agenda(name)
        if not agenda.spec.weakening:
            agenda = agenda.retype("ALLW")
        for j in substructures(agenda.full()):
            assert is_consistent(j) == is_robustly_consistent(j)

    @pytest.mark.parametrize("name", ["dilemma-cl", "dilemma-il", "dilemma-mall", "all-dilemma", "ar-dilemma"])
    def test_robust_implies_complement_free(self, name):
        agenda = load_agenda(name)
        for j in ROBUST.members(agenda):
            assert is_complement_free(j)

    def test_deductive_closure(self, dilemma_cl):
        assert is_deductively_closed(dilemma_cl.structure(["A", "B", "A /\\ B"]))
        assert not is_deductively_closed(dilemma_cl.structure(["A", "B"]))


class TestRationality:
    def test_presets(self):
        assert CONSISTENT.consistent and not CONSISTENT.robustly_consistent
        assert ROBUST_COMPLETE.complete
        assert RationalityClass(consistent=False).consistent  # robust implies consistent

    def test_members(self, two_pair):
        members = ROBUST_COMPLETE.members(two_pair)
        assert len(members) == 4 and all(is_complete(j) for j in members)
        assert len(ROBUST.members(two_pair)) == 9

    def test_violations(self, dilemma_cl):
        j = dilemma_cl.structure(["A", "~A"])
        assert "consistent" in ROBUST.violations(j)
        assert ROBUST_COMPLETE.violations(dilemma_cl.structure(["A"])) == ["complete"]


class TestProfile:
    def test_dilemma_profile(self, dilemma_profile):
        assert dilemma_profile.n == 3
        tallies = dict(zip((f.text for f in dilemma_profile.agenda), dilemma_profile.tallies()))
        assert tallies["A"] == 2 and tallies["B"] == 2 and tallies["~(A /\\ B)"] == 2

    def test_odd_voters(self, dilemma_cl):
        with pytest.raises(ValueError, match="odd"):
            Profile.build(dilemma_cl, [["A"], ["B"]])

    def test_rationality_enforced(self, dilemma_cl):
        with pytest.raises(ValueError, match="voter 1"):
            Profile.build(dilemma_cl, [["A", "~A"], ["A"], ["B"]])
        Profile.build(dilemma_cl, [["A", "~A"], ["A"], ["B"]], rationality=None)

    def test_lambek_profile_needs_consistent_class(self):
        with pytest.raises(ValueError):
            load_profile("lambek-incomplete", rationality="robust")
        assert load_profile("lambek-incomplete").n == 3

    def test_supporters(self, dilemma_profile):
        i = [f.text for f in dilemma_profile.agenda].index("A")
        assert dilemma_profile.supporters(i) == frozenset({0, 1})

    def test_round_trip(self, dilemma_profile):
        assert Profile.from_dict(dilemma_profile.to_dict()) == dilemma_profile
