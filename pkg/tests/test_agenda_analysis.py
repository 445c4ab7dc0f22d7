import pytest

from ncja.analysis import (CLASSES, SafetyMismatch, check_property, check_safety, enumerate_mis,
                           quota_threshold_safe)
from ncja.check import check
from ncja.fixtures import load_agenda
from ncja.judgment import Agenda, is_complete, is_robustly_consistent


@pytest.fixture
def equivalent_pair():
    """A and A /\\ A: inconsistent pairs are complements only up to equivalence."""
    return Agenda.build("CL", ["A", "A /\\ A"], close=True)


class TestMinimalInconsistent:
    def test_classical_dilemma(self, dilemma_cl):
        report = enumerate_mis(dilemma_cl)
        found = {tuple(sorted(y.to_list())) for y in report.minimal}
        assert ("A", "B", "~(A /\\ B)") in found
        assert ("A", "~A") in found
        assert report.max_size == 3 and report.sizes.count(3) == 1

    def test_proofs_check(self, dilemma_cl):
        report = enumerate_mis(dilemma_cl)
        assert all(check(t, "CL") for t in report.proofs)

    def test_additive_agenda_is_pairwise(self, all_dilemma):
        assert enumerate_mis(all_dilemma).max_size == 2

    def test_two_pair(self, two_pair):
        assert enumerate_mis(two_pair).sizes == [2, 2]

    def test_serialized(self, dilemma_cl):
        data = enumerate_mis(dilemma_cl).to_dict()
        assert data["logic"] == "CL" and data["max_size"] == 3


class TestProperties:
    def test_median_property(self, dilemma_cl, all_dilemma, two_pair):
        v = check_property(dilemma_cl, "MP")
        assert not v.holds and len(v.witness) == 3
        assert check_property(all_dilemma, "MP").holds
        assert check_property(two_pair, "mp").holds

    def test_k_median_property(self, dilemma_cl):
        assert not check_property(dilemma_cl, "kMP", k=2).holds
        assert check_property(dilemma_cl, "kMP", k=3).holds
        with pytest.raises(ValueError):
            check_property(dilemma_cl, "kMP")

    def test_simple_median_property(self, dilemma_cl, two_pair, equivalent_pair):
        assert not check_property(dilemma_cl, "SMP").holds
        assert check_property(two_pair, "SMP").holds
        assert check_property(equivalent_pair, "SMP").holds

    def test_syntactic_simple_median_property(self, dilemma_cl, two_pair, equivalent_pair):
        assert not check_property(dilemma_cl, "SSMP").holds
        assert check_property(two_pair, "SSMP").holds
        v = check_property(equivalent_pair, "SSMP")
        assert not v.holds and len(v.witness) == 2

    def test_additive_dilemma_fails_simple_properties(self, all_dilemma):
        assert not check_property(all_dilemma, "SMP").holds
        assert not check_property(all_dilemma, "SSMP").holds

    def test_unknown_property(self, dilemma_cl):
        with pytest.raises(ValueError):
            check_property(dilemma_cl, "XMP")


class TestQuotaThreshold:
    @pytest.mark.parametrize("m, n, k, safe", [
        (2, 3, 3, False), (3, 3, 3, True), (2, 3, 2, True), (1, 3, 2, False),
        (4, 5, 3, True), (3, 5, 3, False), (0, 3, 0, True),
    ])
    def test_formula(self, m, n, k, safe):
        assert quota_threshold_safe(m, n, k) is safe


class TestSafety:
    def test_classical_dilemma_unsafe(self, dilemma_cl):
        r = check_safety(dilemma_cl)
        assert not r.safe
        assert r.outcome.to_list() == ["A", "B", "~(A /\\ B)"]
        assert r.characterization == {"property": "MP", "holds": False, "predicts_safe": False, "agrees": True}
        assert check(r.proof, "CL")
        assert all(is_robustly_consistent(v) for v in r.witness.voters)

    def test_additive_safe(self, all_dilemma):
        r = check_safety(all_dilemma)
        assert r.safe and r.profiles_checked == 2024 and r.violations == 0
        assert "2024 of 2024" in r.summary()

    def test_weakening_flip(self, all_dilemma):
        r = check_safety(all_dilemma, "ALLW")
        assert not r.safe and r.characterization is None
        assert r.proof.rules_used()["WL"] >= 1
        assert check_safety(all_dilemma, "ALLC").safe

    @pytest.mark.parametrize("m, safe", [(0, False), (1, False), (2, False), (3, True), (4, True)])
    def test_quota(self, dilemma_cl, m, safe):
        assert check_safety(dilemma_cl, axiom_class="quota", m=m).safe is safe

    def test_quota_needs_m(self, dilemma_cl):
        with pytest.raises(ValueError):
            check_safety(dilemma_cl, axiom_class="quota")

    def test_even_voters_rejected(self, dilemma_cl):
        with pytest.raises(ValueError):
            check_safety(dilemma_cl, n=4)

    def test_five_voters(self, dilemma_cl, all_dilemma):
        assert not check_safety(dilemma_cl, n=5).safe
        assert check_safety(all_dilemma, n=5).safe

    def test_jobs_do_not_change_the_answer(self, dilemma_cl):
        one = check_safety(dilemma_cl, jobs=1).to_dict()
        two = check_safety(dilemma_cl, jobs=2).to_dict()
        assert one == two

    def test_plain_outcome_test(self, dilemma_cl):
        r = check_safety(dilemma_cl, outcome_test="consistent")
        assert not r.safe and r.characterization is None
        with pytest.raises(ValueError):
            check_safety(dilemma_cl, outcome_test="sometimes")

    @pytest.mark.parametrize("cls", ["wr-a-n-i", "wr-a-n"])
    def test_inversion_witness(self, dilemma_cl, cls):
        r = check_safety(dilemma_cl, axiom_class=cls)
        assert not r.safe and "inversion" in r.note
        assert all(is_complete(v) for v in r.witness.voters)

    def test_constant_witness(self, dilemma_cl):
        r = check_safety(dilemma_cl, axiom_class="wr-a-i")
        assert not r.safe and "constant" in r.note
        assert is_complete(r.outcome) and not is_robustly_consistent(r.outcome)

    @pytest.mark.parametrize("cls", ["wr-a-n-i", "wr-a-n", "wr-a-i"])
    def test_independent_pairs_are_safe_for_every_class(self, two_pair, cls):
        assert check_safety(two_pair, axiom_class=cls).safe

    def test_classes(self):
        assert CLASSES == ("maj", "quota", "wr-a-n-i", "wr-a-n", "wr-a-i")
        with pytest.raises(ValueError):
            check_safety(load_agenda("dilemma-cl"), axiom_class="plurality")

    def test_mismatch_is_an_assertion(self):
        assert issubclass(SafetyMismatch, AssertionError)


class TestRelevant:
    def test_r_dilemma_via_linear_witness(self):
        agenda = load_agenda("dilemma-r")
        r = check_safety(agenda, replay_from_mall=True)
        assert not r.safe and "MALL" in r.note
        assert r.outcome.spec.id == "R" and r.characterization["agrees"]

    def test_r_independent_pairs(self):
        assert check_safety(Agenda.build("R", ["A", "B"], close=True)).safe

    @pytest.mark.parametrize("name", ["ar-dilemma", "ar-distributive"])
    def test_additive_relevant_safe(self, name):
        r = check_safety(load_agenda(name))
        assert r.safe and r.characterization["agrees"]
