import json
from itertools import product

import pytest

from ncja.aggregation import (AXIOMS, AggregationRule, EnumerationBoundError, aggregate, aggregate_list,
                              check_axiom, monotone_h_vectors, outcome_mask, parse_rule)
from ncja.fixtures import load_profile
from ncja.judgment import ROBUST_COMPLETE


class TestRules:
    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_majority_is_the_middle_quota(self, n):
        assert AggregationRule.majority().h_vector(n) == AggregationRule.quota((n + 1) // 2).h_vector(n)

    def test_h_vectors(self):
        assert AggregationRule("inversion").h_vector(3) == (1, 1, 0, 0)
        assert AggregationRule.quota(0).h_vector(3) == (1, 1, 1, 1)
        assert AggregationRule.quota(4).h_vector(3) == (0, 0, 0, 0)
        with pytest.raises(ValueError):
            AggregationRule.quota(5).h_vector(3)
        with pytest.raises(ValueError):
            AggregationRule.custom([0, 1]).h_vector(3)

    def test_monotone_vectors(self):
        vs = monotone_h_vectors(3)
        assert len(vs) == 5 and len(set(vs)) == 5
        assert all(list(v) == sorted(v) for v in vs)
        assert len([v for v in product([0, 1], repeat=4) if list(v) == sorted(v)]) == 5

    @pytest.mark.parametrize("text", ["majority", "quota:2", "list-majority", "custom:0,1,1,0", "inversion"])
    def test_parse_round_trip(self, text):
        assert str(parse_rule(text)) == text

    def test_parse_constant(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps(["A", "B"]))
        assert parse_rule(f"constant:{path}").constant == ("A", "B")

    @pytest.mark.parametrize("bad", ["", "quota", "median", "custom:0,2", "quota:-1"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            parse_rule(bad)

    def test_outcome_mask(self):
        # three voters over two positions: 0b01, 0b11, 0b10
        assert outcome_mask((0, 0, 1, 1), [1, 3, 2], 2) == 0b11
        assert outcome_mask((0, 0, 0, 1), [1, 3, 2], 2) == 0


class TestAggregate:
    def test_discursive_dilemma(self, dilemma_profile):
        out = aggregate(dilemma_profile, AggregationRule.majority())
        assert out.collective.to_list() == ["A", "B", "~(A /\\ B)"]

    def test_cross_logic_outcome(self, dilemma_profile):
        out = aggregate(dilemma_profile, AggregationRule.majority(), "ALL")
        assert out.collective.spec.id == "ALL"
        assert out.collective.to_list() == ["A", "B", "~(A & B)"]

    def test_list_majority(self):
        p = load_profile("dilemma-lambek")
        out = aggregate_list(p)
        assert out.collective.to_list() == ["A", "B", "((A . B) \\ bot)"]

    def test_list_majority_padding(self):
        out = aggregate_list(load_profile("lambek-incomplete"))
        assert out.collective.to_list() == ["A", "(A \\ bot)"]
        assert out.padded == ("A", "(A \\ bot)", "*", "*")

    def test_constant_rule(self, dilemma_profile):
        rule = AggregationRule("constant", constant=("A", "B"))
        assert aggregate(dilemma_profile, rule).collective.to_list() == ["A", "B"]

    def test_tallies_serialized(self, dilemma_profile):
        data = aggregate(dilemma_profile, AggregationRule.majority()).to_dict()
        assert data["tallies"]["A"] == 2 and data["rule"] == "majority"


class TestAxioms:
    @pytest.mark.parametrize("axiom", ["A", "N", "I", "M", "arN"])
    def test_majority_satisfies(self, two_pair, axiom):
        v = check_axiom(AggregationRule.majority(), two_pair, axiom)
        assert v.holds and v.profiles_checked > 0

    def test_inversion_fails_monotonicity(self, two_pair):
        v = check_axiom(AggregationRule("inversion"), two_pair, "M")
        assert not v.holds and v.counterexample is not None

    def test_constant_rule_fails_neutrality_on_some_agenda(self, two_pair):
        rule = AggregationRule("constant", constant=("A", "~B"))
        assert check_axiom(rule, two_pair, "A").holds
        assert not check_axiom(rule, two_pair, "N").holds

    def test_quota_two_is_wr_on_complete_voters(self, two_pair):
        assert check_axiom(AggregationRule.quota(2), two_pair, "WR", rationality=ROBUST_COMPLETE).holds

    def test_majority_not_complete_with_abstaining_voters(self, two_pair):
        assert not check_axiom(AggregationRule.majority(), two_pair, "WR").holds

    def test_only_majority_among_monotone_rules(self, two_pair):
        passing = [h for h in monotone_h_vectors(3)
                   if check_axiom(AggregationRule.custom(h), two_pair, "WR", rationality=ROBUST_COMPLETE).holds]
        assert passing == [AggregationRule.majority().h_vector(3)]

    def test_all_h_functions(self, two_pair):
        passing = {h for h in product([0, 1], repeat=4)
                   if check_axiom(AggregationRule.custom(h), two_pair, "WR", rationality=ROBUST_COMPLETE).holds}
        assert passing == {(0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 1, 0), (1, 1, 0, 0)}
        assert {h for h in passing if list(h) == sorted(h)} == {(0, 0, 1, 1)}

    def test_unknown_axiom(self, two_pair):
        assert set(AXIOMS) == {"A", "N", "I", "M", "WR", "arN"}
        with pytest.raises(ValueError):
            check_axiom(AggregationRule.majority(), two_pair, "P")

    def test_enumeration_bound(self, dilemma_cl):
        with pytest.raises(EnumerationBoundError):
            check_axiom(AggregationRule.majority(), dilemma_cl, "A", n=5, bound=1000)
