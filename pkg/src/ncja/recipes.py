"""Named end-to-end scenarios with bundled expectations.

Each recipe computes a small dictionary of facts from bundled fixtures and
compares it with ``data/expected/<name>.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from ncja.aggregation import AggregationRule, aggregate
from ncja.analysis import check_property, check_safety, enumerate_mis
from ncja.check import check
from ncja.fixtures import load_agenda, load_profile
from ncja.judgment import (JudgmentStructure, UndecidedError, inconsistency, is_consistent,
                           is_robustly_consistent)

__all__ = ["Recipe", "RECIPES", "run_recipe", "expected"]


@dataclass(frozen=True)
class Recipe:
    name: str
    claim: str
    compute: Callable[[], dict]


def _proof_facts(j: JudgmentStructure) -> dict:
    r = inconsistency(j.formulas, j.spec)
    facts = {"inconsistent": r.proved}
    if r.proved and r.tree is not None:
        facts["proof_checks"] = check(r.tree, j.spec)
        facts["proof_rules"] = sorted(set(r.tree.rules_used()))
    return facts


def _majority_facts(profile_name: str, collective: str | None = None) -> dict:
    p = load_profile(profile_name)
    rule = AggregationRule("list-majority" if p.agenda.spec.context == "list" else "majority")
    out = aggregate(p, rule, collective).collective
    return {"outcome": out.to_list(), **_proof_facts(out)}


def _safety_facts(agenda: str, collective: str | None = None, **kw) -> dict:
    report = check_safety(load_agenda(agenda), collective, **kw)
    facts = {"safe": report.safe}
    if not report.safe:
        facts["witness_outcome"] = report.outcome.to_list()
        facts["witness_proof_checks"] = check(report.proof, report.inconsistent_part.spec)
    if report.characterization is not None:
        facts["agrees_with_property"] = report.characterization["agrees"]
    return facts


def _dilemma(profile: str, agenda: str) -> Callable[[], dict]:
    def compute() -> dict:
        return {
            "majority": _majority_facts(profile),
            "median_property": check_property(load_agenda(agenda), "MP").holds,
            "maj": _safety_facts(agenda),
        }
    return compute


def _lambek_incomplete() -> dict:
    p = load_profile("lambek-incomplete")
    first = p.voters[0]
    return {
        "majority": _majority_facts("lambek-incomplete"),
        "voter_1": {"list": first.to_list(), "consistent": is_consistent(first),
                    "robust": is_robustly_consistent(first)},
        "maj_robust_voters": _safety_facts("lambek-incomplete"),
    }


def _mall_median_fail() -> dict:
    p = load_profile("mall-median-fail")
    return {
        "majority": _majority_facts("mall-median-fail"),
        "voters_consistent": [is_consistent(v) for v in p.voters],
        "voters_robust": [is_robustly_consistent(v) for v in p.voters],
        "median_property": check_property(load_agenda("mall-median-fail"), "MP").holds,
        "maj_robust_voters": _safety_facts("mall-median-fail"),
    }


def _all_safe() -> dict:
    agenda = load_agenda("all-dilemma")
    return {
        "majority": _majority_facts("all-dilemma"),
        "median_property": check_property(agenda, "MP").holds,
        "maj": _safety_facts("all-dilemma"),
    }


def _all_w_unsafe() -> dict:
    return {
        "majority_under_allw": _majority_facts("all-dilemma", "ALLW"),
        "maj": _safety_facts("all-dilemma", "ALLW"),
    }


def _all_c_safe() -> dict:
    return {
        "majority_under_allc": _majority_facts("all-dilemma", "ALLC"),
        "maj": _safety_facts("all-dilemma", "ALLC"),
    }


def _ar_safe() -> dict:
    return {
        "dilemma": {"median_property": check_property(load_agenda("ar-dilemma"), "MP").holds,
                    "maj": _safety_facts("ar-dilemma")},
        "distributive": {"median_property": check_property(load_agenda("ar-distributive"), "MP").holds,
                         "maj": _safety_facts("ar-distributive")},
    }


def _cl_to_all() -> dict:
    return {
        "majority_cl": _majority_facts("dilemma-cl"),
        "majority_all": _majority_facts("dilemma-cl", "ALL"),
        "majority_ar": _majority_facts("dilemma-cl", "AR"),
        "maj_all": _safety_facts("dilemma-cl", "ALL"),
        "maj_ar": _safety_facts("dilemma-cl", "AR"),
    }


def _quota_kmp() -> dict:
    facts = {}
    for m in range(5):
        facts[f"m={m}"] = _safety_facts("dilemma-cl", axiom_class="quota", m=m)
    facts["k"] = enumerate_mis(load_agenda("dilemma-cl")).max_size
    return facts


RECIPES: dict[str, Recipe] = {r.name: r for r in [
    Recipe("dilemma-cl", "majority over classical judgment sets can be inconsistent",
           _dilemma("dilemma-cl", "dilemma-cl")),
    Recipe("dilemma-il", "majority over intuitionistic judgment sets can be inconsistent",
           _dilemma("dilemma-il", "dilemma-il")),
    Recipe("dilemma-lambek", "positional majority over Lambek judgment lists can be inconsistent",
           _dilemma("dilemma-lambek", "dilemma-lambek")),
    Recipe("lambek-incomplete", "without robust consistency, majority fails even on a median agenda",
           _lambek_incomplete),
    Recipe("dilemma-mall", "majority over linear judgment multisets can be inconsistent",
           _dilemma("dilemma-mall", "dilemma-mall")),
    Recipe("mall-median-fail", "in MALL the median property needs robustly consistent voters",
           _mall_median_fail),
    Recipe("all-safe", "additive linear logic is safe for majority", _all_safe),
    Recipe("all-w-unsafe", "adding weakening to additive linear logic breaks safety", _all_w_unsafe),
    Recipe("all-c-safe", "adding contraction to additive linear logic keeps safety", _all_c_safe),
    Recipe("ar-safe", "additive relevant logic is safe for majority", _ar_safe),
    Recipe("cl-to-all", "classical voters, additive collective: majority is safe", _cl_to_all),
    Recipe("quota-kmp", "quota rules are safe exactly above n - n/k", _quota_kmp),
]}


def expected(name: str) -> dict:
    item = resources.files("ncja") / "data" / "expected" / f"{name}.json"
    return json.loads(item.read_text())


def run_recipe(name: str) -> tuple[str, dict, dict]:
    """Returns (status, actual, expected) with status pass, fail or unknown."""
    recipe = RECIPES[name]
    want = expected(name)
    try:
        got = json.loads(json.dumps(recipe.compute()))
    except UndecidedError as e:
        return "unknown", {"error": str(e), "bounds": e.result.bounds}, want
    return ("pass" if got == want else "fail"), got, want
