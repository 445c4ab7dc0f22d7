"""Acceptance criteria, one test each, with their runtime limits.

Every test prints a single ``criterion N: PASS|FAIL (...)`` line straight
to the terminal.  Run just this file with

    pytest tests/test_acceptance.py -v

or as a script (``python3 tests/test_acceptance.py``), which prints the same
lines and exits non-zero if any criterion fails.
"""

from __future__ import annotations

import sys
import time

import pytest

from ncja.aggregation import AggregationRule, aggregate, aggregate_list, check_axiom, monotone_h_vectors
from ncja.analysis import check_property, check_safety, enumerate_mis, quota_threshold_safe
from ncja.check import check
from ncja.enumeration import sequents
from ncja.fixtures import bundled_names, load_agenda, load_profile
from ncja.formula import encode_negation
from ncja.judgment import ROBUST_COMPLETE, Agenda, inconsistency, is_consistent, is_robustly_consistent
from ncja.logics import LOGICS
from ncja.prover import prove
from ncja.semantics import classically_valid, erase_to_classical
from ncja.sequent import Sequent


class Failed(AssertionError):
    pass


def require(cond: bool, message: str) -> None:
    if not cond:
        raise Failed(message)


# ---------------------------------------------------------------- criteria
# Each returns a short detail string, or raises Failed.

def criterion_1() -> str:
    profile = load_profile("dilemma-cl")
    out = aggregate(profile, AggregationRule.majority()).collective
    require(out.to_list() == ["A", "B", "~(A /\\ B)"], f"outcome {out}")
    r = inconsistency(out.formulas, "CL")
    require(r.proved, "CL inconsistency not proved")
    require(check(r.tree, "CL"), "inconsistency proof does not check")
    return f"outcome {out}, proof of {len(list(r.tree.nodes()))} nodes checks"


BATTERY_UNSAFE = {"dilemma-cl": "CL", "dilemma-il": "IL", "dilemma-lambek": "L", "dilemma-mall": "MALL",
                  "dilemma-mll": "MLL", "dilemma-r": "R"}


def criterion_2() -> str:
    verdicts = {}
    for name in bundled_names("agendas"):
        agenda = load_agenda(name)
        mp = check_property(agenda, "MP").holds
        report = check_safety(agenda, replay_from_mall=agenda.spec.id == "R")
        require(report.safe == mp, f"{name}: safety {report.safe} but MP {mp}")
        if report.characterization is not None:
            require(report.characterization["agrees"], f"{name}: characterization disagrees")
        verdicts[name] = (agenda.spec.id, report.safe)
    for name, logic in BATTERY_UNSAFE.items():
        require(verdicts[name] == (logic, False), f"{name} should be unsafe in {logic}")
    additive = [n for n, (logic, _) in verdicts.items() if logic in ("ALL", "AR")]
    require(len(additive) >= 3, "missing additive agendas")
    require(all(verdicts[n][1] for n in additive), "an additive agenda is unsafe")
    return f"{len(verdicts)} agendas, 0 disagreements with MP; unsafe: {', '.join(BATTERY_UNSAFE.values())}"


def criterion_3() -> str:
    total = proved = 0
    for s in sequents("ALL"):
        total += 1
        r = prove(s, "ALL")
        require(not r.unknown, f"undecided {s}")
        if r.proved:
            proved += 1
            require(s.size == 2, f"provable sequent with {s.size} formulas: {s}")
    require(total >= 1000, f"only {total} sequents")
    return f"{total} sequents, {proved} provable, all with exactly 2 formulas"


def criterion_4() -> str:
    agenda = load_agenda("all-dilemma")
    require(sorted(f.text for f in agenda) == sorted(["A", "~A", "B", "~B", "(A & B)", "~(A & B)"]),
            "unexpected agenda")
    require(check_safety(agenda, "ALL").safe, "unsafe under ALL")
    require(check_safety(agenda, "ALLC").safe, "unsafe under ALLC")
    w = check_safety(agenda, "ALLW")
    require(not w.safe, "safe under ALLW")
    require(sorted(w.outcome.to_list()) == sorted(["A", "B", "~(A & B)"]), f"witness outcome {w.outcome}")
    require(check(w.proof, "ALLW"), "ALLW proof does not check")
    require(not check(w.proof, "ALL"), "ALLW proof also checks in ALL")
    rules = set(w.proof.rules_used())
    require(rules == {"WL", "ax", "negL", "withR"}, f"proof rules {sorted(rules)}")
    return f"ALL safe, ALLC safe, ALLW unsafe at {w.outcome} via {sorted(rules)}"


def criterion_5() -> str:
    first = aggregate_list(load_profile("dilemma-lambek")).collective
    require(first.to_list() == ["A", "B", "((A . B) \\ bot)"], f"outcome {first}")
    require(not is_consistent(first), "first outcome consistent")
    profile = load_profile("lambek-incomplete")
    second = aggregate_list(profile).collective
    require(second.to_list() == ["A", "(A \\ bot)"], f"outcome {second}")
    require(not is_consistent(second), "second outcome consistent")
    voter = profile.voters[0]
    require(voter.to_list() == ["A", "(A \\ bot)", "C"], f"voter {voter}")
    require(is_consistent(voter) and not is_robustly_consistent(voter), "voter flags")
    return f"{first} and {second} inconsistent; {voter} consistent, not robust"


def criterion_6() -> str:
    agenda = load_agenda("mall-complete")
    require(len(agenda) == 8, "agenda size")
    require(not check_property(agenda, "MP").holds, "MP should fail")
    r = check_safety(agenda, complete=True, outcome_test="consistent")
    require(r.safe and r.violations == 0, f"{r.violations} inconsistent outcome classes, e.g. {r.outcome}")
    return f"{r.profiles_checked} profiles over {r.voter_structures} complete voters, 0 inconsistent outcomes"


def criterion_7() -> str:
    agenda = load_agenda("dilemma-cl")
    k, n = enumerate_mis(agenda).max_size, 3
    require(k == 3, f"largest minimal inconsistent set {k}")
    safe = {}
    for m in range(n + 2):
        r = check_safety(agenda, axiom_class="quota", m=m)
        require(r.safe == quota_threshold_safe(m, n, k), f"m={m}: enumeration {r.safe}")
        safe[m] = r
    require(safe[3].safe and not safe[2].safe, "threshold")
    require(safe[2].witness is not None and check(safe[2].proof, "CL"), "m=2 witness")
    voters = "; ".join(str(v) for v in safe[2].witness.voters)
    return f"k=3, safe for m in {[m for m in safe if safe[m].safe]}; m=2 witness {voters}"


def criterion_8() -> str:
    agenda = load_agenda("dilemma-cl")
    parts = []
    for logic in ("ALL", "AR"):
        r = check_safety(agenda, logic)
        require(r.safe and r.violations == 0, f"{logic}: {r.violations} violations")
        parts.append(f"{logic}: 0 of {r.profiles_checked}")
    return ", ".join(parts)


def criterion_9() -> str:
    il = LOGICS["IL"]
    cl_count = il_count = mall_count = 0
    for s in sequents("CL"):
        r = prove(s, "CL")
        require(not r.unknown and r.proved == classically_valid(s.left, s.right), f"CL disagrees on {s}")
        cl_count += 1
        if len(s.right) <= 1:
            t = Sequent(tuple(encode_negation(f, il) for f in s.left), tuple(encode_negation(f, il) for f in s.right))
            ri = prove(t, il)
            require(not ri.unknown, f"IL undecided on {t}")
            require(not ri.proved or classically_valid(t.left, t.right), f"IL proves invalid {t}")
            il_count += 1
    for s in sequents("MALL"):
        r = prove(s, "MALL")
        require(not r.unknown, f"MALL undecided on {s}")
        if r.proved:
            erased = ([erase_to_classical(f) for f in s.left], [erase_to_classical(f) for f in s.right])
            require(classically_valid(*erased), f"MALL proves erased-invalid {s}")
        mall_count += 1
    return f"CL {cl_count}, IL {il_count}, MALL {mall_count} sequents, 0 disagreements"


def criterion_10() -> str:
    agenda = Agenda.build("CL", ["A", "B"], close=True)
    majority = AggregationRule.majority().h_vector(3)
    rules = monotone_h_vectors(3)
    passing = [h for h in rules
               if check_axiom(AggregationRule.custom(h), agenda, "WR", rationality=ROBUST_COMPLETE).holds]
    require(passing == [majority], f"WR holds for {passing}")
    return f"{len(rules)} monotone rules checked, WR only for h={majority}"


LIMITS = {1: 1, 2: 60, 3: None, 4: None, 5: None, 6: 300, 7: None, 8: None, 9: None, 10: None}
CRITERIA = {i: globals()[f"criterion_{i}"] for i in LIMITS}


def run_criterion(i: int) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        detail = CRITERIA[i]()
        ok = True
    except Failed as e:
        detail, ok = str(e), False
    elapsed = time.perf_counter() - start
    limit = LIMITS[i]
    if ok and limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; took {elapsed:.2f} s, limit {limit} s"
    timing = f"{elapsed:.2f} s" + (f" < {limit} s" if limit is not None and ok else "")
    return ok, f"criterion {i}: {'PASS' if ok else 'FAIL'} ({timing}) {detail}"


@pytest.mark.parametrize("i", list(CRITERIA))
def test_criterion(i, capsys):
    ok, line = run_criterion(i)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(i) for i in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
