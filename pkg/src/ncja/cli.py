"""Command-line frontend: ``ncja <command> ...``.

Exit codes (shared by every command):
  0   proved / consistent / property holds / safe / recipe passed
  1   refuted / inconsistent / property fails / unsafe / recipe failed
  2   unknown: a search bound was hit before a verdict (bounds are reported)
  64  malformed input (bad formula, unknown logic, missing file, bad flag)
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ncja.aggregation import AggregationRule, EnumerationBoundError, aggregate, parse_rule
from ncja.analysis import CLASSES, check_property, check_safety, enumerate_mis
from ncja.check import check
from ncja.fixtures import load_agenda, load_profile
from ncja.formula import FragmentError, ParseError
from ncja.judgment import RATIONALITY, UndecidedError, formulas_consistent, is_consistent
from ncja.logics import LOGICS, get_logic
from ncja.prover import BUDGET_ENV, SearchBudget, Status, prove
from ncja.recipes import RECIPES, run_recipe
from ncja.sequent import parse_context, parse_sequent

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> SearchBudget:
    if getattr(args, "budget", None) is None:
        return SearchBudget.default()
    if args.budget <= 0:
        raise UsageError("--budget must be positive")
    return SearchBudget(max_nodes=args.budget)


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _unknown(args, err: UndecidedError) -> int:
    data = {"verdict": "unknown", "reason": str(err), "bounds": err.result.bounds}
    _emit(args, data, f"unknown: {err}\nbounds: {json.dumps(err.result.bounds)}")
    return EXIT_UNKNOWN


# ---------------------------------------------------------------- commands

def cmd_prove(args) -> int:
    spec = get_logic(args.logic)
    s = parse_sequent(args.sequent, spec)
    r = prove(s, spec, _budget(args))
    data = {"logic": spec.id, "sequent": str(s), "status": r.status.value, "nodes": r.nodes,
            "reason": r.reason, "bounds": r.bounds,
            "proof": r.tree.to_dict() if r.tree is not None and args.show_tree else None}
    lines = [f"{r.status.value}: {s} in {spec.id}" + (f" ({r.reason})" if r.reason else "")]
    if r.tree is not None:
        lines.append(f"proof checks: {'yes' if check(r.tree, spec) else 'NO'}")
        if args.show_tree:
            lines.append(r.tree.to_text())
    if r.unknown:
        lines.append(f"bounds: {json.dumps(r.bounds)}")
    _emit(args, data, "\n".join(lines))
    return {Status.PROVED: EXIT_OK, Status.REFUTED: EXIT_NO, Status.UNKNOWN: EXIT_UNKNOWN}[r.status]


def _read_formulas(ref: str, spec):
    path = Path(ref)
    if not path.exists():
        return parse_context(ref, spec)
    data = json.loads(path.read_text())
    items = data["formulas"] if isinstance(data, dict) else data
    return [f for item in items for f in parse_context(item, spec)]


def cmd_consistent(args) -> int:
    spec = get_logic(args.logic)
    formulas = _read_formulas(args.formulas, spec)
    budget = _budget(args)
    shown = "[{}]" if spec.context == "list" else "{{{}}}"
    data = {"logic": spec.id, "formulas": [f.text for f in formulas]}
    lines = []
    try:
        if args.mode in ("plain", "both"):
            data["consistent"] = formulas_consistent(formulas, spec, budget)
            lines.append(f"consistent: {'yes' if data['consistent'] else 'no'}")
        if args.mode in ("robust", "both"):
            data["robust"] = formulas_consistent(formulas, spec, budget, robust=True)
            lines.append(f"robust: {'yes' if data['robust'] else 'no'}")
    except UndecidedError as err:
        return _unknown(args, err)
    text = f"{shown.format(', '.join(f.text for f in formulas))} in {spec.id}\n" + "; ".join(lines)
    _emit(args, data, text)
    verdict = data["robust"] if args.mode != "plain" else data["consistent"]
    return EXIT_OK if verdict else EXIT_NO


def cmd_agenda_check(args) -> int:
    agenda = load_agenda(args.agenda, args.logic)
    budget = _budget(args)
    prop = args.property.upper().replace("KMP", "kMP")
    if prop == "kMP" and args.k is None:
        raise UsageError("--property kmp needs --k")
    try:
        verdict = check_property(agenda, prop, args.k, budget)
        mis = enumerate_mis(agenda, budget) if args.mis else None
    except UndecidedError as err:
        return _unknown(args, err)
    data = {"logic": agenda.spec.id, "issues": [f.text for f in agenda.issues], **verdict.to_dict()}
    name = f"{args.k}MP" if prop == "kMP" else prop
    lines = [f"{name}: {'holds' if verdict.holds else 'fails'} on {agenda.spec.id} agenda"
             f" ({len(agenda)} issues)"]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness}")
    if mis is not None:
        data["mis"] = mis.to_dict()
        lines.append(f"minimal inconsistent structures (largest {mis.max_size}):")
        lines.extend(f"  {y}" for y in mis.minimal)
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if verdict.holds else EXIT_NO


def cmd_aggregate(args) -> int:
    rationality = RATIONALITY[args.voters] if args.voters else None
    profile = load_profile(args.profile, args.individual_logic, rationality)
    if args.rule == "auto":
        rule = AggregationRule("list-majority" if profile.agenda.spec.context == "list" else "majority")
    else:
        rule = parse_rule(args.rule)
    budget = _budget(args)
    result = aggregate(profile, rule, args.collective_logic)
    out = result.collective
    data = result.to_dict()
    try:
        consistent = is_consistent(out, budget)
        robust = formulas_consistent(out.key, out.spec, budget, robust=True) if consistent else False
    except UndecidedError as err:
        return _unknown(args, err)
    if not consistent:
        verdict = f"inconsistent under {out.spec.id}"
    elif not robust:
        verdict = f"consistent but not robustly consistent under {out.spec.id}"
    else:
        verdict = f"consistent under {out.spec.id}"
    data.update(consistent=consistent, robust=robust, verdict=verdict)
    lines = [f"rule: {rule}", "voters:"]
    lines.extend(f"  {i + 1}: {v}" for i, v in enumerate(profile.voters))
    if result.padded is not None:
        lines.append(f"positions: [{', '.join(result.padded)}]")
    lines += [f"outcome: {out}", verdict]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if robust else EXIT_NO


def cmd_safety(args) -> int:
    agenda = load_agenda(args.agenda, args.individual_logic)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    try:
        report = check_safety(agenda, args.collective_logic, args.axiom_class, args.n, m=args.m,
                              complete=args.complete, outcome_test=args.outcome_test, jobs=args.jobs,
                              budget=_budget(args))
    except UndecidedError as err:
        return _unknown(args, err)
    lines = [f"{report.axiom_class} on {report.individual} voters, {report.collective} collective, "
             f"n={report.n}: {report.summary()}"]
    if report.witness is not None:
        lines.append("witness profile:")
        lines.extend(f"  {i + 1}: {v}" for i, v in enumerate(report.witness.voters))
    if report.inconsistent_part is not None:
        lines.append(f"inconsistent part: {report.inconsistent_part}")
    if report.proof is not None and args.show_tree:
        lines.append(report.proof.to_text())
    if report.characterization is not None:
        c = report.characterization
        lines.append(f"{c['property']} {'holds' if c['holds'] else 'fails'}; "
                     f"{'agrees' if c.get('agrees', True) else 'DISAGREES'} with enumeration")
    if report.note:
        lines.append(f"note: {report.note}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.safe else EXIT_NO


def _recipe(name: str) -> tuple[str, str, dict, dict]:
    status, got, want = run_recipe(name)
    return name, status, got, want


def cmd_reproduce(args) -> int:
    if args.all == bool(args.name):
        raise UsageError("give one recipe name or --all")
    if args.name and args.name not in RECIPES:
        raise UsageError(f"unknown recipe {args.name!r}; choose from {', '.join(RECIPES)}")
    if args.budget is not None:
        os.environ[BUDGET_ENV] = str(_budget(args).max_nodes)
    names = list(RECIPES) if args.all else [args.name]
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_recipe, names))
    else:
        results = [_recipe(n) for n in names]
    data, lines = [], []
    for name, status, got, want in results:
        data.append({"name": name, "claim": RECIPES[name].claim, "status": status,
                     "actual": got, "expected": want})
        lines.append(f"{name:<18} {status:<8} {RECIPES[name].claim}")
        if status != "pass":
            lines.append(f"  expected: {json.dumps(want, sort_keys=True)}")
            lines.append(f"  actual:   {json.dumps(got, sort_keys=True)}")
    statuses = {r[1] for r in results}
    _emit(args, {"recipes": data}, "\n".join(lines))
    if "fail" in statuses:
        return EXIT_NO
    return EXIT_UNKNOWN if "unknown" in statuses else EXIT_OK


def cmd_logics(args) -> int:
    rows = [{"id": s.id, "context": s.context, "connectives": sorted(s.connectives),
             "units": sorted(s.units), "engine": s.engine} for s in LOGICS.values()]
    text = "\n".join(f"{r['id']:<6} {r['context']:<9} {r['engine']:<8} {' '.join(r['connectives'])}"
                     for r in rows)
    _emit(args, {"logics": rows}, text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ncja", description="Proof search and judgment aggregation over substructural logics.",
                 epilog=__doc__.split("\n\n", 1)[1], formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    logic_names = ", ".join(LOGICS)

    def common(p, budget=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if budget:
            p.add_argument("--budget", type=int, metavar="N",
                           help=f"max search nodes per query (default ${BUDGET_ENV} or 200000)")

    p = sub.add_parser("prove", help="search for a proof of a sequent")
    p.add_argument("--logic", required=True, help=logic_names)
    p.add_argument("sequent", help='e.g. "A, B |- A * B"')
    p.add_argument("--show-tree", action="store_true", help="print the proof tree")
    common(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("consistent", help="plain and robust consistency of a judgment structure")
    p.add_argument("--logic", required=True, help=logic_names)
    p.add_argument("formulas", help='JSON file (list or {"formulas": [...]}) or text "A, A \\ bot, C"')
    p.add_argument("--mode", choices=["plain", "robust", "both"], default="both")
    common(p)
    p.set_defaults(func=cmd_consistent)

    p = sub.add_parser("agenda-check", help="median properties of an agenda")
    p.add_argument("agenda", help="agenda JSON file or bundled agenda name")
    p.add_argument("--property", choices=["mp", "kmp", "smp", "ssmp"], default="mp")
    p.add_argument("--k", type=int)
    p.add_argument("--logic", help="override the agenda's logic")
    p.add_argument("--mis", action="store_true", help="also list the minimal inconsistent structures")
    common(p)
    p.set_defaults(func=cmd_agenda_check)

    p = sub.add_parser("aggregate", help="aggregate a profile and test the outcome")
    p.add_argument("profile", help="profile JSON file or bundled profile name")
    p.add_argument("--rule", default="auto",
                   help="majority, quota:M, list-majority, custom:h0,..,hn, inversion, constant:FILE "
                        "(default: majority, or list-majority for list agendas)")
    p.add_argument("--individual-logic", help="override the profile's logic")
    p.add_argument("--collective-logic", help="logic of the outcome (default: individual logic)")
    p.add_argument("--voters", choices=sorted(RATIONALITY), help="rationality required of the voters")
    common(p)
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("safety", help="exhaustive safety check of an agenda for a class of rules")
    p.add_argument("agenda", help="agenda JSON file or bundled agenda name")
    p.add_argument("--class", dest="axiom_class", choices=CLASSES, default="maj")
    p.add_argument("--n", type=int, default=3, help="number of voters (odd, default 3)")
    p.add_argument("--m", type=int, help="quota threshold for --class quota")
    p.add_argument("--individual-logic", help="override the agenda's logic")
    p.add_argument("--collective-logic", help="logic of the outcome (default: individual logic)")
    p.add_argument("--complete", action="store_true", help="voters must be complete")
    p.add_argument("--outcome-test", choices=["robust", "consistent"], default="robust")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for outcome checks")
    p.add_argument("--show-tree", action="store_true", help="print the witness inconsistency proof")
    common(p)
    p.set_defaults(func=cmd_safety)

    p = sub.add_parser("reproduce", help="run bundled recipes against their expected outputs")
    p.add_argument("name", nargs="?", help=", ".join(RECIPES))
    p.add_argument("--all", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="run recipes in parallel")
    common(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("logics", help="list the supported logics")
    common(p, budget=False)
    p.set_defaults(func=cmd_logics)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as stop:  # --help, or a usage error already reported
        return stop.code if isinstance(stop.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError, FragmentError, EnumerationBoundError, FileNotFoundError,
            json.JSONDecodeError, KeyError, ValueError) as err:
        print(f"ncja {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
