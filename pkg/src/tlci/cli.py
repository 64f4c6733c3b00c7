"""Command-line interface.

Exit codes: 0 = formula true / campaign passed, 1 = formula false /
campaign failed, 2 = usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, Optional

from .formulas import AutoMod, Formula, subformulas
from .intervals import parse_interval
from .parsing import parse_automata, parse_formula, render_automata, render_formula
from .semantics import Evaluation, condition_violations, repair_conditions
from .words import parse_word, render_word
from . import difftest as dt
from . import rewrite as rw


class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_formula(args: argparse.Namespace) -> Formula:
    autos: Dict[str, object] = {}
    if getattr(args, "automata", None):
        autos = parse_automata(_read(args.automata))
    return parse_formula(args.formula, automata=autos)


def _cmd_eval(args: argparse.Namespace) -> int:
    f = _load_formula(args)
    w = parse_word(_read(args.word))
    ev = Evaluation(w)
    if args.position is not None:
        result = ev.at(f, args.position)
        print("true" if result else "false")
        return 0 if result else 1
    truths = ev.truth(f)
    for i, v in enumerate(truths, start=1):
        print(f"{i}\t{w.ts(i)}\t{'true' if v else 'false'}")
    return 0 if truths[0] else 1


def _cmd_rewrite(args: argparse.Namespace) -> int:
    f = _load_formula(args)
    if args.pass_id == "unilateral":
        out, report = rw.rewrite_to_unilateral(f)
    elif args.pass_id == "elim-unbounded":
        out = rw.eliminate_unbounded_counting(f)
        report = None
    elif args.pass_id in ("mod-k", "rational"):
        from .formulas import Count
        if not isinstance(f, Count):
            raise CliError(f"pass {args.pass_id} expects a top-level counting formula")
        fn = rw.modulo_counter_rewrite if args.pass_id == "mod-k" else rw.rational_rewrite
        out = fn(f.k, f.ivl, f.arg)
        report = None
    elif args.pass_id == "pnueli2":
        from .formulas import Pnueli
        if not isinstance(f, Pnueli) or f.k != 2:
            raise CliError("pass pnueli2 expects a top-level Pn{2} formula")
        if f.ivl.hi is None or f.ivl.lo_closed or f.ivl.hi_closed \
                or f.ivl.hi - f.ivl.lo != 1 or f.ivl.lo.denominator != 1:
            raise CliError("pass pnueli2 expects an open unit interval")
        out = rw.pnueli2_rewrite(int(f.ivl.lo), f.args[0], f.args[1])
        report = None
    elif args.pass_id == "elim-F":
        from .formulas import Eventually
        if not isinstance(f, Eventually):
            raise CliError("pass elim-F expects a top-level Eventually formula")
        out, report = rw.eliminate_eventually(f.ivl, f.arg)
    elif args.pass_id == "elim-C":
        from .formulas import Count
        if not isinstance(f, Count):
            raise CliError("pass elim-C expects a top-level counting formula")
        out, report = rw.eliminate_counting(f.k, f.ivl, f.arg)
    else:
        raise CliError(f"unknown pass {args.pass_id}")

    text, autos = render_formula(out)
    print(text)
    if autos:
        sidecar = render_automata(autos)
        if args.emit_automata:
            with open(args.emit_automata, "w") as fh:
                fh.write(sidecar)
        else:
            print(sidecar, end="")
    if report is not None and report.side_conditions:
        print(f"# side conditions: {len(report.side_conditions)}", file=sys.stderr)
    return 0


def _cmd_difftest(args: argparse.Namespace) -> int:
    cases = dt.standard_cases()
    if args.case:
        if args.case not in cases:
            raise CliError(f"unknown case {args.case}; known: {', '.join(sorted(cases))}")
        selected = [cases[args.case]]
    elif args.pass_id:
        selected = dt.cases_for_pass(args.pass_id)
        if not selected:
            raise CliError(f"no cases for pass {args.pass_id}")
    else:
        selected = list(cases.values())
    failed = False
    for case in selected:
        rep = dt.run_equivalence(case, args.trials, master_seed=args.seed)
        status = "ok" if rep.disagreements == 0 else "FAIL"
        print(f"{case.case_id}: {rep.agreements} agree, {rep.disagreements} "
              f"disagree, {rep.skips} skip [{status}] digest={rep.digest[:12]}")
        if rep.counterexample:
            failed = True
            print(f"  counterexample at position {rep.counterexample_position}:")
            for line in rep.counterexample.splitlines():
                print(f"    {line}")
    return 1 if failed else 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    failed = False
    for bid in (args.bound_id,) if args.bound_id else dt.BOUND_IDS:
        rep = dt.run_bound(bid, args.samples, master_seed=args.seed,
                           a=args.a, k=args.k, automaton=args.automaton)
        status = "ok" if rep.violation is None else "FAIL"
        print(f"{bid}: max {rep.max_observed} <= bound {rep.bound} "
              f"[{status}] digest={rep.digest[:12]}")
        if rep.violation:
            failed = True
            for line in rep.violation.splitlines():
                print(f"    {line}")
    return 1 if failed else 0


def _cmd_check_conditions(args: argparse.Namespace) -> int:
    f = _load_formula(args)
    w = parse_word(_read(args.word))
    _, report = rw.rewrite_to_unilateral(f)
    violations = condition_violations(w, report.side_conditions)
    if not violations:
        print("all anchor conditions hold")
        return 0
    for v in violations:
        print(f"{v.condition} violated at position {v.position}: "
              f"no event at {v.needed_ts}")
    if args.repair:
        fixed = repair_conditions(w, report.side_conditions)
        print("# repaired word:")
        print(render_word(fixed), end="")
    return 1


def _cmd_repro(args: argparse.Namespace) -> int:
    ok = True
    for case in dt.repro_cases():
        ev = Evaluation(case.word)
        nv, xv = ev.at(case.naive, 1), ev.at(case.exact, 1)
        good = nv == case.expect_naive and xv == case.expect_exact
        ok = ok and good
        print(f"{case.repro_id}: naive={nv} exact={xv} "
              f"[{'ok' if good else 'FAIL'}]")
    return 0 if ok else 1


def _cmd_render(args: argparse.Namespace) -> int:
    f = _load_formula(args)
    text, autos = render_formula(f)
    print(text)
    if autos:
        print(render_automata(autos), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tlci",
        description="Counting and automata modalities over non-singular "
                    "intervals: evaluate, rewrite, differential-test.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_formula_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("formula", help="formula text")
        sp.add_argument("--automata", help="automata sidecar file")

    sp = sub.add_parser("eval", help="evaluate a formula on a timed word")
    add_formula_args(sp)
    sp.add_argument("--word", required=True, help="timed word file ('-' for stdin)")
    sp.add_argument("--position", type=int, default=None,
                    help="1-based position (default: print all)")
    sp.set_defaults(fn=_cmd_eval)

    sp = sub.add_parser("rewrite", help="apply a rewrite pass")
    add_formula_args(sp)
    sp.add_argument("--pass", dest="pass_id", required=True,
                    choices=["mod-k", "rational", "pnueli2", "elim-F",
                             "elim-C", "elim-unbounded", "unilateral"])
    sp.add_argument("--emit-automata", help="write automata sidecar here")
    sp.set_defaults(fn=_cmd_rewrite)

    sp = sub.add_parser("difftest", help="run differential campaigns")
    sp.add_argument("--case", help="single case id")
    sp.add_argument("--pass", dest="pass_id", help="all cases of one pass")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=_cmd_difftest)

    sp = sub.add_parser("bounds", help="run marker-count bound campaigns")
    sp.add_argument("--bound", dest="bound_id", choices=list(dt.BOUND_IDS))
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-a", type=int, default=1)
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("--automaton", choices=("consec", "pq"), default="consec")
    sp.set_defaults(fn=_cmd_bounds)

    sp = sub.add_parser("check-conditions",
                        help="check (and optionally repair) anchor conditions")
    add_formula_args(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--repair", action="store_true")
    sp.set_defaults(fn=_cmd_check_conditions)

    sp = sub.add_parser("repro", help="run the frozen counterexamples")
    sp.set_defaults(fn=_cmd_repro)

    sp = sub.add_parser("render", help="parse and pretty-print a formula")
    add_formula_args(sp)
    sp.set_defaults(fn=_cmd_render)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
