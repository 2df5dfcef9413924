"""Command-line front end.

Structured documents go to stdout, one JSON object per line; diagnostics
go to stderr.  Exit codes: 0 converged/passed, 2 wrong or stuck, 3
divergence, 4 out of fuel, 5 audit violations, 1 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import extensions as ext
from .inference import interp_coinductive, interp_corules, reachable_universe
from .maxelem import MaxElem, maxelem_gis
from .pet import run, run_history
from .predicates import soundness_may_audit, soundness_must_audit
from .rational import RationalList
from .serialize import outcome_doc, report_doc, tree_doc, value_doc
from .util import EMPTY_MAP, FrozenMap
from .lam import (
    OMEGA,
    LambdaTypeError,
    lambda_semantics,
    lambda_type_predicate,
    fool_predicate,
    parse_expr,
    show_expr,
    show_type,
    typecheck,
    typed_corpus,
)
from .lam.corpus import FOOL_TERM
from .lam.parser import ParseError
from .lam.syntax import Nat, Succ
from .fj import (
    EMPTY_MEMORY,
    EnvConfig,
    FJParseError,
    FJTypeError,
    IMP_LOOP_TABLE,
    IMP_TABLE,
    INTEROP_TABLE,
    MemConfig,
    class_table_wf,
    fj_indexed_predicate,
    fj_semantics,
    fj_typecheck,
    fj_typed_corpus,
    impfj_indexed_predicate,
    impfj_semantics,
    impfj_typecheck,
    impfj_typed_corpus,
    parse_class_table,
    parse_fj_expr,
    show_fj,
)

LAMBDA_FIXTURES = {"omega": OMEGA}

EXIT_OK = 0
EXIT_WRONG = 2
EXIT_DIVERGES = 3
EXIT_TIMEOUT = 4
EXIT_AUDIT = 5
EXIT_USAGE = 1


def _read_input(text: str) -> str:
    if os.path.isfile(text):
        with open(text, "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _load_table(arg: Optional[str], default):
    if arg is None:
        return default
    builtin = {"interop": INTEROP_TABLE, "imp": IMP_TABLE, "imp-loop": IMP_LOOP_TABLE}
    if arg in builtin:
        return builtin[arg]
    table = parse_class_table(_read_input(arg))
    problems = class_table_wf(table)
    if problems:
        for p in problems:
            print(f"class table: {p}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return table


def _parse_config(lang: str, source: str, table):
    if lang == "lambda":
        text = source.strip()
        if text in LAMBDA_FIXTURES:
            return LAMBDA_FIXTURES[text]
        return parse_expr(source)
    expr = parse_fj_expr(source)
    if lang == "fj":
        return EnvConfig(EMPTY_MAP, expr)
    return MemConfig(EMPTY_MEMORY, expr)


def _semantics(lang: str, strategy: str, table):
    if lang == "lambda":
        return lambda_semantics(strategy)
    if lang == "fj":
        return fj_semantics(table)
    return impfj_semantics(table)


_KIND_EXIT = {"ok": EXIT_OK, "wrong": EXIT_WRONG, "stuck": EXIT_WRONG,
              "infinity": EXIT_DIVERGES, "timeout": EXIT_TIMEOUT}


def _exit_for(docs) -> int:
    kinds = {d["kind"] for d in docs}
    for kind in ("wrong", "stuck", "infinity", "timeout"):
        if kind in kinds:
            return _KIND_EXIT[kind]
    return EXIT_OK


def cmd_eval(args) -> int:
    table = _load_table(args.table, INTEROP_TABLE if args.lang == "fj" else IMP_TABLE)
    sem = _semantics(args.lang, args.strategy, table)
    config = _parse_config(args.lang, _read_input(args.input), table)
    mode = args.mode
    if mode == "plain":
        if args.exhaustive:
            outs = run(sem, config, args.fuel, "exhaustive")
            docs = [outcome_doc(sem, o) for o in outs]
        else:
            docs = [outcome_doc(sem, run(sem, config, args.fuel))]
    else:
        evaluators = {"wrong": ext.eval_wrong, "div": ext.eval_div,
                      "trace": ext.eval_trace, "total": ext.eval_total}
        evaluate = evaluators[mode]
        values = (evaluate(sem, config, args.fuel, exhaustive=True)
                  if args.exhaustive else [evaluate(sem, config, args.fuel)])
        certificate = None
        if any(v is ext.INFINITY for v in values):
            witness = run(sem, config, args.fuel)
            if hasattr(witness, "certificate"):
                certificate = witness.certificate
        docs = [value_doc(sem, v, certificate=certificate) for v in values]
    for d in docs:
        _emit(d)
    return _exit_for(docs)


def cmd_step(args) -> int:
    table = _load_table(args.table, INTEROP_TABLE if args.lang == "fj" else IMP_TABLE)
    sem = _semantics(args.lang, "app", table)
    config = _parse_config(args.lang, _read_input(args.input), table)
    history, outcome = run_history(sem, config, args.max_steps)
    for t in history[1:]:  # one document per transition taken
        _emit(tree_doc(sem, t))
    return _exit_for([outcome_doc(sem, outcome)])


def cmd_typecheck(args) -> int:
    table = _load_table(args.table, INTEROP_TABLE if args.lang == "fj" else IMP_TABLE)
    source = _read_input(args.input)
    try:
        if args.lang == "lambda":
            config = _parse_config("lambda", source, table)
            _emit({"type": show_type(typecheck({}, config))})
        elif args.lang == "fj":
            _emit({"type": fj_typecheck(table, {}, parse_fj_expr(source))})
        else:
            _emit({"type": impfj_typecheck(table, {}, FrozenMap(),
                                           parse_fj_expr(source))})
    except (LambdaTypeError, FJTypeError) as err:
        _emit({"error": str(err)})
        return EXIT_WRONG
    return EXIT_OK


def _soundness_setup(args):
    table = _load_table(args.table, INTEROP_TABLE if args.lang == "fj" else IMP_TABLE)
    if args.lang == "lambda":
        if args.fixture == "dropped-succ":
            return (lambda_semantics(drop_succ=True), lambda_type_predicate(),
                    [Succ(Nat(2))], show_expr)
        if args.fixture == "fool":
            return lambda_semantics(), fool_predicate(), [FOOL_TERM], show_expr
        return (lambda_semantics(), lambda_type_predicate(),
                typed_corpus(args.depth), show_expr)
    if args.lang == "fj":
        return (fj_semantics(table), fj_indexed_predicate(table),
                fj_typed_corpus(table, args.depth), show_fj)
    return (impfj_semantics(table), impfj_indexed_predicate(table),
            impfj_typed_corpus(table, args.depth), show_fj)


def cmd_soundness(args) -> int:
    sem, pred, corpus, show = _soundness_setup(args)
    audit = soundness_must_audit if args.flavor == "must" else soundness_may_audit
    report = audit(sem, pred, corpus, args.fuel)
    _emit(report_doc(report, show=show))
    stats = " ".join(f"{k}={v}" for k, v in sorted(report.stats.items()))
    print(f"audited {stats}", file=sys.stderr)
    if report.violations:
        width = max(len(v.condition.value) for v in report.violations)
        for v in report.violations:
            where = "" if v.rule_family is None else \
                f"  [{v.rule_family} premise {v.premise_index}]"
            print(f"  {v.condition.value:<{width}}  {show(v.config)}{where}",
                  file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_AUDIT


def _parse_maxelem_goal(goal: str):
    # list=value with list like 1:2:(1:2)* or 1:2:nil or (1:2)*
    try:
        lst, value = goal.rsplit("=", 1)
        lst = lst.strip()
        period: tuple = ()
        if lst.endswith("*"):
            lst, paren = lst[:-1].rsplit("(", 1)
            period = tuple(int(x) for x in paren.rstrip(")").split(":"))
            lst = lst.rstrip(":")
        elif lst.endswith("nil"):
            lst = lst[: -len("nil")].rstrip(":")
        prefix = tuple(int(x) for x in lst.split(":")) if lst else ()
        return MaxElem(RationalList(prefix, period), int(value.strip()))
    except (ValueError, IndexError) as err:
        raise SystemExit(f"bad goal {goal!r}: {err}")


def cmd_corules(args) -> int:
    goal = _parse_maxelem_goal(args.goal)
    gis = maxelem_gis()
    universe = reachable_universe(gis.combined(), {goal}, cap=args.cap)
    with_corules = goal in interp_corules(gis, universe)
    plain_coinductive = goal in interp_coinductive(gis.rules, universe)
    _emit({
        "goal": repr(goal),
        "universe": len(universe),
        "corules": with_corules,
        "coinductive": plain_coinductive,
    })
    return EXIT_OK if with_corules else EXIT_WRONG


def _add_common(p, fuel_default: int) -> None:
    p.add_argument("--lang", choices=("lambda", "fj", "impfj"), default="lambda")
    p.add_argument("--table", help="class table: file path or builtin name")
    p.add_argument("--fuel", type=int, default=fuel_default)


def main(argv=None) -> int:
    fuel_default = int(os.environ.get("BSM_FUEL", "100"))
    top = argparse.ArgumentParser(
        prog="bsm", description="big-step semantics workbench")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a configuration")
    _add_common(p, fuel_default)
    p.add_argument("--mode", choices=("plain", "wrong", "div", "trace", "total"),
                   default="plain")
    p.add_argument("--strategy", choices=("app", "app-r", "app-late"), default="app")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("input", help="source text or a file path")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("step", help="print the transition sequence")
    _add_common(p, fuel_default)
    p.add_argument("--max-steps", type=int, default=fuel_default)
    p.add_argument("input")
    p.set_defaults(fn=cmd_step)

    p = sub.add_parser("typecheck", help="typecheck an expression")
    _add_common(p, fuel_default)
    p.add_argument("input")
    p.set_defaults(fn=cmd_typecheck)

    p = sub.add_parser("soundness", help="run a soundness audit")
    _add_common(p, fuel_default)
    p.add_argument("--flavor", choices=("must", "may"), default="must")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--fixture", choices=("default", "dropped-succ", "fool"),
                   default="default")
    p.set_defaults(fn=cmd_soundness)

    p = sub.add_parser("corules", help="maxElem corules demo")
    p.add_argument("--demo", choices=("maxelem",), default="maxelem")
    p.add_argument("--goal", required=True,
                   help="e.g. '(1:2)*=2', '1:2:nil=2', '1:2:(1:2)*=2'")
    p.add_argument("--cap", type=int, default=1000)
    p.set_defaults(fn=cmd_corules)

    args = top.parse_args(argv)
    for name in ("fuel", "max_steps", "depth"):
        if getattr(args, name, 1) <= 0:
            print(f"{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.fn(args)
    except (ParseError, FJParseError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
