#!/usr/bin/env python3
"""Type-soundness auditing: progress and preservation, operationally.

The auditors explore every branch of every corpus member and check the
observable consequences of the soundness conditions on each rule
instantiation they see.  Deliberately broken fixtures show the two ways
progress can fail, attributed to the exact rule and premise.
"""
from bigstep.lam import (
    fool_predicate,
    lambda_semantics,
    lambda_type_predicate,
    show_expr,
    typed_corpus,
)
from bigstep.lam.corpus import FOOL_TERM
from bigstep.lam.syntax import Nat, Succ
from bigstep.predicates import (
    audit_progress,
    check_progress_implies_may,
    soundness_may_audit,
    soundness_must_audit,
)

sem = lambda_semantics()
pred = lambda_type_predicate()


def describe(report):
    stats = " ".join(f"{k}={v}" for k, v in sorted(report.stats.items()))
    print(f"  stats: {stats}")
    if report.passed:
        print("  no violations")
    for v in report.violations:
        where = "" if v.rule_family is None else \
            f" at rule {v.rule_family}, premise {v.premise_index}"
        print(f"  {v.condition.value}: {show_expr(v.config)}{where}")


print("=" * 64)
print("WELL-TYPED CORPUS, FULL SEMANTICS")
print("=" * 64)
corpus = typed_corpus(3)
print(f"corpus: every well-typed closed term of depth <= 3 ({len(corpus)} terms)")
describe(soundness_must_audit(sem, pred, corpus, fuel=200))

print()
print("=" * 64)
print("DROPPED RULE: no successor rule, succ 2 still well-typed")
print("=" * 64)
dropped = lambda_semantics(drop_succ=True)
describe(soundness_must_audit(dropped, pred, [Succ(Nat(2))], fuel=50))
print("  (a can-start failure: no rule concludes the configuration)")

print()
print("=" * 64)
print("UNSOUND TYPING: pretend 0 0 : nat")
print("=" * 64)
fool = fool_predicate()
describe(soundness_must_audit(sem, fool, [FOOL_TERM], fuel=50))
print("  (a can-continue failure: 0 converges, but no rule for an")
print("   application accepts 0 as the value of its first premise)")

print()
print("=" * 64)
print("MAY-SOUNDNESS AND THE PROGRESS IMPLICATION")
print("=" * 64)
may = soundness_may_audit(sem, pred, corpus, fuel=200)
print(f"may-audit on the clean corpus: passed={may.passed}")
progress = {e: audit_progress(sem, pred, e, 200) for e in corpus[:300]}
may_sub = soundness_may_audit(sem, pred, list(progress), fuel=200)
print("progress passes imply may passes:",
      check_progress_implies_may(progress, may_sub))
