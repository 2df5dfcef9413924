"""Acceptance criteria, one test per criterion.

Each test prints a single pass line once its criterion holds at the
stated tolerance (all tolerances are exact).  Run with ``pytest -v
tests/test_acceptance.py`` or ``-s`` to see the lines.
"""
import random
from itertools import chain, combinations

import pytest

from bigstep import extensions as ext
from bigstep.extensions import (
    INFINITY,
    NO_JUDGMENT,
    STUCK_TRACE,
    WRONG,
    FinTrace,
    InfTrace,
    Ok,
    divergence_certificate_check,
    trace_forget,
    trace_oracle,
    wrong_oracle,
)
from bigstep.inference import (
    FiniteRule,
    interp_coinductive,
    interp_corules,
    interp_inductive,
    reachable_universe,
    system_from_rules,
)
from bigstep.lam import (
    OMEGA,
    OMEGA_BODY,
    enumerate_terms,
    fool_predicate,
    lambda_semantics,
    lambda_type_predicate,
    parse_expr,
    typed_corpus,
)
from bigstep.lam.corpus import FOOL_TERM
from bigstep.lam.syntax import Nat, Succ, Var
from bigstep.maxelem import MaxElem, maxelem_gis
from bigstep.pet import (
    Converged,
    Diverges,
    OutOfFuel,
    check_pet_invariants,
    run_exhaustive,
    run_first,
    run_history,
    step,
    tree_leq,
)
from bigstep.predicates import (
    Condition,
    audit_progress,
    check_progress_implies_may,
    soundness_may_audit,
    soundness_must_audit,
)
from bigstep.rational import periodic
from bigstep.util import EMPTY_MAP

SEM = lambda_semantics()
FUEL = 200

_DIVERGES_SEEN = []  # (semantics, Diverges outcome), consumed by criterion 11
_AUDITED = []  # (progress dict, may report) pairs, consumed by criterion 11


def _register_diverges(sem, outcomes):
    for o in outcomes:
        if isinstance(o, Diverges):
            _DIVERGES_SEEN.append((sem, o))


@pytest.fixture(scope="module")
def corpus():
    return enumerate_terms(3)


@pytest.fixture(scope="module")
def well_typed():
    return typed_corpus(3)


def test_c01_identity_application_golden_run():
    e = parse_expr("(\\x:nat. x) 3")
    fn, n = e.fn, e.arg
    history, outcome = run_history(SEM, e, 20)
    assert isinstance(outcome, Converged) and outcome.result == n
    assert outcome.steps == 7
    done_fn, done_n = (fn, ("!", fn), ()), (n, ("!", n), ())
    leaf_fn, leaf_n = (fn, "?", ()), (n, "?", ())
    assert [t.skeleton() for t in history] == [
        (e, "?", ()),
        (e, "?", (leaf_fn,)),
        (e, "?", (done_fn,)),
        (e, "?", (done_fn, leaf_n)),
        (e, "?", (done_fn, done_n)),
        (e, "?", (done_fn, done_n, leaf_n)),
        (e, "?", (done_fn, done_n, done_n)),
        (e, ("!", n), (done_fn, done_n, done_n)),
    ]
    for t in history:
        assert check_pet_invariants(t) is None
    print("PASS 1: identity application converges in exactly 7 transitions "
          "with the expected tree sequence")


def test_c02_omega_triple():
    divs = ext.eval_div(SEM, OMEGA, FUEL, exhaustive=True)
    assert divs == frozenset({INFINITY})
    trace = ext.eval_trace(SEM, OMEGA, FUEL)
    assert trace == InfTrace((), (OMEGA, OMEGA_BODY, OMEGA_BODY))
    wrongs = ext.eval_wrong(SEM, OMEGA, FUEL, exhaustive=True)
    assert WRONG not in wrongs
    _register_diverges(SEM, [w for w in wrongs if isinstance(w, Diverges)])
    print("PASS 2: omega diverges (and only diverges), with the rational "
          "trace period [Omega, omega, omega] and never a wrong result")


def test_c03_wrong_goldens():
    assert ext.eval_wrong(SEM, parse_expr("0 0"), FUEL) is WRONG
    assert ext.eval_wrong(SEM, Succ(parse_expr("\\x:rec t. t -> nat. x x")),
                          FUEL) is WRONG
    assert ext.eval_wrong(SEM, Var("free"), FUEL) is WRONG
    print("PASS 3: application of a number, successor of an abstraction and "
          "a free variable all evaluate to wrong")


def test_c04_maxelem_corules():
    L = periodic((), (1, 2))
    gis = maxelem_gis()
    for value, expected in ((2, True), (5, False), (1, False)):
        goal = MaxElem(L, value)
        universe = reachable_universe(gis.combined(), {goal}, 100)
        assert (goal in interp_corules(gis, universe)) is expected
    for value, expected in ((2, True), (5, True)):
        goal = MaxElem(L, value)
        universe = reachable_universe(gis.rules, {goal}, 100)
        assert (goal in interp_coinductive(gis.rules, universe)) is expected
    print("PASS 4: corules derive maxElem(L,2) and reject 5 and 1; plain "
          "coinduction accepts both 2 and 5")


def _base_results(e):
    outs = run_exhaustive(SEM, e, 120)
    assert not any(isinstance(o, OutOfFuel) for o in outs)
    return frozenset(o.result for o in outs if isinstance(o, Converged))


def _ok_projection(values):
    return frozenset(v.value for v in values if isinstance(v, Ok))


def test_c05_conservativity_on_full_depth3_corpus(corpus):
    assert len(corpus) > 5000
    discrepancies = 0
    for e in corpus:
        base = _base_results(e)
        wrongs = ext.eval_wrong(SEM, e, 120, exhaustive=True)
        divs = ext.eval_div(SEM, e, 120, exhaustive=True)
        traces = ext.eval_trace(SEM, e, 120, exhaustive=True)
        totals = ext.eval_total(SEM, e, 120, exhaustive=True)
        forgot = frozenset(
            trace_forget(t) for t in traces if isinstance(t, (FinTrace, InfTrace)))
        for projection in (_ok_projection(wrongs), _ok_projection(divs),
                           _ok_projection(forgot), _ok_projection(totals)):
            if projection != base:
                discrepancies += 1
    assert discrepancies == 0
    print(f"PASS 5: conservativity of all four extensions on {len(corpus)} "
          "closed terms of depth <= 3, zero discrepancies")


def _forget_outcome(t):
    if isinstance(t, (FinTrace, InfTrace)):
        return trace_forget(t)
    if t is STUCK_TRACE:
        return NO_JUDGMENT
    return t


def test_c06_abstraction_square(corpus):
    discrepancies = 0
    for e in corpus:
        traces = ext.eval_trace(SEM, e, 120, exhaustive=True)
        divs = ext.eval_div(SEM, e, 120, exhaustive=True)
        if frozenset(_forget_outcome(t) for t in traces) != divs:
            discrepancies += 1
    assert discrepancies == 0
    print(f"PASS 6: trace-forgetting equals the divergence semantics on "
          f"{len(corpus)} terms, zero discrepancies")


def test_c07_stepper_order_laws(well_typed):
    rng = random.Random(2718)
    histories = [run_history(SEM, e, 120)[0]
                 for e in rng.sample(well_typed, 300)]
    step_pairs = 0
    for history in histories:
        for a, b in zip(history, history[1:]):
            assert tree_leq(a, b) and a.skeleton() != b.skeleton()
            step_pairs += 1
        if step_pairs >= 1000:
            break
    assert step_pairs >= 1000

    reach_pairs = 0
    for history in histories:
        if len(history) < 2:
            continue
        for _ in range(4):
            i = rng.randrange(len(history) - 1)
            j = rng.randrange(i + 1, len(history))
            src, dst = history[i], history[j]
            assert tree_leq(src, dst)
            frontier = [src]
            found = False
            for _ in range(j - i + 1):
                if any(t == dst for t in frontier):
                    found = True
                    break
                frontier = [s for t in frontier for s in step(SEM, t)]
            assert found
            reach_pairs += 1
        if reach_pairs >= 200:
            break
    assert reach_pairs >= 200
    print(f"PASS 7: {step_pairs} step pairs strictly increase the tree order; "
          f"{reach_pairs} ordered pairs re-reached by iterated stepping")


def test_c08_pet_invariants_everywhere(corpus):
    rng = random.Random(515)
    sample = rng.sample(corpus, 1200) + [OMEGA, parse_expr("0 0"), Var("x")]
    for e in sample:
        run_exhaustive(SEM, e, 120, validate=True)
        run_exhaustive(wrong_oracle(SEM), e, 120, validate=True)
        run_exhaustive(trace_oracle(SEM), e, 120, validate=True)

    from bigstep.fj import (
        EnvConfig,
        FJ_OMEGA,
        IMP_TABLE,
        INTEROP_TABLE,
        fj_semantics,
        fj_typed_corpus,
        impfj_semantics,
        impfj_typed_corpus,
        parse_fj_expr,
    )

    fj_sem = fj_semantics(INTEROP_TABLE)
    for config in fj_typed_corpus(INTEROP_TABLE, 3):
        run_exhaustive(fj_sem, config, 200, validate=True)
    run_exhaustive(fj_sem, EnvConfig(EMPTY_MAP, FJ_OMEGA), 120, validate=True)
    imp_sem = impfj_semantics(IMP_TABLE)
    for config in impfj_typed_corpus(IMP_TABLE, 3):
        run_exhaustive(imp_sem, config, 200, validate=True)
    print("PASS 8: structural tree invariants validated on every tree of "
          "every run across both calculi and all extensions")


def test_c09_soundness_audits(well_typed):
    report = soundness_must_audit(SEM, lambda_type_predicate(),
                                  well_typed, FUEL)
    assert report.passed and not report.inconclusive
    assert report.stats["configs"] == len(well_typed)

    dropped = lambda_semantics(drop_succ=True)
    dropped_report = soundness_must_audit(dropped, lambda_type_predicate(),
                                          [Succ(Nat(2))], FUEL)
    assert [v.condition for v in dropped_report.violations] == [
        Condition.EXISTS_PROGRESS]
    assert dropped_report.violations[0].config == Succ(Nat(2))

    fool_report = soundness_must_audit(SEM, fool_predicate(), [FOOL_TERM], FUEL)
    assert [v.condition for v in fool_report.violations] == [
        Condition.FORALL_PROGRESS]
    v = fool_report.violations[0]
    assert v.rule_family == "app" and v.premise_index == 1

    pred = lambda_type_predicate()
    progress = {e: audit_progress(SEM, pred, e, FUEL)
                for e in random.Random(4).sample(well_typed, 250)}
    may = soundness_may_audit(SEM, pred, list(progress), FUEL)
    _AUDITED.append((progress, may))
    fool = fool_predicate()
    _AUDITED.append((
        {FOOL_TERM: audit_progress(SEM, fool, FOOL_TERM, FUEL)},
        soundness_may_audit(SEM, fool, [FOOL_TERM], FUEL)))
    print(f"PASS 9: zero violations with strong preservation on "
          f"{len(well_typed)} well-typed terms; dropped successor yields a "
          "can-start violation and the fool typing a can-continue violation "
          "at the first application premise")


def test_c10_fj_goldens():
    from bigstep.fj import (
        EnvConfig,
        FJTypeError,
        IMP_TABLE,
        INTEROP_TABLE,
        LamVal,
        ObjVal,
        Var as FJVar,
        class_table_wf,
        fj_indexed_predicate,
        fj_semantics,
        fj_typecheck,
        fj_typed_corpus,
        impfj_indexed_predicate,
        impfj_semantics,
        impfj_typed_corpus,
        parse_fj_expr,
    )

    assert class_table_wf(INTEROP_TABLE) == ()
    sem = fj_semantics(INTEROP_TABLE)
    newc = parse_fj_expr("new C(<I>\\x. x)")
    out = run_first(sem, EnvConfig(EMPTY_MAP, newc), 80)
    assert isinstance(out, Converged)
    assert out.result == ObjVal("C", (LamVal(("x",), FJVar("x")),))
    assert fj_typecheck(INTEROP_TABLE, {}, newc) == "C"
    with pytest.raises(FJTypeError):
        fj_typecheck(INTEROP_TABLE, {}, parse_fj_expr("new C(\\x. x)"))
    assert fj_typecheck(INTEROP_TABLE, {},
                        parse_fj_expr("new D().m(\\x. x)")) == "D"

    imp_sem = impfj_semantics(IMP_TABLE)
    imp_pred = impfj_indexed_predicate(IMP_TABLE)
    imp_corpus = impfj_typed_corpus(IMP_TABLE, 3)
    assert imp_corpus
    imp_report = soundness_must_audit(imp_sem, imp_pred, imp_corpus, 300)
    assert imp_report.passed and not imp_report.inconclusive
    assert imp_report.stats.get("stuck", 0) == 0
    for config in imp_corpus:  # type-assignment extension on every member
        indices = imp_pred.indices_of_config(config)
        assert indices
        for o in run_exhaustive(imp_sem, config, 300):
            if isinstance(o, Converged):
                for index in indices:
                    assert imp_pred.holds_result(o.result, index)

    fj_pred = fj_indexed_predicate(INTEROP_TABLE)
    fj_corpus = fj_typed_corpus(INTEROP_TABLE, 3)
    fj_report = soundness_must_audit(sem, fj_pred, fj_corpus, 300)
    assert fj_report.passed
    progress = {c: audit_progress(sem, fj_pred, c, 300) for c in fj_corpus}
    _AUDITED.append((progress, soundness_may_audit(sem, fj_pred, fj_corpus, 300)))
    imp_progress = {c: audit_progress(imp_sem, imp_pred, c, 300)
                    for c in imp_corpus}
    _AUDITED.append((imp_progress,
                     soundness_may_audit(imp_sem, imp_pred, imp_corpus, 300)))

    _register_diverges(sem, run_exhaustive(
        sem, EnvConfig(EMPTY_MAP, parse_fj_expr(
            "(<K>\\x. x.m(x)).m(\\x. x.m(x))")), 150))
    print(f"PASS 10: functional-variant goldens hold and the imperative "
          f"corpus of {len(imp_corpus)} programs shows zero wrong outcomes "
          "with type-assignment extension preserved")


def test_c11_certificates_and_progress_to_may(well_typed):
    from bigstep.fj import EMPTY_MEMORY, IMP_LOOP_TABLE, MemConfig, impfj_semantics
    from bigstep.fj import parse_fj_expr as pfj
    from bigstep.lam.syntax import Choice

    out = run_first(SEM, OMEGA, FUEL)
    _register_diverges(SEM, [out])
    _register_diverges(SEM, run_exhaustive(SEM, Choice(OMEGA, OMEGA), FUEL))
    loop_sem = impfj_semantics(IMP_LOOP_TABLE)
    _register_diverges(loop_sem, [run_first(
        loop_sem, MemConfig(EMPTY_MEMORY, pfj("new L().loop()")), FUEL)])
    assert INFINITY in ext.eval_total(SEM, OMEGA, FUEL, exhaustive=True)
    assert _DIVERGES_SEEN, "earlier criteria must have produced divergences"
    for sem, d in _DIVERGES_SEEN:
        assert divergence_certificate_check(sem, d.certificate, FUEL).passed
    assert _AUDITED
    for progress, may in _AUDITED:
        assert check_progress_implies_may(progress, may)
    print(f"PASS 11: all {len(_DIVERGES_SEEN)} divergence certificates "
          f"replay against their oracles; progress implies may-progress on "
          f"all {len(_AUDITED)} audited corpora")


def _powerset(xs):
    xs = sorted(xs)
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


def test_c12_fixpoints_match_brute_force():
    rng = random.Random(1234)
    for trial in range(5):
        size = rng.randint(4, 8)
        universe = frozenset(range(size))
        rules = [FiniteRule(frozenset(rng.sample(sorted(universe),
                                                 rng.randint(0, 3))), j)
                 for j in universe for _ in range(rng.randint(0, 2))]
        sys = system_from_rules(rules)
        closed, consistent = [], []
        for subset in _powerset(universe):
            s = frozenset(subset)
            if all(j in s for j in universe
                   for pr in sys.premise_candidates(j) if pr <= s):
                closed.append(s)
            if all(any(pr <= s for pr in sys.premise_candidates(j)) for j in s):
                consistent.append(s)
        least = frozenset(universe).intersection(*closed)
        largest = frozenset().union(*consistent)
        assert interp_inductive(sys, universe) == least
        assert interp_coinductive(sys, universe) == largest
    print("PASS 12: worklist fixpoints agree with 2^|U| brute force on 5 "
          "random systems")
