"""Stepper behaviour: the identity-application golden run, tree order,
active paths, structural invariants, and divergence certificates."""
import random

import pytest

from bigstep.extensions import divergence_certificate_check
from bigstep.lam import OMEGA, OMEGA_BODY, lambda_semantics, parse_expr, typed_corpus
from bigstep.lam.syntax import Choice, Nat, Var
from bigstep.oracle import Activation
from bigstep.pet import (
    UNKNOWN,
    Converged,
    Diverges,
    Known,
    OutOfFuel,
    PartialEvalTree,
    Stuck,
    StuckKind,
    active_path,
    check_pet_invariants,
    initial_tree,
    run,
    run_exhaustive,
    run_first,
    run_history,
    step,
    tree_leq,
)

SEM = lambda_semantics()
IDENTITY_APP = parse_expr("(\\x:nat. x) 3")


def _leaf(cfg):
    return (cfg, "?", ())


def _done(cfg, res, children=()):
    return (cfg, ("!", res), children)


def test_identity_application_golden_sequence():
    fn, n = IDENTITY_APP.fn, IDENTITY_APP.arg
    history, outcome = run_history(SEM, IDENTITY_APP, 20)
    assert isinstance(outcome, Converged)
    assert outcome.result == n
    assert outcome.steps == 7
    done_fn = _done(fn, fn)
    done_n = _done(n, n)
    expected = [
        _leaf(IDENTITY_APP),
        (IDENTITY_APP, "?", (_leaf(fn),)),
        (IDENTITY_APP, "?", (done_fn,)),
        (IDENTITY_APP, "?", (done_fn, _leaf(n))),
        (IDENTITY_APP, "?", (done_fn, done_n)),
        (IDENTITY_APP, "?", (done_fn, done_n, _leaf(n))),
        (IDENTITY_APP, "?", (done_fn, done_n, done_n)),
        _done(IDENTITY_APP, n, (done_fn, done_n, done_n)),
    ]
    assert [t.skeleton() for t in history] == expected


def test_initial_tree_shape():
    t = initial_tree(OMEGA)
    assert t.config == OMEGA and t.res is UNKNOWN and not t.children
    assert initial_tree(Nat(3)).skeleton() == _leaf(Nat(3))


def test_complete_trees_are_irreducible():
    _, outcome = run_history(SEM, Nat(3), 5)
    assert isinstance(outcome, Converged)
    assert step(SEM, outcome.tree) == ()


def test_stuck_kinds():
    out = run_first(SEM, Var("x"), 10)
    assert isinstance(out, Stuck) and out.kind is StuckKind.NO_RULE
    out = run_first(SEM, parse_expr("0 0"), 10)
    assert isinstance(out, Stuck) and out.kind is StuckKind.NO_CONTINUATION
    assert out.info.rule_family == "app" and out.info.premise_index == 1
    assert out.info.result == Nat(0)


def test_omega_diverges_with_certificate():
    out = run_first(SEM, OMEGA, 50)
    assert isinstance(out, Diverges)
    assert out.certificate.witness == ((OMEGA, "app", 3),)
    assert out.certificate.entry == OMEGA
    check = divergence_certificate_check(SEM, out.certificate, 50)
    assert check.passed


def test_exhaustive_choice_results():
    outs = run_exhaustive(SEM, parse_expr("1 (+) 2"), 20)
    results = {o.result for o in outs if isinstance(o, Converged)}
    assert results == {Nat(1), Nat(2)}
    assert all(isinstance(o, Converged) for o in outs)


def test_exhaustive_deduplicates_identical_branches():
    outs = run_exhaustive(SEM, parse_expr("1 (+) 1"), 20)
    assert [o.result for o in outs if isinstance(o, Converged)] == [Nat(1)]


def test_determinism_on_choice_free_terms():
    rng = random.Random(5)
    corpus = [e for e in typed_corpus(3) if "Choice" not in repr(e)]
    for e in rng.sample(corpus, 150):
        assert len(run_exhaustive(SEM, e, 100)) == 1


def test_out_of_fuel():
    out = run_first(SEM, OMEGA, 3)
    assert isinstance(out, OutOfFuel)
    with pytest.raises(ValueError):
        run_first(SEM, OMEGA, 0)


def test_run_dispatch():
    assert isinstance(run(SEM, Nat(1), 5), Converged)
    assert isinstance(run(SEM, Nat(1), 5, "exhaustive"), tuple)
    with pytest.raises(ValueError):
        run(SEM, Nat(1), 5, "sideways")


def _histories(sample_size=250, fuel=100):
    rng = random.Random(11)
    corpus = typed_corpus(3)
    picked = rng.sample(corpus, sample_size)
    out = []
    for e in picked:
        history, _ = run_history(SEM, e, fuel)
        out.append(history)
    return out


def test_step_strictly_increases_tree_order():
    pairs = 0
    for history in _histories():
        for a, b in zip(history, history[1:]):
            assert tree_leq(a, b)
            assert a.skeleton() != b.skeleton()
            pairs += 1
        if pairs >= 1000:
            break
    assert pairs >= 1000


def test_order_implies_reachability():
    rng = random.Random(23)
    checked = 0
    for history in _histories(40):
        if len(history) < 2:
            continue
        for _ in range(6):
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
            assert found or src == dst
            checked += 1
            if checked >= 200:
                return
    assert checked >= 100


def test_tree_leq_is_a_partial_order_on_run_histories():
    rng = random.Random(99)
    for history in _histories(25):
        sample = history if len(history) < 8 else rng.sample(history, 8)
        for a in sample:
            for b in sample:
                if tree_leq(a, b) and tree_leq(b, a):
                    assert a.skeleton() == b.skeleton()  # antisymmetry
                for c in sample:
                    if tree_leq(a, b) and tree_leq(b, c):
                        assert tree_leq(a, c)  # transitivity


def test_tree_leq_reflexive_and_complete_maximal():
    history, outcome = run_history(SEM, IDENTITY_APP, 20)
    for t in history:
        assert tree_leq(t, t)
    complete = outcome.tree
    for t in history[:-1]:
        assert not tree_leq(complete, t)
    assert tree_leq(initial_tree(IDENTITY_APP), complete)


def test_active_path_shapes():
    t = initial_tree(OMEGA)
    assert [e.config for e in active_path(t)] == [OMEGA]
    history, _ = run_history(SEM, OMEGA, 6)
    after3 = active_path(history[3])
    assert [e.config for e in after3] == [OMEGA, OMEGA_BODY]
    after5 = active_path(history[5])
    assert [e.config for e in after5] == [OMEGA, OMEGA]
    assert after5[0].rule_family == "app" and after5[0].premise_index == 3
    assert after5[1].rule_family is None


def test_active_path_mid_rule_frontier():
    # identity application after 4 steps: both finished premises, frontier
    # is the root itself awaiting an advance
    history, _ = run_history(SEM, IDENTITY_APP, 20)
    path = active_path(history[4])
    assert len(path) == 1
    assert path[0].premise_index == 2


def test_active_path_rejects_complete_trees():
    _, outcome = run_history(SEM, Nat(2), 5)
    with pytest.raises(ValueError):
        active_path(outcome.tree)


def test_pet_invariants_hold_along_runs():
    for history in _histories(30):
        for t in history:
            assert check_pet_invariants(t) is None


def test_pet_invariants_reject_two_unknown_siblings():
    c = parse_expr("1 (+) 2")
    fake = Activation("app", c, (), Nat(1))
    bad = PartialEvalTree(c, UNKNOWN, fake,
                          (initial_tree(Nat(1)), initial_tree(Nat(2))))
    result = check_pet_invariants(bad)
    assert result is not None and result[1] == "more than one ? at a level"


def test_pet_invariants_reject_complete_parent_over_unknown():
    from bigstep.pet import CompletedRule

    c = parse_expr("succ 1")
    bad = PartialEvalTree(c, Known(Nat(2)), CompletedRule("succ"),
                          (initial_tree(Nat(1)),))
    result = check_pet_invariants(bad)
    assert result is not None


def test_premise_bound_is_respected():
    # spot-check the declared bounds against observed runs
    assert SEM.premise_bound(IDENTITY_APP) == 3
    assert SEM.premise_bound(Nat(1)) == 0
    assert lambda_semantics("app-late").premise_bound(IDENTITY_APP) == 4
    history, _ = run_history(SEM, IDENTITY_APP, 20)
    for t in history:
        for _, node in t.positions():
            assert len(node.children) <= SEM.premise_bound(node.config)
