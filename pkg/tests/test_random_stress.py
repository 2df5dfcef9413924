"""Randomized deeper stress: faithfulness and normalization invariance."""
import random

from bigstep.lam import lambda_semantics
from bigstep.lam.corpus import ANNOTATION_ALPHABET
from bigstep.lam.semantics import _Exhausted, direct_results
from bigstep.lam.syntax import Abs, App, Choice, Nat, Succ, Var
from bigstep.pet import Converged, OutOfFuel, run_exhaustive
from bigstep.rational import RationalList

SEM = lambda_semantics()


def _random_term(rng, depth, scope=()):
    if depth <= 1 or rng.random() < 0.15:
        if scope and rng.random() < 0.5:
            return Var(rng.choice(scope))
        return Nat(rng.randint(0, 3))
    kind = rng.choice(("app", "app", "succ", "choice", "abs", "abs"))
    if kind == "succ":
        return Succ(_random_term(rng, depth - 1, scope))
    if kind == "choice":
        return Choice(_random_term(rng, depth - 1, scope),
                      _random_term(rng, depth - 1, scope))
    if kind == "app":
        return App(_random_term(rng, depth - 1, scope),
                   _random_term(rng, depth - 1, scope))
    var = f"v{len(scope)}"
    return Abs(var, rng.choice(ANNOTATION_ALPHABET),
               _random_term(rng, depth - 1, scope + (var,)))


def test_deep_random_terms_match_direct_oracle():
    rng = random.Random(2025)
    decided = 0
    for _ in range(600):
        e = _random_term(rng, rng.randint(4, 5))
        try:
            expected = direct_results(e, depth=24)
        except _Exhausted:
            continue  # likely divergent; certificates are tested elsewhere
        outs = run_exhaustive(SEM, e, 300)
        if any(isinstance(o, OutOfFuel) for o in outs):
            continue
        got = frozenset(o.result for o in outs if isinstance(o, Converged))
        assert got == expected, e
        decided += 1
    assert decided > 300


def test_deep_random_strategy_independence():
    rng = random.Random(31)
    sem_r = lambda_semantics("app-r")
    compared = 0
    for _ in range(300):
        e = _random_term(rng, rng.randint(4, 5))
        a = run_exhaustive(SEM, e, 300)
        b = run_exhaustive(sem_r, e, 300)
        if any(isinstance(o, OutOfFuel) for o in a + b):
            continue
        left = frozenset(o.result for o in a if isinstance(o, Converged))
        right = frozenset(o.result for o in b if isinstance(o, Converged))
        assert left == right, e
        compared += 1
    assert compared > 150


def test_rational_presentations_of_the_same_word_are_equal():
    rng = random.Random(8)
    for _ in range(300):
        prefix = tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 4)))
        period = tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 4)))
        canonical = RationalList(prefix, period)
        # unroll j elements of the period into the prefix and repeat the
        # period k times: a different presentation of the same word
        j = rng.randint(0, 6)
        k = rng.randint(1, 3)
        unrolled = prefix + tuple(period[i % len(period)] for i in range(j))
        rotated = tuple(period[(i + j) % len(period)] for i in range(len(period)))
        assert RationalList(unrolled, rotated * k) == canonical


def test_distinct_rational_words_stay_distinct():
    rng = random.Random(77)
    seen = {}
    for _ in range(200):
        prefix = tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 3)))
        period = tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 3)))
        lst = RationalList(prefix, period)
        key = lst.take(24)  # long enough to separate these small words
        if key in seen:
            assert seen[key] == lst
        else:
            seen[key] = lst
