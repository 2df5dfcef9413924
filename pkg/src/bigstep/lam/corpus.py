"""Term enumeration, typing predicate and named fixtures."""
from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from ..predicates import IndexedPredicate
from .syntax import Abs, App, Choice, Expr, Nat, Succ, Var
from .types import NAT, LambdaTypeError, TArrow, TRec, TVar, type_equal, typecheck

# Fixed annotation alphabet: nat, nat -> nat, and T with T = T -> nat.
SELF_APPLY = TRec("t", TArrow(TVar("t"), NAT))
ANNOTATION_ALPHABET: Tuple = (NAT, TArrow(NAT, NAT), SELF_APPLY)

MAX_LITERAL = 3

# omega = \x:T. x x with T = T -> nat, so Omega = omega omega : nat
OMEGA_BODY = Abs("x", SELF_APPLY, App(Var("x"), Var("x")))
OMEGA = App(OMEGA_BODY, OMEGA_BODY)


@lru_cache(maxsize=None)
def _terms(depth: int, scope: Tuple[str, ...]) -> Tuple[Expr, ...]:
    out: list = [Nat(k) for k in range(MAX_LITERAL + 1)]
    out.extend(Var(x) for x in scope)
    if depth >= 2:
        sub = _terms(depth - 1, scope)
        fresh = f"x{len(scope)}"
        under = _terms(depth - 1, scope + (fresh,))
        out.extend(Succ(e) for e in sub)
        out.extend(Abs(fresh, ann, body) for ann in ANNOTATION_ALPHABET for body in under)
        out.extend(App(a, b) for a in sub for b in sub)
        out.extend(Choice(a, b) for a in sub for b in sub)
    return tuple(out)


def enumerate_terms(depth: int, closed_only: bool = True) -> Tuple[Expr, ...]:
    """All terms of AST depth <= depth, in a fixed deterministic order.

    Closed terms use only binder-introduced variables; otherwise a single
    free variable ``u`` is also available.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return _terms(depth, () if closed_only else ("u",))


def typed_corpus(depth: int) -> Tuple[Expr, ...]:
    """Closed, well-typed terms of AST depth <= depth."""
    out = []
    for e in enumerate_terms(depth):
        try:
            typecheck({}, e)
        except LambdaTypeError:
            continue
        out.append(e)
    return tuple(out)


def lambda_type_predicate() -> IndexedPredicate:
    """Typing as an indexed predicate: the index of a term is its type."""

    def indices(e: Expr) -> frozenset:
        try:
            return frozenset({typecheck({}, e)})
        except LambdaTypeError:
            return frozenset()

    def holds(result: Expr, index) -> bool:
        try:
            return type_equal(typecheck({}, result), index)
        except LambdaTypeError:
            return False

    return IndexedPredicate(indices, holds)


FOOL_TERM = App(Nat(0), Nat(0))


def fool_predicate() -> IndexedPredicate:
    """The simple-type predicate deliberately extended to accept ``0 0``.

    With annotated binders the unsound extra typing rule is realised as a
    predicate override on exactly that term.
    """
    base = lambda_type_predicate()

    def indices(e: Expr) -> frozenset:
        if e == FOOL_TERM:
            return frozenset({NAT})
        return base.indices_of_config(e)

    return IndexedPredicate(indices, base.holds_result)
