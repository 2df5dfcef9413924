from .syntax import Abs, App, Choice, Expr, Nat, Succ, Var, is_value, show_expr, subst
from .types import (
    NAT,
    LambdaTypeError,
    LType,
    TArrow,
    TNat,
    TRec,
    TVar,
    is_contractive,
    show_type,
    type_equal,
    typecheck,
)
from .semantics import LambdaSemantics, lambda_semantics
from .corpus import (
    ANNOTATION_ALPHABET,
    OMEGA,
    OMEGA_BODY,
    enumerate_terms,
    fool_predicate,
    lambda_type_predicate,
    typed_corpus,
)
from .parser import parse_expr, parse_type

__all__ = [
    "Abs", "App", "Choice", "Expr", "Nat", "Succ", "Var", "is_value", "subst",
    "show_expr", "NAT", "LType", "TArrow", "TNat", "TRec", "TVar",
    "LambdaTypeError", "is_contractive", "show_type", "type_equal", "typecheck",
    "LambdaSemantics", "lambda_semantics", "ANNOTATION_ALPHABET", "OMEGA",
    "OMEGA_BODY", "enumerate_terms", "fool_predicate", "lambda_type_predicate",
    "typed_corpus", "parse_expr", "parse_type",
]
