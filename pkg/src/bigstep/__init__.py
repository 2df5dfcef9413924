"""Executable meta-theory for big-step operational semantics.

Any language given as a rule oracle (start/advance queries over partially
applied rules) gets, for free: a stepper over partial evaluation trees
separating converged, stuck and diverging computations; trace, wrong,
divergence and total extended semantics; and operational auditors for
type-soundness conditions.
"""
from . import extensions, inference, maxelem, oracle, pet, predicates, rational

__all__ = [
    "extensions",
    "inference",
    "maxelem",
    "oracle",
    "pet",
    "predicates",
    "rational",
]

__version__ = "0.1.0"
