#!/usr/bin/env python3
"""Bring your own big-step semantics.

A complete new language in one screen: integer arithmetic with a
division that has no rule for zero divisors, and a looping construct
whose only rule demands itself.  Implementing the three oracle queries
is all it takes; the stepper, the extended semantics, the certificates
and the serializer come for free.
"""
from dataclasses import dataclass
from typing import Tuple, Union

from bigstep import extensions as ext
from bigstep.oracle import Activation, Axiom, Demand, Finished, FirstPremise, LanguageSemantics
from bigstep.pet import run_first


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Add:
    left: "Arith"
    right: "Arith"


@dataclass(frozen=True)
class Div:
    left: "Arith"
    right: "Arith"


@dataclass(frozen=True)
class Spin:
    body: "Arith"


Arith = Union[Lit, Add, Div, Spin]


class ArithSemantics(LanguageSemantics):
    """lit: n => n   add/div: evaluate left then right   spin: e => spin e"""

    def start(self, config):
        if isinstance(config, Lit):
            return (Axiom(config.value, rule="lit"),)
        if isinstance(config, (Add, Div)):
            family = "add" if isinstance(config, Add) else "div"
            return (FirstPremise(config.left,
                                 Activation(family, config, (), config.left)),)
        if isinstance(config, Spin):
            # the single premise is the whole configuration again
            return (FirstPremise(config,
                                 Activation("spin", config, (), config)),)
        return ()

    def advance(self, a, r):
        e = a.conclusion_config
        if a.rule_family == "spin":
            return (Finished(r, rule="spin"),)
        if a.index == 1:
            return (Demand(e.right, a.extend(r, e.right)),)
        left = a.completed[0].result
        if a.rule_family == "add":
            return (Finished(left + r, rule="add"),)
        if r == 0:
            return ()  # no division rule accepts a zero divisor
        return (Finished(left // r, rule="div"),)

    def premise_bound(self, config):
        if isinstance(config, (Add, Div)):
            return 2
        return 1 if isinstance(config, Spin) else 0


sem = ArithSemantics()

SAMPLES = [
    ("(1 + 2) + 3", Add(Add(Lit(1), Lit(2)), Lit(3))),
    ("10 / (1 + 1)", Div(Lit(10), Add(Lit(1), Lit(1)))),
    ("1 / (1 + -1)", Div(Lit(1), Add(Lit(1), Lit(-1)))),
    ("spin 5", Spin(Lit(5))),
    ("1 + spin 5", Add(Lit(1), Spin(Lit(5)))),
]

print("total semantics of the new language:")
for label, e in SAMPLES:
    print(f"  {label:14} -> {ext.eval_total(sem, e, 50)!r}")

print()
print("traces come for free as well:")
tr = ext.eval_trace(sem, Add(Lit(1), Lit(2)), 50)
print(f"  1 + 2 visits {len(tr.steps)} configurations, result {tr.result}")
spin_tr = ext.eval_trace(sem, Spin(Lit(5)), 50)
print(f"  spin 5 has the rational trace prefix={spin_tr.prefix} "
      f"period of length {len(spin_tr.period)}")

print()
print("and the divergence certificate replays against the oracle:")
out = run_first(sem, Spin(Lit(5)), 50)
print(f"  witness: {out.certificate.witness}")
print("  checks:", ext.divergence_certificate_check(sem, out.certificate, 50).passed)
