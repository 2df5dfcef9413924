#!/usr/bin/env python3
"""Inference systems with corules: the maximum of an infinite list.

The system has two rules (singleton axiom, cons rule) and one coaxiom
saying the claimed maximum must appear in the list.  On the eventually
periodic list L = 1:2:1:2:..., plain coinduction derives every bound
>= 2, while the corule interpretation keeps exactly the true maximum.
"""
from bigstep.inference import (
    bounded_coinduction_check,
    interp_coinductive,
    interp_corules,
    interp_inductive,
    reachable_universe,
)
from bigstep.maxelem import MaxElem, maxelem_gis
from bigstep.rational import finite, periodic

gis = maxelem_gis()

print("=" * 64)
print("FINITE LIST [1, 2]")
print("=" * 64)
goal = MaxElem(finite(1, 2), 2)
universe = reachable_universe(gis.rules, {goal}, cap=100)
print("goal-reachable universe:", sorted(map(repr, universe)))
print("inductively derivable:  ", sorted(map(repr, interp_inductive(gis.rules, universe))))

print()
print("=" * 64)
print("PERIODIC LIST L = (1:2)*")
print("=" * 64)
L = periodic((), (1, 2))
for value in (2, 5, 1):
    goal = MaxElem(L, value)
    universe = reachable_universe(gis.combined(), {goal}, cap=100)
    plain = goal in interp_coinductive(gis.rules, universe)
    flex = goal in interp_corules(gis, universe)
    print(f"maxElem(L, {value}):  coinductive={plain!s:5}  with corules={flex!s:5}")

print()
print("Bounded coinduction: to certify a set of judgments, show it is")
print("consistent for the rules and inside the inductive closure of")
print("rules plus corules.")
X = {MaxElem(L, 2), MaxElem(periodic((), (2, 1)), 2)}
universe = reachable_universe(gis.combined(), X, cap=100)
check = bounded_coinduction_check(gis, X, universe)
print(f"candidate set {sorted(map(repr, X))}")
print(f"passes: {check.passed}")

bad = {MaxElem(L, 5), MaxElem(periodic((), (2, 1)), 5)}
universe = reachable_universe(gis.combined(), bad, cap=100)
check = bounded_coinduction_check(gis, bad, universe)
print(f"candidate set {sorted(map(repr, bad))}")
print(f"passes: {check.passed}  (witness {check.witness!r}, {check.reason})")
