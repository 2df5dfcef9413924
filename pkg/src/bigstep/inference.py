"""Generic inference systems with rules and corules.

An inference system is represented intensionally by its *inverse* rule
query: given a judgment, enumerate the finite premise sets of all rules
concluding it.  All fixpoints are computed on an explicitly materialised
finite universe of judgments; infinite client systems are handled by
closing a goal set under premises up to a hard cap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Any, Callable, FrozenSet, Iterable, Optional

Judgment = Any  # opaque, hashable, structurally comparable


@dataclass(frozen=True)
class FiniteRule:
    premises: FrozenSet[Judgment]
    conclusion: Judgment

    def __post_init__(self):
        object.__setattr__(self, "premises", frozenset(self.premises))


@dataclass(frozen=True)
class InferenceSystem:
    """A rule set given by inverse enumeration.

    ``premise_candidates(j)`` returns the finite set of premise sets ``Pr``
    such that ``(Pr, j)`` is a rule.  Both the returned set and every
    member must be finite.
    """

    premise_candidates: Callable[[Judgment], AbstractSet[FrozenSet[Judgment]]]

    def union(self, other: "InferenceSystem") -> "InferenceSystem":
        mine, theirs = self.premise_candidates, other.premise_candidates
        return InferenceSystem(lambda j: frozenset(mine(j)) | frozenset(theirs(j)))


@dataclass(frozen=True)
class GeneralizedIS:
    rules: InferenceSystem
    corules: InferenceSystem

    def combined(self) -> InferenceSystem:
        return self.rules.union(self.corules)


def system_from_rules(rules: Iterable[FiniteRule]) -> InferenceSystem:
    by_conclusion: dict = {}
    for rule in rules:
        by_conclusion.setdefault(rule.conclusion, set()).add(rule.premises)
    return InferenceSystem(lambda j: frozenset(by_conclusion.get(j, frozenset())))


class UniverseOverflow(Exception):
    """The premise closure of the goal set exceeded the cap."""

    def __init__(self, cap: int):
        super().__init__(f"premise closure exceeded cap {cap}")
        self.cap = cap


def reachable_universe(
    sys: InferenceSystem, goals: AbstractSet[Judgment], cap: int
) -> FrozenSet[Judgment]:
    """Smallest set containing the goals and closed under rule premises."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    seen = set(goals)
    if len(seen) > cap:
        raise UniverseOverflow(cap)
    todo = list(seen)
    while todo:
        j = todo.pop()
        for premises in sys.premise_candidates(j):
            for p in premises:
                if p not in seen:
                    seen.add(p)
                    if len(seen) > cap:
                        raise UniverseOverflow(cap)
                    todo.append(p)
    return frozenset(seen)


def interp_inductive(
    sys: InferenceSystem, universe: AbstractSet[Judgment]
) -> FrozenSet[Judgment]:
    """Least sys-closed subset of the finite universe."""
    members: set = set()
    changed = True
    while changed:
        changed = False
        for j in universe:
            if j in members:
                continue
            if any(premises <= members for premises in sys.premise_candidates(j)):
                members.add(j)
                changed = True
    return frozenset(members)


def interp_coinductive(
    sys: InferenceSystem, universe: AbstractSet[Judgment]
) -> FrozenSet[Judgment]:
    """Largest sys-consistent subset of the finite universe."""
    members = set(universe)
    changed = True
    while changed:
        changed = False
        for j in list(members):
            if not any(premises <= members for premises in sys.premise_candidates(j)):
                members.discard(j)
                changed = True
    return frozenset(members)


def interp_corules(
    gis: GeneralizedIS, universe: AbstractSet[Judgment]
) -> FrozenSet[Judgment]:
    """Interpretation of an inference system with corules.

    Coinductive interpretation of the rules restricted to conclusions that
    are inductively derivable using rules and corules together.  The
    universe must be finite and closed under premises of both systems.
    """
    bound = interp_inductive(gis.combined(), universe)
    inner = gis.rules.premise_candidates
    restricted = InferenceSystem(
        lambda j: inner(j) if j in bound else frozenset()
    )
    return interp_coinductive(restricted, universe)


@dataclass(frozen=True)
class CoinductionCheck:
    passed: bool
    witness: Optional[Judgment] = None
    reason: Optional[str] = None  # "consistency" | "boundedness"


def bounded_coinduction_check(
    gis: GeneralizedIS, X: AbstractSet[Judgment], universe: AbstractSet[Judgment]
) -> CoinductionCheck:
    """Bounded coinduction: X rules-consistent and inside Ind(rules + corules).

    A pass certifies X is contained in the corule interpretation; a fail
    carries a judgment violating one of the two clauses.
    """
    X = frozenset(X)
    bound = interp_inductive(gis.combined(), universe)
    for j in X:
        if j not in bound:
            return CoinductionCheck(False, j, "boundedness")
    for j in X:
        if not any(premises <= X for premises in gis.rules.premise_candidates(j)):
            return CoinductionCheck(False, j, "consistency")
    return CoinductionCheck(True)
