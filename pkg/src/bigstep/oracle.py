"""The rule-oracle interface every object language implements.

A big-step semantics is a triple of configurations, results and rules
with ordered premises satisfying the bounded-premises condition.  Rule
sets are infinite in general, so they are represented intensionally by
two queries:

* ``start(c)`` - the ways to begin evaluating configuration ``c``: a
  zero-premise rule yields its result immediately (``Axiom``), any other
  rule demands its first premise (``FirstPremise``).
* ``advance(a, r)`` - given a partially applied rule ``a`` whose pending
  premise just produced ``r``, the ways to continue: finish with the
  conclusion result (``Finished``) or demand the next premise
  (``Demand``).  Each continuation corresponds to a rule equal to the
  queried one up to the current premise index.

An empty answer is meaningful: no way to start or to continue is exactly
how stuck computations arise.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Sequence, Tuple, Union

Config = Any  # opaque, hashable, structurally comparable
ResultVal = Any


@dataclass(frozen=True, slots=True)
class BsJudgment:
    config: Config
    result: ResultVal


@dataclass(frozen=True, slots=True)
class Activation:
    """A rule partially applied to its first premises.

    ``completed`` holds the premises established so far, ``pending`` the
    configuration of the premise currently demanded.  Two activations with
    equal conclusion, completed prefix and pending configuration realise
    rule equality up-to the current index.
    """

    rule_family: str
    conclusion_config: Config
    completed: Tuple[BsJudgment, ...]
    pending: Config
    bindings: Any = None  # language-private, hashable

    @property
    def index(self) -> int:
        """1-based index of the pending premise."""
        return len(self.completed) + 1

    def extend(
        self,
        result: ResultVal,
        next_config: Config,
        *,
        rule_family: str | None = None,
        bindings: Any = "___keep___",
    ) -> "Activation":
        """Record ``pending => result`` and demand ``next_config``."""
        return Activation(
            rule_family if rule_family is not None else self.rule_family,
            self.conclusion_config,
            self.completed + (BsJudgment(self.pending, result),),
            next_config,
            self.bindings if bindings == "___keep___" else bindings,
        )


@dataclass(frozen=True, slots=True)
class Axiom:
    result: ResultVal
    rule: str = "axiom"


@dataclass(frozen=True, slots=True)
class FirstPremise:
    config: Config
    activation: Activation


StartStep = Union[Axiom, FirstPremise]


@dataclass(frozen=True, slots=True)
class Finished:
    result: ResultVal
    rule: str | None = None


@dataclass(frozen=True, slots=True)
class Demand:
    config: Config
    activation: Activation


Continuation = Union[Finished, Demand]


class OracleContractError(Exception):
    """An oracle answer violated the activation or premise-bound contract."""


class LanguageSemantics(ABC):
    """A big-step semantics exposed as a rule oracle.

    Implementations must behave as pure functions of their arguments
    (class tables and similar are read-only after construction), so
    branches can be explored concurrently and replays are faithful.
    """

    @abstractmethod
    def start(self, config: Config) -> Sequence[StartStep]:
        """All ways to begin evaluating ``config``; empty iff no rule concludes it."""

    @abstractmethod
    def advance(self, activation: Activation, result: ResultVal) -> Sequence[Continuation]:
        """All ways to continue after the pending premise produced ``result``."""

    @abstractmethod
    def premise_bound(self, config: Config) -> int:
        """Upper bound on premise counts of rules concluding ``config``."""

    def show_config(self, config: Config) -> str:
        return str(config)

    def show_result(self, result: ResultVal) -> str:
        return str(result)


def wrap_activation(inner: Activation, lift_result) -> Activation:
    """Re-key an inner activation for a result-transforming semantics.

    The inner activation is kept in ``bindings`` so the transformer can
    delegate; completed results are lifted into the transformed result set.
    """
    completed = tuple(
        BsJudgment(j.config, lift_result(j.result)) for j in inner.completed
    )
    return Activation(
        inner.rule_family, inner.conclusion_config, completed, inner.pending, inner
    )


__all__ = [
    "Activation",
    "Axiom",
    "BsJudgment",
    "Config",
    "Continuation",
    "Demand",
    "Finished",
    "FirstPremise",
    "LanguageSemantics",
    "OracleContractError",
    "ResultVal",
    "StartStep",
    "wrap_activation",
]
