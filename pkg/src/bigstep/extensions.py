"""Semantics-extending constructions over any rule oracle.

Three canonical extensions of a big-step semantics, each a transformer
producing another rule oracle, plus evaluators on the stepper:

* traces  - results become (finite trace, value) pairs or an eventually
            periodic infinite trace; the trace collects every
            configuration visited, in premise order;
* wrong   - a special result marks stuck computations: introduced where
            no rule starts a configuration or no equivalent rule accepts
            a premise result, then propagated;
* divergence - a special infinity result propagated through premises,
            with one coaxiom per configuration so that infinite
            derivations prove nothing but divergence.

The total semantics combines wrong and divergence so every computation
is classified.  Divergence is never decided by fixpoint here: the finite
proof object is a cyclic certificate, replayable against the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Tuple, Union

from .oracle import (
    Activation,
    Axiom,
    BsJudgment,
    Config,
    Demand,
    Finished,
    FirstPremise,
    LanguageSemantics,
    wrap_activation,
)
from .pet import (
    Converged,
    Diverges,
    DivergenceCertificate,
    OutOfFuel,
    Stuck,
    active_path,
    run_exhaustive,
    run_first,
)
from .rational import normalize_word


@dataclass(frozen=True, slots=True)
class Ok:
    value: Any

    def __repr__(self):
        return f"Ok({self.value!r})"


class _Mark:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self):
        return self._name


WRONG = _Mark("wrong")
INFINITY = _Mark("infinity")
NO_JUDGMENT = _Mark("no-judgment")
STUCK_TRACE = _Mark("stuck")
TIMEOUT = _Mark("timeout")


@dataclass(frozen=True, slots=True)
class FinTrace:
    steps: Tuple[Config, ...]
    result: Any


@dataclass(frozen=True, slots=True)
class InfTrace:
    prefix: Tuple[Config, ...]
    period: Tuple[Config, ...]

    def __post_init__(self):
        p, q = normalize_word(self.prefix, self.period)
        object.__setattr__(self, "prefix", p)
        object.__setattr__(self, "period", q)


TraceResult = Union[FinTrace, InfTrace]


def trace_forget(tr: TraceResult):
    """Forget traces: finite pairs keep the value, infinite ones diverge."""
    if isinstance(tr, FinTrace):
        return Ok(tr.result)
    if isinstance(tr, InfTrace):
        return INFINITY
    raise TypeError(tr)


class WrongSemantics(LanguageSemantics):
    """The wrong extension: every dead end becomes an explicit result."""

    def __init__(self, base: LanguageSemantics):
        self.base = base

    def start(self, config):
        steps = self.base.start(config)
        if not steps:
            return (Axiom(WRONG, rule="wrong-config"),)
        out = []
        for s in steps:
            if isinstance(s, Axiom):
                out.append(Axiom(Ok(s.result), rule=s.rule))
            else:
                out.append(FirstPremise(s.config, wrap_activation(s.activation, Ok)))
        return tuple(out)

    def advance(self, a, r):
        if r is WRONG:
            return (Finished(WRONG, rule="wrong-prop"),)
        inner: Activation = a.bindings
        conts = self.base.advance(inner, r.value)
        if not conts:
            return (Finished(WRONG, rule="wrong-result"),)
        out = []
        for c in conts:
            if isinstance(c, Finished):
                out.append(Finished(Ok(c.result), rule=c.rule or inner.rule_family))
            else:
                out.append(Demand(c.config, wrap_activation(c.activation, Ok)))
        return tuple(out)

    def premise_bound(self, config):
        return self.base.premise_bound(config)

    def show_config(self, config):
        return self.base.show_config(config)

    def show_result(self, result):
        if result is WRONG:
            return "wrong"
        return self.base.show_result(result.value)


class DivSemantics(LanguageSemantics):
    """The divergence extension: infinity propagates through premises."""

    def __init__(self, base: LanguageSemantics):
        self.base = base

    def start(self, config):
        out = []
        for s in self.base.start(config):
            if isinstance(s, Axiom):
                out.append(Axiom(Ok(s.result), rule=s.rule))
            else:
                out.append(FirstPremise(s.config, wrap_activation(s.activation, Ok)))
        return tuple(out)

    def advance(self, a, r):
        if r is INFINITY:
            return (Finished(INFINITY, rule="div-prop"),)
        inner: Activation = a.bindings
        out = []
        for c in self.base.advance(inner, r.value):
            if isinstance(c, Finished):
                out.append(Finished(Ok(c.result), rule=c.rule or inner.rule_family))
            else:
                out.append(Demand(c.config, wrap_activation(c.activation, Ok)))
        return tuple(out)

    def premise_bound(self, config):
        return self.base.premise_bound(config)

    def show_config(self, config):
        return self.base.show_config(config)

    def show_result(self, result):
        if result is INFINITY:
            return "infinity"
        return self.base.show_result(result.value)


class TraceSemantics(LanguageSemantics):
    """The trace extension: premise traces concatenate after the conclusion."""

    def __init__(self, base: LanguageSemantics):
        self.base = base

    def start(self, config):
        out = []
        for s in self.base.start(config):
            if isinstance(s, Axiom):
                out.append(Axiom(FinTrace((config,), s.result), rule=s.rule))
            else:
                act = s.activation
                out.append(FirstPremise(s.config, Activation(
                    act.rule_family, act.conclusion_config, (), act.pending, act)))
        return tuple(out)

    def advance(self, a, r):
        inner: Activation = a.bindings
        conclusion = a.conclusion_config
        prior = tuple(j.result.steps for j in a.completed)
        if isinstance(r, InfTrace):
            prefix = (conclusion,) + tuple(
                x for steps in prior for x in steps) + r.prefix
            return (Finished(InfTrace(prefix, r.period), rule="div-trace"),)
        out = []
        for c in self.base.advance(inner, r.result):
            if isinstance(c, Finished):
                steps = (conclusion,) + tuple(
                    x for ss in prior for x in ss) + r.steps
                out.append(Finished(FinTrace(steps, c.result),
                                    rule=c.rule or inner.rule_family))
            else:
                nxt = c.activation
                completed = a.completed + (BsJudgment(a.pending, r),)
                out.append(Demand(c.config, Activation(
                    nxt.rule_family, nxt.conclusion_config, completed,
                    nxt.pending, nxt)))
        return tuple(out)

    def premise_bound(self, config):
        return self.base.premise_bound(config)

    def show_config(self, config):
        return self.base.show_config(config)

    def show_result(self, result):
        if isinstance(result, FinTrace):
            trace = " ".join(self.base.show_config(c) for c in result.steps)
            return f"<{trace}, {self.base.show_result(result.result)}>"
        pre = " ".join(self.base.show_config(c) for c in result.prefix)
        per = " ".join(self.base.show_config(c) for c in result.period)
        return f"{pre}({per})^w"


def wrong_oracle(sem: LanguageSemantics) -> WrongSemantics:
    return WrongSemantics(sem)


def div_oracle(sem: LanguageSemantics):
    """Divergence oracle plus the coaxiom set as a judgment predicate."""

    def is_coaxiom(j: BsJudgment) -> bool:
        return j.result is INFINITY

    return DivSemantics(sem), is_coaxiom


def trace_oracle(sem: LanguageSemantics) -> TraceSemantics:
    return TraceSemantics(sem)


def _check_fuel(fuel: int) -> None:
    if fuel <= 0:
        raise ValueError("fuel must be positive")


def eval_wrong(sem: LanguageSemantics, config: Config, fuel: int,
               exhaustive: bool = False):
    """Ok / wrong per the wrong extension; divergence via certificate."""
    _check_fuel(fuel)
    wsem = wrong_oracle(sem)
    if exhaustive:
        return frozenset(_wrong_outcome(o) for o in run_exhaustive(wsem, config, fuel))
    return _wrong_outcome(run_first(wsem, config, fuel))


def _wrong_outcome(o):
    if isinstance(o, Converged):
        return o.result  # Ok(..) or WRONG
    if isinstance(o, Diverges):
        return o
    if isinstance(o, OutOfFuel):
        return TIMEOUT
    raise AssertionError("wrong semantics cannot get stuck")


def eval_div(sem: LanguageSemantics, config: Config, fuel: int,
             exhaustive: bool = False):
    """Ok / infinity per the divergence extension; stuckness has no judgment."""
    _check_fuel(fuel)
    dsem, _ = div_oracle(sem)
    if exhaustive:
        return frozenset(_div_outcome(o) for o in run_exhaustive(dsem, config, fuel))
    return _div_outcome(run_first(dsem, config, fuel))


def _div_outcome(o):
    if isinstance(o, Converged):
        return o.result
    if isinstance(o, Diverges):
        return INFINITY
    if isinstance(o, Stuck):
        return NO_JUDGMENT
    return TIMEOUT


def eval_trace(sem: LanguageSemantics, config: Config, fuel: int,
               exhaustive: bool = False):
    """Finite trace with result, or the rational trace induced by a cycle."""
    _check_fuel(fuel)
    tsem = trace_oracle(sem)
    if exhaustive:
        return frozenset(_trace_outcome(o) for o in run_exhaustive(tsem, config, fuel))
    return _trace_outcome(run_first(tsem, config, fuel))


def _trace_outcome(o):
    if isinstance(o, Converged):
        return o.result
    if isinstance(o, Diverges):
        return _rational_trace(o)
    if isinstance(o, Stuck):
        return STUCK_TRACE
    return TIMEOUT


def _rational_trace(d: Diverges) -> InfTrace:
    """The eventually periodic trace induced by a detected cycle.

    Each active-path node contributes its configuration followed by the
    traces of its already-completed premises; the fresh frontier closes
    the cycle.
    """
    path = active_path(d.tree)
    leaf = path[-1]
    start = max(i for i in range(len(path) - 1) if path[i].config == leaf.config)

    def contribution(entry):
        steps = [entry.config]
        for child in entry.node.children[:-1]:
            steps.extend(child.res.value.steps)
        return steps

    prefix: list = []
    for e in path[:start]:
        prefix.extend(contribution(e))
    period: list = []
    for e in path[start:-1]:
        period.extend(contribution(e))
    return InfTrace(tuple(prefix), tuple(period))


def eval_total(sem: LanguageSemantics, config: Config, fuel: int,
               exhaustive: bool = False):
    """All computations classified: a value, wrong, or infinity."""
    _check_fuel(fuel)
    wsem = wrong_oracle(sem)
    if exhaustive:
        return frozenset(_total_outcome(o) for o in run_exhaustive(wsem, config, fuel))
    return _total_outcome(run_first(wsem, config, fuel))


def _total_outcome(o):
    if isinstance(o, Converged):
        return o.result
    if isinstance(o, Diverges):
        return INFINITY
    if isinstance(o, OutOfFuel):
        return TIMEOUT
    raise AssertionError("total semantics cannot get stuck")


@dataclass(frozen=True)
class CertificateCheck:
    passed: bool
    reason: Optional[str] = None


def divergence_certificate_check(sem: LanguageSemantics,
                                 cert: DivergenceCertificate,
                                 fuel: int) -> CertificateCheck:
    """Replay a certificate against the oracle.

    For each witness entry the premises before the marked index must
    converge and the marked premise must demand the next entry's
    configuration, cyclically.
    """
    witness = cert.witness
    if not witness:
        return CertificateCheck(False, "empty witness")
    for k, (cfg, family, idx) in enumerate(witness):
        if idx < 1:
            return CertificateCheck(False, f"entry {k}: bad premise index")
        nxt_cfg = witness[(k + 1) % len(witness)][0]
        cands = [s.activation for s in sem.start(cfg)
                 if isinstance(s, FirstPremise)]
        if not cands:
            return CertificateCheck(False, f"entry {k}: no start rule")
        for p in range(1, idx):
            advanced = []
            for a in cands:
                for o in run_exhaustive(sem, a.pending, fuel):
                    if not isinstance(o, Converged):
                        continue
                    for c in sem.advance(a, o.result):
                        if isinstance(c, Demand):
                            advanced.append(c.activation)
            cands = list(dict.fromkeys(advanced))
            if not cands:
                return CertificateCheck(
                    False, f"entry {k}: premise {p} does not converge usefully")
        if not any(a.rule_family == family and a.pending == nxt_cfg for a in cands):
            return CertificateCheck(
                False, f"entry {k}: premise {idx} does not demand the next entry")
    return CertificateCheck(True)
