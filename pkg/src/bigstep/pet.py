"""Partial evaluation trees and the one-step transition relation.

The executable computation model for any rule oracle.  A partial
evaluation tree is an ordered tree of judgments in which the placeholder
result ``?`` marks the frontier of an in-progress evaluation.  One
transition refines the tree at its unique deepest incomplete node:

* a fresh node applies a start rule - either an axiom completes it or the
  first premise of some rule is demanded;
* a node whose last premise just completed either finishes with a rule
  having exactly these premises or demands the next premise of an
  equivalent rule;
* otherwise the step of the unique incomplete child is propagated.

A maximal sequence of transitions ends in a complete tree (convergence),
reaches an incomplete tree with no successor (stuck), or never ends
(divergence, witnessed here by a finite cyclic certificate).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Set, Tuple, Union

from .oracle import (
    Activation,
    Axiom,
    BsJudgment,
    Config,
    Finished,
    LanguageSemantics,
    OracleContractError,
    ResultVal,
)
from .util import dedup


class _UnknownType:
    __slots__ = ()

    def __repr__(self):
        return "?"


UNKNOWN = _UnknownType()


@dataclass(frozen=True, slots=True)
class Known:
    value: ResultVal


UnResult = Union[_UnknownType, Known]


class _StartTag:
    __slots__ = ()

    def __repr__(self):
        return "start"


START = _StartTag()


@dataclass(frozen=True, slots=True)
class CompletedRule:
    rule: str


RuleTag = Union[_StartTag, Activation, CompletedRule]


class PartialEvalTree:
    """Ordered tree of judgments with at most one ``?`` per level.

    ``tag`` records the partial-evaluation rule applied at the root: the
    start rule for a fresh node, the activation of a partially applied
    rule for an internal in-progress node, and the completed rule for a
    finished node.
    """

    __slots__ = ("config", "res", "tag", "children", "_hash")

    def __init__(self, config: Config, res: UnResult, tag: RuleTag,
                 children: Tuple["PartialEvalTree", ...]):
        self.config = config
        self.res = res
        self.tag = tag
        self.children = children
        self._hash = hash((config, res if res is UNKNOWN else res.value, tag, children))

    @property
    def is_complete(self) -> bool:
        return self.res is not UNKNOWN

    def skeleton(self) -> tuple:
        """Config/result shape, forgetting rule annotations."""
        res = "?" if self.res is UNKNOWN else ("!", self.res.value)
        return (self.config, res, tuple(ch.skeleton() for ch in self.children))

    def positions(self):
        yield (), self
        for i, ch in enumerate(self.children):
            for pos, node in ch.positions():
                yield (i,) + pos, node

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PartialEvalTree) or self._hash != other._hash:
            return False
        return (self.config == other.config and self.res == other.res
                and self.tag == other.tag and self.children == other.children)

    def __repr__(self):
        res = "?" if self.res is UNKNOWN else repr(self.res.value)
        if not self.children:
            return f"<{self.config!r} => {res}>"
        kids = " ".join(repr(c) for c in self.children)
        return f"<{self.config!r} => {res} [{kids}]>"


def initial_tree(config: Config) -> PartialEvalTree:
    """A single fresh node ``config => ?``."""
    return PartialEvalTree(config, UNKNOWN, START, ())


class StuckKind(Enum):
    NO_RULE = "no-rule"
    NO_CONTINUATION = "no-continuation"


@dataclass(frozen=True, slots=True)
class StuckInfo:
    kind: StuckKind
    config: Config
    rule_family: Optional[str] = None
    premise_index: Optional[int] = None
    result: ResultVal = None


def _expand(sem: LanguageSemantics, t: PartialEvalTree
            ) -> Tuple[Tuple[PartialEvalTree, ...], Optional[StuckInfo]]:
    """Successor trees of ``t``, or the stuck frontier if there are none."""
    if t.is_complete:
        return (), None
    tag = t.tag
    if tag is START:
        steps = dedup(sem.start(t.config))
        if not steps:
            return (), StuckInfo(StuckKind.NO_RULE, t.config)
        out = []
        for s in steps:
            if isinstance(s, Axiom):
                out.append(PartialEvalTree(t.config, Known(s.result),
                                           CompletedRule(s.rule), ()))
            else:
                act = s.activation
                if act.completed or act.pending != s.config:
                    raise OracleContractError(
                        f"start activation malformed for {t.config!r}")
                out.append(PartialEvalTree(t.config, UNKNOWN, act,
                                           (initial_tree(s.config),)))
        return tuple(out), None

    act: Activation = tag
    last = t.children[-1]
    if not last.is_complete:
        subs, stuck = _expand(sem, last)
        if stuck is not None:
            return (), stuck
        pre = t.children[:-1]
        return tuple(PartialEvalTree(t.config, UNKNOWN, act, pre + (s,))
                     for s in subs), None

    result = last.res.value
    conts = dedup(sem.advance(act, result))
    if not conts:
        return (), StuckInfo(StuckKind.NO_CONTINUATION, t.config,
                             act.rule_family, len(t.children), result)
    expected = act.completed + (BsJudgment(act.pending, result),)
    out = []
    for c in conts:
        if isinstance(c, Finished):
            rule = c.rule if c.rule is not None else act.rule_family
            out.append(PartialEvalTree(t.config, Known(c.result),
                                       CompletedRule(rule), t.children))
        else:
            nxt = c.activation
            if (nxt.completed != expected
                    or nxt.conclusion_config != act.conclusion_config
                    or nxt.pending != c.config):
                raise OracleContractError(
                    f"advance activation malformed for {t.config!r}")
            if len(t.children) + 1 > sem.premise_bound(t.config):
                raise OracleContractError(
                    f"premise bound exceeded for {t.config!r}")
            out.append(PartialEvalTree(t.config, UNKNOWN, nxt,
                                       t.children + (initial_tree(c.config),)))
    return tuple(out), None


def step(sem: LanguageSemantics, t: PartialEvalTree) -> Tuple[PartialEvalTree, ...]:
    """One-step successors of ``t``; empty iff ``t`` is irreducible."""
    subs, _ = _expand(sem, t)
    return subs


def tree_leq(t1: PartialEvalTree, t2: PartialEvalTree) -> bool:
    """Refinement order: ``t2`` adds branches or resolves ``?`` in ``t1``."""
    if t1.config != t2.config:
        return False
    if t1.is_complete:
        return t1.skeleton() == t2.skeleton()
    if len(t1.children) > len(t2.children):
        return False
    return all(tree_leq(a, b) for a, b in zip(t1.children, t2.children))


@dataclass(frozen=True, slots=True)
class PathEntry:
    config: Config
    rule_family: Optional[str]  # None on the fresh frontier node
    premise_index: Optional[int]
    node: PartialEvalTree


def active_path(t: PartialEvalTree) -> Tuple[PathEntry, ...]:
    """Root-to-frontier path through the unique incomplete node per level."""
    if t.is_complete:
        raise ValueError("active_path requires an incomplete tree")
    entries: List[PathEntry] = []
    node = t
    while True:
        if node.tag is START:
            entries.append(PathEntry(node.config, None, None, node))
            return tuple(entries)
        act: Activation = node.tag
        entries.append(PathEntry(node.config, act.rule_family, len(node.children), node))
        last = node.children[-1]
        if last.is_complete:
            # frontier is this node itself, pending an advance
            return tuple(entries)
        node = last


def check_pet_invariants(t: PartialEvalTree) -> Optional[Tuple[tuple, str]]:
    """None if the structural invariants hold, else (position, reason).

    Checks: a ``?`` child forces a ``?`` parent; at most one ``?`` per
    depth level; the root is complete iff the whole tree is.
    """
    unknown_at_level: dict = {}
    any_unknown = False
    for pos, node in t.positions():
        if node.res is UNKNOWN:
            any_unknown = True
            level = len(pos)
            if level in unknown_at_level:
                return pos, "more than one ? at a level"
            unknown_at_level[level] = pos
        for i, ch in enumerate(node.children):
            if ch.res is UNKNOWN and node.res is not UNKNOWN:
                return pos + (i,), "? child under complete parent"
    if t.is_complete and any_unknown:
        return (), "complete root over incomplete node"
    if not t.is_complete and not any_unknown:
        return (), "? root with no ? node"
    return None


@dataclass(frozen=True)
class DivergenceCertificate:
    """Finite cyclic witness of a non-terminating computation.

    Each entry names a configuration, the rule family applied to it and
    the premise index whose demanded configuration is the next entry's
    (cyclically).  All earlier premises of each entry converge.
    """

    witness: Tuple[Tuple[Config, str, int], ...]
    entry: Config


def detect_cycle(t: PartialEvalTree) -> Optional[Tuple[DivergenceCertificate, int]]:
    """Certificate if the fresh frontier re-demands an active-path config.

    Every active-path node began as a fresh node with its configuration;
    a fresh frontier equal to an ancestor therefore replays the ancestor's
    whole trajectory, which is a genuine loop of the stepper.  Returns the
    certificate and the path index where the cycle starts.
    """
    if t.is_complete:
        return None
    path = active_path(t)
    leaf = path[-1]
    if leaf.rule_family is not None:  # frontier is mid-rule, not fresh
        return None
    start_idx = None
    for i in range(len(path) - 2, -1, -1):
        if path[i].config == leaf.config:
            start_idx = i
            break
    if start_idx is None:
        return None
    witness = tuple(
        (e.config, e.rule_family, e.premise_index)
        for e in path[start_idx:-1]
    )
    return DivergenceCertificate(witness, leaf.config), start_idx


@dataclass(frozen=True)
class Converged:
    result: ResultVal
    tree: PartialEvalTree
    steps: int


@dataclass(frozen=True)
class Stuck:
    tree: PartialEvalTree
    kind: StuckKind
    steps: int
    info: StuckInfo


@dataclass(frozen=True)
class Diverges:
    certificate: DivergenceCertificate
    tree: PartialEvalTree  # tree at detection time, for trace extraction


@dataclass(frozen=True)
class OutOfFuel:
    frontier: PartialEvalTree


Outcome = Union[Converged, Stuck, Diverges, OutOfFuel]


def _validate(t: PartialEvalTree) -> None:
    bad = check_pet_invariants(t)
    if bad is not None:
        raise AssertionError(f"PET invariant violated at {bad[0]}: {bad[1]}")


def run_first(sem: LanguageSemantics, config: Config, fuel: int,
              validate: bool = False) -> Outcome:
    """Follow the first successor at every step."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    t = initial_tree(config)
    steps = 0
    while True:
        if t.is_complete:
            return Converged(t.res.value, t, steps)
        if steps >= fuel:
            return OutOfFuel(t)
        subs, stuck = _expand(sem, t)
        if stuck is not None:
            return Stuck(t, stuck.kind, steps, stuck)
        t = subs[0]
        steps += 1
        if validate:
            _validate(t)
        hit = detect_cycle(t)
        if hit is not None:
            return Diverges(hit[0], t)


def run_history(sem: LanguageSemantics, config: Config, fuel: int
                ) -> Tuple[List[PartialEvalTree], Outcome]:
    """First-successor run keeping the whole transition sequence."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    t = initial_tree(config)
    history = [t]
    steps = 0
    while True:
        if t.is_complete:
            return history, Converged(t.res.value, t, steps)
        if steps >= fuel:
            return history, OutOfFuel(t)
        subs, stuck = _expand(sem, t)
        if stuck is not None:
            return history, Stuck(t, stuck.kind, steps, stuck)
        t = subs[0]
        steps += 1
        history.append(t)
        hit = detect_cycle(t)
        if hit is not None:
            return history, Diverges(hit[0], t)


def _outcome_key(o: Outcome):
    if isinstance(o, Converged):
        return ("ok", o.result, o.tree.skeleton())
    if isinstance(o, Stuck):
        return ("stuck", o.kind, o.tree.skeleton())
    if isinstance(o, Diverges):
        return ("div", o.certificate)
    return ("fuel", o.frontier.skeleton())


def run_exhaustive(sem: LanguageSemantics, config: Config, fuel: int,
                   validate: bool = False) -> Tuple[Outcome, ...]:
    """Breadth-first exploration of every nondeterministic branch.

    Fuel bounds the number of transitions along any single branch; the
    frontier is deduplicated structurally per level so converging branches
    are found before fuel runs out on diverging siblings.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    outcomes: List[Outcome] = []
    seen_keys: Set[tuple] = set()

    def emit(o: Outcome) -> None:
        k = _outcome_key(o)
        if k not in seen_keys:
            seen_keys.add(k)
            outcomes.append(o)

    frontier: List[PartialEvalTree] = [initial_tree(config)]
    steps = 0
    while frontier and steps < fuel:
        nxt: dict = {}
        for t in frontier:
            subs, stuck = _expand(sem, t)
            if stuck is not None:
                emit(Stuck(t, stuck.kind, steps, stuck))
                continue
            for s in subs:
                if validate:
                    _validate(s)
                if s.is_complete:
                    emit(Converged(s.res.value, s, steps + 1))
                    continue
                hit = detect_cycle(s)
                if hit is not None:
                    emit(Diverges(hit[0], s))
                    continue
                nxt.setdefault(s, None)
        frontier = list(nxt)
        steps += 1
    for t in frontier:
        emit(OutOfFuel(t))
    return tuple(outcomes)


def run(sem: LanguageSemantics, config: Config, fuel: int,
        strategy: str = "first", validate: bool = False):
    """Evaluate ``config``: one outcome (``first``) or all (``exhaustive``)."""
    if strategy == "first":
        return run_first(sem, config, fuel, validate=validate)
    if strategy == "exhaustive":
        return run_exhaustive(sem, config, fuel, validate=validate)
    raise ValueError(f"unknown strategy {strategy!r}")
