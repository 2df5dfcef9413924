"""Rule oracles for the two FJ variants, plus direct reference evaluators.

The functional variant evaluates in an environment; method invocation
shares its receiver premise between two rule families - selecting the
ordinary one when the receiver is an object and the lambda one when it is
a lambda value.  The imperative variant threads a memory: each premise
starts in the previous premise's output memory, and fresh identifiers
come from a deterministic counter so runs are reproducible.
"""
from __future__ import annotations

from typing import Sequence, Tuple

from ..oracle import (
    Activation,
    Axiom,
    Config,
    Continuation,
    Demand,
    Finished,
    FirstPremise,
    LanguageSemantics,
    ResultVal,
    StartStep,
)
from ..util import FrozenMap
from .syntax import (
    Cast,
    EnvConfig,
    FieldAccess,
    FieldAssign,
    Invoke,
    LamVal,
    Lambda,
    MemConfig,
    MemResult,
    New,
    ObjIdRef,
    ObjState,
    ObjVal,
    Var,
    show_fj,
    subst_expr,
)
from .table import ClassTable


class FJSemantics(LanguageSemantics):
    """MiniFJ with lambdas: configurations are (environment, expression)."""

    def __init__(self, ct: ClassTable):
        self.ct = ct

    def start(self, config: Config) -> Sequence[StartStep]:
        env, e = config.env, config.expr
        match e:
            case Var(name):
                v = env.get(name)
                return (Axiom(v, rule="var"),) if v is not None else ()
            case Lambda(params, body):
                return (Axiom(LamVal(params, body), rule="lambda"),)
            case New(cls, args):
                fields = self.ct.fields(cls)
                if fields is None or len(fields) != len(args):
                    return ()
                if not args:
                    return (Axiom(ObjVal(cls, ()), rule="new"),)
                first = EnvConfig(env, args[0])
                return (FirstPremise(first, Activation("new", config, (), first)),)
            case FieldAccess(target, _):
                first = EnvConfig(env, target)
                return (FirstPremise(first, Activation("field-access", config, (), first)),)
            case Invoke(target, _, _):
                first = EnvConfig(env, target)
                return (FirstPremise(first, Activation("invk", config, (), first)),)
            case Cast(_, target):
                first = EnvConfig(env, target)
                return (FirstPremise(first, Activation("upcast", config, (), first)),)
        return ()

    def advance(self, a: Activation, r: ResultVal) -> Sequence[Continuation]:
        config: EnvConfig = a.conclusion_config
        env, e = config.env, config.expr
        i = a.index
        family = a.rule_family
        if family == "new":
            if i < len(e.args):
                nxt = EnvConfig(env, e.args[i])
                return (Demand(nxt, a.extend(r, nxt)),)
            values = tuple(j.result for j in a.completed) + (r,)
            return (Finished(ObjVal(e.cls, values), rule="new"),)
        if family == "field-access":
            if isinstance(r, ObjVal):
                idx = self.ct.field_index(r.cls, e.field)
                if idx is not None and idx < len(r.fields):
                    return (Finished(r.fields[idx], rule="field-access"),)
            return ()
        if family == "upcast":
            return (Finished(r, rule="upcast"),)
        if family in ("invk", "lambda-invk"):
            n = len(e.args)
            if i == 1:  # receiver premise: select the rule family
                if isinstance(r, ObjVal):
                    if self.ct.mbody(r.cls, e.method) is None:
                        return ()
                    params, _ = self.ct.mbody(r.cls, e.method)
                    if len(params) != n:
                        return ()
                    return (self._after_receiver(a, r, "invk"),)
                if isinstance(r, LamVal):
                    if len(r.params) != n:
                        return ()
                    return (self._after_receiver(a, r, "lambda-invk"),)
                return ()
            if i < 1 + n:  # an argument premise other than the last
                nxt = EnvConfig(env, e.args[i - 1])
                return (Demand(nxt, a.extend(r, nxt)),)
            if i == 1 + n:  # last argument done: demand the body
                nxt = self._body_config(a, last_arg=r)
                return (Demand(nxt, a.extend(r, nxt)),)
            return (Finished(r, rule=family),)
        raise ValueError(f"unknown rule family {family!r}")

    def _after_receiver(self, a: Activation, recv, family: str) -> Continuation:
        config: EnvConfig = a.conclusion_config
        e = config.expr
        if e.args:
            nxt = EnvConfig(config.env, e.args[0])
            return Demand(nxt, a.extend(recv, nxt, rule_family=family))
        body = self._invoke_body(family, recv, (), e.method)
        return Demand(body, a.extend(recv, body, rule_family=family))

    def _body_config(self, a: Activation, last_arg) -> EnvConfig:
        config: EnvConfig = a.conclusion_config
        recv = a.completed[0].result
        args = tuple(j.result for j in a.completed[1:]) + (last_arg,)
        return self._invoke_body(a.rule_family, recv, args, config.expr.method)

    def _invoke_body(self, family: str, recv, args, method: str) -> EnvConfig:
        if family == "invk":
            params, body = self.ct.mbody(recv.cls, method)
            env = FrozenMap(tuple(zip(params, args)) + (("this", recv),))
            return EnvConfig(env, body)
        env = FrozenMap(tuple(zip(recv.params, args)))
        return EnvConfig(env, recv.body)

    def premise_bound(self, config: Config) -> int:
        match config.expr:
            case Invoke(_, _, args):
                return len(args) + 2
            case New(_, args):
                return len(args)
            case FieldAccess(_, _) | Cast(_, _):
                return 1
        return 0

    def show_config(self, config):
        return show_fj(config)

    def show_result(self, result):
        return show_fj(result)


def fj_semantics(ct: ClassTable) -> FJSemantics:
    return FJSemantics(ct)


class ImpFJSemantics(LanguageSemantics):
    """Imperative FJ: configurations pair a memory with an expression.

    The receiver's class is read from the memory right after the receiver
    premise, as the invocation rule states it; field assignment resolves
    the target's class in the final memory.
    """

    def __init__(self, ct: ClassTable):
        self.ct = ct

    def start(self, config: Config) -> Sequence[StartStep]:
        mem, e = config.memory, config.expr
        match e:
            case ObjIdRef(oid):
                return (Axiom(MemResult(mem, oid), rule="obj"),)
            case New(cls, args):
                fields = self.ct.fields(cls)
                if fields is None or len(fields) != len(args):
                    return ()
                if not args:
                    mem2, oid = mem.allocate(ObjState(cls, ()))
                    return (Axiom(MemResult(mem2, oid), rule="new"),)
                first = MemConfig(mem, args[0])
                return (FirstPremise(first, Activation("new", config, (), first)),)
            case FieldAccess(target, _):
                first = MemConfig(mem, target)
                return (FirstPremise(first, Activation("fld", config, (), first)),)
            case Invoke(target, _, _):
                first = MemConfig(mem, target)
                return (FirstPremise(first, Activation("invk", config, (), first)),)
            case FieldAssign(target, _, _):
                first = MemConfig(mem, target)
                return (FirstPremise(first, Activation("fld-up", config, (), first)),)
        return ()

    def advance(self, a: Activation, r: ResultVal) -> Sequence[Continuation]:
        config: MemConfig = a.conclusion_config
        e = config.expr
        i = a.index
        family = a.rule_family
        mem_after = r.memory
        if family == "new":
            if i < len(e.args):
                nxt = MemConfig(mem_after, e.args[i])
                return (Demand(nxt, a.extend(r, nxt)),)
            oids = tuple(j.result.oid for j in a.completed) + (r.oid,)
            mem2, oid = mem_after.allocate(ObjState(e.cls, oids))
            return (Finished(MemResult(mem2, oid), rule="new"),)
        if family == "fld":
            state = mem_after.get(r.oid)
            if state is None:
                return ()
            idx = self.ct.field_index(state.cls, e.field)
            if idx is None or idx >= len(state.fields):
                return ()
            return (Finished(MemResult(mem_after, state.fields[idx]), rule="fld"),)
        if family == "fld-up":
            if i == 1:
                nxt = MemConfig(mem_after, e.value)
                return (Demand(nxt, a.extend(r, nxt)),)
            target = a.completed[0].result
            state = mem_after.get(target.oid)
            if state is None:
                return ()
            idx = self.ct.field_index(state.cls, e.field)
            if idx is None or idx >= len(state.fields):
                return ()
            mem2 = mem_after.update_field(target.oid, idx, r.oid)
            return (Finished(MemResult(mem2, r.oid), rule="fld-up"),)
        if family == "invk":
            n = len(e.args)
            if i == 1:
                # class lookup in the memory produced by the receiver premise
                state = mem_after.get(r.oid)
                if state is None:
                    return ()
                found = self.ct.mbody(state.cls, e.method)
                if found is None or len(found[0]) != n:
                    return ()
                binding = state.cls
                if n:
                    nxt = MemConfig(mem_after, e.args[0])
                    return (Demand(nxt, a.extend(r, nxt, bindings=binding)),)
                nxt = self._body_config(mem_after, binding, r.oid, (), e.method)
                return (Demand(nxt, a.extend(r, nxt, bindings=binding)),)
            if i < 1 + n:
                nxt = MemConfig(mem_after, e.args[i - 1])
                return (Demand(nxt, a.extend(r, nxt)),)
            if i == 1 + n:
                recv_oid = a.completed[0].result.oid
                arg_oids = tuple(j.result.oid for j in a.completed[1:]) + (r.oid,)
                nxt = self._body_config(mem_after, a.bindings, recv_oid,
                                        arg_oids, e.method)
                return (Demand(nxt, a.extend(r, nxt)),)
            return (Finished(r, rule="invk"),)
        raise ValueError(f"unknown rule family {family!r}")

    def _body_config(self, mem, cls: str, recv_oid: int,
                     arg_oids: Tuple[int, ...], method: str) -> MemConfig:
        params, body = self.ct.mbody(cls, method)
        mapping = {p: ObjIdRef(o) for p, o in zip(params, arg_oids)}
        mapping["this"] = ObjIdRef(recv_oid)
        return MemConfig(mem, subst_expr(body, mapping))

    def premise_bound(self, config: Config) -> int:
        match config.expr:
            case Invoke(_, _, args):
                return len(args) + 2
            case New(_, args):
                return len(args)
            case FieldAssign(_, _, _):
                return 2
            case FieldAccess(_, _):
                return 1
        return 0

    def show_config(self, config):
        return show_fj(config)

    def show_result(self, result):
        return show_fj(result)


def impfj_semantics(ct: ClassTable) -> ImpFJSemantics:
    return ImpFJSemantics(ct)


# direct reference evaluators, independent of the oracle and stepper

class _Fuel:
    def __init__(self, n: int):
        self.n = n

    def tick(self) -> bool:
        self.n -= 1
        return self.n >= 0


def direct_eval_fj(ct: ClassTable, env: FrozenMap, e, fuel: int = 10_000):
    """("ok", value) / ("stuck",) / ("timeout",) by structural recursion."""
    return _direct_fj(ct, env, e, _Fuel(fuel))


def _direct_fj(ct, env, e, fuel):
    if not fuel.tick():
        return ("timeout",)
    match e:
        case Var(name):
            v = env.get(name)
            return ("ok", v) if v is not None else ("stuck",)
        case Lambda(params, body):
            return ("ok", LamVal(params, body))
        case New(cls, args):
            fields = ct.fields(cls)
            if fields is None or len(fields) != len(args):
                return ("stuck",)
            values = []
            for arg in args:
                out = _direct_fj(ct, env, arg, fuel)
                if out[0] != "ok":
                    return out
                values.append(out[1])
            return ("ok", ObjVal(cls, tuple(values)))
        case FieldAccess(target, fname):
            out = _direct_fj(ct, env, target, fuel)
            if out[0] != "ok":
                return out
            v = out[1]
            if not isinstance(v, ObjVal):
                return ("stuck",)
            idx = ct.field_index(v.cls, fname)
            if idx is None or idx >= len(v.fields):
                return ("stuck",)
            return ("ok", v.fields[idx])
        case Cast(_, target):
            return _direct_fj(ct, env, target, fuel)
        case Invoke(target, method, args):
            out = _direct_fj(ct, env, target, fuel)
            if out[0] != "ok":
                return out
            recv = out[1]
            values = []
            if isinstance(recv, ObjVal):
                found = ct.mbody(recv.cls, method)
                if found is None or len(found[0]) != len(args):
                    return ("stuck",)
            elif isinstance(recv, LamVal):
                if len(recv.params) != len(args):
                    return ("stuck",)
            else:
                return ("stuck",)
            for arg in args:
                out = _direct_fj(ct, env, arg, fuel)
                if out[0] != "ok":
                    return out
                values.append(out[1])
            if isinstance(recv, ObjVal):
                params, body = ct.mbody(recv.cls, method)
                cenv = FrozenMap(tuple(zip(params, values)) + (("this", recv),))
            else:
                params, body = recv.params, recv.body
                cenv = FrozenMap(tuple(zip(params, values)))
            return _direct_fj(ct, cenv, body, fuel)
    return ("stuck",)


def direct_eval_imp(ct: ClassTable, mem, e, fuel: int = 10_000):
    """("ok", MemResult) / ("stuck",) / ("timeout",) with threaded memory."""
    return _direct_imp(ct, mem, e, _Fuel(fuel))


def _direct_imp(ct, mem, e, fuel):
    if not fuel.tick():
        return ("timeout",)
    match e:
        case ObjIdRef(oid):
            return ("ok", MemResult(mem, oid))
        case New(cls, args):
            fields = ct.fields(cls)
            if fields is None or len(fields) != len(args):
                return ("stuck",)
            oids = []
            for arg in args:
                out = _direct_imp(ct, mem, arg, fuel)
                if out[0] != "ok":
                    return out
                mem, oid = out[1].memory, out[1].oid
                oids.append(oid)
            mem2, oid = mem.allocate(ObjState(cls, tuple(oids)))
            return ("ok", MemResult(mem2, oid))
        case FieldAccess(target, fname):
            out = _direct_imp(ct, mem, target, fuel)
            if out[0] != "ok":
                return out
            res = out[1]
            state = res.memory.get(res.oid)
            if state is None:
                return ("stuck",)
            idx = ct.field_index(state.cls, fname)
            if idx is None or idx >= len(state.fields):
                return ("stuck",)
            return ("ok", MemResult(res.memory, state.fields[idx]))
        case FieldAssign(target, fname, value):
            out = _direct_imp(ct, mem, target, fuel)
            if out[0] != "ok":
                return out
            tgt = out[1]
            out = _direct_imp(ct, tgt.memory, value, fuel)
            if out[0] != "ok":
                return out
            val = out[1]
            state = val.memory.get(tgt.oid)
            if state is None:
                return ("stuck",)
            idx = ct.field_index(state.cls, fname)
            if idx is None or idx >= len(state.fields):
                return ("stuck",)
            return ("ok", MemResult(val.memory.update_field(tgt.oid, idx, val.oid),
                                    val.oid))
        case Invoke(target, method, args):
            out = _direct_imp(ct, mem, target, fuel)
            if out[0] != "ok":
                return out
            recv = out[1]
            state = recv.memory.get(recv.oid)
            if state is None:
                return ("stuck",)
            found = ct.mbody(state.cls, method)
            if found is None or len(found[0]) != len(args):
                return ("stuck",)
            cur = recv.memory
            oids = []
            for arg in args:
                out = _direct_imp(ct, cur, arg, fuel)
                if out[0] != "ok":
                    return out
                cur, oid = out[1].memory, out[1].oid
                oids.append(oid)
            params, body = found
            mapping = {p: ObjIdRef(o) for p, o in zip(params, oids)}
            mapping["this"] = ObjIdRef(recv.oid)
            return _direct_imp(ct, cur, subst_expr(body, mapping), fuel)
    return ("stuck",)
