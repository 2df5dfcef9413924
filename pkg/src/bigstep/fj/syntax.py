"""Expressions, values, configurations and memory for the FJ calculi.

Two variants share the expression core: the functional one adds lambdas
and upcasts and evaluates in a variable environment, the imperative one
adds field assignment and object identifiers and threads a memory of
object states through premises.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from ..util import EMPTY_MAP, FrozenMap


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class FieldAccess:
    target: "FJExpr"
    field: str


@dataclass(frozen=True, slots=True)
class New:
    cls: str
    args: Tuple["FJExpr", ...]


@dataclass(frozen=True, slots=True)
class Invoke:
    target: "FJExpr"
    method: str
    args: Tuple["FJExpr", ...]


@dataclass(frozen=True, slots=True)
class Lambda:
    params: Tuple[str, ...]
    body: "FJExpr"


@dataclass(frozen=True, slots=True)
class Cast:
    type: str
    target: "FJExpr"


@dataclass(frozen=True, slots=True)
class FieldAssign:
    target: "FJExpr"
    field: str
    value: "FJExpr"


@dataclass(frozen=True, slots=True)
class ObjIdRef:
    oid: int


FJExpr = Union[Var, FieldAccess, New, Invoke, Lambda, Cast, FieldAssign, ObjIdRef]


@dataclass(frozen=True, slots=True)
class ObjVal:
    cls: str
    fields: Tuple["FJValue", ...]


@dataclass(frozen=True, slots=True)
class LamVal:
    params: Tuple[str, ...]
    body: FJExpr


FJValue = Union[ObjVal, LamVal]


@dataclass(frozen=True, slots=True)
class EnvConfig:
    env: FrozenMap  # name -> FJValue
    expr: FJExpr


@dataclass(frozen=True, slots=True)
class ObjState:
    cls: str
    fields: Tuple[int, ...]  # object identifiers


@dataclass(frozen=True)
class Memory:
    """Immutable store of object states with a deterministic id counter."""

    next_id: int = 0
    cells: FrozenMap = EMPTY_MAP

    def allocate(self, state: ObjState) -> Tuple["Memory", int]:
        oid = self.next_id
        return Memory(oid + 1, self.cells.set(oid, state)), oid

    def get(self, oid: int) -> Optional[ObjState]:
        return self.cells.get(oid)

    def update_field(self, oid: int, index: int, new_oid: int) -> "Memory":
        state = self.cells[oid]
        fields = state.fields[:index] + (new_oid,) + state.fields[index + 1:]
        return Memory(self.next_id, self.cells.set(oid, ObjState(state.cls, fields)))

    @property
    def domain(self) -> frozenset:
        return frozenset(self.cells.keys())

    def __repr__(self):
        inner = ", ".join(
            f"{oid}->{st.cls}{st.fields}" for oid, st in self.cells.items())
        return f"{{{inner}}}"


EMPTY_MEMORY = Memory()


@dataclass(frozen=True, slots=True)
class MemConfig:
    memory: Memory
    expr: FJExpr


@dataclass(frozen=True, slots=True)
class MemResult:
    memory: Memory
    oid: int


def subst_expr(e: FJExpr, mapping: dict) -> FJExpr:
    """Simultaneous substitution of expressions for variables."""
    match e:
        case Var(name):
            return mapping.get(name, e)
        case FieldAccess(target, field):
            return FieldAccess(subst_expr(target, mapping), field)
        case New(cls, args):
            return New(cls, tuple(subst_expr(a, mapping) for a in args))
        case Invoke(target, method, args):
            return Invoke(subst_expr(target, mapping), method,
                          tuple(subst_expr(a, mapping) for a in args))
        case FieldAssign(target, field, value):
            return FieldAssign(subst_expr(target, mapping), field,
                               subst_expr(value, mapping))
        case ObjIdRef(_):
            return e
        case Lambda(params, body):
            trimmed = {k: v for k, v in mapping.items() if k not in params}
            return Lambda(params, subst_expr(body, trimmed))
        case Cast(type_, target):
            return Cast(type_, subst_expr(target, mapping))
    raise TypeError(e)


def show_fj(e) -> str:
    match e:
        case Var(name):
            return name
        case FieldAccess(target, field):
            return f"{_recv(target)}.{field}"
        case New(cls, args):
            return f"new {cls}({', '.join(show_fj(a) for a in args)})"
        case Invoke(target, method, args):
            return f"{_recv(target)}.{method}({', '.join(show_fj(a) for a in args)})"
        case Lambda(params, body):
            return f"\\{' '.join(params)}. {show_fj(body)}"
        case Cast(type_, target):
            return f"<{type_}>{_recv(target)}"
        case FieldAssign(target, field, value):
            return f"{_recv(target)}.{field} = {show_fj(value)}"
        case ObjIdRef(oid):
            return f"#{oid}"
        case ObjVal(cls, fields):
            return f"obj {cls}({', '.join(show_fj(v) for v in fields)})"
        case LamVal(params, body):
            return f"\\{' '.join(params)}. {show_fj(body)}"
        case EnvConfig(env, expr):
            bind = ", ".join(f"{k}:{show_fj(v)}" for k, v in env.items())
            return f"<{{{bind}}}, {show_fj(expr)}>"
        case MemConfig(memory, expr):
            return f"<{memory!r}, {show_fj(expr)}>"
        case MemResult(memory, oid):
            return f"<{memory!r}, #{oid}>"
    raise TypeError(e)


def _recv(e) -> str:
    s = show_fj(e)
    if isinstance(e, (Var, New, Invoke, FieldAccess, ObjIdRef)):
        return s
    return f"({s})"
