"""Built-in class tables and corpus generators.

``INTEROP_TABLE`` is the functional-variant demo table: a functional
interface usable as a lambda target, a non-functional super-interface,
a class storing a lambda in a field, and a class whose methods exercise
subsumption on interface arguments.  ``SELFCALL`` is a functional
interface whose method type allows a lambda to invoke its own argument,
giving well-typed diverging programs.

``IMP_TABLE`` is the two-class imperative fixture; ``IMP_LOOP_TABLE``
adds a class with a self-recursive method that never allocates, so its
divergence is certifiable by cycle detection.
"""
from __future__ import annotations

from itertools import product
from typing import Tuple

from ..util import EMPTY_MAP
from .syntax import (
    Cast,
    EnvConfig,
    FieldAccess,
    FieldAssign,
    FJExpr,
    Invoke,
    Lambda,
    MemConfig,
    New,
    Var,
)
from .table import ClassDecl, ClassTable, InterfaceDecl, MethodDef
from .typing import FJTypeError, fj_typecheck, impfj_typecheck
from ..util import FrozenMap

IDENTITY_LAMBDA = Lambda(("x",), Var("x"))

INTEROP_TABLE = ClassTable(
    classes=(
        ClassDecl("A"),
        ClassDecl("C", fields=(("J", "f"),)),
        ClassDecl("D", methods=(
            MethodDef("m", (("I", "y"),), "D",
                      Invoke(New("D", ()), "n", (Var("y"),))),
            MethodDef("n", (("J", "y"),), "D", New("D", ())),
        )),
    ),
    interfaces=(
        InterfaceDecl("J"),
        InterfaceDecl("I", extends=("J",), methods=(("m", ("A",), "A"),)),
        InterfaceDecl("K", methods=(("m", ("K",), "K"),)),
    ),
)

# (<K>\x. x.m(x)).m(\x. x.m(x)) is well-typed at K and diverges
SELF_INVOKE = Lambda(("x",), Invoke(Var("x"), "m", (Var("x"),)))
FJ_OMEGA = Invoke(Cast("K", SELF_INVOKE), "m", (SELF_INVOKE,))

IMP_TABLE = ClassTable(
    classes=(
        ClassDecl("A"),
        ClassDecl("B", fields=(("A", "f"),), methods=(
            MethodDef("get", (), "A", FieldAccess(Var("this"), "f")),
            MethodDef("set", (("A", "x"),), "A",
                      FieldAssign(Var("this"), "f", Var("x"))),
            MethodDef("getafter", (("A", "y"),), "A",
                      FieldAccess(Var("this"), "f")),
            MethodDef("test", (), "A",
                      Invoke(Var("this"), "getafter",
                             (FieldAssign(Var("this"), "f", New("A", ())),))),
        )),
    ),
)

IMP_LOOP_TABLE = ClassTable(
    classes=IMP_TABLE.classes + (
        ClassDecl("L", methods=(
            MethodDef("loop", (), "L", Invoke(Var("this"), "loop", ())),
        )),
    ),
)

TABLES = {
    "interop": INTEROP_TABLE,
    "imp": IMP_TABLE,
    "imp-loop": IMP_LOOP_TABLE,
}


def enumerate_fj(ct: ClassTable, depth: int,
                 lam_pool: Tuple[FJExpr, ...] = (IDENTITY_LAMBDA,)) -> tuple:
    """Closed functional-variant expressions of bounded depth."""
    classes = tuple(c.name for c in ct.classes)
    types = ct.all_types()
    field_names = {n for c in classes for _, n in (ct.fields(c) or ())}
    method_sigs = {(m.name, len(m.params)) for c in ct.classes for m in c.methods}
    method_sigs |= {(s[0], len(s[1])) for i in ct.interfaces
                    for s in ct.interface_methods(i.name)}

    def level(d: int) -> tuple:
        if d <= 1:
            return tuple(New(c, ()) for c in classes if not ct.fields(c)) + lam_pool
        below = level(d - 1)
        out = list(below)
        for c in classes:
            arity = len(ct.fields(c) or ())
            if arity == 0 or arity > 2:
                continue
            for combo in product(below, repeat=arity):
                out.append(New(c, combo))
        for e in below:
            for t in types:
                out.append(Cast(t, e))
            if isinstance(e, Lambda):
                continue
            for fname in field_names:
                out.append(FieldAccess(e, fname))
            for mname, arity in method_sigs:
                if arity == 0:
                    out.append(Invoke(e, mname, ()))
                elif arity == 1:
                    for arg in below:
                        out.append(Invoke(e, mname, (arg,)))
        return tuple(dict.fromkeys(out))

    return level(depth)


def fj_typed_corpus(ct: ClassTable, depth: int) -> tuple:
    out = []
    for e in enumerate_fj(ct, depth):
        try:
            fj_typecheck(ct, {}, e)
        except FJTypeError:
            continue
        out.append(EnvConfig(EMPTY_MAP, e))
    return tuple(dict.fromkeys(out))


def enumerate_impfj(ct: ClassTable, depth: int) -> tuple:
    """Closed imperative expressions of bounded depth."""
    classes = tuple(c.name for c in ct.classes)
    method_sigs = {m for c in ct.classes for m in
                   ((md.name, len(md.params)) for md in c.methods)}
    field_names = {n for c in classes for _, n in (ct.fields(c) or ())}

    def level(d: int) -> tuple:
        if d <= 1:
            return tuple(New(c, ()) for c in classes if not ct.fields(c))
        below = level(d - 1)
        out = list(below)
        for c in classes:
            arity = len(ct.fields(c) or ())
            if arity == 0 or arity > 2:
                continue
            for combo in product(below, repeat=arity):
                out.append(New(c, combo))
        for e in below:
            for fname in field_names:
                out.append(FieldAccess(e, fname))
            for e2 in below:
                for fname in field_names:
                    out.append(FieldAssign(e, fname, e2))
            for mname, arity in method_sigs:
                if arity == 0:
                    out.append(Invoke(e, mname, ()))
                elif arity == 1:
                    for arg in below:
                        out.append(Invoke(e, mname, (arg,)))
        return tuple(dict.fromkeys(out))

    return level(depth)


def impfj_typed_corpus(ct: ClassTable, depth: int) -> tuple:
    from .syntax import EMPTY_MEMORY

    out = []
    for e in enumerate_impfj(ct, depth):
        try:
            impfj_typecheck(ct, {}, FrozenMap(), e)
        except FJTypeError:
            continue
        out.append(MemConfig(EMPTY_MEMORY, e))
    return tuple(dict.fromkeys(out))
