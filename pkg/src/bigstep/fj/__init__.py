from .syntax import (
    Cast,
    EMPTY_MEMORY,
    EnvConfig,
    FieldAccess,
    FieldAssign,
    FJExpr,
    FJValue,
    Invoke,
    LamVal,
    Lambda,
    MemConfig,
    Memory,
    MemResult,
    New,
    ObjIdRef,
    ObjState,
    ObjVal,
    Var,
    show_fj,
    subst_expr,
)
from .table import ClassDecl, ClassTable, InterfaceDecl, MethodDef
from .typing import (
    FJTypeError,
    class_table_wf,
    fj_indexed_predicate,
    fj_typecheck,
    impfj_indexed_predicate,
    impfj_typecheck,
    memory_sigma,
    memory_well_typed,
    value_has_type,
)
from .semantics import (
    FJSemantics,
    ImpFJSemantics,
    direct_eval_fj,
    direct_eval_imp,
    fj_semantics,
    impfj_semantics,
)
from .fixtures import (
    FJ_OMEGA,
    IDENTITY_LAMBDA,
    IMP_LOOP_TABLE,
    IMP_TABLE,
    INTEROP_TABLE,
    TABLES,
    enumerate_fj,
    enumerate_impfj,
    fj_typed_corpus,
    impfj_typed_corpus,
)
from .parser import FJParseError, parse_class_table, parse_fj_expr
