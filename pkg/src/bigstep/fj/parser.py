"""Java-like surface syntax for class tables and expressions.

    table    ::= (class | interface)*
    class    ::= 'class' C ('extends' D)? ('implements' I (',' I)*)?
                 '{' field* method* '}'
    field    ::= T f ';'
    method   ::= T m '(' (T x (',' T x)*)? ')' '{' 'return' expr ';' '}'
    interface::= 'interface' I ('extends' J (',' J)*)? '{' sig* '}'
    sig      ::= T m '(' (T x (',' T x)*)? ')' ';'

    expr     ::= assign
    assign   ::= postfix ('.' f '=' assign)?      imperative only
    postfix  ::= primary ( '.' f | '.' m '(' args ')' )*
    primary  ::= 'new' C '(' args ')' | x | 'this' | '<' T '>' primary
               | '\\' x+ '.' expr | '(' expr ')' | '#' n

Lambdas and casts belong to the functional variant, assignment to the
imperative one; the parser accepts all of them and the typecheckers sort
out the rest.
"""
from __future__ import annotations

import re
from typing import List, Tuple

from .syntax import (
    Cast,
    FieldAccess,
    FieldAssign,
    FJExpr,
    Invoke,
    Lambda,
    New,
    ObjIdRef,
    Var,
)
from .table import ClassDecl, ClassTable, InterfaceDecl, MethodDef


class FJParseError(Exception):
    def __init__(self, message: str, pos: int, text: str):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(=>|[A-Za-z_][A-Za-z0-9_]*|\d+|[{}().,;<>=\\#])")


def _lex(text: str):
    toks: List[Tuple[str, int]] = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            if text[i:].strip():
                raise FJParseError(f"unexpected character {text[i]!r}", i, text)
            break
        toks.append((m.group(1), m.start(1)))
        i = m.end()
    toks.append(("", len(text)))
    return toks


class _P:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def next(self) -> str:
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> str:
        if self.peek() != tok:
            raise FJParseError(
                f"expected {tok!r}, found {self.peek() or 'end of input'!r}",
                self.pos(), self.text)
        return self.next()

    def ident(self) -> str:
        t = self.peek()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t or ""):
            raise FJParseError(f"expected a name, found {t or 'end of input'!r}",
                               self.pos(), self.text)
        return self.next()

    # expressions

    def expr(self) -> FJExpr:
        e = self.postfix()
        if isinstance(e, FieldAccess) and self.peek() == "=":
            self.next()
            return FieldAssign(e.target, e.field, self.expr())
        return e

    def postfix(self) -> FJExpr:
        e = self.primary()
        while self.peek() == ".":
            self.next()
            name = self.ident()
            if self.peek() == "(":
                self.next()
                args = self.args()
                e = Invoke(e, name, args)
            else:
                e = FieldAccess(e, name)
        return e

    def args(self) -> tuple:
        out = []
        if self.peek() != ")":
            out.append(self.expr())
            while self.peek() == ",":
                self.next()
                out.append(self.expr())
        self.expect(")")
        return tuple(out)

    def primary(self) -> FJExpr:
        t = self.peek()
        if t == "new":
            self.next()
            cls = self.ident()
            self.expect("(")
            return New(cls, self.args())
        if t == "<":
            self.next()
            type_ = self.ident()
            self.expect(">")
            return Cast(type_, self.primary())
        if t == "\\":
            self.next()
            params = [self.ident()]
            while self.peek() != ".":
                params.append(self.ident())
            self.expect(".")
            body = self.expr()
            if isinstance(body, Lambda):
                raise FJParseError("lambda body may not be a lambda",
                                   self.pos(), self.text)
            return Lambda(tuple(params), body)
        if t == "(":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        if t == "#":
            self.next()
            n = self.next()
            if not n.isdigit():
                raise FJParseError("expected an object id", self.pos(), self.text)
            return ObjIdRef(int(n))
        return Var(self.ident())

    # declarations

    def table(self) -> ClassTable:
        classes, interfaces = [], []
        while self.peek():
            if self.peek() == "class":
                classes.append(self.class_decl())
            elif self.peek() == "interface":
                interfaces.append(self.interface_decl())
            else:
                raise FJParseError(
                    f"expected a declaration, found {self.peek()!r}",
                    self.pos(), self.text)
        return ClassTable(tuple(classes), tuple(interfaces))

    def class_decl(self) -> ClassDecl:
        self.expect("class")
        name = self.ident()
        superclass = None
        interfaces: tuple = ()
        if self.peek() == "extends":
            self.next()
            superclass = self.ident()
        if self.peek() == "implements":
            self.next()
            names = [self.ident()]
            while self.peek() == ",":
                self.next()
                names.append(self.ident())
            interfaces = tuple(names)
        self.expect("{")
        fields, methods = [], []
        while self.peek() != "}":
            type_ = self.ident()
            name2 = self.ident()
            if self.peek() == ";":
                self.next()
                fields.append((type_, name2))
            else:
                methods.append(self.method_rest(type_, name2))
        self.expect("}")
        return ClassDecl(name, superclass, interfaces, tuple(fields), tuple(methods))

    def method_rest(self, ret: str, name: str) -> MethodDef:
        self.expect("(")
        params = []
        if self.peek() != ")":
            params.append((self.ident(), self.ident()))
            while self.peek() == ",":
                self.next()
                params.append((self.ident(), self.ident()))
        self.expect(")")
        self.expect("{")
        self.expect("return")
        body = self.expr()
        self.expect(";")
        self.expect("}")
        return MethodDef(name, tuple(params), ret, body)

    def interface_decl(self) -> InterfaceDecl:
        self.expect("interface")
        name = self.ident()
        extends: tuple = ()
        if self.peek() == "extends":
            self.next()
            names = [self.ident()]
            while self.peek() == ",":
                self.next()
                names.append(self.ident())
            extends = tuple(names)
        self.expect("{")
        sigs = []
        while self.peek() != "}":
            ret = self.ident()
            mname = self.ident()
            self.expect("(")
            ptypes = []
            if self.peek() != ")":
                ptypes.append(self.ident())
                self.ident()
                while self.peek() == ",":
                    self.next()
                    ptypes.append(self.ident())
                    self.ident()
            self.expect(")")
            self.expect(";")
            sigs.append((mname, tuple(ptypes), ret))
        self.expect("}")
        return InterfaceDecl(name, extends, tuple(sigs))


def parse_fj_expr(text: str) -> FJExpr:
    p = _P(text)
    e = p.expr()
    if p.peek():
        raise FJParseError(f"unexpected trailing input {p.peek()!r}", p.pos(), p.text)
    return e


def parse_class_table(text: str) -> ClassTable:
    return _P(text).table()
