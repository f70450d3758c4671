"""Parser for the plain-text specification format.

A file holds named definitions (optionally parametric macros) followed by
``initially/always`` ``assume/guarantee`` blocks::

    press x = !x && X x;

    always guarantee {
      RESET <-> [ time <- zero() ];
    }

Operators, loosest to tightest: ``->`` ``<->``; ``U`` ``W`` ``R``;
``||``; ``&&``; prefix ``!`` ``X`` ``F`` ``G``; application by
juxtaposition.  Macros are expanded by capture-free substitution;
:func:`expand` folds the sections into one closed formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import formula as F
from .errors import (
    NotATerm,
    RecursiveMacro,
    TslSyntaxError,
    UndefinedName,
    WrongMacroArity,
)

SECTION_KINDS = (
    "initially assume",
    "always assume",
    "initially guarantee",
    "always guarantee",
)


# ---------------------------------------------------------------------------
# Raw expression tree.  Parsing is context-free; whether an identifier is a
# signal, literal, or macro is only decided during expansion/elaboration.


@dataclass(frozen=True)
class EId:
    name: str


@dataclass(frozen=True)
class EConst:
    name: str  # written `name()`


@dataclass(frozen=True)
class EApp:
    head: str
    args: tuple


@dataclass(frozen=True)
class EUpd:
    sink: str
    rhs: object


@dataclass(frozen=True)
class EBool:
    value: bool


@dataclass(frozen=True)
class EUnary:
    op: str  # ! X F G
    arg: object


@dataclass(frozen=True)
class EBinary:
    op: str  # && || -> <-> U W R
    left: object
    right: object


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple[str, ...]
    body: object


@dataclass(frozen=True)
class SpecFile:
    definitions: tuple[Definition, ...]
    sections: dict[str, list]

    def section(self, kind: str) -> list:
        return self.sections.get(kind, [])


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+|--[^\n]*)
    | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    | (?P<op><->|<-|->|&&|\|\||[!()\[\]{};=])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"initially", "always", "assume", "guarantee", "true", "false"}
_UNARY = {"X", "F", "G"}
_UNTIL_OPS = {"U", "W", "R"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # "ident", "op", "eof"
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos, line, bol = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise TslSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - bol + 1
            )
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), line, m.start() - bol + 1))
        nl = text.count("\n", m.start(), m.end())
        if nl:
            line += nl
            bol = text.rindex("\n", m.start(), m.end()) + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, len(text) - bol + 1))
    return toks


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str):
        raise TslSyntaxError(msg, self.tok.line, self.tok.col)

    def advance(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind != "eof" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> _Tok:
        if self.tok.kind == "eof" or self.tok.text != text:
            self.error(f"expected {text!r}, found {self.tok.text or 'end of file'!r}")
        return self.advance()

    # --- file structure ----------------------------------------------------

    def parse_file(self) -> SpecFile:
        definitions: list[Definition] = []
        sections: dict[str, list] = {k: [] for k in SECTION_KINDS}
        seen = set()
        while self.tok.kind != "eof":
            if self.tok.text in ("initially", "always"):
                kind, stmts = self.parse_section()
                sections[kind].extend(stmts)
                continue
            d = self.parse_definition()
            if d.name in seen:
                self.error(f"duplicate definition of {d.name!r}")
            seen.add(d.name)
            definitions.append(d)
        return SpecFile(tuple(definitions), sections)

    def parse_section(self):
        when = self.advance().text
        what = self.tok.text
        if what not in ("assume", "guarantee"):
            self.error("expected 'assume' or 'guarantee'")
        self.advance()
        self.expect("{")
        stmts = []
        while not self.accept("}"):
            stmts.append(self.parse_expr())
            self.expect(";")
        return f"{when} {what}", stmts

    def parse_definition(self) -> Definition:
        if self.tok.kind != "ident" or self.tok.text in _KEYWORDS:
            self.error(f"expected a definition or section, found {self.tok.text!r}")
        name = self.advance().text
        params = []
        while self.tok.kind == "ident" and self.tok.text != "=":
            params.append(self.advance().text)
        self.expect("=")
        body = self.parse_expr()
        self.expect(";")
        return Definition(name, tuple(params), body)

    # --- expressions -------------------------------------------------------

    def parse_expr(self):
        return self.parse_implies()

    def parse_implies(self):
        left = self.parse_until()
        for op in ("->", "<->"):
            if self.tok.text == op and self.tok.kind == "op":
                self.advance()
                return EBinary(op, left, self.parse_implies())
        return left

    def parse_until(self):
        left = self.parse_or()
        if self.tok.kind == "ident" and self.tok.text in _UNTIL_OPS:
            op = self.advance().text
            return EBinary(op, left, self.parse_until())
        return left

    def parse_or(self):
        left = self.parse_and()
        while self.tok.text == "||":
            self.advance()
            left = EBinary("||", left, self.parse_and())
        return left

    def parse_and(self):
        left = self.parse_unary()
        while self.tok.text == "&&":
            self.advance()
            left = EBinary("&&", left, self.parse_unary())
        return left

    def parse_unary(self):
        if self.tok.text == "!":
            self.advance()
            return EUnary("!", self.parse_unary())
        if self.tok.kind == "ident" and self.tok.text in _UNARY:
            # Only a prefix operator when an operand follows; a bare
            # trailing `X` would be an identifier, which atom() handles.
            op = self.advance().text
            return EUnary(op, self.parse_unary())
        return self.parse_application()

    _ATOM_STARTS = ("(", "[")

    def parse_application(self):
        head = self.parse_atom()
        args = []
        while (
            self.tok.text in self._ATOM_STARTS and self.tok.kind == "op"
        ) or (self.tok.kind == "ident" and self.tok.text not in _UNTIL_OPS):
            args.append(self.parse_atom())
        if not args:
            return head
        if not isinstance(head, (EId, EConst)):
            self.error("only a name can be applied to arguments")
        return EApp(head.name, tuple(args))

    def parse_atom(self):
        if self.accept("("):
            e = self.parse_expr()
            self.expect(")")
            return e
        if self.accept("["):
            if self.tok.kind != "ident":
                self.error("expected a signal name in update")
            sink = self.advance().text
            self.expect("<-")
            rhs = self.parse_expr()
            self.expect("]")
            return EUpd(sink, rhs)
        if self.tok.kind == "ident":
            name = self.advance().text
            if name == "true":
                return EBool(True)
            if name == "false":
                return EBool(False)
            if (
                self.tok.kind == "op"
                and self.tok.text == "("
                and self.toks[self.i + 1].text == ")"
            ):
                # `name()` is a constant; a lone `(` starts a grouped
                # argument instead.
                self.i += 2
                return EConst(name)
            return EId(name)
        self.error(f"unexpected {self.tok.text or 'end of file'!r}")


def parse_spec(text: str) -> SpecFile:
    """Parse a full specification file."""
    return _Parser(text).parse_file()


def parse_formula(text: str) -> F.Formula:
    """Parse a single closed (macro-free) formula."""
    p = _Parser(text)
    e = p.parse_expr()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return _to_formula(e)


def parse_term(text: str) -> F.FunctionTerm:
    """Parse a single function term."""
    p = _Parser(text)
    e = p.parse_expr()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return _to_term(e)


# ---------------------------------------------------------------------------
# Macro expansion


def _references(e, names: set[str]) -> set[str]:
    """Definition names referenced anywhere inside an expression."""
    out = set()

    def walk(x):
        if isinstance(x, (EId, EConst)) and x.name in names:
            out.add(x.name)
        elif isinstance(x, EApp):
            if x.head in names:
                out.add(x.head)
            for a in x.args:
                walk(a)
        elif isinstance(x, EUpd):
            walk(x.rhs)
        elif isinstance(x, EUnary):
            walk(x.arg)
        elif isinstance(x, EBinary):
            walk(x.left)
            walk(x.right)

    walk(e)
    return out


def _substitute(e, mapping: dict):
    if isinstance(e, EId):
        return mapping.get(e.name, e)
    if isinstance(e, (EConst, EBool)):
        return e
    if isinstance(e, EUpd):
        return EUpd(e.sink, _substitute(e.rhs, mapping))
    if isinstance(e, EUnary):
        return EUnary(e.op, _substitute(e.arg, mapping))
    if isinstance(e, EBinary):
        return EBinary(e.op, _substitute(e.left, mapping), _substitute(e.right, mapping))
    if isinstance(e, EApp):
        args = tuple(_substitute(a, mapping) for a in e.args)
        head = mapping.get(e.head)
        if head is None:
            return EApp(e.head, args)
        # A parameter in head position: its argument must itself name a
        # function, possibly partially applied.
        if isinstance(head, (EId, EConst)):
            return EApp(head.name, args)
        if isinstance(head, EApp):
            return EApp(head.head, head.args + args)
        raise NotATerm(f"{e.head!r} is applied but its argument is not a function name")
    raise TypeError(f"not an expression: {e!r}")


def _expand_expr(e, env: dict[str, Definition]):
    if isinstance(e, EId):
        d = env.get(e.name)
        if d is None:
            return e
        if d.params:
            raise WrongMacroArity(
                f"macro {d.name!r} expects {len(d.params)} arguments, got 0"
            )
        return d.body
    if isinstance(e, EConst):
        d = env.get(e.name)
        if d is None:
            return e
        if d.params:
            raise WrongMacroArity(
                f"macro {d.name!r} expects {len(d.params)} arguments, got 0"
            )
        return d.body
    if isinstance(e, EBool):
        return e
    if isinstance(e, EUpd):
        return EUpd(e.sink, _expand_expr(e.rhs, env))
    if isinstance(e, EUnary):
        return EUnary(e.op, _expand_expr(e.arg, env))
    if isinstance(e, EBinary):
        return EBinary(e.op, _expand_expr(e.left, env), _expand_expr(e.right, env))
    if isinstance(e, EApp):
        args = tuple(_expand_expr(a, env) for a in e.args)
        d = env.get(e.head)
        if d is None:
            return EApp(e.head, args)
        if len(args) != len(d.params):
            raise WrongMacroArity(
                f"macro {d.name!r} expects {len(d.params)} arguments, got {len(args)}"
            )
        return _substitute(d.body, dict(zip(d.params, args)))
    raise TypeError(f"not an expression: {e!r}")


def resolve_macros(spec: SpecFile) -> dict[str, Definition]:
    """Fully expand every definition body; forward references are allowed
    as long as the definition dependency graph is acyclic."""
    by_name = {d.name: d for d in spec.definitions}
    env: dict[str, Definition] = {}
    state: dict[str, int] = {}  # 1 = in progress, 2 = done

    def resolve(name: str):
        if state.get(name) == 2:
            return
        if state.get(name) == 1:
            raise RecursiveMacro(f"definition {name!r} depends on itself")
        state[name] = 1
        d = by_name[name]
        deps = _references(d.body, set(by_name)) - set(d.params)
        for dep in sorted(deps):
            resolve(dep)
        env[name] = Definition(d.name, d.params, _expand_expr(d.body, env))
        state[name] = 2

    for d in spec.definitions:
        resolve(d.name)
    return env


# ---------------------------------------------------------------------------
# Elaboration raw expression -> formula / term

_FORMULA_UNARY = {"!": F.Not, "X": F.Next, "F": F.Finally, "G": F.Globally}
_FORMULA_BINARY = {
    "&&": F.And,
    "||": F.Or,
    "->": F.Implies,
    "<->": F.Iff,
    "U": F.Until,
    "W": F.WeakUntil,
    "R": F.Release,
}


def _to_term(e) -> F.FunctionTerm:
    if isinstance(e, EId):
        return F.Signal(e.name)
    if isinstance(e, EConst):
        return F.Apply(e.name)
    if isinstance(e, EApp):
        return F.Apply(e.head, tuple(_to_term(a) for a in e.args))
    raise NotATerm(f"not a function term: {e!r}")


def _to_formula(e) -> F.Formula:
    if isinstance(e, EBool):
        return F.BoolConst(e.value)
    if isinstance(e, EId):
        return F.PredicateLit(F.Signal(e.name))
    if isinstance(e, EConst):
        return F.PredicateLit(F.Apply(e.name))
    if isinstance(e, EApp):
        try:
            args = tuple(_to_term(a) for a in e.args)
        except NotATerm:
            raise UndefinedName(
                f"{e.head!r} is applied to formula arguments but is not a "
                f"defined macro"
            ) from None
        return F.PredicateLit(F.Apply(e.head, args))
    if isinstance(e, EUpd):
        return F.UpdateLit(e.sink, _to_term(e.rhs))
    if isinstance(e, EUnary):
        return _FORMULA_UNARY[e.op](_to_formula(e.arg))
    if isinstance(e, EBinary):
        return _FORMULA_BINARY[e.op](_to_formula(e.left), _to_formula(e.right))
    raise TypeError(f"not an expression: {e!r}")


def expand_statement(spec_or_env, e) -> F.Formula:
    env = spec_or_env if isinstance(spec_or_env, dict) else resolve_macros(spec_or_env)
    return _to_formula(_expand_expr(e, env))


def expand(spec: SpecFile) -> F.Formula:
    """Expand all macros and fold the sections into one formula.

    With assumptions:  (A_init && G all-assumes) -> (G_init && G all-guarantees);
    without, just the right-hand side.
    """
    env = resolve_macros(spec)

    def section(kind: str) -> list[F.Formula]:
        return [expand_statement(env, s) for s in spec.section(kind)]

    g_init = section("initially guarantee")
    g_always = section("always guarantee")
    a_init = section("initially assume")
    a_always = section("always assume")

    guarantee = _init_and_global(g_init, g_always)
    if not a_init and not a_always:
        return guarantee
    return F.Implies(_init_and_global(a_init, a_always), guarantee)


def _init_and_global(init: list[F.Formula], always: list[F.Formula]) -> F.Formula:
    if not always:
        return F.conj(init)
    boxed = F.Globally(F.conj(always))
    if not init:
        return boxed
    return F.And(F.conj(init), boxed)
