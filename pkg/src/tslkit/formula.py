"""Abstract syntax for temporal stream formulas.

Terms are built from signal reads and applications of uninterpreted
function/predicate literals.  Formulas combine predicate atoms and update
atoms (``[ sink <- term ]``) with Boolean and temporal operators.  Derived
operators are kept in the tree so pretty-printing can reproduce source
text; :func:`desugar` rewrites them into the core fragment
(atoms, ``true/false``, ``!``, ``&&``, ``X``, ``U``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityConflict

# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Signal:
    """A read of an input signal or cell."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Apply:
    """Application of a function/predicate literal; constants have no args."""

    literal: str
    args: tuple["FunctionTerm", ...] = ()

    def __str__(self):
        return pretty_term(self)


FunctionTerm = Signal | Apply

# A predicate term is a function term used in Boolean position: either an
# applied literal (classified as a predicate) or a bare Boolean signal read.
PredicateTerm = FunctionTerm


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class PredicateLit:
    term: PredicateTerm


@dataclass(frozen=True)
class UpdateLit:
    sink: str
    term: FunctionTerm


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Next:
    arg: "Formula"


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class WeakUntil:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Release:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Finally:
    arg: "Formula"


@dataclass(frozen=True)
class Globally:
    arg: "Formula"


Formula = (
    PredicateLit
    | UpdateLit
    | BoolConst
    | Not
    | And
    | Or
    | Implies
    | Iff
    | Xor
    | Next
    | Until
    | WeakUntil
    | Release
    | Finally
    | Globally
)

_NODE_CLASSES = (
    Signal, Apply, PredicateLit, UpdateLit, BoolConst, Not, And, Or,
    Implies, Iff, Xor, Next, Until, WeakUntil, Release, Finally, Globally,
)


def _install_fast_identity():
    """Cache structural hashes and gate equality on them.

    Monitoring hammers formula nodes with hashing (memo tables) and
    equality (simplifier); recomputing recursive hashes dominates the
    runtime otherwise.
    """
    for cls in _NODE_CLASSES:
        base_hash, base_eq = cls.__hash__, cls.__eq__

        def cached_hash(self, _bh=base_hash):
            h = self.__dict__.get("_hash")
            if h is None:
                h = _bh(self)
                object.__setattr__(self, "_hash", h)
            return h

        def fast_eq(self, other, _be=base_eq):
            if self is other:
                return True
            if type(self) is not type(other):
                return NotImplemented
            if hash(self) != hash(other):
                return False
            return _be(self, other)

        cls.__hash__ = cached_hash
        cls.__eq__ = fast_eq


_install_fast_identity()

TRUE = BoolConst(True)
FALSE = BoolConst(False)


# ---------------------------------------------------------------------------
# Simplifying constructors (sound Boolean rewrites only)

# Structurally equal nodes built here are interned to one canonical
# instance, so the monitor's caches can compare by identity.
_INTERN: dict["Formula", "Formula"] = {}
_INTERN_LIMIT = 1_000_000


def interned(f: Formula) -> Formula:
    g = _INTERN.get(f)
    if g is not None:
        return g
    if len(_INTERN) >= _INTERN_LIMIT:
        _INTERN.clear()
    _INTERN[f] = f
    return f


def not_(f: Formula) -> Formula:
    if isinstance(f, BoolConst):
        return BoolConst(not f.value)
    if isinstance(f, Not):
        return f.arg
    return interned(Not(f))


def and_(a: Formula, b: Formula) -> Formula:
    if isinstance(a, BoolConst):
        return b if a.value else FALSE
    if isinstance(b, BoolConst):
        return a if b.value else FALSE
    # compare whole conjunct sets so duplicate or complementary conjuncts
    # are caught anywhere in a chain, not just at the top
    sa, sb = _conjuncts(a), _conjuncts(b)
    if sb <= sa:
        return a
    if sa <= sb:
        return b
    small, large = (sa, sb) if len(sa) <= len(sb) else (sb, sa)
    for x in small:
        if (x.arg if isinstance(x, Not) else Not(x)) in large:
            return FALSE
    out = interned(And(a, b))
    if "_conjs" not in out.__dict__:
        object.__setattr__(out, "_conjs", sa | sb)
    return out


def _conjuncts(f: Formula) -> frozenset:
    """The set of conjuncts of a conjunction chain, cached per node."""
    if not isinstance(f, And):
        return frozenset((f,))
    cached = f.__dict__.get("_conjs")
    if cached is None:
        cached = _conjuncts(f.left) | _conjuncts(f.right)
        object.__setattr__(f, "_conjs", cached)
    return cached


def or_(a: Formula, b: Formula) -> Formula:
    return not_(and_(not_(a), not_(b)))


def conj(formulas) -> Formula:
    """Right-nested conjunction; empty input yields true."""
    formulas = list(formulas)
    if not formulas:
        return TRUE
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


# ---------------------------------------------------------------------------
# Desugaring

_CORE = (PredicateLit, UpdateLit, BoolConst)


def desugar(f: Formula) -> Formula:
    """Rewrite into the core fragment: atoms, not, and, next, until.

    Idempotent, and verdict-preserving for the trace monitor.
    """
    # built through the simplifying constructors so that double negations
    # and constants never survive into the core form
    if isinstance(f, _CORE):
        return interned(f)
    if isinstance(f, Not):
        return not_(desugar(f.arg))
    if isinstance(f, And):
        return and_(desugar(f.left), desugar(f.right))
    if isinstance(f, Or):
        return or_(desugar(f.left), desugar(f.right))
    if isinstance(f, Implies):
        return not_(and_(desugar(f.left), not_(desugar(f.right))))
    if isinstance(f, Iff):
        a, b = desugar(f.left), desugar(f.right)
        return and_(not_(and_(a, not_(b))), not_(and_(b, not_(a))))
    if isinstance(f, Xor):
        return not_(desugar(Iff(f.left, f.right)))
    if isinstance(f, Next):
        return interned(Next(desugar(f.arg)))
    if isinstance(f, Until):
        return _until(desugar(f.left), desugar(f.right))
    if isinstance(f, Finally):
        return _until(TRUE, desugar(f.arg))
    if isinstance(f, Globally):
        return not_(_until(TRUE, not_(desugar(f.arg))))
    if isinstance(f, Release):
        return not_(_until(not_(desugar(f.left)), not_(desugar(f.right))))
    if isinstance(f, WeakUntil):
        a, b = desugar(f.left), desugar(f.right)
        return not_(_until(not_(b), and_(not_(a), not_(b))))
    raise TypeError(f"not a formula: {f!r}")


def _until(a: Formula, b: Formula) -> Formula:
    if isinstance(b, BoolConst):
        return b
    if a == FALSE:
        return b
    return interned(Until(a, b))


# ---------------------------------------------------------------------------
# Signal classification


@dataclass(frozen=True)
class Classification:
    inputs: frozenset[str]
    outputs: frozenset[str]
    cells: frozenset[str]
    functions: frozenset[str]
    predicates: frozenset[str]


def classify_signals(f: Formula) -> Classification:
    """Infer the role of every name occurring in a (macro-free) formula.

    Signals written by some update and also read anywhere are cells;
    written-only names are outputs; read-only names are inputs.  Applied
    literals at Boolean root position are predicates, all others
    functions.  Raises :class:`ArityConflict` on inconsistent use.
    """
    read: set[str] = set()
    written: set[str] = set()
    pred_heads: set[str] = set()
    func_heads: set[str] = set()
    arities: dict[str, int] = {}

    def see_literal(name: str, arity: int):
        old = arities.setdefault(name, arity)
        if old != arity:
            raise ArityConflict(
                f"literal {name!r} applied with arity {arity} and {old}"
            )

    def walk_term(t: FunctionTerm, boolean_root: bool = False):
        if isinstance(t, Signal):
            read.add(t.name)
            return
        see_literal(t.literal, len(t.args))
        (pred_heads if boolean_root else func_heads).add(t.literal)
        for a in t.args:
            walk_term(a)

    def walk(g: Formula):
        if isinstance(g, PredicateLit):
            walk_term(g.term, boolean_root=True)
        elif isinstance(g, UpdateLit):
            written.add(g.sink)
            walk_term(g.term)
        elif isinstance(g, BoolConst):
            pass
        elif isinstance(g, (Not, Next, Finally, Globally)):
            walk(g.arg)
        else:
            walk(g.left)
            walk(g.right)

    walk(f)

    clash = (read | written) & (pred_heads | func_heads)
    if clash:
        raise ArityConflict(
            f"names used as both signal and applied literal: {sorted(clash)}"
        )

    # A literal seen in both positions gets its home with the predicates.
    return Classification(
        inputs=frozenset(read - written),
        outputs=frozenset(written - read),
        cells=frozenset(read & written),
        functions=frozenset(func_heads - pred_heads),
        predicates=frozenset(pred_heads),
    )


# ---------------------------------------------------------------------------
# Pretty-printing
#
# Binding strength, loosest to tightest:
#   0  ->  <->        (right-associative)
#   1  U  W  R        (right-associative)
#   2  ||
#   3  &&
#   4  !  X  F  G     (prefix)
#   5  application and atoms

_PREFIX = {Not: "!", Next: "X", Finally: "F", Globally: "G"}
_INFIX = {
    Implies: ("->", 0),
    Iff: ("<->", 0),
    Until: ("U", 1),
    WeakUntil: ("W", 1),
    Release: ("R", 1),
    Or: ("||", 2),
    And: ("&&", 3),
}


def pretty_term(t: FunctionTerm) -> str:
    if isinstance(t, Signal):
        return t.name
    if not t.args:
        return f"{t.literal}()"
    return " ".join([t.literal] + [_term_atom(a) for a in t.args])


def _term_atom(t: FunctionTerm) -> str:
    s = pretty_term(t)
    if isinstance(t, Apply) and t.args:
        return f"({s})"
    return s


def pretty(f: Formula) -> str:
    """Render in the plain-text grammar; reparsing yields the same tree.

    The lone exception is ``Xor``, which has no surface syntax and prints
    as its if-and-only-if negation; printing is a fixpoint after one
    parse/print round trip.
    """
    return _pretty(f, 0)


def _pretty(f: Formula, level: int) -> str:
    if isinstance(f, BoolConst):
        return "true" if f.value else "false"
    if isinstance(f, PredicateLit):
        return pretty_term(f.term)
    if isinstance(f, UpdateLit):
        return f"[ {f.sink} <- {pretty_term(f.term)} ]"
    if isinstance(f, Xor):
        return _pretty(Not(Iff(f.left, f.right)), level)
    if type(f) in _PREFIX:
        body = _pretty(f.arg, 4)
        sep = "" if isinstance(f, Not) else " "
        return _paren(f"{_PREFIX[type(f)]}{sep}{body}", 4, level)
    op, prec = _INFIX[type(f)]
    if prec in (0, 1):  # right-associative
        left = _pretty(f.left, prec + 1)
        right = _pretty(f.right, prec)
    else:  # && and || associate to the left
        left = _pretty(f.left, prec)
        right = _pretty(f.right, prec + 1)
    return _paren(f"{left} {op} {right}", prec, level)


def _paren(s: str, prec: int, level: int) -> str:
    return f"({s})" if prec < level else s
