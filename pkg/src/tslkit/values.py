"""Dynamic values and the binding of literals to implementations.

Values are plain Python data: ``bool``, ``int``, ``float``, ``str``,
``tuple`` (of values), and ``None`` for unit.  Equality is structural;
Booleans are distinguished from integers by exact type.
"""

from __future__ import annotations

from typing import Callable, Mapping

from .errors import ArityMismatch, MissingSignal, NotBoolean, UnboundLiteral
from .formula import Apply, FunctionTerm, Signal

Value = bool | int | float | str | tuple | None
Valuation = Mapping[str, Value]


class Assignment:
    """Maps literal names to (arity, implementation) and cells to initial
    values.  Immutable after construction; implementations must be pure."""

    def __init__(
        self,
        impls: Mapping[str, tuple[int, Callable[..., Value]]],
        cell_init: Mapping[str, Value] | None = None,
    ):
        self._impls = dict(impls)
        self._cell_init = dict(cell_init or {})

    @property
    def cell_init(self) -> dict[str, Value]:
        return dict(self._cell_init)

    def lookup(self, literal: str, arity: int) -> Callable[..., Value]:
        entry = self._impls.get(literal)
        if entry is None:
            raise UnboundLiteral(f"no implementation bound for {literal!r}")
        bound_arity, fn = entry
        if bound_arity != arity:
            raise ArityMismatch(
                f"{literal!r} bound with arity {bound_arity}, applied to {arity} args"
            )
        return fn

    def initial(self, cell: str) -> Value:
        if cell not in self._cell_init:
            raise MissingSignal(f"no initial value for cell {cell!r}")
        return self._cell_init[cell]


def eval_term(
    t: FunctionTerm, inputs: Valuation, cells: Valuation, a: Assignment
) -> Value:
    """Bottom-up evaluation of a function term against one step's valuations."""
    if isinstance(t, Signal):
        if t.name in inputs:
            return inputs[t.name]
        if t.name in cells:
            return cells[t.name]
        raise MissingSignal(f"signal {t.name!r} not present in the valuation")
    fn = a.lookup(t.literal, len(t.args))
    return fn(*(eval_term(x, inputs, cells, a) for x in t.args))


def eval_pred(
    p: FunctionTerm, inputs: Valuation, cells: Valuation, a: Assignment
) -> bool:
    """Evaluate a predicate term; the result must be a Boolean."""
    v = eval_term(p, inputs, cells, a)
    if type(v) is not bool:
        name = p.literal if isinstance(p, Apply) else p.name
        raise NotBoolean(f"{name!r} evaluated to non-Boolean {v!r}")
    return v
