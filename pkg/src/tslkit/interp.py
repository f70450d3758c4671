"""Step-wise execution of a validated control flow model.

Cells delay by one step: readers see the value written at the previous
step, and the initial value at step 0.  Outputs read the current step's
wires directly.  Alongside output values, every step reconstructs the
syntactic update term fired into each output and cell, which is what the
trace monitor consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cfm import Cfm, Function, Logic, Mutex, OneHot, Predicate, topo_order
from .errors import MissingSignal, MutexNotOneHot, NotBoolean, SimulationError, TslError
from .formula import Apply, FunctionTerm, Signal
from .monitor import FiniteTrace, Step
from .values import Assignment, Valuation, Value


@dataclass(frozen=True)
class InterpState:
    cell_values: dict[str, Value]

    @staticmethod
    def initial(m: Cfm, a: Assignment) -> "InterpState":
        return InterpState({c: a.initial(c) for c in sorted(m.cells)})


@dataclass(frozen=True)
class StepResult:
    outputs: dict[str, Value]
    state: InterpState
    fired: dict[str, FunctionTerm]


def step(
    m: Cfm,
    a: Assignment,
    st: InterpState,
    inputs: Valuation,
    order: list[str] | None = None,
) -> StepResult:
    """Evaluate one synchronous step.

    ``order`` may supply any valid topological order; results are
    identical for all of them.
    """
    wires: dict[str, Value] = {}
    selected: dict[str, int] = {}  # mutex vertex -> chosen 1-based branch

    def value_of(node: str) -> Value:
        if node in wires:
            return wires[node]
        if node in m.cells:
            return st.cell_values[node]
        if node not in inputs:
            raise MissingSignal(f"input {node!r} not bound")
        return inputs[node]

    for vid in order if order is not None else topo_order(m):
        label = m.vertices[vid]
        args = [value_of(s) for s in m.sources_of(vid)]
        if isinstance(label, (Function, Predicate)):
            v = a.lookup(label.name, label.arity)(*args)
            if isinstance(label, Predicate) and type(v) is not bool:
                raise NotBoolean(f"{label.name!r} returned non-Boolean {v!r}")
        elif isinstance(label, Logic):
            if label.op == "not":
                v = not args[0]
            elif label.op == "and":
                v = args[0] and args[1]
            else:
                v = args[0] or args[1]
        elif isinstance(label, OneHot):
            true_count = sum(1 for x in args if x)
            if true_count != 1:
                raise MutexNotOneHot(vid, true_count)
            v = next(i for i, x in enumerate(args, start=1) if x)
        elif isinstance(label, Mutex):
            sel = args[0]
            if not isinstance(sel, int) or not 1 <= sel <= label.k:
                raise MutexNotOneHot(vid, 0 if not isinstance(sel, int) else sel)
            selected[vid] = sel
            v = args[sel]
        else:  # pragma: no cover
            raise TslError(f"unknown vertex label {label!r}")
        wires[vid] = v

    def rebuild(node: str) -> FunctionTerm:
        """The update term a sink receives: follow the chosen mutex
        branches backwards until inputs and cells."""
        if node in m.inputs or node in m.cells:
            return Signal(node)
        label = m.vertices[node]
        if isinstance(label, Mutex):
            branch = m.sources_of(node)[selected[node]]
            return rebuild(branch)
        if isinstance(label, (Function, Predicate)):
            return Apply(label.name, tuple(rebuild(s) for s in m.sources_of(node)))
        # logic / one-hot feeding a sink: expose the operator as a literal
        name = label.op if isinstance(label, Logic) else f"oneHot{label.k}"
        return Apply(name, tuple(rebuild(s) for s in m.sources_of(node)))

    outputs = {o: value_of(m.sources_of(o)[0]) for o in sorted(m.outputs)}
    next_cells = {c: value_of(m.sources_of(c)[0]) for c in sorted(m.cells)}
    fired = {s: rebuild(m.sources_of(s)[0]) for s in sorted(m.outputs | m.cells)}
    return StepResult(outputs, InterpState(next_cells), fired)


def run(
    m: Cfm, a: Assignment, trace_inputs: list[Valuation]
) -> tuple[list[dict[str, Value]], FiniteTrace]:
    """Fold :func:`step` over a list of input valuations.

    Returns the per-step output valuations and the monitor-ready trace;
    a failing step raises :class:`SimulationError` with its index.
    """
    order = topo_order(m)
    st = InterpState.initial(m, a)
    out_trace: list[dict[str, Value]] = []
    steps: list[Step] = []
    for i, inputs in enumerate(trace_inputs):
        try:
            res = step(m, a, st, inputs, order=order)
        except TslError as e:
            raise SimulationError(i, e) from e
        out_trace.append(res.outputs)
        steps.append(Step(dict(inputs), res.fired))
        st = res.state
    return out_trace, FiniteTrace(tuple(steps))
