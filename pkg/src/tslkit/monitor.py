"""Three-valued monitoring of formulas over finite traces.

A trace records, per step, the values of all input signals and the one
update fired for every output and cell.  Monitoring desugars the formula
and folds one-step progression over the trace, threading cell contents
through time.  The verdict is Sat, Viol (with the earliest violating
step), or Inconclusive with the residual obligation.

Trace files are line-delimited JSON, one object per step::

    {"in": {"btnMin": false, "dt": 1}, "fired": {"time": "countup time dt"}}

Values are Booleans, numbers, strings, or arrays (read back as tuples);
fired entries map each sink to its update term in the term grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import MissingSignal
from .formula import (
    And,
    BoolConst,
    FALSE,
    Formula,
    FunctionTerm,
    Next,
    Not,
    PredicateLit,
    TRUE,
    Until,
    UpdateLit,
    and_,
    desugar,
    not_,
    or_,
    pretty_term,
)
from .specfile import parse_term
from .values import Assignment, Valuation, Value, eval_pred, eval_term


@dataclass(frozen=True)
class Step:
    inputs: Mapping[str, Value]
    fired: Mapping[str, FunctionTerm]


@dataclass(frozen=True)
class FiniteTrace:
    steps: tuple[Step, ...]

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class Sat:
    pass


@dataclass(frozen=True)
class Viol:
    at_step: int


@dataclass(frozen=True)
class Inconclusive:
    residual: Formula


Verdict = Sat | Viol | Inconclusive


# ---------------------------------------------------------------------------


def cell_stream(trace: FiniteTrace, a: Assignment) -> list[dict[str, Value]]:
    """Cell valuations over time; entry t is what readers see at step t.

    The value written to a cell at step t becomes readable at t + 1, so the
    result has one more entry than the trace has steps.
    """
    stream = [a.cell_init]
    for i, step in enumerate(trace.steps):
        cur = stream[-1]
        nxt = {}
        for c in cur:
            term = step.fired.get(c)
            if term is None:
                raise MissingSignal(f"step {i} fires no update for cell {c!r}")
            nxt[c] = eval_term(term, step.inputs, cur, a)
        stream.append(nxt)
    return stream


# Residuals share subtrees heavily and are re-scanned every step, so atom
# sets are cached per node (both interned frozensets and the cache are
# bounded by the formulas alive in a run).
_ATOMS_CACHE: dict[Formula, frozenset] = {}
_ATOMS_CACHE_LIMIT = 500_000


def collect_atoms(f: Formula) -> frozenset[Formula]:
    """All predicate and update literals occurring in a formula."""
    out = _ATOMS_CACHE.get(f)
    if out is not None:
        return out
    if isinstance(f, (PredicateLit, UpdateLit)):
        out = frozenset((f,))
    elif isinstance(f, BoolConst):
        out = frozenset()
    else:
        parts = [
            collect_atoms(sub)
            for name in ("arg", "left", "right")
            if (sub := getattr(f, name, None)) is not None
        ]
        out = frozenset().union(*parts)
    if len(_ATOMS_CACHE) >= _ATOMS_CACHE_LIMIT:
        _ATOMS_CACHE.clear()
    _ATOMS_CACHE[f] = out
    return out


def step_atoms(
    f: Formula, step: Step, cells_t: Valuation, a: Assignment
) -> dict[Formula, bool]:
    """Truth of every atom of ``f`` at one step.

    An update atom is true iff the step fired syntactically that very
    update; predicate atoms are evaluated against inputs and current cells.
    """
    out = {}
    for atom in collect_atoms(f):
        if isinstance(atom, UpdateLit):
            out[atom] = step.fired.get(atom.sink) == atom.term
        else:
            out[atom] = eval_pred(atom.term, step.inputs, cells_t, a)
    return out


def progress(f: Formula, atoms: Mapping[Formula, bool]) -> Formula:
    """One-step expansion of a desugared formula under an atom valuation.

    Literals collapse to constants, X drops a step, and until unrolls to
    ``now(right) or (now(left) and (left U right))``; the copy of the
    until kept as next-step obligation is left un-progressed.
    """
    cache: dict[Formula, Formula] = {}

    def go(g: Formula) -> Formula:
        r = cache.get(g)
        if r is None:
            r = step(g)
            cache[g] = r
        return r

    def step(g: Formula) -> Formula:
        if isinstance(g, BoolConst):
            return g
        if isinstance(g, (PredicateLit, UpdateLit)):
            return BoolConst(atoms[g])
        if isinstance(g, Not):
            return not_(go(g.arg))
        if isinstance(g, And):
            return and_(go(g.left), go(g.right))
        if isinstance(g, Next):
            return g.arg
        if isinstance(g, Until):
            return or_(go(g.right), and_(go(g.left), g))
        raise TypeError(f"progress requires a desugared formula, got {type(g).__name__}")

    return go(f)


# Residuals recur heavily across steps and traces, so progression results
# are cached globally by (formula, atom valuation).  The function is pure,
# which makes this safe; the cache is bounded by wholesale clearing.
_PROGRESS_CACHE: dict[tuple, Formula] = {}
_PROGRESS_CACHE_LIMIT = 200_000


def monitor(f: Formula, trace: FiniteTrace, a: Assignment) -> Verdict:
    """Fold progression over a finite trace and report the verdict."""
    residual = desugar(f)
    cells = cell_stream(trace, a)
    if residual == FALSE:
        return Viol(0)
    if residual == TRUE:
        return Sat()
    for t, step in enumerate(trace.steps):
        atoms = step_atoms(residual, step, cells[t], a)
        key = (residual, frozenset(atoms.items()))
        nxt = _PROGRESS_CACHE.get(key)
        if nxt is None:
            nxt = progress(residual, atoms)
            if len(_PROGRESS_CACHE) >= _PROGRESS_CACHE_LIMIT:
                _PROGRESS_CACHE.clear()
            _PROGRESS_CACHE[key] = nxt
        residual = nxt
        if residual == FALSE:
            return Viol(t)
        if residual == TRUE:
            return Sat()
    return Inconclusive(residual)


# ---------------------------------------------------------------------------
# Trace serialization


def _decode_value(v) -> Value:
    if isinstance(v, list):
        return tuple(_decode_value(x) for x in v)
    return v


def _encode_value(v: Value):
    if isinstance(v, tuple):
        return [_encode_value(x) for x in v]
    return v


def read_trace(text: str) -> FiniteTrace:
    steps = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        inputs = {k: _decode_value(v) for k, v in rec.get("in", {}).items()}
        fired = {k: parse_term(v) for k, v in rec.get("fired", {}).items()}
        steps.append(Step(inputs, fired))
    return FiniteTrace(tuple(steps))


def write_trace(trace: FiniteTrace, outputs: list[dict[str, Value]] | None = None) -> str:
    lines = []
    for i, step in enumerate(trace.steps):
        rec = {
            "in": {k: _encode_value(v) for k, v in sorted(step.inputs.items())},
            "fired": {k: pretty_term(t) for k, t in sorted(step.fired.items())},
        }
        if outputs is not None:
            rec["out"] = {k: _encode_value(v) for k, v in sorted(outputs[i].items())}
        lines.append(json.dumps(rec))
    return "\n".join(lines) + ("\n" if lines else "")
