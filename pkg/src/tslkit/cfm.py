"""Control flow models: static dataflow networks and their validation.

A model wires inputs, cells, and labeled vertices (functions, predicates,
Boolean logic, one-hot converters, mutex selectors) into outputs and cell
writes.  Validity requires arities to match, every output/cell to have
exactly one source, and every dependency cycle to pass through a cell.

Persisted as a single JSON document (``.cfm.json``)::

    {"v": 1,
     "inputs": ["click"], "outputs": ["screen"], "cells": ["count"],
     "vertices": {"p0": {"kind": "predicate", "name": "event", "arity": 1},
                  "m0": {"kind": "mutex", "k": 2}},
     "deps": {"p0": ["click"], ..., "count": ["m0"], "screen": ["v1"]}}
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

from .errors import CycleDetected, SchemaError


@dataclass(frozen=True)
class Function:
    name: str
    arity: int


@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int


@dataclass(frozen=True)
class Logic:
    op: str  # and, or, not


@dataclass(frozen=True)
class OneHot:
    """Converts k Boolean controls into a 1-based selector index; it is a
    runtime error unless exactly one control is true."""

    k: int


@dataclass(frozen=True)
class Mutex:
    """Selects among k data inputs; dependency 0 is the selector."""

    k: int


VertexLabel = Function | Predicate | Logic | OneHot | Mutex

_LOGIC_ARITY = {"and": 2, "or": 2, "not": 1}


def label_arity(label: VertexLabel) -> int:
    if isinstance(label, (Function, Predicate)):
        return label.arity
    if isinstance(label, Logic):
        return _LOGIC_ARITY[label.op]
    if isinstance(label, OneHot):
        return label.k
    return label.k + 1  # mutex: selector plus k data inputs


@dataclass(frozen=True)
class Violation:
    kind: str  # ArityMismatch, MultipleWriters, DanglingReference, CellFreeCycle, NameClash
    where: str
    detail: str = ""
    cycle: tuple[str, ...] = ()

    def __str__(self):
        extra = f" ({' -> '.join(self.cycle)})" if self.cycle else ""
        return f"{self.kind} at {self.where}: {self.detail}{extra}"


@dataclass(frozen=True)
class Cfm:
    inputs: frozenset[str]
    outputs: frozenset[str]
    cells: frozenset[str]
    vertices: dict[str, VertexLabel]
    deps: dict[str, tuple[str, ...]] = field(default_factory=dict)

    @staticmethod
    def make(inputs, outputs, cells, vertices, deps) -> "Cfm":
        return Cfm(
            frozenset(inputs),
            frozenset(outputs),
            frozenset(cells),
            dict(vertices),
            {k: tuple(v) for k, v in deps.items()},
        )

    def sources_of(self, sink: str) -> tuple[str, ...]:
        return self.deps.get(sink, ())


def validate(m: Cfm) -> list[Violation]:
    """Check a model; an empty result means valid."""
    out: list[Violation] = []

    groups = {
        "inputs": m.inputs,
        "outputs": m.outputs,
        "cells": m.cells,
        "vertices": set(m.vertices),
    }
    names = list(groups.items())
    for i, (ka, a) in enumerate(names):
        for kb, b in names[i + 1 :]:
            for n in sorted(a & b):
                out.append(Violation("NameClash", n, f"named in both {ka} and {kb}"))

    valid_sources = m.inputs | m.cells | set(m.vertices)
    sinks = set(m.outputs) | set(m.cells) | set(m.vertices)

    for sink in sorted(sinks):
        srcs = m.sources_of(sink)
        for s in srcs:
            if s not in valid_sources:
                out.append(
                    Violation("DanglingReference", sink, f"depends on unknown {s!r}")
                )
        if sink in m.vertices:
            want = label_arity(m.vertices[sink])
            if len(srcs) != want:
                out.append(
                    Violation(
                        "ArityMismatch",
                        sink,
                        f"label arity {want}, {len(srcs)} dependencies",
                    )
                )
        else:  # output or cell: exactly one source
            if len(srcs) == 0:
                out.append(Violation("DanglingReference", sink, "has no dependency"))
            elif len(srcs) > 1:
                out.append(
                    Violation("MultipleWriters", sink, f"{len(srcs)} dependencies")
                )

    for extra in sorted(set(m.deps) - sinks):
        out.append(
            Violation("DanglingReference", extra, "dependencies for unknown sink")
        )

    cycle = _find_cell_free_cycle(m)
    if cycle:
        out.append(
            Violation("CellFreeCycle", cycle[0], "cycle avoids all cells", cycle)
        )
    return out


def _find_cell_free_cycle(m: Cfm) -> tuple[str, ...]:
    """A dependency cycle among vertices only (cells break cycles; inputs
    and outputs cannot lie on one)."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in m.vertices}
    stack: list[str] = []

    def visit(v: str) -> tuple[str, ...] | None:
        color[v] = GRAY
        stack.append(v)
        for s in m.sources_of(v):
            if s not in m.vertices:
                continue
            if color[s] == GRAY:
                i = stack.index(s)
                return tuple(stack[i:]) + (s,)
            if color[s] == WHITE:
                found = visit(s)
                if found:
                    return found
        stack.pop()
        color[v] = BLACK
        return None

    for v in sorted(m.vertices):
        if color[v] == WHITE:
            found = visit(v)
            if found:
                return found
    return ()


def topo_order(m: Cfm, reverse_ties: bool = False) -> list[str]:
    """Vertices ordered so every vertex follows its vertex sources.

    Inputs and cells are order-0 sources and do not appear.  Ties break
    lexicographically by id (reversed with ``reverse_ties``, which must
    not change any evaluation result).
    """
    pending = {
        v: sum(1 for s in m.sources_of(v) if s in m.vertices) for v in m.vertices
    }
    fanout: dict[str, list[str]] = {v: [] for v in m.vertices}
    for v in m.vertices:
        for s in m.sources_of(v):
            if s in m.vertices:
                fanout[s].append(v)

    def key(v: str):
        # The (1,) terminator sorts longer ids before their prefixes,
        # giving exact reverse-lexicographic order.
        return tuple(-ord(c) for c in v) + (1,) if reverse_ties else v

    ready = [(key(v), v) for v, n in pending.items() if n == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, v = heapq.heappop(ready)
        order.append(v)
        for w in fanout[v]:
            pending[w] -= 1
            if pending[w] == 0:
                heapq.heappush(ready, (key(w), w))
    if len(order) != len(m.vertices):
        raise CycleDetected("vertex dependencies contain a cell-free cycle")
    return order


# ---------------------------------------------------------------------------
# Persistence

SCHEMA_VERSION = 1


def _label_to_json(label: VertexLabel) -> dict:
    if isinstance(label, Function):
        return {"kind": "function", "name": label.name, "arity": label.arity}
    if isinstance(label, Predicate):
        return {"kind": "predicate", "name": label.name, "arity": label.arity}
    if isinstance(label, Logic):
        return {"kind": "logic", "op": label.op}
    if isinstance(label, OneHot):
        return {"kind": "onehot", "k": label.k}
    return {"kind": "mutex", "k": label.k}


def _label_from_json(obj, path: str) -> VertexLabel:
    if not isinstance(obj, dict):
        raise SchemaError("vertex label must be an object", path)
    kind = obj.get("kind")
    try:
        if kind in ("function", "predicate"):
            cls = Function if kind == "function" else Predicate
            name, arity = obj["name"], obj["arity"]
            if not isinstance(name, str) or not isinstance(arity, int) or arity < 0:
                raise SchemaError("bad name/arity", path)
            return cls(name, arity)
        if kind == "logic":
            op = obj["op"]
            if op not in _LOGIC_ARITY:
                raise SchemaError(f"unknown logic op {op!r}", path)
            return Logic(op)
        if kind in ("onehot", "mutex"):
            k = obj["k"]
            if not isinstance(k, int) or k < 1:
                raise SchemaError("k must be a positive integer", path)
            return OneHot(k) if kind == "onehot" else Mutex(k)
    except KeyError as e:
        raise SchemaError(f"missing field {e.args[0]!r}", path) from None
    raise SchemaError(f"unknown vertex kind {kind!r}", path)


def _require(obj, key: str):
    if key not in obj:
        raise SchemaError("missing required key", f"$.{key}")
    return obj[key]


def _name_list(obj, key: str) -> list[str]:
    val = _require(obj, key)
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise SchemaError("must be a list of names", f"$.{key}")
    return val


def read_cfm(text: str) -> Cfm:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}", "$") from None
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object", "$")
    version = obj.get("v", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r}", "$.v")

    inputs = _name_list(obj, "inputs")
    outputs = _name_list(obj, "outputs")
    cells = _name_list(obj, "cells")

    raw_vertices = _require(obj, "vertices")
    if not isinstance(raw_vertices, dict):
        raise SchemaError("must be an object", "$.vertices")
    vertices = {
        vid: _label_from_json(label, f"$.vertices.{vid}")
        for vid, label in raw_vertices.items()
    }

    raw_deps = _require(obj, "deps")
    if not isinstance(raw_deps, dict):
        raise SchemaError("must be an object", "$.deps")
    known = set(inputs) | set(cells) | set(vertices)
    deps = {}
    for sink, srcs in raw_deps.items():
        if not isinstance(srcs, list) or not all(isinstance(s, str) for s in srcs):
            raise SchemaError("must be a list of ids", f"$.deps.{sink}")
        for s in srcs:
            if s not in known:
                raise SchemaError(f"unknown source id {s!r}", f"$.deps.{sink}")
        deps[sink] = tuple(srcs)

    return Cfm.make(inputs, outputs, cells, vertices, deps)


def write_cfm(m: Cfm) -> str:
    doc = {
        "v": SCHEMA_VERSION,
        "inputs": sorted(m.inputs),
        "outputs": sorted(m.outputs),
        "cells": sorted(m.cells),
        "vertices": {
            vid: _label_to_json(m.vertices[vid]) for vid in sorted(m.vertices)
        },
        "deps": {sink: list(m.deps[sink]) for sink in sorted(m.deps)},
    }
    return json.dumps(doc, indent=2) + "\n"
