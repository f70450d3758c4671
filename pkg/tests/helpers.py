"""Random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random

from tslkit import formula as F
from tslkit.cfm import Cfm, Function, Logic, Predicate
from tslkit.monitor import FiniteTrace, Step
from tslkit.values import Assignment

# ---------------------------------------------------------------------------
# Random formulas over a small fixed vocabulary

_C = F.Signal("c")
_I = F.Signal("i")

ATOMS: list[F.Formula] = [
    F.PredicateLit(F.Apply("isPos", (_I,))),
    F.PredicateLit(F.Apply("isPos", (_C,))),
    F.PredicateLit(F.Apply("eq", (_I, _C))),
    F.UpdateLit("c", F.Apply("add1", (_C,))),
    F.UpdateLit("c", _C),
    F.UpdateLit("o", F.Apply("toText", (_I,))),
    F.TRUE,
    F.FALSE,
]

_UNARY = [F.Not, F.Next, F.Finally, F.Globally]
_BINARY = [F.And, F.Or, F.Implies, F.Iff, F.Xor, F.Until, F.WeakUntil, F.Release]


SMALL_ATOMS: list[F.Formula] = [
    F.PredicateLit(F.Apply("isPos", (_I,))),
    F.PredicateLit(F.Apply("isPos", (_C,))),
    F.UpdateLit("c", F.Apply("add1", (_C,))),
]


def rand_formula(rng: random.Random, depth: int, atoms=None) -> F.Formula:
    atoms = ATOMS if atoms is None else atoms
    if depth <= 0 or rng.random() < 0.2:
        return rng.choice(atoms)
    if rng.random() < 0.4:
        return rng.choice(_UNARY)(rand_formula(rng, depth - 1, atoms))
    op = rng.choice(_BINARY)
    return op(rand_formula(rng, depth - 1, atoms), rand_formula(rng, depth - 1, atoms))


def rand_trace(rng: random.Random, max_len: int = 20) -> FiniteTrace:
    steps = []
    for _ in range(rng.randint(1, max_len)):
        i = rng.randint(-5, 5)
        fired_c = F.Apply("add1", (_C,)) if rng.random() < 0.5 else _C
        fired_o = F.Apply("toText", (_I,))
        steps.append(Step({"i": i}, {"c": fired_c, "o": fired_o}))
    return FiniteTrace(tuple(steps))


def vocab_assignment() -> Assignment:
    return Assignment(
        {
            "isPos": (1, lambda x: x > 0),
            "eq": (2, lambda a, b: a == b),
            "add1": (1, lambda x: x + 1),
            "toText": (1, str),
        },
        {"c": 0},
    )


# Rewrites for the non-trivial equivalence checks: each produces a formula
# that must agree with the original on every finite trace.


def _map(f: F.Formula, go) -> F.Formula:
    if isinstance(f, (F.PredicateLit, F.UpdateLit, F.BoolConst)):
        return f
    if isinstance(f, F.Not):
        return F.Not(go(f.arg))
    if isinstance(f, (F.Next, F.Finally, F.Globally)):
        return type(f)(go(f.arg))
    return type(f)(go(f.left), go(f.right))


def weak_until_as_disjunction(f: F.Formula) -> F.Formula:
    """phi W psi rewritten to (phi U psi) || G phi, recursively."""

    def go(g: F.Formula) -> F.Formula:
        if isinstance(g, F.WeakUntil):
            return F.Or(F.Until(go(g.left), go(g.right)), F.Globally(go(g.left)))
        return _map(g, go)

    return go(f)


def dualize(f: F.Formula) -> F.Formula:
    """F/G and U/R replaced by their duals, recursively."""

    def go(g: F.Formula) -> F.Formula:
        if isinstance(g, F.Finally):
            return F.Not(F.Globally(F.Not(go(g.arg))))
        if isinstance(g, F.Globally):
            return F.Not(F.Finally(F.Not(go(g.arg))))
        if isinstance(g, F.Until):
            return F.Not(F.Release(F.Not(go(g.left)), F.Not(go(g.right))))
        if isinstance(g, F.Release):
            return F.Not(F.Until(F.Not(go(g.left)), F.Not(go(g.right))))
        return _map(g, go)

    return go(f)


# ---------------------------------------------------------------------------
# Random valid models (function, predicate, and logic vertices only)

_INT_FUNCS = [("add", 2), ("add1", 1), ("zero", 0)]


def rand_cfm(rng: random.Random, max_vertices: int = 20) -> tuple[Cfm, Assignment]:
    ints = ["i_num"]
    bools = ["i_flag"]
    inputs = ["i_num", "i_flag"]
    cells = []
    if rng.random() < 0.8:
        cells.append("m_num")
        ints.append("m_num")
    if rng.random() < 0.5:
        cells.append("m_flag")
        bools.append("m_flag")

    vertices = {}
    deps = {}
    for k in range(rng.randint(1, max_vertices)):
        vid = f"n{k}"
        roll = rng.random()
        if roll < 0.45:
            name, arity = rng.choice(_INT_FUNCS)
            vertices[vid] = Function(name, arity)
            deps[vid] = [rng.choice(ints) for _ in range(arity)]
            ints.append(vid)
        elif roll < 0.65:
            name, arity = rng.choice([("isPos", 1), ("eq", 2)])
            vertices[vid] = Predicate(name, arity)
            deps[vid] = [rng.choice(ints) for _ in range(arity)]
            bools.append(vid)
        else:
            op = rng.choice(["and", "or", "not"])
            vertices[vid] = Logic(op)
            deps[vid] = [rng.choice(bools) for _ in range(1 if op == "not" else 2)]
            bools.append(vid)

    for c in cells:
        deps[c] = [rng.choice(ints if c == "m_num" else bools)]
    n_outputs = rng.randint(1, 3)
    outputs = []
    for j in range(n_outputs):
        o = f"out{j}"
        outputs.append(o)
        deps[o] = [rng.choice(ints if rng.random() < 0.5 else bools)]

    m = Cfm.make(inputs, outputs, cells, vertices, deps)
    a = Assignment(
        {
            "add": (2, lambda x, y: x + y),
            "add1": (1, lambda x: x + 1),
            "zero": (0, lambda: 0),
            "isPos": (1, lambda x: x > 0),
            "eq": (2, lambda x, y: x == y),
        },
        {c: (0 if c == "m_num" else False) for c in cells},
    )
    return m, a


def rand_cfm_inputs(rng: random.Random, length: int) -> list[dict]:
    return [
        {"i_num": rng.randint(-10, 10), "i_flag": rng.random() < 0.5}
        for _ in range(length)
    ]
