import random

import pytest

from helpers import rand_formula, rand_trace, vocab_assignment
from tslkit import formula as F
from tslkit.errors import ArityMismatch, MissingSignal, NotBoolean, UnboundLiteral
from tslkit.formula import FALSE, TRUE, desugar
from tslkit.monitor import (
    FiniteTrace,
    Inconclusive,
    Sat,
    Step,
    Viol,
    cell_stream,
    monitor,
    progress,
    read_trace,
    step_atoms,
    write_trace,
)
from tslkit.values import Assignment, eval_pred, eval_term

C = F.Signal("c")
I = F.Signal("i")
INC = F.Apply("add1", (C,))
P_I = F.PredicateLit(F.Apply("isPos", (I,)))
P_C = F.PredicateLit(F.Apply("isPos", (C,)))
U_INC = F.UpdateLit("c", INC)
U_KEEP = F.UpdateLit("c", C)


def tr(*specs):
    """specs: (input value, fired term for c) pairs."""
    return FiniteTrace(tuple(Step({"i": i}, {"c": fc}) for i, fc in specs))


@pytest.fixture
def a():
    return vocab_assignment()


def test_eval_term_and_pred(a):
    # frozen oracles: add1 over ints, isPos strict on sign
    assert eval_term(INC, {}, {"c": 41}, a) == 42
    assert eval_term(F.Apply("toText", (I,)), {"i": 7}, {}, a) == "7"
    assert eval_pred(F.Apply("isPos", (I,)), {"i": 0}, {}, a) is False
    with pytest.raises(UnboundLiteral):
        eval_term(F.Apply("nope", (I,)), {"i": 1}, {}, a)
    with pytest.raises(ArityMismatch):
        eval_term(F.Apply("add1", (I, I)), {"i": 1}, {}, a)
    with pytest.raises(MissingSignal):
        eval_term(F.Signal("ghost"), {}, {}, a)
    with pytest.raises(NotBoolean):
        eval_pred(F.Apply("add1", (I,)), {"i": 1}, {}, a)


def test_cell_stream_delay(a):
    t = tr((5, INC), (5, INC), (5, C))
    streams = cell_stream(t, a)
    assert [s["c"] for s in streams] == [0, 1, 2, 2]


def test_update_atom_is_syntactic(a):
    t = tr((1, C),)
    atoms = step_atoms(F.And(U_INC, U_KEEP), t.steps[0], {"c": 0}, a)
    assert atoms[U_KEEP] is True
    assert atoms[U_INC] is False


def test_progression_rules(a):
    atoms = {P_I: True, U_INC: False}
    assert progress(desugar(F.Next(P_I)), atoms) == P_I
    assert progress(P_I, atoms) == TRUE
    assert progress(U_INC, atoms) == FALSE
    u = F.Until(P_I, U_INC)
    assert progress(u, atoms) == u  # right false, left true: wait


def test_monitor_verdicts(a):
    # i positive at step 1 only
    t = tr((0, INC), (3, INC))
    assert monitor(F.Finally(P_I), t, a) == Sat()
    assert monitor(F.Globally(P_I), t, a) == Viol(0)
    assert monitor(F.Next(P_I), t, a) == Sat()
    v = monitor(F.Globally(U_INC), t, a)
    assert isinstance(v, Inconclusive)
    assert monitor(TRUE, t, a) == Sat()
    assert monitor(FALSE, t, a) == Viol(0)


def test_monitor_cell_semantics(a):
    # c starts 0 and is incremented each step, so isPos c turns true at
    # step 1 (one step delayed).
    t = tr((0, INC), (0, INC), (0, INC))
    assert monitor(P_C, t, a) == Viol(0)
    assert monitor(F.Next(P_C), t, a) == Sat()


def test_monitor_weak_until(a):
    t = tr((1, INC), (1, INC))
    v = monitor(F.WeakUntil(P_I, FALSE), t, a)
    assert not isinstance(v, Viol)
    assert monitor(F.WeakUntil(P_C, P_I), t, a) == Sat()


def test_viol_reports_first_failing_step(a):
    t = tr((1, INC), (1, C), (1, INC))
    assert monitor(F.Globally(U_INC), t, a) == Viol(1)


def test_trace_roundtrip(a):
    t = tr((1, INC), (-2, C))
    text = write_trace(t)
    assert read_trace(text) == t


def test_trace_tuples_survive_roundtrip():
    t = FiniteTrace(
        (Step({"ev": ("click",)}, {"o": F.Apply("toText", (F.Signal("ev"),))}),)
    )
    assert read_trace(write_trace(t)) == t


def test_progression_equiv_randomized(a):
    rng = random.Random(7)
    for _ in range(60):
        f = rand_formula(rng, 4)
        t = rand_trace(rng)
        v1, v2 = monitor(f, t, a), monitor(desugar(f), t, a)
        assert type(v1) is type(v2)
        if isinstance(v1, Viol):
            assert v1.at_step == v2.at_step
