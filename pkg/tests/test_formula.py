import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import rand_formula
from tslkit import formula as F
from tslkit.errors import ArityConflict
from tslkit.formula import (
    FALSE,
    TRUE,
    and_,
    classify_signals,
    conj,
    desugar,
    not_,
    or_,
    pretty,
    pretty_term,
)

P = F.PredicateLit(F.Apply("p", (F.Signal("x"),)))
Q = F.PredicateLit(F.Apply("q", (F.Signal("x"),)))
UPD = F.UpdateLit("y", F.Apply("f", (F.Signal("x"),)))


def test_smart_constructors_fold_constants():
    assert not_(TRUE) == FALSE
    assert not_(not_(P)) == P
    assert and_(TRUE, P) == P
    assert and_(P, FALSE) == FALSE
    assert and_(P, P) == P
    assert and_(P, not_(P)) == FALSE
    assert or_(FALSE, P) == P
    assert or_(P, TRUE) == TRUE
    assert conj([]) == TRUE
    assert conj([P, Q]) == F.And(P, Q)


def test_desugar_core_ops_untouched():
    f = F.Until(F.Next(P), F.And(Q, F.Not(UPD)))
    assert desugar(f) == f


def test_desugar_shapes():
    assert desugar(F.Finally(P)) == F.Until(TRUE, P)
    assert desugar(F.Globally(P)) == F.Not(F.Until(TRUE, F.Not(P)))
    assert desugar(F.Or(P, Q)) == F.Not(F.And(F.Not(P), F.Not(Q)))
    assert desugar(F.Release(P, Q)) == F.Not(F.Until(F.Not(P), F.Not(Q)))
    assert desugar(F.WeakUntil(P, Q)) == F.Not(
        F.Until(F.Not(Q), F.And(F.Not(P), F.Not(Q)))
    )


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_desugar_idempotent(seed):
    f = rand_formula(random.Random(seed), 5)
    once = desugar(f)
    assert desugar(once) == once


def test_classify_timer_like_roles():
    # time is read and written: a cell; y written only: output; x read only.
    f = F.And(F.UpdateLit("time", F.Apply("inc", (F.Signal("time"),))), F.And(P, UPD))
    c = classify_signals(f)
    assert c.cells == frozenset({"time"})
    assert c.outputs == frozenset({"y"})
    assert c.inputs == frozenset({"x"})
    assert c.predicates == frozenset({"p"})
    assert c.functions == frozenset({"inc", "f"})


def test_classify_predicate_wins_over_function():
    f = F.And(P, F.UpdateLit("y", F.Apply("p", (F.Signal("x"),))))
    c = classify_signals(f)
    assert "p" in c.predicates and "p" not in c.functions


def test_classify_arity_conflict():
    g = F.PredicateLit(F.Apply("p", (F.Signal("x"), F.Signal("x"))))
    with pytest.raises(ArityConflict):
        classify_signals(F.And(P, g))


def test_classify_signal_literal_clash():
    f = F.And(F.PredicateLit(F.Signal("p")), P)
    with pytest.raises(ArityConflict):
        classify_signals(f)


def test_pretty_term():
    t = F.Apply("f", (F.Signal("x"), F.Apply("g", (F.Signal("y"),)), F.Apply("c")))
    assert pretty_term(t) == "f x (g y) c()"


def test_pretty_precedence():
    f = F.Implies(F.Or(P, Q), F.Until(P, F.And(Q, F.Not(P))))
    assert pretty(f) == "p x || q x -> p x U q x && !p x"
    assert pretty(F.Next(F.And(P, Q))) == "X (p x && q x)"
    assert pretty(F.Until(F.Until(P, Q), P)) == "(p x U q x) U p x"
    assert pretty(UPD) == "[ y <- f x ]"
