"""Built-in literal bindings, input generators, and reference models.

The logic itself treats function and predicate names as uninterpreted
symbols; tests and the CLI need one concrete binding, so a small registry
of named fixtures ships here.  Click events are encoded as tuples: ``()``
for no event, ``("click",)`` for an event.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .cfm import Cfm, Function, Logic, Mutex, OneHot, Predicate
from .errors import TslError
from .values import Assignment, Value

Generator = Callable[[random.Random], Value]


@dataclass(frozen=True)
class Fixture:
    name: str
    assignment: Assignment
    generators: dict[str, Generator] = field(default_factory=dict)


def const(v: Value) -> tuple[int, Callable[..., Value]]:
    return (0, lambda: v)


def _display_clock(t: int) -> str:
    return f"{t // 60:02d}:{t % 60:02d}"


_COMMON = {
    "eq": (2, lambda a, b: a == b),
    "add": (2, lambda a, b: a + b),
    "sub": (2, lambda a, b: a - b),
    "not": (1, lambda b: not b),
    "isEvent": (1, lambda ev: len(ev) > 0),
    "toText": (1, str),
    "True": const(True),
    "False": const(False),
    "zero": const(0),
    "one": const(1),
}


def _press(rng: random.Random) -> bool:
    return rng.random() < 0.3


def timer_fixture() -> Fixture:
    impls = dict(_COMMON)
    impls.update(
        {
            "countup": (2, lambda t, dt: t + dt),
            "countdown": (2, lambda t, dt: max(0, t - dt)),
            "incMinutes": (1, lambda t: t + 60),
            "incSeconds": (1, lambda t: t + 1),
            "display": (1, _display_clock),
        }
    )
    # Independent per-step button samples still produce press edges and
    # simultaneous presses (resets) regularly within a few dozen steps.
    return Fixture(
        "timer-int",
        Assignment(impls, {"time": 0}),
        {
            "btnMin": _press,
            "btnSec": _press,
            "btnStartStop": _press,
            "dt": lambda rng: 1,
        },
    )


def button_fixture() -> Fixture:
    impls = dict(_COMMON)
    impls.update(
        {
            "event": (1, lambda ev: len(ev) > 0),
            "increment": (1, lambda c: c + 1),
            "display": (1, str),
        }
    )
    return Fixture(
        "button",
        Assignment(impls, {"count": 0}),
        {"click": lambda rng: ("click",) if rng.random() < 0.5 else ()},
    )


def basic_fixture() -> Fixture:
    impls = dict(_COMMON)
    impls.update(
        {
            "inc": (1, lambda x: x + 1),
            "add1": (1, lambda x: x + 1),
            "isPos": (1, lambda x: x > 0),
        }
    )
    return Fixture(
        "basic-int",
        Assignment(impls, {"c": 0}),
        {"i": lambda rng: rng.randrange(0, 100)},
    )


_REGISTRY = {
    "timer-int": timer_fixture,
    "button": button_fixture,
    "basic-int": basic_fixture,
}


def fixture_names() -> list[str]:
    return sorted(_REGISTRY)


def get_fixture(name: str) -> Fixture:
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise TslError(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        ) from None


# ---------------------------------------------------------------------------
# Reference models


def identity_cfm() -> Cfm:
    """A single input wired straight to a single output."""
    return Cfm.make(["i"], ["o"], [], {}, {"o": ["i"]})


def loop_cfm() -> Cfm:
    """The pathological two-vertex cycle with no cell on it."""
    vertices = {"x": Function("f", 1), "y": Function("g", 1)}
    return Cfm.make(["i"], ["o"], [], vertices, {"x": ["y"], "y": ["x"], "o": ["x"]})


def loop_with_cell_cfm() -> Cfm:
    """The same loop broken by routing one edge through a cell."""
    vertices = {"x": Function("f", 1), "y": Function("g", 1)}
    return Cfm.make(
        ["i"], ["o"], ["c"], vertices, {"x": ["y"], "y": ["c"], "c": ["x"], "o": ["x"]}
    )


def counter_cfm() -> Cfm:
    """One cell incremented every step; demonstrates the one-step delay."""
    vertices = {"v_inc": Function("add1", 1)}
    return Cfm.make([], ["o"], ["c"], vertices, {"v_inc": ["c"], "c": ["v_inc"], "o": ["c"]})


def button_cfm(sabotage: bool = False) -> Cfm:
    """The click counter: ``count`` is incremented exactly on click events
    and both the running count and its rendering are exposed.

    With ``sabotage`` the mutex data branches are swapped, so the model
    increments on non-events: a deliberately broken variant used to show
    that conformance checking finds violations.
    """
    vertices = {
        "p_event": Predicate("event", 1),
        "v_inc": Function("increment", 1),
        "v_disp": Function("display", 1),
        "n_noevent": Logic("not"),
        "sel": OneHot(2),
        "mux": Mutex(2),
    }
    branches = ["v_inc", "count"]
    if sabotage:
        branches.reverse()
    deps = {
        "p_event": ["click"],
        "v_inc": ["count"],
        "v_disp": ["count"],
        "n_noevent": ["p_event"],
        "sel": ["p_event", "n_noevent"],
        "mux": ["sel"] + branches,
        "count": ["mux"],
        "screen": ["v_disp"],
        "countOut": ["count"],
    }
    return Cfm.make(["click"], ["screen", "countOut"], ["count"], vertices, deps)


BUTTON_SPEC = """\
always guarantee {
  event click <-> [ count <- increment count ];
  [ screen <- display count ];
}
"""
