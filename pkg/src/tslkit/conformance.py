"""Randomized conformance checking of a control flow model against a
temporal formula.

This is testing, not verification: a clean report means no violation was
observed on the sampled traces, nothing more. Every trace gets its own
seed derived from the base seed and the trace index, so individual
failures can be replayed without rerunning the whole batch.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Mapping

from .cfm import Cfm
from .errors import MissingGenerator, SimulationError
from .formula import Formula
from .interp import run
from .monitor import Inconclusive, Sat, Viol, monitor
from .values import Assignment, Value

Generator = Callable[[random.Random], Value]


def derive_seed(base: int, index: int) -> int:
    return random.Random((base << 32) ^ index).getrandbits(63)


def sample_inputs(
    inputs: frozenset[str],
    gens: Mapping[str, Generator],
    length: int,
    seed: int,
) -> list[dict[str, Value]]:
    for name in sorted(inputs):
        if name not in gens:
            raise MissingGenerator(f"no generator bound for input '{name}'")
    rng = random.Random(seed)
    return [
        {name: gens[name](rng) for name in sorted(inputs)} for _ in range(length)
    ]


@dataclass(frozen=True)
class TraceFailure:
    index: int
    seed: int
    at_step: int | None
    kind: str  # "violation" or "error"
    detail: str


@dataclass(frozen=True)
class Report:
    traces: int
    length: int
    seed: int
    sat: int
    inconclusive: int
    failures: tuple[TraceFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps(
            {
                "traces": self.traces,
                "length": self.length,
                "seed": self.seed,
                "sat": self.sat,
                "inconclusive": self.inconclusive,
                "ok": self.ok,
                "failures": [
                    {
                        "index": f.index,
                        "seed": f.seed,
                        "at_step": f.at_step,
                        "kind": f.kind,
                        "detail": f.detail,
                    }
                    for f in self.failures
                ],
            },
            indent=2,
        )


def check(
    m: Cfm,
    phi: Formula,
    a: Assignment,
    gens: Mapping[str, Generator],
    traces: int = 1000,
    length: int = 50,
    seed: int = 0,
) -> Report:
    sat = 0
    inconclusive = 0
    failures: list[TraceFailure] = []
    for index in range(traces):
        trace_seed = derive_seed(seed, index)
        stim = sample_inputs(m.inputs, gens, length, trace_seed)
        try:
            _, trace = run(m, a, stim)
        except SimulationError as e:
            failures.append(
                TraceFailure(index, trace_seed, e.step, "error", str(e))
            )
            continue
        verdict = monitor(phi, trace, a)
        if isinstance(verdict, Sat):
            sat += 1
        elif isinstance(verdict, Inconclusive):
            inconclusive += 1
        else:
            assert isinstance(verdict, Viol)
            failures.append(
                TraceFailure(
                    index, trace_seed, verdict.at_step, "violation",
                    f"violated at step {verdict.at_step}",
                )
            )
    return Report(
        traces=traces,
        length=length,
        seed=seed,
        sat=sat,
        inconclusive=inconclusive,
        failures=tuple(failures),
    )
