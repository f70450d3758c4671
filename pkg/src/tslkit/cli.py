"""Command line front end.

Exit codes: 0 success, 1 property failure (validation violations, monitor
violation, conformance failures), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cfm import read_cfm, validate, write_cfm
from .codegen import GenStyle, generate
from .conformance import check, sample_inputs
from .errors import TslError
from .fixtures import fixture_names, get_fixture
from .formula import classify_signals, pretty
from .interp import InterpState, run, step
from .monitor import Inconclusive, Sat, Viol, monitor, read_trace, write_trace
from .specfile import expand, parse_spec, resolve_macros

_STYLES = {s.value: s for s in GenStyle}


def _default_seed() -> int:
    env = os.environ.get("TSLKIT_SEED")
    return int(env) if env else 0


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_parse(args) -> int:
    spec = parse_spec(_read(args.spec))
    resolve_macros(spec)  # fail early on bad macros
    phi = expand(spec)
    cls = classify_signals(phi)
    info = {
        "definitions": len(spec.definitions),
        "statements": {k: len(v) for k, v in spec.sections.items() if v},
        "inputs": sorted(cls.inputs),
        "outputs": sorted(cls.outputs),
        "cells": sorted(cls.cells),
        "functions": sorted(cls.functions),
        "predicates": sorted(cls.predicates),
    }
    if args.format == "json":
        print(json.dumps(info, indent=2))
    else:
        print(f"{len(spec.definitions)} definitions")
        for k, v in info["statements"].items():
            print(f"{v} {k} statements")
        for k in ("inputs", "outputs", "cells", "functions", "predicates"):
            print(f"{k}: {', '.join(info[k]) or '(none)'}")
        if args.show_formula:
            print(pretty(phi))
    return 0


def _cmd_monitor(args) -> int:
    phi = expand(parse_spec(_read(args.spec)))
    trace = read_trace(_read(args.trace))
    a = get_fixture(args.fixture).assignment
    verdict = monitor(phi, trace, a)
    if isinstance(verdict, Sat):
        print("sat")
        return 0
    if isinstance(verdict, Viol):
        print(f"violation at step {verdict.at_step}")
        return 1
    assert isinstance(verdict, Inconclusive)
    print(f"inconclusive, residual: {pretty(verdict.residual)}")
    return 0


def _cmd_validate(args) -> int:
    m = read_cfm(_read(args.cfm))
    violations = validate(m)
    if not violations:
        print("valid")
        return 0
    for v in violations:
        print(f"{v.kind} at {v.where}: {v.detail}")
    return 1


def _cmd_simulate(args) -> int:
    m = read_cfm(_read(args.cfm))
    violations = validate(m)
    if violations:
        for v in violations:
            print(f"{v.kind} at {v.where}: {v.detail}", file=sys.stderr)
        return 1
    fx = get_fixture(args.fixture)
    if args.interactive:
        return _repl(m, fx)
    if args.trace:
        trace = read_trace(_read(args.trace))
        stim = [dict(s.inputs) for s in trace.steps]
    else:
        stim = sample_inputs(m.inputs, fx.generators, args.length, args.seed)
    outputs, trace = run(m, fx.assignment, stim)
    print(write_trace(trace, outputs), end="")
    return 0


def _repl(m, fx) -> int:
    st = InterpState.initial(m, fx.assignment)
    names = sorted(m.inputs)
    print(f"inputs: {', '.join(names)} (enter one JSON value per input; blank to stop)")
    while True:
        inputs = {}
        for n in names:
            try:
                raw = input(f"{n}> ")
            except EOFError:
                return 0
            if not raw.strip():
                return 0
            v = json.loads(raw)
            inputs[n] = tuple(v) if isinstance(v, list) else v
        res = step(m, fx.assignment, st, inputs)
        st = res.state
        print(json.dumps({k: list(v) if isinstance(v, tuple) else v
                          for k, v in res.outputs.items()}))


def _cmd_codegen(args) -> int:
    m = read_cfm(_read(args.cfm))
    violations = validate(m)
    if violations:
        for v in violations:
            print(f"{v.kind} at {v.where}: {v.detail}", file=sys.stderr)
        return 1
    text = generate(m, _STYLES[args.style])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _cmd_conform(args) -> int:
    m = read_cfm(_read(args.cfm))
    violations = validate(m)
    if violations:
        for v in violations:
            print(f"{v.kind} at {v.where}: {v.detail}", file=sys.stderr)
        return 1
    phi = expand(parse_spec(_read(args.spec)))
    fx = get_fixture(args.fixture)
    report = check(m, phi, fx.assignment, fx.generators,
                   traces=args.traces, length=args.length, seed=args.seed)
    if args.format == "json":
        print(report.to_json())
    else:
        print(f"traces: {report.traces}  sat: {report.sat}  "
              f"inconclusive: {report.inconclusive}  failures: {len(report.failures)}")
        for f in report.failures:
            print(f"  trace {f.index} (seed {f.seed}): {f.detail}")
    return 0 if report.ok else 1


def _cmd_roundtrip(args) -> int:
    m = read_cfm(_read(args.cfm))
    print(write_cfm(m), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tslkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("parse", help="parse a specification and summarize it")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--show-formula", action="store_true")
    sp.set_defaults(fn=_cmd_parse)

    sp = sub.add_parser("monitor", help="check a recorded trace against a specification")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--trace", required=True)
    sp.add_argument("--fixture", required=True, choices=fixture_names())
    sp.set_defaults(fn=_cmd_monitor)

    cfm = sub.add_parser("cfm", help="model operations")
    csub = cfm.add_subparsers(dest="cfm_cmd", required=True)

    sp = csub.add_parser("validate", help="structural checks on a model file")
    sp.add_argument("cfm")
    sp.set_defaults(fn=_cmd_validate)

    sp = csub.add_parser("simulate", help="run a model on recorded or random inputs")
    sp.add_argument("cfm")
    sp.add_argument("--fixture", required=True, choices=fixture_names())
    sp.add_argument("--trace")
    sp.add_argument("--interactive", action="store_true")
    sp.add_argument("--length", type=int, default=20)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.set_defaults(fn=_cmd_simulate)

    sp = csub.add_parser("roundtrip", help="re-serialize a model file canonically")
    sp.add_argument("cfm")
    sp.set_defaults(fn=_cmd_roundtrip)

    sp = sub.add_parser("codegen", help="emit a control block from a model")
    sp.add_argument("cfm")
    sp.add_argument("--style", choices=sorted(_STYLES), required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=_cmd_codegen)

    sp = sub.add_parser("conform", help="randomized conformance check of model vs spec")
    sp.add_argument("--cfm", required=True)
    sp.add_argument("--spec", required=True)
    sp.add_argument("--fixture", required=True, choices=fixture_names())
    sp.add_argument("--traces", type=int, default=1000)
    sp.add_argument("--length", type=int, default=50)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(fn=_cmd_conform)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except TslError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
