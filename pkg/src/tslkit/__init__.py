"""Toolkit for temporal stream logic: parsing, finite-trace monitoring,
control flow model validation and simulation, control-block generation,
and randomized conformance checking."""

from .errors import TslError
from .formula import Formula, classify_signals, desugar, pretty
from .specfile import parse_formula, parse_spec, parse_term, expand
from .monitor import FiniteTrace, Inconclusive, Sat, Step, Viol, monitor
from .values import Assignment
from .cfm import Cfm, read_cfm, validate, write_cfm
from .interp import run
from .codegen import GenStyle, generate
from .conformance import Report, check

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "Cfm",
    "FiniteTrace",
    "Formula",
    "GenStyle",
    "Inconclusive",
    "Report",
    "Sat",
    "Step",
    "TslError",
    "Viol",
    "check",
    "classify_signals",
    "desugar",
    "expand",
    "generate",
    "monitor",
    "parse_formula",
    "parse_spec",
    "parse_term",
    "pretty",
    "read_cfm",
    "run",
    "validate",
    "write_cfm",
    "__version__",
]
