"""Exception types shared across the toolkit."""


class TslError(Exception):
    """Base class for all toolkit errors."""


class TslSyntaxError(TslError):
    """Raised on malformed specification text."""

    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class UndefinedName(TslError):
    """An applied name that can only be a macro call has no definition."""


class RecursiveMacro(TslError):
    """A definition depends on itself, directly or through other macros."""


class WrongMacroArity(TslError):
    """A macro was applied to the wrong number of arguments."""


class ArityConflict(TslError):
    """A literal is used with two different arities, or as both a signal
    and an applied literal."""


class NotATerm(TslError):
    """An expression appeared in function-term position but contains
    formula-only constructs."""


class UnboundLiteral(TslError):
    """A function or predicate literal has no implementation bound."""


class ArityMismatch(TslError):
    """A bound implementation's arity disagrees with the term."""


class MissingSignal(TslError):
    """A term reads a signal absent from the given valuations."""


class NotBoolean(TslError):
    """A predicate implementation returned a non-Boolean value."""


class SchemaError(TslError):
    """A persisted CFM file does not match the documented schema."""

    def __init__(self, message, path):
        super().__init__(f"{path}: {message}")
        self.path = path


class CycleDetected(TslError):
    """Topological ordering was requested for a cyclic vertex graph."""


class MutexNotOneHot(TslError):
    """A one-hot converter saw a number of true controls different from one."""

    def __init__(self, vertex, count):
        super().__init__(f"vertex {vertex!r}: {count} controls true, expected exactly 1")
        self.vertex = vertex
        self.count = count


class SimulationError(TslError):
    """A step of a simulation failed; carries the step index and cause."""

    def __init__(self, step, cause):
        super().__init__(f"step {step}: {cause}")
        self.step = step
        self.cause = cause


class MissingGenerator(TslError):
    """An input signal has no value generator."""
