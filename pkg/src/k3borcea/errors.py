"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command layer never
has to guess.
"""


class K3Error(Exception):
    exit_code = 1


class UsageError(K3Error, ValueError):
    """Arguments outside an operation's domain (order mismatch, bad power, ...)."""

    exit_code = 2


class ParseError(K3Error, ValueError):
    exit_code = 2


class ValidationError(K3Error, ValueError):
    """A structurally readable invariant document with unacceptable values."""

    exit_code = 1


class UnboundSymbolError(K3Error, KeyError):
    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__("unbound symbol(s): " + ", ".join(self.missing))

    def __str__(self):
        return self.args[0]


class InconsistentInvariantsError(K3Error, ValueError):
    """Invariants produce a Hodge number that is negative or not an integer."""

    exit_code = 1

    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message)


class ResourceError(K3Error, RuntimeError):
    exit_code = 1


class InternalConsistencyError(K3Error, ArithmeticError):
    """An identity that must hold by construction failed."""

    exit_code = 3
