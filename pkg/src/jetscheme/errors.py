"""Exception hierarchy.

Every error carries a module-qualified ``code`` (e.g. ``"groebner.BudgetExceeded"``)
that the CLI prints, and an ``exit_status`` used as the process exit code.
"""


class JetSchemeError(Exception):
    module = "core"
    exit_status = 1

    @property
    def code(self):
        return f"{self.module}.{type(self).__name__}"


class InputError(JetSchemeError):
    """Bad user input; exit status 1."""


class ExhaustionError(JetSchemeError):
    """A configured budget or precision ran out; exit status 2."""

    exit_status = 2


# exact-fields
class DivisionByZero(InputError, ZeroDivisionError):
    module = "fields"


class MixedFields(InputError):
    module = "fields"


# polynomials
class MixedContexts(InputError):
    module = "polynomials"


class UnmappedVariable(InputError):
    module = "polynomials"


# jet-calculus
class JetVariableInInput(InputError):
    module = "jets"


# groebner / koszul / series share the budget error
class BudgetExceeded(ExhaustionError):
    module = "groebner"


class InhomogeneousForGrading(InputError):
    module = "koszul"


class NotExpectedCodim(InputError):
    module = "koszul"


class InternalInconsistency(JetSchemeError):
    module = "koszul"


class PrecisionExhausted(ExhaustionError):
    module = "series"


# arc-fibers / invariants
class ArcNotOnVariety(InputError):
    module = "arcs"


class CharZeroRequired(InputError):
    module = "invariants"


class CertificateNotFound(ExhaustionError):
    module = "invariants"


class MapNotWellDefined(InputError):
    module = "invariants"


# io-cli
class ParseError(InputError, SyntaxError):
    """Parse failure with a ``line:col`` location and the offending token."""

    module = "parser"

    def __init__(self, message, line=1, col=1, token=""):
        self.line = line
        self.col = col
        self.token = token
        super().__init__(f"{line}:{col}: {message} (at {token!r})")


class UnknownVariable(InputError):
    module = "parser"


class NegativeExponent(InputError):
    module = "parser"


class SessionError(InputError):
    module = "session"
