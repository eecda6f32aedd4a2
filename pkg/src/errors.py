"""
Exception hierarchy for the Kapteyn series toolkit
"""


class KapteynError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KapteynError, ValueError):
    """An argument lies outside the supported domain (negative order, |z| too large, ...)."""


class BoundExceeded(DomainError):
    """A closed-form request exceeds the configured generation bound."""


class ParseError(KapteynError, ValueError):
    """Input could not be decoded into a coefficient or closed-form record."""


class MixedModeError(ParseError):
    """Exact and floating values were mixed inside one record."""


class NonConvergence(KapteynError, ArithmeticError):
    """A series or iteration hit its term/iteration cap before the stopping rule held."""

    def __init__(self, message: str, terms_used: int = 0, last_term: float = float("nan")):
        super().__init__(message)
        self.terms_used = terms_used
        self.last_term = last_term


class GuardCheckFailed(KapteynError, ArithmeticError):
    """An exactness guard did not hold. Always indicates a bug."""


class InexactDivision(GuardCheckFailed):
    """A polynomial division that must be exact left a remainder."""


class NonTerminating(GuardCheckFailed):
    """Coefficients in a guard window were nonzero."""
