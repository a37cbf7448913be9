"""Exception hierarchy shared by the library and the CLI."""


class RedlabError(Exception):
    """Base class for every error raised by redlab."""


class DomainError(RedlabError, ValueError):
    """An argument lies outside the domain of an operation."""


class DimensionError(RedlabError, ValueError):
    """Array or vector shapes do not match the system dimensions."""


class ValidationError(RedlabError, ValueError):
    """A configuration value violates a constraint.

    ``path`` names the offending field, e.g. ``"y[1][0].rate"``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnsupportedScenarioError(RedlabError, ValueError):
    """The scenario cannot be handled by the requested engine."""


class BudgetError(RedlabError):
    """An enumeration would exceed its configured size guard."""

    def __init__(self, message: str, required: int, limit: int):
        self.required = required
        self.limit = limit
        super().__init__(message)


class InvalidAssignmentError(RedlabError, ValueError):
    """A binary state assignment violates the cold-standby constraints."""


class ConfigParseError(RedlabError, ValueError):
    """A configuration document is not well-formed."""
