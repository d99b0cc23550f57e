"""Exception types shared across the package."""


class MorphChainError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MorphChainError):
    """A file line could not be parsed."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


class DataError(MorphChainError):
    """Input data is well-formed but semantically invalid."""


class ConfigError(MorphChainError):
    """A configuration value or combination is unusable."""


class ContractViolation(MorphChainError):
    """An internal precondition was violated by the caller."""


class NumericError(MorphChainError):
    """Training produced a non-finite objective or gradient."""
