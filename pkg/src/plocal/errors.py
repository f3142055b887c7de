"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all package errors."""


class ParseError(Error):
    """Malformed permutation, generator, or config text."""


class DomainError(Error):
    """Arguments outside the mathematical domain of an operation."""


class ResourceLimitError(Error):
    """A configured cap was exceeded.  Carries the cap name."""

    def __init__(self, cap, message):
        self.cap = cap
        super().__init__(f"{message} (cap: {cap})")


class UnknownNameError(Error):
    """Lookup of a group or theorem name that the library does not provide."""


class ConfigError(Error):
    """Bad key, value, or structure in a run-control config file."""


class CrossValidationError(Error):
    """Two independent computation routes disagreed."""
