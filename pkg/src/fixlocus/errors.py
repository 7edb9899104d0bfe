"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`FixLocusError`,
so callers (and the CLI) can separate input problems from programming errors.
"""

from __future__ import annotations


class FixLocusError(Exception):
    pass


# finite group engine

class MalformedPermutation(FixLocusError, ValueError):
    pass


class CapExceeded(FixLocusError):
    pass


class NotAMember(FixLocusError, ValueError):
    pass


# words and epimorphisms

class IndexOutOfRange(FixLocusError, IndexError):
    pass


class NonIntegralGenus(FixLocusError):
    pass


class KindMismatch(FixLocusError):
    pass


# counting

class TrivialElement(FixLocusError, ValueError):
    pass


class NonIntegralResult(FixLocusError):
    pass


class NonIntegralFiber(FixLocusError):
    pass


class NonIntegralTerm(FixLocusError):
    pass


class NotInvolution(FixLocusError, ValueError):
    pass


class CentralizerImageNotContained(FixLocusError):
    pass


class MergeMismatch(FixLocusError):
    pass


class DivisibilityViolation(FixLocusError):
    pass


class MissingSpec(FixLocusError, LookupError):
    pass


class BadParameters(FixLocusError, ValueError):
    pass


# documents

class ParseError(FixLocusError):
    """A syntax error at a 1-based ``line``/``column`` position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownGenerator(ParseError):
    pass


class ValidationError(FixLocusError):
    """A parsed document that does not describe a valid instance."""

    def __init__(self, message: str, section: str | None = None, check: str | None = None):
        self.section = section
        self.check = check
        where = f"[{section}] " if section else ""
        super().__init__(f"{where}{message}")
