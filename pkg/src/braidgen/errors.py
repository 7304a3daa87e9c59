"""Exception hierarchy shared by every braidgen module."""

from __future__ import annotations


class BraidError(ValueError):
    """Base class for all braidgen errors."""


class BadStrandCount(BraidError):
    pass


class IndexOutOfRange(BraidError):
    pass


class StrandCountMismatch(BraidError):
    pass


class WordTooLong(BraidError):
    pass


class BadParams(BraidError):
    pass


class BadTarget(BraidError):
    pass


class BadIndices(BraidError):
    pass


class NoCommutingIndex(BraidError):
    pass


class NonZeroExponentSum(BraidError):
    pass


class TooLong(BraidError):
    pass


class ParseError(BraidError):
    """Malformed text input; ``where`` names the offending line or field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
