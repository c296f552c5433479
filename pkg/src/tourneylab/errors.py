"""Exception taxonomy. The CLI maps each family to a distinct exit code."""

from __future__ import annotations


class TourneyLabError(Exception):
    """Base class for all package errors."""


class DiagonalNonzero(TourneyLabError):
    """A self-loop entry adj[i][i] = 1 was found."""

    def __init__(self, i: int):
        self.i = i
        super().__init__(f"diagonal entry adj[{i}][{i}] must be 0")


class PairViolation(TourneyLabError):
    """A vertex pair is not oriented exactly one way."""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"pair ({i},{j}) must satisfy adj[i][j] + adj[j][i] = 1")


class SubsetOutOfRange(TourneyLabError):
    """A vertex subset references labels outside its universe."""


class TooLarge(TourneyLabError):
    """Input exceeds the size cap of an exhaustive operation."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"n = {n} exceeds the exhaustive-computation cap {limit}")


class BadParams(TourneyLabError):
    """Operation parameters violate a precondition."""


class BadConfig(TourneyLabError):
    """Experiment configuration is malformed."""


class EmptyPart(TourneyLabError):
    """A sampled set misses partition part A or B, so path events are undefined."""


class InvalidCertificate(TourneyLabError):
    """A claimed Hamilton cycle fails the edge check."""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(message)


class Trn1ParseError(TourneyLabError):
    """TRN1 text is malformed; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
