"""Exception hierarchy.

Usage errors (bad arguments, malformed documents) and domain errors
(mathematically impossible requests such as an odd-degree real bundle)
are kept apart so the CLI can map them to different exit codes.
"""


class KleinError(Exception):
    """Base class for every error raised by this package."""


class UsageError(KleinError, ValueError):
    """Malformed input: wrong types, non-finite numbers, bad documents."""


class DomainError(KleinError, ValueError):
    """The request is well formed but has no mathematical answer."""


class AmbiguityError(DomainError):
    """A float input sits inside a tolerance band between two answers."""


class NotFixedError(DomainError):
    """A class that must be fixed by the conjugation involution is not."""


class ExcludedLocusError(DomainError):
    """A point lies on a locus that a parametrization removes."""


class NotClassifiedError(DomainError):
    """The object lies outside what the classification covers."""
