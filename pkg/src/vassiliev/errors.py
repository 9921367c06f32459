"""Exception types shared across the package."""


class KnotError(Exception):
    """Base class for every error raised by this package."""


# -- text formats -------------------------------------------------------------

class MalformedToken(KnotError):
    """A token does not match the Gauss/PD/table grammar."""


class UnbalancedCrossing(KnotError):
    """A crossing or double-point label does not appear exactly twice as required."""


class SignMismatch(KnotError):
    """The two visits of a crossing disagree on its sign."""


class NonCanonicalWord(KnotError):
    """A chord word is not in canonical (first-occurrence alphabetical) form."""


class DuplicateKey(KnotError):
    """A table file lists the same chord word twice."""


class MixedValueKinds(KnotError):
    """A table file mixes numeric and formal values."""


class BadIncidence(KnotError):
    """PD edge labels do not form a single consistently oriented strand."""


class NotConnected(KnotError):
    """PD traversal from the open start does not reach every vertex."""


class EulerViolation(KnotError):
    """The rotation system does not embed in the sphere (V - E + F != 2)."""


# -- diagram operations -------------------------------------------------------

class UnknownCrossing(KnotError):
    """Operation addressed a crossing label not present in the code."""


class UnknownDouble(KnotError):
    """Operation addressed a double-point label not present in the code."""


class PatternMismatch(KnotError):
    """A Reidemeister move was applied at a site that does not match its pattern."""


class InvalidPath(KnotError):
    """An exposing path is inconsistent with the diagram it is applied to."""


# -- evaluation ---------------------------------------------------------------

class LookupMiss(KnotError):
    """The actuality table lacks a chord word of degree <= m (malformed table)."""


class BoundViolation(KnotError):
    """An evaluation trace violated a structural bound; indicates an internal bug."""


# -- oracle derivation --------------------------------------------------------

class NoConfigurationFound(KnotError):
    """No counting configuration survived the selection corpus."""
