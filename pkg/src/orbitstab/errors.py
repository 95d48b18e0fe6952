"""Exception hierarchy shared by every module."""


class OrbitStabError(Exception):
    """Base class for library errors."""


class ParseError(OrbitStabError, ValueError):
    """Malformed scene, field element, polynomial or generator record."""


class NotInGroupError(OrbitStabError, ValueError):
    """Parameters or maps that are not members of the requested group."""


class HypothesisError(OrbitStabError):
    """The input does not satisfy the hypothesis a case analysis needs."""


class SizeLimitError(OrbitStabError):
    """Coefficient growth exceeded the configured bit cap."""


class CycleNotResolved(HypothesisError):
    """No component period was found up to the requested bound."""
