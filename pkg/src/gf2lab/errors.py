"""Exception types shared across gf2lab."""

from __future__ import annotations


class GF2Error(Exception):
    """Base class for gf2lab errors."""


class DimensionMismatchError(GF2Error, ValueError):
    pass


class ScaleError(GF2Error, ValueError):
    """Raised when an input exceeds the exhaustive/exact computation budget."""


class InvalidCharacterError(GF2Error, ValueError):
    pass


class ContainmentError(GF2Error, ValueError):
    """A vector was expected to lie in a subspace (or set) but does not."""


class ParseError(GF2Error, ValueError):
    pass


class NotSimpleError(GF2Error, ValueError):
    """The point set contains the zero vector, so M(X) is not simple."""


class InfeasibleError(GF2Error, ValueError):
    pass


class CounterexampleError(GF2Error):
    """A verified statement failed on a concrete instance.

    Carries the instance so it can be dumped to disk for inspection.
    """

    def __init__(self, message, instance=None, details=None):
        super().__init__(message)
        self.instance = instance
        self.details = details or {}

    def dump(self, stem):
        """Write ``<stem>.gf2set`` and ``<stem>.json``; return the written paths."""
        import json

        from gf2lab.pointset import save

        paths = []
        if self.instance is not None:
            p = f"{stem}.gf2set"
            save(self.instance, p)
            paths.append(p)
        p = f"{stem}.json"
        with open(p, "w") as fh:
            json.dump({"error": str(self), "details": self.details}, fh, indent=2, default=str)
        paths.append(p)
        return paths
