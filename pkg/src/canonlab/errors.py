"""Exception types shared across the package."""


class CanonlabError(Exception):
    """Base class for all library errors."""


class InputError(CanonlabError):
    """Malformed user input: unparseable elements, bad files, bad flags."""


class StructureError(CanonlabError):
    """Structurally invalid data: mismatched base parameters, non-unit
    determinants, components outside the valuation ring."""


class DomainError(CanonlabError):
    """An operation was applied outside its mathematical domain."""


class ExtensionRequiredError(CanonlabError):
    """Triangularization needs an eigenvector that only exists after a finite
    extension of the base field, which this ring model cannot express.
    The caller must supply pre-triangularized input."""


class InternalCheckError(CanonlabError):
    """An internal consistency assertion failed.  This signals a bug in the
    library (a theorem made executable came out false), never bad input."""


class GhostIntegralityError(InternalCheckError):
    """Ghost transport produced a component with negative valuation."""
