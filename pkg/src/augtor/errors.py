"""Exception hierarchy for augtor."""


class AugtorError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInputError(AugtorError, ValueError):
    """Zero polynomial (or similar) where a nonzero value is required."""


class DomainError(AugtorError, ValueError):
    pass


class DivisibilityError(AugtorError, ArithmeticError):
    pass


class PreconditionError(AugtorError, ValueError):
    pass


class HypothesisError(PreconditionError):
    """Input violates a structural hypothesis (e.g. torsion-freeness)."""


class ConsistencyError(AugtorError):
    """Two routes that must agree did not; always a bug or a violated assumption."""


class SpecInconsistencyError(ConsistencyError):
    pass


class ResourceLimitError(AugtorError):
    pass


class ParseError(AugtorError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class LoadError(AugtorError, ValueError):
    pass


class CatalogLookupError(AugtorError, LookupError):
    pass
