"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class ConstructionError(RuntimeError):
    """A group construction produced inconsistent data (bad gluing, bad
    decomposition, relation residual out of tolerance)."""


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded its sample/memory budget.

    The ``partial`` attribute holds whatever was computed before the
    budget was hit; it is always valid (just truncated).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
