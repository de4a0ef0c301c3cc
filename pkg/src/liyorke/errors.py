"""Exception types raised by the library.

Every error is a ``ValueError`` so callers that only care about bad input can
catch that one class; the CLI maps :class:`BudgetExhausted` to its own exit
code.
"""


class LiYorkeError(ValueError):
    pass


class NotNondecreasing(LiYorkeError):
    pass


class InfinityInPrefix(LiYorkeError):
    pass


class TailMismatch(LiYorkeError):
    pass


class OrderViolated(LiYorkeError):
    pass


class NotCase1(LiYorkeError):
    pass


class NotCase2(LiYorkeError):
    pass


class NotCertifiableShape(LiYorkeError):
    pass


class MixedShape(LiYorkeError):
    pass


class DecompositionFailed(LiYorkeError):
    pass


class BudgetExhausted(LiYorkeError):
    """A bounded search ran out of budget.

    ``partial`` carries whatever evidence was gathered before the budget ran
    out (``None`` for plain index searches).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
