"""Exception hierarchy shared by all modules."""


class TwistorCMError(Exception):
    pass


class InvalidInput(TwistorCMError, ValueError):
    pass


class NotAFieldExtension(TwistorCMError, ArithmeticError):
    """The relative polynomial splits over the base; ``roots`` holds both roots."""

    def __init__(self, message, roots=()):
        super().__init__(message)
        self.roots = tuple(roots)


class IdenticallyZero(TwistorCMError, ArithmeticError):
    pass


class PrecisionExhausted(TwistorCMError, ArithmeticError):
    pass


class BudgetExhausted(TwistorCMError, RuntimeError):
    pass


class SignatureMismatch(InvalidInput):
    def __init__(self, message, signature):
        super().__init__(message)
        self.signature = signature


class NotAnIsometryGenerator(InvalidInput):
    pass


class DegenerateStructure(TwistorCMError, ValueError):
    """Reducible or degenerate Hodge structure (e.g. a vanishing coordinate)."""


class ClassNotPositive(InvalidInput):
    pass


class WrongBranch(InvalidInput):
    """A class was routed to the wrong construction (pole / equator / generic)."""

    def __init__(self, message, location):
        super().__init__(message)
        self.location = location


class ConsistencyError(TwistorCMError, AssertionError):
    """Internal-consistency failure: two independent computations disagree."""


class TheoremViolation(ConsistencyError):
    """A statement that is a theorem failed on a concrete instance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
