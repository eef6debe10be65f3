"""Exception types raised across the package."""


class ConstantTermError(ValueError):
    """A series operation was called outside its domain (wrong constant term)."""


class NonUnitConstantTerm(ConstantTermError):
    """The constant term is not invertible in the coefficient ring."""


class CompositionAtNonzeroPoint(ConstantTermError):
    """The inner series of a composition has a nonzero constant term."""


class RangeError(ValueError):
    """An argument lies outside its admissible range."""


class SizeGuard(ValueError):
    """A request would enumerate an exponentially large object.

    ``guard`` names the limit constant, ``limit`` is its value.
    """

    def __init__(self, what: str, value: int, guard: str, limit: int, reason: str = ""):
        self.what = what
        self.value = value
        self.guard = guard
        self.limit = limit
        msg = f"{what}={value} exceeds {guard}={limit}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)
