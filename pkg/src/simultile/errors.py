"""Exception types raised by simultile."""


class SimultileError(Exception):
    """Base class for every library error."""


class DivisionByZero(SimultileError, ZeroDivisionError):
    pass


class NonPositiveModulus(SimultileError, ValueError):
    pass


class AmbientMismatch(SimultileError, ValueError):
    pass


class NonPositiveDelta(SimultileError, ValueError):
    pass


class PlacementImpossible(SimultileError, ValueError):
    """A shift or disjoint-arc request that no multiplier can satisfy."""


class SearchExhausted(SimultileError):
    """The bounded shift search ran out of budget.

    Density of the orbit guarantees eventual success, so callers may retry
    with a larger budget.
    """


class GammaTooLarge(SimultileError, ValueError):
    pass


class NotCoprime(SimultileError, ValueError):
    pass


class InstanceTooLarge(SimultileError, ValueError):
    pass


class ClosureDiverged(SimultileError):
    """Breakpoint closure did not stabilise within the round cap."""


class NonConstantWeightOnCell(SimultileError, ValueError):
    pass


class BoundaryPoint(SimultileError, ValueError):
    def __init__(self, x, offsets):
        self.x = x
        self.offsets = list(offsets)
        super().__init__(f"x + t hits a piece boundary for t in {self.offsets}")
