"""Exception hierarchy. Every error that names a violation carries its witness."""


class SumsetError(Exception):
    """Base class for all errors raised by this package."""


class SpecError(SumsetError, ValueError):
    """A semigroup description fails validation."""


class NotCommutative(SpecError):
    def __init__(self, i, j):
        self.witness = (i, j)
        super().__init__(f"NotCommutative({i},{j}): table[{i}][{j}] != table[{j}][{i}]")


class NotAssociative(SpecError):
    def __init__(self, i, j, k):
        self.witness = (i, j, k)
        super().__init__(
            f"NotAssociative({i},{j},{k}): (i+j)+k != i+(j+k) for i={i}, j={j}, k={k}"
        )


class NoIdentity(SpecError):
    def __init__(self, index, witness=None):
        self.witness = (index, witness)
        msg = f"NoIdentity: index {index} is not an identity"
        if witness is not None:
            msg += f" (table[{index}][{witness}] != {witness})"
        super().__init__(msg)


class BadModulus(SpecError):
    def __init__(self, position, modulus):
        self.witness = (position, modulus)
        super().__init__(f"BadModulus: component {position} has modulus {modulus} < 1")


class TableShapeError(SpecError):
    pass


class ElementError(SumsetError, ValueError):
    pass


class SpecMismatch(ElementError):
    def __init__(self, msg="operands belong to different semigroups"):
        super().__init__(f"SpecMismatch: {msg}")


class ArityMismatch(ElementError):
    def __init__(self, expected, got):
        self.witness = (expected, got)
        super().__init__(f"ArityMismatch: expected {expected} coordinates, got {got}")


class IndexOutOfRange(ElementError):
    def __init__(self, index, order):
        self.witness = (index, order)
        super().__init__(f"IndexOutOfRange: index {index} not in [0, {order - 1}]")


class ProblemError(SumsetError, ValueError):
    """A problem (or problem file) is malformed; `location` is a JSON-path-like string."""

    def __init__(self, msg, location=None):
        self.location = location
        super().__init__(f"{location}: {msg}" if location else msg)


class DimensionMismatch(SumsetError, ValueError):
    def __init__(self, expected, got):
        self.witness = (expected, got)
        super().__init__(f"DimensionMismatch: expected length {expected}, got {got}")


class BudgetExceeded(SumsetError):
    def __init__(self, point, live, budget):
        self.point = point
        self.live = live
        self.budget = budget
        super().__init__(
            f"BudgetExceeded at h={point}: {live} live elements > budget {budget}"
        )


class EnumerationCapExceeded(SumsetError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"EnumerationCapExceeded: {count} formal symbols > cap {cap}")


class BoxTooSmall(SumsetError, ValueError):
    def __init__(self, direction, msg=""):
        self.direction = direction
        super().__init__(f"BoxTooSmall({direction})" + (f": {msg}" if msg else ""))


class GridOutsideBox(SumsetError, ValueError):
    pass


class GcdNotOne(SumsetError, ValueError):
    def __init__(self, g):
        self.g = g
        super().__init__(f"GcdNotOne({g})")


class EmptyGenerators(SumsetError, ValueError):
    def __init__(self):
        super().__init__("EmptyGenerators")


class NotStabilized(SumsetError):
    def __init__(self, max_threshold, msg=""):
        self.max_threshold = max_threshold
        super().__init__(f"NotStabilized({max_threshold})" + (f": {msg}" if msg else ""))
