"""Exception hierarchy shared across the package."""


class CayringError(Exception):
    """Base class for every error raised by cayring."""


class NotARing(CayringError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class NotLocal(CayringError):
    pass


class BadModulus(CayringError):
    pass


class IndexOutOfRange(CayringError, IndexError):
    pass


class NotAnIdeal(CayringError):
    def __init__(self, reason, witness):
        self.reason = reason
        self.witness = tuple(witness)
        super().__init__(f"{reason} at {self.witness}")


class CapExceeded(CayringError):
    """A size cap guarding an exponential or quadratic routine was hit."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


# Names used by individual modules; all share the CapExceeded exit path.
OrderCapExceeded = CapExceeded
SizeCapExceeded = CapExceeded


class RingSpecError(CayringError):
    """Parse failure with a byte offset into the input text."""

    def __init__(self, message, offset, text=""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} (at offset {offset})")


class RingSpecSyntaxError(RingSpecError):
    pass


class NotPrimePower(RingSpecError):
    pass


class BadDivisor(CayringError):
    pass


class EmptyVertexSet(CayringError):
    pass


class BadFieldOrder(CayringError):
    pass


class SizeMismatch(CayringError):
    pass


class FactorsNotOrdered(CayringError):
    pass
