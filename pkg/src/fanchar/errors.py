"""Exception hierarchy.

Validation problems with the input instance derive from ``ValidationError``
(the CLI maps them to exit status 2), file-level problems derive from
``ParseError`` (exit status 3).
"""


class FancharError(Exception):
    pass


class InexactDivision(FancharError):
    """Polynomial division left a nonzero remainder or a non-integral quotient."""


class NotCyclotomicProduct(FancharError):
    pass


class OrderExceedsCap(FancharError):
    def __init__(self, cap):
        super().__init__(f"no power up to {cap} is the identity")
        self.cap = cap


class InvariantViolation(FancharError):
    """An identity that holds for every valid instance failed."""


class InternalInconsistency(FancharError):
    pass


class NotPrimePower(FancharError):
    pass


class UnboundedPoset(FancharError):
    pass


class ValidationError(FancharError):
    pass


class FanInvalid(ValidationError):
    """Raised with every failed check; ``reasons`` is a list of (code, detail)."""

    def __init__(self, reasons):
        self.reasons = list(reasons)
        self.codes = [code for code, _ in self.reasons]
        text = "; ".join(f"{code}: {detail}" for code, detail in self.reasons)
        super().__init__(text)


class NotUnimodular(ValidationError):
    pass


class NotFanAutomorphism(ValidationError):
    def __init__(self, kind, witness, message):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


class NotProper(ValidationError):
    def __init__(self, power, face):
        super().__init__(
            f"c^{power} maps face {sorted(face)} to itself without fixing it pointwise"
        )
        self.power = power
        self.face = tuple(sorted(face))


class ParseError(FancharError):
    pass


class IndexOutOfRange(ParseError):
    pass


class DimensionMismatch(ParseError):
    pass
