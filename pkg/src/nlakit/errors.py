"""Exception types shared across the package."""


class NlaError(Exception):
    """Base class for every error raised by nlakit."""


class NotSymmetric(NlaError, ValueError):
    pass


class NotReal(NlaError, ValueError):
    pass


class AmbientMismatch(NlaError, ValueError):
    pass


class ParseError(NlaError, ValueError):
    """Malformed structure-equation text; carries the offending position."""

    def __init__(self, message: str, text: str = "", pos: int = 0, expected: str = ""):
        self.text = text
        self.pos = pos
        self.expected = expected
        detail = f"{message} at position {pos}"
        if expected:
            detail += f" (expected {expected})"
        if text:
            detail += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(detail)


class JacobiViolation(NlaError, ValueError):
    """d^2 e^k != 0 for some generator; ``residual`` is that 3-form."""

    def __init__(self, index: int, residual):
        self.index = index
        self.residual = residual
        super().__init__(f"d^2 e^{index + 1} = {residual} is not zero")


class NotAnIdeal(NlaError, ValueError):
    pass


class NotIntegrable(NlaError, ValueError):
    pass


class NotAlmostComplex(NlaError, ValueError):
    pass


class QuotientIsZero(NlaError, ValueError):
    pass


class SingularLambda(NlaError, ValueError):
    pass


class InadmissibleParams(NlaError, ValueError):
    pass


class IrrationalRotation(NlaError, ValueError):
    """A normalising rotation or square root is not a Gaussian rational."""


class RowMismatch(NlaError, AssertionError):
    pass


class OracleDisagreement(NlaError, RuntimeError):
    def __init__(self, message: str, data: dict):
        self.data = data
        super().__init__(f"{message}: {data}")


class Degenerate(NlaError, ValueError):
    pass
