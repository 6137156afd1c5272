from fractions import Fraction


class ThetaDecompError(Exception):
    pass


class ZeroLeadingCoefficient(ThetaDecompError, ZeroDivisionError):
    pass


class NonIntegralExponent(ThetaDecompError, ValueError):
    pass


class InsufficientOrder(ThetaDecompError, ValueError):
    pass


class OddIndex(ThetaDecompError, ValueError):
    pass


class OutOfRange(ThetaDecompError, ValueError):
    pass


class UnsupportedPower(ThetaDecompError, ValueError):
    pass


class InternalMismatch(ThetaDecompError, AssertionError):
    pass


class ResidualNonzero(ThetaDecompError):
    """Raised when a basis cannot express a series to the requested order.
    `exponent` and `coeff` describe the first surviving residual term.
    """

    def __init__(self, exponent: int, coeff: Fraction, order: int) -> None:
        super().__init__(f"residual u^{exponent} coefficient {coeff} is nonzero (checked to order {order})")
        self.exponent = exponent
        self.coeff = coeff
        self.order = order


class ConvergenceTooSlow(ThetaDecompError, ValueError):
    pass


class OddC(ThetaDecompError, ValueError):
    pass


class BranchUnavailable(ThetaDecompError, ValueError):
    pass


class CutoffTooSmall(ThetaDecompError, ValueError):
    pass


class UsageError(ThetaDecompError, ValueError):
    pass
