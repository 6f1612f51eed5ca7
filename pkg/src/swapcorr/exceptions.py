"""Exception hierarchy shared by all swapcorr modules."""


class SwapCorrError(Exception):
    """Base class for every error raised by this package."""


class NonHermitian(SwapCorrError, ValueError):
    pass


class NotPSD(SwapCorrError, ValueError):
    pass


class DimMismatch(SwapCorrError, ValueError):
    pass


DimensionMismatch = DimMismatch


class UnsupportedDimension(SwapCorrError, ValueError):
    pass


class InvalidState(SwapCorrError, ValueError):
    """Input is not a density operator (Hermitian, unit trace, PSD)."""


class NotAState(SwapCorrError, ValueError):
    """A Bloch matrix does not reconstruct to a physical state."""


class InvalidEffect(SwapCorrError, ValueError):
    """Input is not a POVM effect (0 <= E <= 1)."""


class ZeroProbabilityOutcome(SwapCorrError, ArithmeticError):
    """The requested measurement outcome has (numerically) zero probability."""


class DegenerateFilter(SwapCorrError, ArithmeticError):
    """The state has no Bell-diagonal normal form (rank-deficient Lorentz data)."""


class NonPhysicalNormalForm(SwapCorrError, ArithmeticError):
    pass


class DegenerateDenominator(SwapCorrError, ArithmeticError):
    pass


class NotABD(SwapCorrError, ValueError):
    """X-state parameters do not satisfy the requested almost-Bell-diagonal case."""
