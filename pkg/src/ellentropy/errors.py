"""Exception types shared across the package."""


class EntropyError(ValueError):
    """Base class for domain errors raised by this package."""


class InvalidModel(EntropyError):
    """A semi-axis model violates positivity or monotonicity requirements."""


class IndexBeyondTable(EntropyError):
    """A tabulated model without tail was evaluated past its last entry."""


class UnboundedCount(EntropyError):
    """A counting function would be infinite for the given threshold."""


class DivergentTail(EntropyError):
    """A tail power sum does not converge for the mapped exponent."""


class EnumerationTooLarge(EntropyError):
    """An explicit enumeration would exceed the configured cap.

    The exact count is still available via the ``count`` attribute.
    """

    def __init__(self, message, count):
        super().__init__(message)
        self.count = count


class ScanCapExceeded(EntropyError):
    """An index scan hit its cap before reaching a decision point."""


class RadiusOutOfRange(EntropyError):
    """A radius lies outside the admissible interval of a certified bound.

    The admissible interval is reported via the ``interval`` attribute
    as a pair ``(0, upper]``.
    """

    def __init__(self, message, interval):
        super().__init__(message)
        self.interval = interval


class NonCompactRegime(EntropyError):
    """The requested quantity is infinite because the body is not compact."""


class UnsupportedCorner(EntropyError):
    """Critical-line classification with neither a summable tail nor a
    positive liminf is outside the supported parameter range."""
