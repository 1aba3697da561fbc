"""Exception hierarchy for rabibus.

Every failure raised by the numerical layers derives from RabiBusError so
the controller can map it to a CLI exit status without inspecting messages.
"""


class RabiBusError(Exception):
    """Base class for all rabibus errors."""

    exit_code = 3


class InvalidDimensionError(RabiBusError, ValueError):
    """Operator or state dimensions do not match the layout they are used with."""


class InvalidParameterError(RabiBusError, ValueError):
    """A physical parameter is outside its allowed range or a name is unknown."""


class NonHermitianError(RabiBusError, ValueError):
    """A matrix that must be Hermitian (or PSD) is not, within tolerance."""


class ParityClassificationError(RabiBusError):
    """An eigenvector could not be assigned a definite parity."""

    exit_code = 4


class NearResonanceError(RabiBusError):
    """A dispersive denominator is too close to zero."""

    def __init__(self, message: str, detuning: float = 0.0):
        super().__init__(message)
        self.detuning = detuning


class InvalidRateError(RabiBusError, ValueError):
    """A dissipation rate or a bare channel frequency is not usable."""


class SteadyStateError(RabiBusError):
    """The Liouvillian has no unique steady state."""

    exit_code = 4


class ConvergenceError(RabiBusError):
    """An integration or truncation check exceeded its tolerance."""

    exit_code = 4


class ConfigError(RabiBusError):
    """An experiment configuration could not be parsed or validated."""

    exit_code = 2

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field
