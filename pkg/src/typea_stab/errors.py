"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`StabError`.
The CLI maps :class:`InputError` subclasses to exit code 3 and everything
else to exit code 4.
"""


class StabError(Exception):
    """Base class for all package errors."""


class InputError(StabError):
    """The model definition itself is unusable."""


class ParseError(InputError):
    """Config file is malformed or has unknown/mistyped keys."""


class ValidationError(InputError):
    """Config parsed but violates a parameter invariant."""

    def __init__(self, message, fields=()):
        super().__init__(message)
        self.fields = tuple(fields)


class ResonanceError(StabError):
    """Compensation susceptance sits on the parallel resonance of the magnetizing branch."""

    def __init__(self, message, y_c=None):
        super().__init__(message)
        self.y_c = y_c


class DegenerateCircuit(StabError):
    """Effective magnetizing reactance cancels the line reactance."""


class DomainError(StabError):
    """Argument outside the domain of a model function."""


class StepError(StabError):
    """Non-positive integration step."""


class NoEquilibrium(StabError):
    """No sign change of the net torque on the analysis domain."""

    def __init__(self, message, v_w=None, parameter_value=None):
        super().__init__(message)
        self.v_w = v_w
        self.parameter_value = parameter_value


class StabilityMismatch(StabError):
    """The lowest equilibrium is not stable."""


class QuadratureError(StabError):
    """Adaptive quadrature could not meet its tolerance within the evaluation budget."""


class WindowExceedsDomain(StabError):
    """A Lyapunov window maps outside the valid slip range."""


class DriftError(StabError):
    """Regenerated golden fixtures differ from the stored ones."""

    def __init__(self, message, changed=()):
        super().__init__(message)
        self.changed = list(changed)
