"""Exception and warning types raised across the package."""


class RelOscError(Exception):
    """Base class for all errors raised by relosc."""


class DomainError(RelOscError, ValueError):
    """An argument lies outside the domain of the function."""


class PoleError(DomainError):
    """A gamma function argument sits on a pole (0, -1, -2, ...)."""

    def __init__(self, z, message=None):
        self.z = z
        super().__init__(message or f"gamma pole at z = {z!r}")


class ParameterError(DomainError):
    """Invalid polynomial parameters (vanishing Pochhammer denominator)."""


class ComplexExponentError(DomainError):
    """The spectral constants alpha, nu would be complex.

    Attributes:
        radicand: the negative radicand that triggered the failure.
        which: "discriminant", "alpha" or "nu".
    """

    def __init__(self, radicand, which="discriminant"):
        self.radicand = radicand
        self.which = which
        super().__init__(
            f"negative {which} radicand {radicand:.17g}: parameters leave the "
            "exactly solvable regime"
        )


class StripViolation(DomainError):
    """A shifted argument falls outside the declared analyticity strip."""


class DerivativeAccuracy(RelOscError, ArithmeticError):
    """Finite-difference phi-derivative failed its Richardson consistency check."""


class NonConvergence(RelOscError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(self, estimate, error, message=None):
        self.estimate = estimate
        self.error = error
        super().__init__(
            message or f"quadrature did not converge: estimate={estimate!r}, error={error!r}"
        )


class TruncationWarning(UserWarning):
    """An operator maps basis harmonics outside the requested window."""
