"""Exception types shared across the package."""


class ZeroDenominator(ArithmeticError):
    """A denominator vanished, either identically or at an evaluation point."""


class BadParams(ValueError):
    """Parameters that a module family or algebra cannot accept."""


class VerificationFailed(AssertionError):
    """A listed solution or identity failed its own check."""


class WeightAbsent(LookupError):
    """The requested weight does not occur in the module."""


class SpecFileError(ValueError):
    """A module-spec or case-table file could not be parsed."""
