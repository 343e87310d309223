"""Exception and warning types shared across the package."""


class InvalidParameterError(ValueError):
    """An exponent, radius or index is outside its admissible range."""


class OutsideRegimeError(ValueError):
    """A formula was requested in a regime where it is not asserted."""


class SelectionUndefinedError(ValueError):
    """No admissible exponent split exists for the given profile."""


class IndeterminateError(ArithmeticError):
    """A boundary comparison could not be settled at the maximum precision."""


class UnsupportedDescriptorError(TypeError):
    """A decay descriptor other than a power law was supplied."""


class HypothesisWarning(UserWarning):
    """A value was computed outside the hypotheses of the underlying theorem."""
