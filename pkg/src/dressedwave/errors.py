"""Exception types shared across the package."""


class NumericalError(RuntimeError):
    """A computation ran but failed a numerical health check."""


class QuadratureError(NumericalError):
    pass


class NormDriftError(NumericalError):
    pass
