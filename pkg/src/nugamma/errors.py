"""Exception types shared across the package."""


class NuGammaError(Exception):
    """Base class for package-specific failures."""


class IntegrationError(NuGammaError):
    """Adaptive quadrature failed to reach its tolerance."""


class FitError(NuGammaError):
    """A parametric fit could not be carried out on the given window."""


class OutOfRegimeError(NuGammaError, ValueError):
    """Requested bound outside its validity region (d^2 < 4 sigma^2 / 3)."""


class DataError(NuGammaError, ValueError):
    """Input data is missing, unparseable or degenerate."""
