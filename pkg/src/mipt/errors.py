"""Exception types shared across the package."""


class SizeError(ValueError):
    """Requested register size is out of the supported range."""


class BipartitionError(ValueError):
    """Operation needs an even number of qubits for the half-chain cut."""


class NumericalConsistencyError(ArithmeticError):
    """An internal numerical sanity check failed (e.g. vanishing Born weights)."""


class WeylOrderError(ValueError):
    """Cartan coefficients violate the Weyl chamber ordering."""


class NonUnitaryError(ValueError):
    """A matrix that must be unitary is not."""


class OutsideRegionError(ValueError):
    """An (entangling power, gate typicality) pair has no realizing gate."""


class DegenerateFitError(RuntimeError):
    """Collapse fit has no usable information (overlap too small or curves
    statistically indistinguishable)."""


class NoCrossingError(RuntimeError):
    """Shifted entropy curves do not intersect anywhere in range."""
