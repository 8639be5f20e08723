"""Exception hierarchy shared by every module of the simulator."""


class GroverSimError(Exception):
    """Base class for all simulator errors."""


class ConfigurationError(GroverSimError, ValueError):
    """Invalid run parameters: size caps, empty target sets, bad policies."""


class BoundsError(GroverSimError, IndexError):
    """A basis index outside ``[0, 2**n)``."""


class IntegrityError(GroverSimError, ArithmeticError):
    """Normalization drifted beyond the allowed limit, or amplitudes went non-finite."""


class TheoremViolation(GroverSimError, AssertionError):
    """A checked mathematical identity failed; almost always an implementation bug."""
