class ParameterError(ValueError):
    """Inputs outside an operation's domain (excluded parameters, bad indices...)."""


class ConsistencyError(RuntimeError):
    """An exact identity that must hold did not; indicates an arithmetic or table bug."""


class TorsionObstruction(ParameterError):
    """The point is 2- or 3-torsion, so F_2 * F_3 = 0 and the inversion formulas break down."""


class PellModulusError(ParameterError):
    """Pell modulus D is not a positive non-square."""
