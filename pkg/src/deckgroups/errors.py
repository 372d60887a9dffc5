"""Exception and warning types raised across the package."""


class DeckError(Exception):
    """Base class for every error raised by :mod:`deckgroups`."""


class ZeroVector(DeckError, ValueError):
    """Both projective coordinates of a point vanish."""


class SingularMatrix(DeckError, ValueError):
    """A 2x2 matrix is (numerically) not invertible."""


class DegenerateTriple(DeckError, ValueError):
    """Two of the three points handed to a three-point construction coincide."""


class BadDegree(DeckError, ValueError):
    pass


class SingularCoefficients(DeckError, ValueError):
    pass


class ValueSetNotPreserved(DeckError, ValueError):
    """A Moebius map that should preserve the critical values does not."""


class LiftVerificationFailed(DeckError, ArithmeticError):
    pass


class ProjectionVerificationFailed(DeckError, ArithmeticError):
    pass


class VerificationFailed(DeckError, ArithmeticError):
    """A computed deck group failed closure or the defining identity."""


class PowerMapInput(DeckError, ValueError):
    """The operation is undefined for power maps (the symmetry group is infinite)."""


class GroupTooLarge(DeckError, ValueError):
    pass


class NotAGroup(DeckError, ValueError):
    pass


class UnrecognizedGroup(DeckError, ValueError):
    """A finite Moebius group that is neither cyclic nor dihedral."""


class OracleTooLarge(DeckError, ValueError):
    pass


class DegenerateMapWarning(UserWarning):
    """The map sits numerically close to a classification boundary."""
