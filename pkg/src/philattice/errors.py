"""Exception types shared across the package."""


class LatticeError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ContextMismatch(LatticeError):
    pass


class NotSquarefree(LatticeError):
    pass


class ZeroConstantTerm(LatticeError):
    pass


class NotCoprime(LatticeError):
    """Raised when a polynomial has no inverse modulo phi.

    ``gcd`` carries the nontrivial common divisor as a witness.
    """

    def __init__(self, message, gcd=None):
        super().__init__(message)
        self.gcd = gcd


class NotPrimeSpot(NotCoprime):
    pass


class NotMember(LatticeError):
    pass


class UnsupportedModulus(LatticeError):
    pass


class RankDeficient(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class IrrationalInput(LatticeError):
    pass


class NotSublattice(LatticeError):
    pass


class EnumerationBudgetExceeded(LatticeError):
    pass


class BracketFailure(LatticeError):
    pass


class RootFindingFailure(LatticeError):
    pass


class NotCyclic(LatticeError):
    pass
