"""Exception types shared by all modules."""


class CliffordError(Exception):
    """Base class for every error raised by the package."""


class AlgebraMismatch(CliffordError):
    """Operands live in different algebras (signature or ring differ)."""


class NotInvertible(CliffordError):
    pass


class DegenerateSignature(CliffordError):
    pass


class NotABlade(CliffordError):
    pass


class ConvergenceError(CliffordError):
    pass


class DimensionError(CliffordError):
    pass
