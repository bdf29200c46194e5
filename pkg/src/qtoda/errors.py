"""Exception types raised across the package."""


class QTodaError(Exception):
    """Base class for all errors raised by qtoda."""


class DivisionByZero(QTodaError, ZeroDivisionError):
    pass


class UnsupportedType(QTodaError, ValueError):
    pass


class NotAnAutomorphism(QTodaError):
    pass


class NotInLattice(QTodaError):
    pass


class NotDominant(QTodaError):
    pass


class TableMismatch(QTodaError):
    def __init__(self, row, detail=""):
        self.row = row
        super().__init__(f"degree table mismatch in row {row}: {detail}")


class AlgebraMismatch(QTodaError):
    pass


class NotInvariant(QTodaError):
    def __init__(self, generator, reflection):
        self.generator = generator
        self.reflection = reflection
        super().__init__(f"generator {generator} is not fixed by reflection s_{reflection}")


class DegenerateJacobian(QTodaError):
    pass


class NotExpressible(QTodaError):
    pass


class Mismatch(QTodaError):
    def __init__(self, lhs, rhs, message="polynomials differ"):
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(message)


class NoSolution(QTodaError):
    pass


class DegreeTooLarge(QTodaError):
    def __init__(self, dimension, cap):
        self.dimension = dimension
        self.cap = cap
        super().__init__(f"ansatz dimension {dimension} exceeds cap {cap}")


class NotInDictionaryDomain(QTodaError):
    pass
