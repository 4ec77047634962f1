"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ACIError(Exception):
    """Base class for all errors raised by acimat."""


# -- fields -----------------------------------------------------------------

class FieldError(ACIError, ValueError):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModPoly(FieldError):
    pass


class NoDefaultPoly(FieldError):
    pass


class ZeroInverse(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError):
    pass


# -- matrices ---------------------------------------------------------------

class MatrixError(ACIError, ValueError):
    pass


class EmptyMatrix(MatrixError):
    pass


class CrossColumnVariable(MatrixError):
    def __init__(self, var: str, col_a: int, col_b: int):
        super().__init__(f"variable {var!r} appears in columns {col_a} and {col_b}")
        self.var = var
        self.col_a = col_a
        self.col_b = col_b


class MissingAssignment(MatrixError):
    def __init__(self, var: str):
        super().__init__(f"no value assigned to {var!r}")
        self.var = var


class ForeignAssignment(MatrixError):
    def __init__(self, var: str):
        super().__init__(f"{var!r} is not a variable of the matrix")
        self.var = var


class DimensionMismatch(MatrixError):
    pass


class SingularMatrix(MatrixError):
    pass


class EmptySelection(MatrixError):
    pass


class IndexOutOfRange(MatrixError, IndexError):
    pass


class VariableClash(MatrixError):
    pass


# -- analyses ---------------------------------------------------------------

class BudgetExceeded(ACIError):
    def __init__(self, needed: int, limit: int, what: str = "completions"):
        super().__init__(f"{what}: need {needed}, budget is {limit}")
        self.needed = needed
        self.limit = limit
        self.what = what


class SubsetBudgetExceeded(BudgetExceeded):
    def __init__(self, needed: int, limit: int):
        super().__init__(needed, limit, what="column subsets")


class PreconditionViolated(ACIError):
    pass


class NotConstantRank(PreconditionViolated):
    pass


class NotSquareFullRank(PreconditionViolated):
    pass


class NotClassified(PreconditionViolated):
    pass


class InfeasibleShape(PreconditionViolated):
    pass


class VerificationFailed(ACIError, AssertionError):
    pass


# -- text formats -----------------------------------------------------------

class ParseError(ACIError, ValueError):
    pass


class ACISyntaxError(ParseError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.line = line
        self.col = col
        self.expected = expected


class UnknownFieldElement(ParseError):
    pass
