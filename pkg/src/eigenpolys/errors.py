"""Exception hierarchy.

Every domain error carries a ``code`` string that the command line front end
reports verbatim, so scripts can branch on it without parsing messages.
Index range problems are signalled with the builtin :class:`IndexError`.
"""


class EigenpolyError(Exception):
    code = "EigenpolyError"


class ParseError(EigenpolyError, ValueError):
    code = "ParseError"


class DegreeViolation(EigenpolyError, ValueError):
    code = "DegreeViolation"


class OrderZero(EigenpolyError, ValueError):
    code = "OrderZero"


class EigenvalueCollision(EigenpolyError, ArithmeticError):
    code = "EigenvalueCollision"


class CapExceeded(EigenpolyError, ValueError):
    code = "CapExceeded"


class DimensionMismatch(EigenpolyError, ValueError):
    code = "DimensionMismatch"


class SingularPivot(EigenpolyError, ArithmeticError):
    code = "SingularPivot"


class SingularTruncation(EigenpolyError, ArithmeticError):
    code = "SingularTruncation"


class PaddingInsufficient(EigenpolyError, ValueError):
    code = "PaddingInsufficient"


class ZeroGamma(EigenpolyError, ArithmeticError):
    code = "ZeroGamma"


class ParityError(EigenpolyError, ValueError):
    code = "ParityError"
