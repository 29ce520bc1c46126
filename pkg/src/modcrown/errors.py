"""Exception hierarchy shared by all modules."""


class ModcrownError(Exception):
    pass


class PoleError(ModcrownError, ValueError):
    """Argument sits on a pole (of Gamma, of 2F1 in its third parameter, of a kernel)."""


class DomainError(ModcrownError, ValueError):
    pass


class ConvergenceError(ModcrownError, ArithmeticError):
    pass


class UnclassifiedError(ModcrownError, ValueError):
    """Boundary behaviour of 2F1 is oscillatory (Re(c-a-b) = 0, c != a+b)."""


class FitError(ModcrownError, ArithmeticError):
    pass


class ShapeError(ModcrownError, ValueError):
    pass


class KmsViolation(ModcrownError, ValueError):
    pass


class DivergentIntegral(ModcrownError, ArithmeticError):
    pass


class Inconclusive(ModcrownError, RuntimeError):
    pass


class QuadratureError(ModcrownError, ArithmeticError):
    pass


class UndefinedPairing(ModcrownError, ValueError):
    pass


class InfinityError(ModcrownError, ValueError):
    pass


class StripError(ModcrownError, ValueError):
    pass


class PathSingularity(ModcrownError, ValueError):
    pass


class FormulaMismatch(ModcrownError, ArithmeticError):
    pass


class OffShell(ModcrownError, ValueError):
    pass


class DegenerateError(ModcrownError, ValueError):
    pass


class NotEuler(ModcrownError, ValueError):
    pass


class NotInP(ModcrownError, ValueError):
    pass
