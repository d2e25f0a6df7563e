"""Exception hierarchy shared by all clifpauli modules."""


class CliffordError(Exception):
    """Base class for every error raised by clifpauli."""


class DivisionByZero(CliffordError, ZeroDivisionError):
    pass


class FieldMismatch(CliffordError, TypeError):
    """A scalar or operation does not belong to the requested field."""


class NotInvertible(CliffordError):
    pass


class RelationViolation(CliffordError):
    """A generator pair fails ``g_a g_b + g_b g_a = 2 eta_ab e``.

    ``a`` and ``b`` are 1-based generator indices, ``residual`` the max-norm
    of the defect.
    """

    def __init__(self, a: int, b: int, residual: float, label: str = ""):
        self.a = a
        self.b = b
        self.residual = residual
        self.label = label
        where = f"{label}: " if label else ""
        super().__init__(f"{where}relation ({a},{b}) violated, residual {residual:.6g}")


class UnclassifiableVolume(CliffordError):
    pass


class OddDimensionRequired(CliffordError, ValueError):
    pass


class SignatureMismatch(CliffordError, ValueError):
    pass


class UnclassifiableCase(CliffordError):
    pass


class NoCandidateFound(CliffordError):
    pass


class VerificationFailed(CliffordError):
    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual={residual:.6g})")


class AdmissibilityError(CliffordError, ValueError):
    """Requested case does not exist for the given signature and field."""


class ParseError(CliffordError, ValueError):
    """Malformed serialized input.  ``where`` locates the offending field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
