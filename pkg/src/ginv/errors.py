"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GinvError(Exception):
    """Base class for all errors raised by :mod:`ginv`."""


class DimensionError(GinvError, ValueError):
    """Operands have non-conformable shapes."""


class BackendMismatchError(GinvError, TypeError):
    """Operands live on different scalar backends (exact vs f64)."""


class SingularMatrixError(GinvError, ArithmeticError):
    """A matrix that must be invertible is singular."""


class RankAmbiguityError(GinvError, ArithmeticError):
    """Float rank decision is unreliable: a pivot sits inside the tolerance band."""

    def __init__(self, message: str, value: float | None = None) -> None:
        super().__init__(message)
        self.value = value


class NonComplementaryError(GinvError, ValueError):
    """Two subspaces do not form a direct sum decomposition of the ambient space."""


class NonexistenceError(GinvError, ValueError):
    """A requested outer inverse with prescribed range and null space does not exist."""


class InconsistentSystemError(GinvError, ValueError):
    """The right-hand side does not lie in the required range."""


class JordanBasisUnavailable(GinvError, ValueError):
    """No exact Jordan basis could be produced; the caller must supply one."""


class VerificationError(GinvError, AssertionError):
    """An internal post-condition check failed (usually a float rank fault)."""
