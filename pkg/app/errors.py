"""Exception hierarchy shared by the library, the CLI and the tool server.

Every class carries the CLI exit code it maps to.
"""

from typing import Any, Optional


class OrbitError(Exception):
    """Base exception for orbitdx errors."""

    exit_code = 1


# ---------------------------------------------------------------------------
# Input errors (exit 2)
# ---------------------------------------------------------------------------

class InputError(OrbitError):
    """Raised when user-supplied input is malformed or inconsistent."""

    exit_code = 2


class ScalarParseError(InputError):
    """Raised when a scalar string is not a Gaussian rational."""
    pass


class PayloadError(InputError):
    """Raised when a JSON payload cannot be read or validated."""
    pass


class ShapeMismatchError(InputError, ValueError):
    """Raised when matrix shapes are incompatible for an operation."""
    pass


class NotAnEigenvalueError(InputError):
    """Raised when a scalar is not an eigenvalue of a Jordan structure."""
    pass


class SequenceError(InputError):
    """Raised when a type sequence or eigenvalue order is invalid."""
    pass


class CoordinateShapeError(InputError):
    """Raised when coordinate blocks do not match the type sequence."""
    pass


class SpectrumMismatchError(InputError):
    """Raised when a supplied eigenvalue list is not the spectrum of a matrix."""
    pass


class IndexOutOfRangeError(InputError):
    """Raised when a block, step or coordinate index is out of range."""
    pass


class BasePointMismatchError(InputError):
    """Raised when two tangent vectors live at different base points."""
    pass


class OffOrbitError(InputError):
    """Raised when supplied coordinates parameterize a matrix off the orbit."""
    pass


class DivisionByZeroError(InputError, ZeroDivisionError):
    """Raised when inverting the zero scalar."""
    pass


# ---------------------------------------------------------------------------
# Linear algebra failures
# ---------------------------------------------------------------------------

class SingularMatrixError(OrbitError, ZeroDivisionError):
    """Raised when inverting a singular matrix."""
    pass


class InconsistentSystemError(OrbitError):
    """Raised when a linear system has no solution."""
    pass


class NotTangentError(InconsistentSystemError):
    """Raised when a matrix is not tangent to the orbit at the base point."""
    pass


# ---------------------------------------------------------------------------
# Extraction failures (exit 3, 4)
# ---------------------------------------------------------------------------

class ExtractionError(OrbitError):
    """Raised when a flight of the hierarchy cannot be carried out."""

    exit_code = 3

    def __init__(self, message: str, flight: Optional[int] = None):
        self.flight = flight
        if flight is not None:
            message = f"flight {flight}: {message}"
        super().__init__(message)


class KernelDimensionError(ExtractionError):
    """Raised when dim ker(A - lambda I) differs from the expected n_k."""
    pass


class ChartDegenerateError(ExtractionError):
    """Raised when the kernel is not transverse to the retained coordinates."""
    pass


class ConjugationResidueError(ExtractionError):
    """Raised when the conjugated matrix is not block upper-triangular."""
    pass


class NoChartError(ExtractionError):
    """Raised when no permutation chart admits the extraction."""
    pass


class FinalResidueError(OrbitError):
    """Raised when the last matrix of the hierarchy is not lambda_M I."""

    exit_code = 4


# ---------------------------------------------------------------------------
# Verification and sampling (exit 5, 6)
# ---------------------------------------------------------------------------

class VerificationMismatchError(OrbitError):
    """Raised when an exact verification finds a differing entry."""

    exit_code = 5

    def __init__(self, message: str, detail: Optional[dict[str, Any]] = None):
        self.detail = detail or {}
        super().__init__(message)


class DegenerateSampleError(OrbitError):
    """Raised when random samples keep landing on the degenerate locus."""

    exit_code = 6
