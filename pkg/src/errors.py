"""
Toolkit exceptions and CLI exit codes
"""

EXIT_OK = 0
EXIT_BOUND_VIOLATION = 1
EXIT_INPUT_ERROR = 2
EXIT_UNSUPPORTED = 3


class ToolkitError(ValueError):
    """Base class for all toolkit errors"""

    kind = 'toolkit-error'


class ValidationError(ToolkitError):
    """Input failed a structural or numerical validation"""

    kind = 'validation-error'


class NotHermitianError(ValidationError):
    kind = 'not-hermitian'


class NotPSDError(ValidationError):
    kind = 'not-psd'


class NegativeEigenvalueError(ValidationError):
    kind = 'negative-eigenvalue'


class TraceError(ValidationError):
    kind = 'trace'


class DimensionMismatchError(ValidationError):
    kind = 'dimension-mismatch'


class ZeroSupportError(ValidationError):
    kind = 'zero-support'


class ConfusionMatrixError(ValidationError):
    kind = 'confusion-matrix'


class ParseError(ToolkitError):
    """Ensemble or report file could not be parsed"""

    kind = 'parse-error'


class SizeLimitError(ToolkitError):
    """Explicit tensor power would exceed the configured size limit"""

    kind = 'size-limit'


class UnsupportedEnsembleError(ToolkitError):
    """Operation needs a pure ensemble but received a mixed one"""

    kind = 'unsupported'


class DegenerateEnsembleError(ToolkitError):
    """Ensemble contains repeated states, so no positive epsilon exists"""

    kind = 'degenerate-ensemble'


def exit_code_for(exc):
    """
    Map an exception to a CLI exit status

    Args:
        exc: Exception instance

    Returns:
        Integer exit code
    """
    if isinstance(exc, UnsupportedEnsembleError):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (ParseError, ValidationError, SizeLimitError,
                        DegenerateEnsembleError, FileNotFoundError)):
        return EXIT_INPUT_ERROR
    return EXIT_BOUND_VIOLATION


def failure_entry(exc):
    """
    Machine-readable description of an exception

    Args:
        exc: Exception instance

    Returns:
        Dictionary with kind and message
    """
    kind = getattr(exc, 'kind', type(exc).__name__)
    return {'kind': kind, 'message': str(exc)}
