"""Exception hierarchy shared by every package."""
from typing import Any, Dict, Optional


class DbvpError(Exception):
    """Base error carrying a stable machine-readable code."""

    code = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Error object written on stderr by the CLI."""
        return {
            "error": self.code,
            "message": self.message,
            "details": {k: _plain(v) for k, v in self.details.items()},
        }


def _plain(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


class GridFunctionError(DbvpError):
    code = "not-in-W"


class QuadratureError(DbvpError):
    code = "F-quadrature-failed"


class CertificateError(DbvpError):
    code = "invalid-certificate"


class DegenerateDenominatorError(DbvpError):
    code = "degenerate-denominator"


class NotSeparableError(DbvpError):
    code = "not-separable"


class HypothesisFailedError(DbvpError):
    code = "hypothesis-failed"


class EmptyIntervalError(DbvpError):
    code = "empty-interval"


class SolverError(DbvpError):
    """Solver failure; keeps the last iterate when one exists."""

    code = "solver-error"

    def __init__(self, message: str, result: Optional[Any] = None, **details: Any):
        super().__init__(message, **details)
        self.result = result


class NoConvergenceError(SolverError):
    code = "no-convergence"


class JacobianSingularError(SolverError):
    code = "jacobian-singular"


class LeftShellError(SolverError):
    code = "left-shell"


class BadShellError(SolverError):
    code = "bad-shell"


class InstanceTooLargeError(DbvpError):
    code = "instance-too-large"


class ExpressionSyntaxError(DbvpError):
    code = "syntax-error"

    def __init__(self, message: str, offset: int, **details: Any):
        super().__init__(message, offset=offset, **details)
        self.offset = offset


class UnknownIdentifierError(DbvpError):
    code = "unknown-identifier"


class ConfigError(DbvpError):
    code = "config-error"
