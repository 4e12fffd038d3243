"""Exception types shared across the package.

Every error that can surface through the CLI carries a stable ``kind``
string so reports and scripts can match on it without parsing messages.
"""

from __future__ import annotations


class FockError(Exception):
    """Base class for all package errors."""

    kind = "error"

    def payload(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class DimensionMismatchError(FockError):
    kind = "dimension_mismatch"


class NotSymmetricError(FockError):
    kind = "not_symmetric"

    def __init__(self, message: str, asymmetry: float | None = None):
        super().__init__(message)
        self.asymmetry = asymmetry

    def payload(self) -> dict:
        out = super().payload()
        if self.asymmetry is not None:
            out["asymmetry"] = self.asymmetry
        return out


class NotPositiveDefiniteError(FockError):
    kind = "not_positive_definite"

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue

    def payload(self) -> dict:
        out = super().payload()
        if self.min_eigenvalue is not None:
            out["min_eigenvalue"] = self.min_eigenvalue
        return out


class RealFormError(FockError):
    """Operation needs a weight operator that preserves the real subspace."""

    kind = "requires_real_form"


class RangeOverflowError(FockError):
    """An exponent left the representable range; carries the exponent."""

    kind = "range_overflow"

    def __init__(self, message: str, exponent: float):
        super().__init__(message)
        self.exponent = exponent

    def payload(self) -> dict:
        out = super().payload()
        out["exponent"] = self.exponent
        return out


class DivergenceError(FockError):
    """A Gaussian integral or convolution has no finite value."""

    kind = "divergent_integral"


class NodeBudgetError(FockError):
    kind = "node_budget"


class EvaluatorError(FockError):
    """An integrand produced NaN or otherwise failed at quadrature nodes."""

    kind = "evaluator_failure"


class UnsupportedFormError(FockError):
    """A symbolic operation was asked of a function outside the closed class."""

    kind = "unsupported_form"


class ConfigError(FockError):
    kind = "config_invalid"
