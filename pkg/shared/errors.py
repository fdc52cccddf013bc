"""
Error taxonomy. Every error carries a stable ``error_code`` that ends up in
report envelopes and in the README error table.
"""

from typing import Any, Optional


class ToolkitError(Exception):
    error_code = "PROCESSING_ERROR"

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class ParseError(ToolkitError):
    error_code = "PARSE_ERROR"


class RankMismatchError(ToolkitError):
    error_code = "RANK_MISMATCH"


class IntervalError(ToolkitError):
    error_code = "INVALID_INTERVAL"


class SingularMatrixError(ToolkitError):
    error_code = "SINGULAR_MATRIX"


class NotAMatroidError(ToolkitError):
    error_code = "NOT_A_MATROID"


class DegenerateInputError(ToolkitError):
    error_code = "DEGENERATE_INPUT"


class DimensionError(ToolkitError):
    error_code = "DIMENSION_ERROR"


class NonGenericFunctionalError(ToolkitError):
    error_code = "NON_GENERIC_FUNCTIONAL"


class NonSmoothFanError(ToolkitError):
    error_code = "NON_SMOOTH_FAN"


class RepeatedLettersError(ToolkitError):
    error_code = "REPEATED_LETTERS"


class LengthConditionError(ToolkitError):
    error_code = "LENGTH_CONDITION"


class NotBottFanError(ToolkitError):
    error_code = "NOT_BOTT_FAN"


class BoundsError(ToolkitError):
    error_code = "OUT_OF_BOUNDS"
