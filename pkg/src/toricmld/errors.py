"""Structured exceptions.

Every mathematical failure carries a machine-readable ``code`` and a
``details`` mapping so the CLI can emit it verbatim as JSON.
"""

from __future__ import annotations


class MathError(Exception):
    code = "math_error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        return {"error": self.code, "message": self.message, "details": self.details}


class DegenerateConeError(MathError):
    code = "degenerate_cone"


class ZeroVectorError(MathError):
    code = "zero_vector"


class DimensionError(MathError):
    code = "dimension_mismatch"


class LatticeError(MathError):
    code = "lattice"


class NotLogCanonicalError(MathError):
    code = "not_lc"


class NoSolutionError(MathError):
    code = "no_solution"


class UnsupportedShapeError(MathError):
    code = "unsupported_shape"


class AmbiguousPointError(MathError):
    code = "ambiguous_point"


class ContractionNotFoundError(MathError):
    code = "no_toric_contraction"


class NormalFormError(MathError):
    code = "normal_form"


class InhomogeneousError(MathError):
    code = "inhomogeneous"
