"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` so the command line
front end can emit a structured error object without string matching.
"""


class LieGeometryError(Exception):
    code = "LIE_GEOMETRY_ERROR"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": self.message}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class DimensionMismatch(LieGeometryError):
    code = "DIMENSION_MISMATCH"


class DegeneratePencil(LieGeometryError):
    code = "DEGENERATE_PENCIL"


class DependentGenerators(LieGeometryError):
    code = "DEPENDENT_GENERATORS"


class IsotropicAxis(LieGeometryError):
    code = "ISOTROPIC_AXIS"


class NotACycle(LieGeometryError):
    code = "NOT_A_CYCLE"


class DegenerateVector(LieGeometryError):
    code = "DEGENERATE_VECTOR"


class RankDeficient(LieGeometryError):
    code = "RANK_DEFICIENT"


class DegenerateConfiguration(LieGeometryError):
    code = "DEGENERATE_CONFIGURATION"


class AtInfinity(LieGeometryError):
    code = "AT_INFINITY"


class NotGeneric(LieGeometryError):
    code = "NOT_GENERIC"

    def __init__(self, message="", subset_index=None, **details):
        super().__init__(message, subset_index=subset_index, **details)
        self.subset_index = subset_index


class CenterAtInfinity(LieGeometryError):
    code = "CENTER_AT_INFINITY"


class CoincidentCenters(LieGeometryError):
    code = "COINCIDENT_CENTERS"


class SecondLevelDegenerate(LieGeometryError):
    code = "SECOND_LEVEL_DEGENERATE"

    def __init__(self, message="", subset_index=None, **details):
        super().__init__(message, subset_index=subset_index, **details)
        self.subset_index = subset_index


class EmptyTangentSet(LieGeometryError):
    code = "EMPTY_TANGENT_SET"


class InvalidParams(LieGeometryError):
    code = "INVALID_PARAMS"


class GenerationExhausted(LieGeometryError):
    code = "GENERATION_EXHAUSTED"


class UnsupportedDimension(LieGeometryError):
    code = "UNSUPPORTED_DIMENSION"


class ParseError(LieGeometryError):
    code = "PARSE_ERROR"


class ValidationError(LieGeometryError):
    code = "VALIDATION_ERROR"

    def __init__(self, message="", path=None, **details):
        super().__init__(message, path=path, **details)
        self.path = path
