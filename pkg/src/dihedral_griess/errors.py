class DihedralAlgebraError(Exception):
    """Base class; ``code`` is the machine-readable error tag."""

    code = "error"

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class InconsistentParametersError(DihedralAlgebraError):
    """Two derivations of the same quantity disagree for these parameters."""

    code = "inconsistent-parameters"


class NotClosedError(DihedralAlgebraError):
    """A product escaped the spanning set, or the closure loop hit its cap."""

    code = "not-closed"


class ParameterBoundError(DihedralAlgebraError, ValueError):
    code = "parameter-bound"
