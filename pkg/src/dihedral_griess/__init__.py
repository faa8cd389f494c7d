"""Exact construction of the dihedral subalgebra generated by two axes of a Griess algebra."""

from .algebra import (
    DihedralAlgebra,
    ProductEngine,
    alpha_of,
    alpha_product,
    axis_product,
    build_algebra,
    double_derivation,
    project_channel,
)
from .classification import (
    ClassRow,
    ConstraintSystem,
    MuMatrix,
    classify,
    constraint_system,
    independence_certificate,
    infeasibility_scan,
    mu_identity,
    render_table,
    solve_parameters,
)
from .element import Element
from .errors import (
    DihedralAlgebraError,
    InconsistentParametersError,
    NotClosedError,
    ParameterBoundError,
)
from .linalg import Matrix, psd_certificate, solve_linear, solve_quadratic
from .orbit import GramTable, OrbitModel, ParamRecord, build_orbit, derive_gram, involution_action
from .verify import AxiomReport, verify_axioms

__version__ = "0.1.0"

__all__ = [
    "AxiomReport", "ClassRow", "ConstraintSystem", "DihedralAlgebra", "DihedralAlgebraError",
    "Element", "GramTable", "InconsistentParametersError", "Matrix", "MuMatrix", "NotClosedError",
    "OrbitModel", "ParamRecord", "ParameterBoundError", "ProductEngine", "alpha_of",
    "alpha_product", "axis_product", "build_algebra", "build_orbit", "classify",
    "constraint_system", "derive_gram", "double_derivation", "independence_certificate",
    "infeasibility_scan", "involution_action", "mu_identity", "project_channel", "psd_certificate",
    "render_table", "solve_linear", "solve_parameters", "solve_quadratic", "verify_axioms",
]
