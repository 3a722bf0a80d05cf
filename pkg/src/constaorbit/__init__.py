"""Orbit-count bounds on the number of nonzero weights of simple-root
lambda-constacyclic codes, checked against exhaustive enumeration."""

from .constacode import (
    Code,
    CodeSpec,
    WeightDistribution,
    ZetaContext,
    build_code,
    build_context,
    code_spec,
    consta_shift,
    enumerate_codewords,
    fine_idempotent,
    min_poly,
    primitive_idempotent,
    scalar_mul,
    weight_distribution,
)
from .cyclotomic import Coset, CosetSystem, cosets_in_S, mult_order
from .errors import ConsistencyError, ConstaError, DomainError, ResourceError, ValidationError
from .gf import FieldElement, FieldTable, build_field, find_primitive_poly
from .orbitcount import (
    ComponentParams,
    OrbitReport,
    Variant,
    burnside_oracle,
    n_rho_irreducible,
    n_rho_m_irreducible,
    n_rho_m_total,
    n_rho_m_total_shared,
    n_rho_total,
    tightness_report,
)

__version__ = "0.1.0"

__all__ = [
    "Code", "CodeSpec", "WeightDistribution", "ZetaContext", "build_code", "build_context",
    "code_spec", "consta_shift", "enumerate_codewords", "fine_idempotent", "min_poly",
    "primitive_idempotent", "scalar_mul", "weight_distribution",
    "Coset", "CosetSystem", "cosets_in_S", "mult_order",
    "ConsistencyError", "ConstaError", "DomainError", "ResourceError", "ValidationError",
    "FieldElement", "FieldTable", "build_field", "find_primitive_poly",
    "ComponentParams", "OrbitReport", "Variant", "burnside_oracle", "n_rho_irreducible",
    "n_rho_m_irreducible", "n_rho_m_total", "n_rho_m_total_shared", "n_rho_total",
    "tightness_report",
]
