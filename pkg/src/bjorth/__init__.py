"""Birkhoff-James orthogonality checks with certificates.

``x`` is BJ-orthogonal to ``y`` when ``||x + lam*y|| >= ||x||`` for every real ``lam``.
"""

from .attainment import AttainmentSet, TopSingularData, attainment_sampled, jacobi_eigh, top_singular
from .bilinear import (BilinearAttainment, BilinearForm, bilinear_attainment, bilinear_eval,
                       bilinear_norm, bilinear_orth_check)
from .certificate import OrthCertificate, Verdict
from .function_orth import (ComponentReport, HypothesisError, component_equivalence,
                            connected_witness, function_orth_check, sup_norm)
from .matrix_orth import bhatia_semrl_check, operator_norm, operator_orth_check
from .norms import DimensionError, NormSpec, inner, norm, norm_rows, parse_norm, validate_norm
from .oracle import OracleResult, oracle_orth, sphere_sup
from .primitives import (ConeSide, LineSearchResult, in_cone, is_bj_orthogonal,
                         min_norm_over_line, one_sided_derivative)
from .sampled import SampledFunction, circle_grid, interval_grid, on_interval, product_grid, sample

__all__ = [
    "AttainmentSet", "BilinearAttainment", "BilinearForm", "ComponentReport", "ConeSide",
    "DimensionError", "HypothesisError", "LineSearchResult", "NormSpec", "OracleResult",
    "OrthCertificate", "SampledFunction", "TopSingularData", "Verdict",
    "attainment_sampled", "bhatia_semrl_check", "bilinear_attainment", "bilinear_eval",
    "bilinear_norm", "bilinear_orth_check", "circle_grid", "component_equivalence",
    "connected_witness", "function_orth_check", "in_cone", "inner", "interval_grid",
    "is_bj_orthogonal", "jacobi_eigh", "min_norm_over_line", "norm", "norm_rows",
    "on_interval", "one_sided_derivative", "operator_norm", "oracle_orth", "parse_norm",
    "product_grid", "operator_orth_check", "sample", "sphere_sup", "sup_norm",
    "top_singular", "validate_norm",
]
