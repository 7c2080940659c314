"""
Codes Package
=============

1. constructions.py
   - CodeSpec and make_code for the six construction families
   - Encoders, local repair, build_* helpers

2. analysis.py
   - Standard form, brute-force distance / locality, construct_T
   - Bounds, non-existence test, tower projections, product codes
"""

from .analysis import (
    BoundReport,
    LinearCode,
    LocalityReport,
    StandardFormResult,
    as_linear_code,
    bounds,
    brute_force_locality,
    brute_force_min_distance,
    connected_components,
    construct_T,
    dependency_graph,
    generator_matrix,
    nonexistence_predicate,
    product_code_combine,
    standard_form,
    tower_projection,
)
from .constructions import (
    CodeKind,
    CodeSpec,
    CoefficientMap,
    build_almost_optimal,
    build_crt,
    build_generalized,
    build_multiblocks,
    build_rrho,
    build_tamo_barg,
    encode,
    make_code,
    recover_word,
)

__all__ = [
    # Constructions
    "CodeKind",
    "CodeSpec",
    "CoefficientMap",
    "make_code",
    "encode",
    "recover_word",
    "build_tamo_barg",
    "build_generalized",
    "build_almost_optimal",
    "build_rrho",
    "build_crt",
    "build_multiblocks",
    # Analysis
    "LinearCode",
    "StandardFormResult",
    "LocalityReport",
    "BoundReport",
    "as_linear_code",
    "generator_matrix",
    "standard_form",
    "brute_force_min_distance",
    "brute_force_locality",
    "dependency_graph",
    "connected_components",
    "construct_T",
    "bounds",
    "nonexistence_predicate",
    "tower_projection",
    "product_code_combine",
]
