"""
Algebra Layer
=============

Galois ring arithmetic, evaluation-set certification and polynomials.

Modules:
--------
1. ring_core.py
   - GaloisRing / RingElement, default moduli, inversion, residue projection
   - Hensel lifting and the Teichmuller group
   - Direct products of Galois rings

2. sets_partitions.py
   - Subtractive / well-conditioned certificates
   - Block partitions and coset partitions

3. poly_algebra.py
   - Poly, interpolation, annihilators
   - Good polynomials and the algebra F_A
"""

from .poly_algebra import (
    GoodPolynomial,
    GoodPolyVariant,
    Poly,
    annihilator_poly,
    count_roots,
    fa_idempotent_basis,
    fa_multiply,
    fa_power_basis_check,
    lagrange_interpolate,
    poly_eval,
    subgroup_good_polynomial,
    vanishing_shift,
    verify_good_polynomial,
)
from .ring_core import (
    DEFAULT_MODULI,
    GaloisRing,
    ProductElement,
    ProductRing,
    RingElement,
    arith,
    hensel_lift_root,
    inject_component,
    lift_residue,
    make_galois_ring,
    p_quotient,
    product_ring,
    project_component,
    residue_project,
    teichmuller_group,
    try_invert,
    unit_group,
)
from .sets_partitions import (
    Certificate,
    ConditioningReport,
    Partition,
    coset_partition,
    is_subtractive,
    is_well_conditioned,
    maximal_subtractive_set,
    multiblock_partition,
    subgroup_of_order,
)

__all__ = [
    # Rings
    "DEFAULT_MODULI",
    "GaloisRing",
    "RingElement",
    "ProductRing",
    "ProductElement",
    "make_galois_ring",
    "arith",
    "try_invert",
    "residue_project",
    "lift_residue",
    "p_quotient",
    "hensel_lift_root",
    "teichmuller_group",
    "unit_group",
    "product_ring",
    "project_component",
    "inject_component",
    # Sets and partitions
    "Certificate",
    "ConditioningReport",
    "Partition",
    "is_subtractive",
    "is_well_conditioned",
    "subgroup_of_order",
    "coset_partition",
    "maximal_subtractive_set",
    "multiblock_partition",
    # Polynomials
    "Poly",
    "poly_eval",
    "annihilator_poly",
    "lagrange_interpolate",
    "count_roots",
    "GoodPolynomial",
    "GoodPolyVariant",
    "verify_good_polynomial",
    "subgroup_good_polynomial",
    "vanishing_shift",
    "fa_idempotent_basis",
    "fa_power_basis_check",
    "fa_multiply",
]
