"""
Polynomials over Galois Rings
=============================

Dense polynomials with ``RingElement`` coefficients, Lagrange interpolation
over well-conditioned sets, annihilators, good polynomials and the algebra
F_A of block-constant polynomials.

Conventions:
------------
- Coefficients are stored constant term first and trimmed, so the zero
  polynomial has no coefficients and degree ``-math.inf``.
- "Monic" for a good polynomial means its leading coefficient is a unit;
  ``Poly.is_monic`` is the strict test (leading coefficient 1).
- F_A = {f : deg f < |A|, f constant on every block of A}, with the product
  taken modulo the annihilator h_A of A.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from src.algebra.ring_core import GaloisRing, RingElement, try_invert
from src.algebra.sets_partitions import (
    Partition,
    differences_are_units,
    is_well_conditioned,
)
from src.errors import (
    BadParametersError,
    DuplicatePointsError,
    NotASubgroupError,
    NotAUnitError,
    NotConstantOnBlockError,
    NotMonicError,
    NotWellConditionedError,
    PartitionNotCosetsError,
    RingMismatchError,
    WrongDegreeError,
)

logger = logging.getLogger(__name__)

Scalar = Union[RingElement, int]


class Poly:
    """Polynomial over a Galois ring in trimmed ascending-coefficient form."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GaloisRing, coeffs: Iterable[Scalar] = ()):
        items = [ring.element(c) for c in coeffs]
        while items and items[-1].is_zero:
            items.pop()
        self.ring = ring
        self.coeffs: Tuple[RingElement, ...] = tuple(items)

    @classmethod
    def x(cls, ring: GaloisRing) -> "Poly":
        return cls(ring, [0, 1])

    @classmethod
    def constant(cls, ring: GaloisRing, c: Scalar) -> "Poly":
        return cls(ring, [c])

    @classmethod
    def monomial(cls, ring: GaloisRing, k: int, c: Scalar = 1) -> "Poly":
        return cls(ring, [0] * k + [c])

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> RingElement:
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    @property
    def leading_is_unit(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_unit

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def coefficient(self, k: int) -> RingElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine polynomials over {self.ring} and {other.ring}")
            return other
        if isinstance(other, (RingElement, int)):
            return Poly(self.ring, [other])
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [self.coefficient(k) + other.coefficient(k) for k in range(size)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (RingElement, int)):
            return Poly(self.ring, [c * other for c in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return Poly(self.ring)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise BadParametersError("negative polynomial power")
        result = Poly.constant(self.ring, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        """Division with remainder by a polynomial with unit leading coefficient."""
        divisor = self._lift(divisor)
        if not divisor.leading_is_unit:
            raise NotAUnitError("divisor must have a unit leading coefficient")
        inv = try_invert(divisor.leading)
        rem = list(self.coeffs)
        dd = len(divisor.coeffs) - 1
        quot = [self.ring.zero] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * inv
            if c.is_zero:
                continue
            quot[k - dd] = c
            for i, d in enumerate(divisor.coeffs):
                rem[k - dd + i] = rem[k - dd + i] - c * d
        return Poly(self.ring, quot), Poly(self.ring, rem[:dd])

    def __mod__(self, divisor: "Poly") -> "Poly":
        return divmod(self, divisor)[1]

    def __floordiv__(self, divisor: "Poly") -> "Poly":
        return divmod(self, divisor)[0]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RingElement, int)):
            other = Poly(self.ring, [other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __call__(self, a: Scalar) -> RingElement:
        return poly_eval(self, a)

    def derivative(self) -> "Poly":
        return Poly(self.ring, [self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            coeff = f"({c})" if self.ring.m > 1 else str(c)
            terms.append(coeff if k == 0 else f"{coeff}*x^{k}")
        return "Poly(" + " + ".join(reversed(terms)) + ")"


def poly_eval(f: Poly, a: Scalar) -> RingElement:
    """Horner evaluation f(a)."""
    a = f.ring.element(a)
    acc = f.ring.zero
    for c in reversed(f.coeffs):
        acc = acc * a + c
    return acc


def annihilator_poly(points: Sequence[RingElement]) -> Poly:
    """prod (x - a) over the points: monic of degree |points|."""
    if not points:
        raise BadParametersError("annihilator of an empty set needs an explicit ring")
    if len(set(points)) != len(points):
        raise DuplicatePointsError("annihilator points must be distinct")
    ring = points[0].ring
    coeffs = [ring.one]
    for a in points:
        # multiply by (x - a) in place
        shifted = [ring.zero] + coeffs
        for k in range(len(coeffs)):
            shifted[k] = shifted[k] - a * coeffs[k]
        coeffs = shifted
    return Poly(ring, coeffs)


def _deflate(master: Sequence[RingElement], a: RingElement) -> List[RingElement]:
    """Synthetic division of a monic master polynomial by (x - a)."""
    out = [a.ring.zero] * (len(master) - 1)
    carry = a.ring.zero
    for k in range(len(master) - 1, 0, -1):
        carry = master[k] + carry * a
        out[k - 1] = carry
    return out


def lagrange_interpolate(
    pairs: Sequence[Tuple[RingElement, Scalar]], ring: Optional[GaloisRing] = None
) -> Poly:
    """
    Unique polynomial of degree < len(pairs) through the given points.

    Raises:
        NotWellConditionedError: the x-coordinates are not well-conditioned
    """
    if not pairs:
        if ring is None:
            raise BadParametersError("empty interpolation needs an explicit ring")
        return Poly(ring)
    xs = [x for x, _ in pairs]
    ring = xs[0].ring
    for x in xs:
        if x.ring != ring:
            raise RingMismatchError("interpolation points from different rings")
    report = is_well_conditioned(xs)
    if not report.ok:
        raise NotWellConditionedError(
            f"interpolation points are not well-conditioned (witness {report.witness})",
            witness=report.witness,
        )
    master = annihilator_poly(xs).coeffs
    total = [ring.zero] * len(xs)
    for x, y in pairs:
        y = ring.element(y)
        if y.is_zero:
            continue
        numerator = _deflate(master, x)
        denom = ring.zero
        for c in reversed(numerator):
            denom = denom * x + c
        scale = y * try_invert(denom)
        for k, c in enumerate(numerator):
            total[k] = total[k] + scale * c
    return Poly(ring, total)


def count_roots(f: Poly, domain: Iterable[RingElement]) -> int:
    return sum(1 for a in domain if poly_eval(f, a).is_zero)


# ============================================================================
# GOOD POLYNOMIALS
# ============================================================================


class GoodPolyVariant(str, Enum):
    SHIFTED = "x^h-1"
    PLAIN = "x^h"


@dataclass(frozen=True)
class GoodPolynomial:
    """
    A polynomial certified constant on every block of a partition.

    Attributes:
        g: The polynomial; deg g equals the largest block size
        partition: Partition it was certified against
        values: Constant value c_i taken on block i
        monic: Leading coefficient is a unit
        values_subtractive: Pairwise differences of the values are units,
            so the powers of g span F_A
    """

    g: Poly
    partition: Partition
    values: Tuple[RingElement, ...]
    monic: bool
    values_subtractive: bool

    @property
    def degree(self) -> int:
        return int(self.g.degree)


def verify_good_polynomial(
    g: Poly, partition: Partition, require_monic: bool = False
) -> GoodPolynomial:
    """
    Certify g against a partition.

    Raises:
        WrongDegreeError: deg g differs from the largest block size
        NotMonicError: require_monic and the leading coefficient is a zero divisor
        NotConstantOnBlockError: g takes two values on one block (block index and
            the two values are attached)
    """
    expected = max(partition.block_sizes)
    if g.degree != expected:
        raise WrongDegreeError(f"good polynomial must have degree {expected}, got {g.degree}")
    if require_monic and not g.leading_is_unit:
        raise NotMonicError(f"leading coefficient {g.leading} is not a unit")
    values = []
    for i in range(partition.num_blocks):
        block_values = [poly_eval(g, a) for a in partition.block_points(i)]
        first = block_values[0]
        for v in block_values[1:]:
            if v != first:
                raise NotConstantOnBlockError(
                    f"polynomial takes values {first} and {v} on block {i}", block=i, witness=(first, v)
                )
        values.append(first)
    return GoodPolynomial(
        g=g,
        partition=partition,
        values=tuple(values),
        monic=g.leading_is_unit,
        values_subtractive=differences_are_units(values),
    )


def _is_coset_partition(partition: Partition, subgroup: Sequence[RingElement]) -> bool:
    for i in range(partition.num_blocks):
        block = partition.block_points(i)
        if set(block) != {block[0] * h for h in subgroup}:
            return False
    return True


def subgroup_good_polynomial(
    subgroup: Sequence[RingElement],
    partition: Partition,
    variant: Union[GoodPolyVariant, str] = GoodPolyVariant.PLAIN,
) -> GoodPolynomial:
    """
    x^h or x^h - 1 for a subgroup H of order h, certified on its cosets.

    Raises:
        PartitionNotCosetsError: some block is not a coset of H
    """
    variant = GoodPolyVariant(variant)
    ring = partition.ring
    h = len(subgroup)
    if len(set(subgroup)) != h:
        raise NotASubgroupError("subgroup elements must be distinct")
    if not _is_coset_partition(partition, subgroup):
        raise PartitionNotCosetsError(f"blocks are not the cosets of the order-{h} subgroup")
    g = Poly.monomial(ring, h)
    if variant is GoodPolyVariant.SHIFTED:
        g = g - 1
    return verify_good_polynomial(g, partition, require_monic=True)


def vanishing_shift(good: GoodPolynomial, block: int) -> GoodPolynomial:
    """g - c_block: the same good polynomial shifted to vanish on one block."""
    shifted = good.g - good.values[block]
    return verify_good_polynomial(shifted, good.partition)


# ============================================================================
# THE ALGEBRA F_A
# ============================================================================


def _require_well_conditioned(partition: Partition) -> None:
    report = is_well_conditioned(partition.points)
    if not report.ok:
        raise NotWellConditionedError(
            f"evaluation set is not well-conditioned (witness {report.witness})",
            witness=report.witness,
        )


def fa_idempotent_basis(partition: Partition) -> List[Poly]:
    """f_1, ..., f_l with f_i = 1 on A_i and 0 on the other blocks, deg f_i < |A|."""
    _require_well_conditioned(partition)
    ring = partition.ring
    basis = []
    for i in range(partition.num_blocks):
        members = set(partition.blocks[i])
        pairs = [(a, 1 if k in members else 0) for k, a in enumerate(partition.points)]
        basis.append(lagrange_interpolate(pairs, ring))
    return basis


def fa_power_basis_check(good: GoodPolynomial) -> bool:
    """
    True iff 1, g, ..., g^(l-1) is a basis of F_A, i.e. the Vandermonde
    determinant prod (c_i - c_j) of the block values is a unit.
    """
    return differences_are_units(good.values)


def fa_multiply(f: Poly, g: Poly, partition: Partition) -> Poly:
    """Product in F_A: f * g reduced modulo the annihilator of A."""
    return (f * g) % annihilator_poly(partition.points)
