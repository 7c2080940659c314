"""
Galois Ring Arithmetic
======================

Exact arithmetic in Galois rings GR(p^s, m) = Z_{p^s}[x] / (f), where f is monic
of degree m with an irreducible reduction modulo p.

Representation:
---------------
An element is a fixed-length tuple of m integers in [0, p^s), constant term
first, always fully reduced. Equality and hashing are therefore structural.
Elements are totally ordered by their canonical index sum(c_i * q^i), q = p^s,
which every deterministic ordering in the package (Teichmuller generator
choice, coset order, point order) is derived from.

Key facts used throughout:
--------------------------
- |R| = p^(s*m), |N(R)| = (p^m - 1) * p^(m*(s-1)).
- R is local with maximal ideal (p); an element is a unit iff its image in the
  residue field F_{p^m} is nonzero.
- The residue field is a ``galois.GF`` class built from the modulus reduced mod p,
  so residue projection is a plain integer re-encoding.

Usage:
------
    from src.algebra.ring_core import make_galois_ring

    ring = make_galois_ring(11, 2, 1)        # Z_121
    a = ring.element(3)
    assert a * try_invert(a) == ring.one
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Dict, Iterator, Literal, Optional, Sequence, Tuple, Union

import galois

from src.errors import (
    BadParametersError,
    IndexOutOfRangeError,
    NoDefaultModulusError,
    NonPrimeError,
    NotASimpleRootError,
    NotAUnitError,
    ReducibleModulusError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)


# ============================================================================
# DEFAULT MODULI
# ============================================================================
# Ascending coefficient tuples (c_0, ..., c_m) of monic polynomials whose
# reduction mod p is irreducible. The table is fixed so that element encodings
# are reproducible across runs; see docs/MODULI.md.
# ============================================================================

DEFAULT_MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (3, 0, 0, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (3, 0, 0, 1),
    (7, 4): (1, 1, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (4, 1, 0, 1),
    (11, 4): (2, 1, 0, 0, 1),
    (13, 2): (2, 0, 1),
    (13, 3): (2, 0, 0, 1),
    (13, 4): (11, 0, 0, 0, 1),
}

ElementLike = Union["RingElement", int, Sequence[int]]


@dataclass(frozen=True)
class GaloisRing:
    """
    Descriptor of GR(p^s, m).

    Attributes:
        p: Prime characteristic of the residue field
        s: Nilpotency index of the maximal ideal (p)
        m: Extension degree over Z_{p^s}
        modulus: Ascending coefficients (c_0, ..., c_m) of the monic modulus

    Construct through ``make_galois_ring`` so the modulus is validated.
    """

    p: int
    s: int
    m: int
    modulus: Tuple[int, ...]

    @cached_property
    def q(self) -> int:
        """Characteristic p^s of the ring."""
        return self.p**self.s

    @cached_property
    def order(self) -> int:
        return self.q**self.m

    @cached_property
    def residue_size(self) -> int:
        return self.p**self.m

    @cached_property
    def unit_count(self) -> int:
        return (self.p**self.m - 1) * self.p ** (self.m * (self.s - 1))

    @cached_property
    def residue_field(self) -> type[galois.FieldArray]:
        """The residue field F_{p^m} as a galois field class."""
        if self.m == 1:
            return galois.GF(self.p)
        reduced = [c % self.p for c in self.modulus]
        poly = galois.Poly(reduced, field=galois.GF(self.p), order="asc")
        return galois.GF(self.p**self.m, irreducible_poly=poly)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.m)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, (1,) + (0,) * (self.m - 1))

    def element(self, value: ElementLike) -> "RingElement":
        """
        Build an element from an int (embedded as a constant), a coefficient
        sequence of length m, or an existing element of this ring.
        """
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatchError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return RingElement(self, (value % self.q,) + (0,) * (self.m - 1))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.m:
            raise BadParametersError(
                f"{self} elements have {self.m} coefficients, got {len(coeffs)}"
            )
        return RingElement(self, tuple(c % self.q for c in coeffs))

    def from_index(self, index: int) -> "RingElement":
        """Inverse of ``RingElement.index``."""
        if not 0 <= index < self.order:
            raise IndexOutOfRangeError(f"index {index} outside [0, {self.order})")
        coeffs = []
        for _ in range(self.m):
            index, digit = divmod(index, self.q)
            coeffs.append(digit)
        return RingElement(self, tuple(coeffs))

    def elements(self) -> Iterator["RingElement"]:
        """All elements in canonical order."""
        for index in range(self.order):
            yield self.from_index(index)

    def monomial(self, k: int) -> "RingElement":
        """x^k reduced modulo the modulus (for m = 1 this is 1 for every k)."""
        if self.m == 1:
            return self.one
        base = RingElement(self, (0, 1) + (0,) * (self.m - 2))
        return base**k

    def __str__(self) -> str:
        if self.m == 1:
            return f"Z_{self.q}"
        if self.s == 1:
            return f"GF({self.p}^{self.m})"
        return f"GR({self.q},{self.m})"


class RingElement:
    """
    Element of a Galois ring in canonical coefficient form.

    Supports +, -, *, unary -, ** (negative exponents invert) and mixing with
    plain ints, which are embedded as constants.
    """

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: GaloisRing, coeffs: Tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs
        self._hash: Optional[int] = None

    def _coerce(self, other: Any) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.element(other)
        return NotImplemented

    def __add__(self, other: Any) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.ring.q
        return RingElement(self.ring, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.ring.q
        return RingElement(self.ring, tuple((a - b) % q for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other: Any) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> "RingElement":
        q = self.ring.q
        return RingElement(self.ring, tuple((-a) % q for a in self.coeffs))

    def __mul__(self, other: Any) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, _multiply_coeffs(self.ring, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            return try_invert(self) ** (-exponent)
        result = self.ring.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (other.ring is self.ring or other.ring == self.ring)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.coeffs))
        return self._hash

    def __lt__(self, other: "RingElement") -> bool:
        return self.index < other.index

    def __int__(self) -> int:
        return self.index

    def __bool__(self) -> bool:
        return any(self.coeffs)

    @property
    def index(self) -> int:
        """Canonical index sum(c_i * q^i)."""
        q = self.ring.q
        value = 0
        for c in reversed(self.coeffs):
            value = value * q + c
        return value

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_unit(self) -> bool:
        p = self.ring.p
        return any(c % p for c in self.coeffs)

    @property
    def valuation(self) -> int:
        """Largest v with p^v dividing the element (s for zero)."""
        p, s = self.ring.p, self.ring.s
        best = s
        for c in self.coeffs:
            if c == 0:
                continue
            v = 0
            while c % p == 0:
                c //= p
                v += 1
            best = min(best, v)
        return best

    def __repr__(self) -> str:
        return f"RingElement({self}, {self.ring})"

    def __str__(self) -> str:
        if self.ring.m == 1:
            return str(self.coeffs[0])
        return ":".join(str(c) for c in self.coeffs)


def _multiply_coeffs(ring: GaloisRing, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    q, m = ring.q, ring.m
    if m == 1:
        return ((a[0] * b[0]) % q,)
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] += ai * bj
    modulus = ring.modulus
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k] % q
        if c:
            for i in range(m):
                prod[k - m + i] -= c * modulus[i]
        prod[k] = 0
    return tuple(c % q for c in prod[:m])


# ============================================================================
# CONSTRUCTION
# ============================================================================


def make_galois_ring(
    p: int, s: int, m: int, modulus: Optional[Sequence[int]] = None
) -> GaloisRing:
    """
    Validate parameters and build GR(p^s, m).

    Args:
        p: Prime characteristic
        s: Nilpotency index (>= 1)
        m: Extension degree (>= 1)
        modulus: Ascending coefficients of a monic degree-m polynomial; the
            built-in table supplies one when omitted (p in {2,3,5,7,11,13}, m <= 4)

    Raises:
        NonPrimeError, ReducibleModulusError, NoDefaultModulusError
    """
    if s < 1 or m < 1:
        raise BadParametersError(f"s and m must be positive, got s={s}, m={m}")
    if p < 2 or not galois.is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    q = p**s
    if modulus is None:
        if m == 1:
            coeffs: Tuple[int, ...] = (0, 1)
        elif (p, m) in DEFAULT_MODULI:
            coeffs = DEFAULT_MODULI[(p, m)]
        else:
            raise NoDefaultModulusError(f"no built-in modulus for p={p}, m={m}; pass one explicitly")
    else:
        coeffs = tuple(int(c) % q for c in modulus)
        if len(coeffs) != m + 1 or coeffs[-1] != 1:
            raise ReducibleModulusError(f"modulus must be monic of degree {m}: {list(modulus)}")
        if m > 1:
            reduced = galois.Poly([c % p for c in coeffs], field=galois.GF(p), order="asc")
            if not reduced.is_irreducible():
                raise ReducibleModulusError(f"modulus {list(modulus)} is reducible mod {p}")
    ring = GaloisRing(p=p, s=s, m=m, modulus=coeffs)
    logger.debug(f"Built {ring}: order {ring.order}, units {ring.unit_count}")
    return ring


# ============================================================================
# ARITHMETIC ENTRY POINTS
# ============================================================================


def arith(
    kind: Literal["add", "sub", "mul", "neg"], a: RingElement, b: Optional[RingElement] = None
) -> RingElement:
    """Function form of the ring operations; ``b`` is ignored for ``neg``."""
    if kind == "neg":
        return -a
    if b is None:
        raise BadParametersError(f"{kind} needs two operands")
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot combine elements of {a.ring} and {b.ring}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise BadParametersError(f"unknown operation {kind!r}")


def try_invert(a: RingElement) -> RingElement:
    """Multiplicative inverse; raises NotAUnitError when the residue is zero."""
    if not a.is_unit:
        raise NotAUnitError(f"{a} is not a unit in {a.ring}")
    ring = a.ring
    if ring.m == 1:
        return RingElement(ring, (pow(a.coeffs[0], -1, ring.q),))
    return a ** (ring.unit_count - 1)


def residue_project(a: RingElement) -> galois.FieldArray:
    """Image of ``a`` in F_{p^m}, as an element of ``a.ring.residue_field``."""
    p = a.ring.p
    value = 0
    for c in reversed(a.coeffs):
        value = value * p + c % p
    return a.ring.residue_field(value)


def lift_residue(ring: GaloisRing, value: Union[int, galois.FieldArray]) -> RingElement:
    """Coefficient-wise lift of a residue-field element (digits in [0, p))."""
    value = int(value)
    if not 0 <= value < ring.residue_size:
        raise IndexOutOfRangeError(f"{value} is not an element of F_{ring.residue_size}")
    coeffs = []
    for _ in range(ring.m):
        value, digit = divmod(value, ring.p)
        coeffs.append(digit)
    return RingElement(ring, tuple(coeffs))


def p_quotient(a: RingElement, v: int) -> RingElement:
    """Some b with p^v * b = a; requires valuation(a) >= v."""
    if a.valuation < v:
        raise BadParametersError(f"{a} is not divisible by p^{v}")
    div = a.ring.p**v
    return RingElement(a.ring, tuple(c // div for c in a.coeffs))


# ============================================================================
# HENSEL LIFTING AND THE TEICHMULLER GROUP
# ============================================================================


def _horner(coeffs: Sequence[RingElement], x: RingElement) -> RingElement:
    acc = x.ring.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def hensel_lift_root(
    f: Any, sbar: Union[int, galois.FieldArray], ring: Optional[GaloisRing] = None
) -> RingElement:
    """
    Lift a simple root of f-bar to the unique root of f over the ring.

    Args:
        f: Polynomial over R, either an object with ``.coeffs`` (a Poly) or a
            sequence of coefficients (elements or ints), constant term first
        sbar: Root in the residue field (field element or its integer encoding)
        ring: Required only when f is given as plain ints

    Returns:
        r with f(r) = 0 and residue_project(r) = sbar, found by Newton iteration.

    Raises:
        NotASimpleRootError: sbar is not a root of f-bar, or f-bar'(sbar) = 0
    """
    raw = list(getattr(f, "coeffs", f))
    if ring is None:
        ring = getattr(f, "ring", None)
        if ring is None:
            ring = next((c.ring for c in raw if isinstance(c, RingElement)), None)
        if ring is None:
            raise BadParametersError("cannot infer the ring of an integer polynomial")
    coeffs = [ring.element(c) for c in raw]
    deriv = [coeffs[k] * k for k in range(1, len(coeffs))]

    r = lift_residue(ring, sbar)
    if _horner(coeffs, r).is_unit:
        raise NotASimpleRootError(f"{int(sbar)} is not a root of f mod p")
    slope = _horner(deriv, r)
    if not slope.is_unit:
        raise NotASimpleRootError(f"{int(sbar)} is a repeated root of f mod p")

    for iteration in range(ring.s + 1):
        value = _horner(coeffs, r)
        if value.is_zero:
            logger.debug(f"Hensel lift converged to {r} after {iteration} steps")
            return r
        r = r - value * try_invert(_horner(deriv, r))
    # Newton doubles p-adic precision each step, so s steps always suffice
    raise NotASimpleRootError(f"Hensel iteration did not converge for {int(sbar)}")


@lru_cache(maxsize=None)
def teichmuller_group(ring: GaloisRing) -> Tuple[RingElement, ...]:
    """
    The cyclic Teichmuller group G of order p^m - 1 as (w^0, w^1, ...).

    w is the smallest primitive element of F_{p^m} (integer encoding), lifted
    coefficient-wise and raised to p^(m(s-1)).
    """
    field = ring.residue_field
    primitive = min(int(e) for e in field.primitive_elements)
    omega = lift_residue(ring, primitive) ** (ring.p ** (ring.m * (ring.s - 1)))
    group = [ring.one]
    for _ in range(ring.residue_size - 2):
        group.append(group[-1] * omega)
    logger.debug(f"Teichmuller generator of {ring}: {omega}")
    return tuple(group)


@lru_cache(maxsize=None)
def unit_group(ring: GaloisRing) -> Tuple[RingElement, ...]:
    """All units of the ring in canonical order."""
    return tuple(e for e in ring.elements() if e.is_unit)


# ============================================================================
# DIRECT PRODUCTS OF GALOIS RINGS
# ============================================================================


@dataclass(frozen=True)
class ProductRing:
    """R_1 x ... x R_w with componentwise operations. Components are 0-indexed."""

    factors: Tuple[GaloisRing, ...]

    @property
    def zero(self) -> "ProductElement":
        return ProductElement(self, tuple(f.zero for f in self.factors))

    @property
    def one(self) -> "ProductElement":
        return ProductElement(self, tuple(f.one for f in self.factors))

    @property
    def order(self) -> int:
        total = 1
        for f in self.factors:
            total *= f.order
        return total

    def _check_index(self, i: int) -> None:
        if not 0 <= i < len(self.factors):
            raise IndexOutOfRangeError(f"component {i} outside [0, {len(self.factors)})")

    def element(self, parts: Sequence[ElementLike]) -> "ProductElement":
        if len(parts) != len(self.factors):
            raise IndexOutOfRangeError(f"expected {len(self.factors)} components, got {len(parts)}")
        return ProductElement(self, tuple(f.element(v) for f, v in zip(self.factors, parts)))

    def idempotent(self, i: int) -> "ProductElement":
        """e_i = (0, ..., 1, ..., 0)."""
        self._check_index(i)
        return self.inject(self.factors[i].one, i)

    def inject(self, c: ElementLike, i: int) -> "ProductElement":
        self._check_index(i)
        parts = [f.zero for f in self.factors]
        parts[i] = self.factors[i].element(c)
        return ProductElement(self, tuple(parts))

    def elements(self) -> Iterator["ProductElement"]:
        for parts in product(*(f.elements() for f in self.factors)):
            yield ProductElement(self, tuple(parts))

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class ProductElement:
    ring: ProductRing
    parts: Tuple[RingElement, ...]

    def _other(self, other: Any) -> "ProductElement":
        if isinstance(other, int):
            return self.ring.element([other] * len(self.parts))
        if not isinstance(other, ProductElement) or other.ring != self.ring:
            raise RingMismatchError(f"cannot combine with {other!r}")
        return other

    def __add__(self, other: Any) -> "ProductElement":
        other = self._other(other)
        return ProductElement(self.ring, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other: Any) -> "ProductElement":
        other = self._other(other)
        return ProductElement(self.ring, tuple(a - b for a, b in zip(self.parts, other.parts)))

    def __mul__(self, other: Any) -> "ProductElement":
        other = self._other(other)
        return ProductElement(self.ring, tuple(a * b for a, b in zip(self.parts, other.parts)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> "ProductElement":
        return ProductElement(self.ring, tuple(-a for a in self.parts))

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.parts)

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.parts) + ")"


def product_ring(factors: Sequence[GaloisRing]) -> ProductRing:
    if not factors:
        raise BadParametersError("a product ring needs at least one factor")
    return ProductRing(tuple(factors))


def project_component(x: ProductElement, i: int) -> RingElement:
    """pi_i(x)."""
    x.ring._check_index(i)
    return x.parts[i]


def inject_component(ring: ProductRing, c: ElementLike, i: int) -> ProductElement:
    """e_i * (.., c, ..): c in slot i, zero elsewhere."""
    return ring.inject(c, i)
