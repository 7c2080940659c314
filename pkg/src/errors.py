"""
Error Hierarchy
===============

Every failure the library raises derives from ``LrcError``. Each class carries
the process exit code the CLI reports for it:

    2  domain / math error (bad ring, bad partition, bad parameters, ...)
    3  unrecoverable erasure pattern

Usage errors are reported by the argument parser itself with exit code 1.
"""

from typing import Any, Optional, Tuple


class LrcError(ValueError):
    """Base class for all library errors."""

    exit_code: int = 2


# ============================================================================
# RING ARITHMETIC
# ============================================================================


class NonPrimeError(LrcError):
    """The characteristic passed to a ring constructor is not prime."""


class ReducibleModulusError(LrcError):
    """The modulus is not monic of degree m or its reduction mod p is reducible."""


class NoDefaultModulusError(LrcError):
    """No built-in modulus exists for the requested (p, m)."""


class RingMismatchError(LrcError):
    """Operands belong to different rings."""


class NotAUnitError(LrcError):
    """Inversion of an element whose residue projection is zero."""


class NotASimpleRootError(LrcError):
    """Hensel lifting needs a root of f-bar with non-vanishing derivative."""


class IndexOutOfRangeError(LrcError):
    """A component, level or coordinate index lies outside its range."""


# ============================================================================
# EVALUATION SETS AND POLYNOMIALS
# ============================================================================


class DuplicatePointsError(LrcError):
    """A point set that must be distinct contains repeats."""


class OrderDoesNotDivideError(LrcError):
    """The requested subgroup order does not divide p^m - 1."""


class NotASubgroupError(LrcError):
    """The set is not a subgroup of the Teichmuller group, or the universe is not closed under it."""


class NotWellConditionedError(LrcError):
    """The evaluation points admit no unique interpolation."""

    def __init__(self, message: str, witness: Optional[Tuple[Any, Any]] = None):
        super().__init__(message)
        self.witness = witness


class PartitionNotCosetsError(LrcError):
    """The partition blocks are not the cosets of the given subgroup."""


class NotConstantOnBlockError(LrcError):
    """A candidate good polynomial takes two values on one block."""

    def __init__(self, message: str, block: int, witness: Tuple[Any, Any]):
        super().__init__(message)
        self.block = block
        self.witness = witness


class WrongDegreeError(LrcError):
    """A candidate good polynomial has the wrong degree for the block size."""


class NotMonicError(LrcError):
    """A polynomial required to be monic has a zero-divisor leading coefficient."""


# ============================================================================
# CONSTRUCTIONS
# ============================================================================


class BlockSizeMismatchError(LrcError):
    """Partition block sizes do not fit the construction parameters."""


class BadGoodPolynomialError(LrcError):
    """The good polynomial is missing, non-monic or unsuitable for the construction."""


class DivisibilityViolationError(LrcError):
    """A divisibility constraint between code parameters fails (e.g. r does not divide K)."""


class TooManyBlocksRequestedError(LrcError):
    """The message needs more blocks (or a higher degree) than the evaluation set allows."""


class LengthMismatchError(LrcError):
    """A message, word or code has the wrong length."""


class MapNotAvailableError(LrcError):
    """The requested coefficient map is not injective for this good polynomial."""


class DegreeTooHighError(LrcError):
    """A local message polynomial exceeds its degree budget."""


class PositionNotErasedError(LrcError):
    """Recovery was requested for a coordinate that is present."""


class TooManyErasuresInBlockError(LrcError):
    """Too few surviving symbols in a block for local repair."""

    exit_code = 3

    def __init__(self, message: str, block: int, survivors: int, needed: int):
        super().__init__(message)
        self.block = block
        self.survivors = survivors
        self.needed = needed


class ConstructionMismatchError(LrcError):
    """An operation was applied to a code of another construction kind."""


# ============================================================================
# ANALYSIS, HARNESS AND I/O
# ============================================================================


class InstanceTooLargeError(LrcError):
    """The requested enumeration exceeds the configured cap."""


class BadParametersError(LrcError):
    """Code parameters violate basic sanity constraints."""


class BadErasureModelError(LrcError):
    """Unknown erasure model or an erasure count outside the block size."""


class SerializationError(LrcError):
    """A JSON document or CLI token cannot be decoded."""
