"""
Evaluation Sets and Block Partitions
====================================

Certification of subtractive / well-conditioned point sets and construction of
block partitions from subgroup cosets.

Definitions used here:
- subtractive: every point is a unit and every pairwise difference is a unit;
  equivalently the residue projection is injective on the set and avoids 0.
- well-conditioned: subtractive, or subtractive after removing exactly one
  point which is 0 or a zero divisor (the "special" point).

Orderings are deterministic. Blocks are sorted by their smallest representative
in canonical element order and the codeword coordinates concatenate the blocks.
A coset block lists rep * h with h running over the subgroup in generator-power
order.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.algebra.ring_core import (
    GaloisRing,
    RingElement,
    residue_project,
    teichmuller_group,
    unit_group,
)
from src.errors import (
    BadParametersError,
    DuplicatePointsError,
    IndexOutOfRangeError,
    NotASubgroupError,
    OrderDoesNotDivideError,
)

logger = logging.getLogger(__name__)


class Certificate(str, Enum):
    SUBTRACTIVE = "subtractive"
    WELL_CONDITIONED_WITH_SPECIAL = "well_conditioned_with_special"
    UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class ConditioningReport:
    """
    Outcome of ``is_well_conditioned``.

    ``witness`` holds two points whose difference is a zero divisor when the
    set is not well-conditioned.
    """

    certificate: Certificate
    special_index: Optional[int] = None
    witness: Optional[Tuple[RingElement, RingElement]] = None

    @property
    def ok(self) -> bool:
        return self.certificate is not Certificate.UNCERTIFIED


def _check_distinct(points: Sequence[RingElement]) -> None:
    seen = set()
    for a in points:
        if a in seen:
            raise DuplicatePointsError(f"point {a} occurs more than once")
        seen.add(a)


def differences_are_units(points: Sequence[RingElement]) -> bool:
    """All pairwise differences are units (residues pairwise distinct)."""
    residues = [int(residue_project(a)) for a in points]
    return len(set(residues)) == len(residues)


def is_subtractive(points: Sequence[RingElement]) -> bool:
    _check_distinct(points)
    residues = [int(residue_project(a)) for a in points]
    return 0 not in residues and len(set(residues)) == len(residues)


def _collision(points: Sequence[RingElement]) -> Optional[Tuple[RingElement, RingElement]]:
    seen: Dict[int, RingElement] = {}
    for a in points:
        key = int(residue_project(a))
        if key in seen:
            return seen[key], a
        seen[key] = a
    return None


def is_well_conditioned(points: Sequence[RingElement]) -> ConditioningReport:
    """
    Classify a point set.

    Returns SUBTRACTIVE, WELL_CONDITIONED_WITH_SPECIAL with the index of the
    non-unit point, or UNCERTIFIED with a witness pair.
    """
    _check_distinct(points)
    non_units = [i for i, a in enumerate(points) if not a.is_unit]
    if len(non_units) > 1:
        return ConditioningReport(
            Certificate.UNCERTIFIED, witness=(points[non_units[0]], points[non_units[1]])
        )
    units = [a for a in points if a.is_unit]
    clash = _collision(units)
    if clash is not None:
        return ConditioningReport(Certificate.UNCERTIFIED, witness=clash)
    if non_units:
        return ConditioningReport(Certificate.WELL_CONDITIONED_WITH_SPECIAL, special_index=non_units[0])
    return ConditioningReport(Certificate.SUBTRACTIVE)


# ============================================================================
# PARTITIONS
# ============================================================================


@dataclass(frozen=True)
class Partition:
    """
    An ordered evaluation set with its block decomposition.

    Attributes:
        ring: Ring the points live in
        points: Evaluation points in codeword-coordinate order
        blocks: Index tuples A_1, ..., A_l partitioning range(len(points))
        certificate: Conditioning certificate of the whole point set
        special_index: Position of the special point for a well-conditioned set
    """

    ring: GaloisRing
    points: Tuple[RingElement, ...]
    blocks: Tuple[Tuple[int, ...], ...]
    certificate: Certificate
    special_index: Optional[int] = None

    def __post_init__(self) -> None:
        covered = sorted(i for block in self.blocks for i in block)
        if covered != list(range(len(self.points))):
            raise BadParametersError("blocks must partition the coordinate range exactly")
        if any(not block for block in self.blocks):
            raise BadParametersError("empty block in partition")
        report = is_well_conditioned(self.points)
        if (report.certificate, report.special_index) != (self.certificate, self.special_index):
            raise BadParametersError(
                f"certificate {Certificate(self.certificate).value} does not match the points "
                f"({report.certificate.value})"
            )

    @classmethod
    def from_blocks(
        cls, ring: GaloisRing, point_blocks: Sequence[Sequence[RingElement]]
    ) -> "Partition":
        """Concatenate point blocks (kept in the given order) and certify the union."""
        points: List[RingElement] = []
        blocks: List[Tuple[int, ...]] = []
        for block in point_blocks:
            start = len(points)
            points.extend(ring.element(a) for a in block)
            blocks.append(tuple(range(start, len(points))))
        report = is_well_conditioned(points)
        return cls(ring, tuple(points), tuple(blocks), report.certificate, report.special_index)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_points(self, i: int) -> Tuple[RingElement, ...]:
        if not 0 <= i < len(self.blocks):
            raise IndexOutOfRangeError(f"block {i} outside [0, {len(self.blocks)})")
        return tuple(self.points[k] for k in self.blocks[i])

    def block_of(self, position: int) -> int:
        for i, block in enumerate(self.blocks):
            if position in block:
                return i
        raise IndexOutOfRangeError(f"position {position} outside [0, {self.n})")

    def restrict(self, block_indices: Iterable[int]) -> "Partition":
        """Sub-partition on the chosen blocks, re-indexed and re-certified."""
        return Partition.from_blocks(self.ring, [self.block_points(i) for i in block_indices])


# ============================================================================
# SUBGROUPS AND COSETS
# ============================================================================


def subgroup_of_order(group: Sequence[RingElement], h: int) -> Tuple[RingElement, ...]:
    """
    The unique subgroup of order h of a cyclic group listed as (g^0, g^1, ...),
    listed as the powers of its smallest generator.
    """
    order = len(group)
    if h < 1 or order % h:
        raise OrderDoesNotDivideError(f"{h} does not divide the group order {order}")
    members = group[:: order // h]
    generator = min((members[j] for j in range(h) if math.gcd(j, h) == 1), key=lambda a: a.index)
    return tuple(generator**i for i in range(h))


def _check_subgroup(ring: GaloisRing, subgroup: Sequence[RingElement]) -> None:
    members = set(subgroup)
    if ring.one not in members:
        raise NotASubgroupError("subgroup must contain 1")
    teich = set(teichmuller_group(ring))
    if not members <= teich:
        raise NotASubgroupError("subgroup must lie in the Teichmuller group")
    for a in subgroup:
        for b in subgroup:
            if a * b not in members:
                raise NotASubgroupError(f"{a} * {b} leaves the set")


def coset_partition(
    universe: Sequence[RingElement], subgroup: Sequence[RingElement]
) -> Partition:
    """
    Partition ``universe`` into cosets of ``subgroup``.

    Raises:
        NotASubgroupError: subgroup not in the Teichmuller group, not closed,
            or the universe is not closed under multiplication by it
    """
    if not universe:
        raise BadParametersError("empty universe")
    ring = universe[0].ring
    _check_subgroup(ring, subgroup)
    _check_distinct(universe)
    members = set(universe)
    assigned = set()
    point_blocks: List[List[RingElement]] = []
    for a in sorted(universe):
        if a in assigned:
            continue
        # rep * H in the subgroup's own order; reps ascend
        coset = [a * h for h in subgroup]
        if not members.issuperset(coset):
            raise NotASubgroupError(f"universe is not closed under the subgroup at {a}")
        assigned.update(coset)
        point_blocks.append(coset)
    logger.debug(f"{len(point_blocks)} cosets of size {len(subgroup)} in {ring}")
    return Partition.from_blocks(ring, point_blocks)


def maximal_subtractive_set(ring: GaloisRing) -> Tuple[RingElement, ...]:
    """The Teichmuller group: a subtractive set of the maximal size p^m - 1."""
    return teichmuller_group(ring)


def multiblock_partition(ring: GaloisRing, subgroup: Sequence[RingElement]) -> Partition:
    """
    Cosets of ``subgroup`` in N(R), with the cosets inside the Teichmuller
    group listed first so they form a prefix of the coordinates.
    """
    inner = coset_partition(teichmuller_group(ring), subgroup)
    inner_points = set(inner.points)
    rest = [a for a in unit_group(ring) if a not in inner_points]
    point_blocks = [inner.block_points(i) for i in range(inner.num_blocks)]
    if rest:
        outer = coset_partition(rest, subgroup)
        point_blocks += [outer.block_points(i) for i in range(outer.num_blocks)]
    return Partition.from_blocks(ring, point_blocks)
