"""Point-set certificates, coset partitions and multiblock partitions."""

import pytest

from src.algebra.ring_core import teichmuller_group, unit_group
from src.algebra.sets_partitions import (
    Certificate,
    Partition,
    coset_partition,
    is_subtractive,
    is_well_conditioned,
    maximal_subtractive_set,
    multiblock_partition,
    subgroup_of_order,
)
from src.errors import (
    BadParametersError,
    DuplicatePointsError,
    IndexOutOfRangeError,
    NotASubgroupError,
    OrderDoesNotDivideError,
)


def _ints(points):
    return [a.index for a in points]


class TestCertificates:
    def test_teichmuller_group_is_subtractive(self, z25, gr4_2):
        assert is_subtractive(teichmuller_group(z25))
        assert is_subtractive(maximal_subtractive_set(gr4_2))

    def test_zero_is_the_special_point(self, z25):
        points = [z25.zero, *teichmuller_group(z25)]
        report = is_well_conditioned(points)
        assert report.certificate is Certificate.WELL_CONDITIONED_WITH_SPECIAL
        assert report.special_index == 0
        assert report.ok

    def test_residue_collision_is_uncertified(self, z25):
        report = is_well_conditioned([z25.element(1), z25.element(6)])
        assert report.certificate is Certificate.UNCERTIFIED
        assert _ints(report.witness) == [1, 6]
        assert not report.ok

    def test_two_zero_divisors_are_uncertified(self, z25):
        report = is_well_conditioned([z25.zero, z25.element(5)])
        assert report.certificate is Certificate.UNCERTIFIED

    def test_duplicates_rejected(self, z25):
        with pytest.raises(DuplicatePointsError):
            is_well_conditioned([z25.one, z25.one])


class TestSubgroups:
    def test_subgroup_of_order_five(self, z121):
        assert _ints(subgroup_of_order(teichmuller_group(z121), 5)) == [1, 3, 9, 27, 81]

    def test_generator_power_order(self, z25, gr4_2):
        assert _ints(subgroup_of_order(teichmuller_group(z25), 2)) == [1, 24]
        assert _ints(subgroup_of_order(teichmuller_group(z25), 1)) == [1]
        x = gr4_2.element([0, 1])
        assert subgroup_of_order(teichmuller_group(gr4_2), 3) == (gr4_2.one, x, x * x)

    def test_order_must_divide(self, z121):
        with pytest.raises(OrderDoesNotDivideError):
            subgroup_of_order(teichmuller_group(z121), 3)

    def test_cosets_of_order_five(self, z121):
        group = teichmuller_group(z121)
        partition = coset_partition(group, subgroup_of_order(group, 5))
        assert [_ints(partition.block_points(i)) for i in range(2)] == [
            [1, 3, 9, 27, 81],
            [40, 120, 118, 112, 94],
        ]
        assert partition.certificate is Certificate.SUBTRACTIVE
        assert partition.blocks == ((0, 1, 2, 3, 4), (5, 6, 7, 8, 9))

    def test_not_closed_set_rejected(self, z121):
        group = teichmuller_group(z121)
        with pytest.raises(NotASubgroupError):
            coset_partition(group, [z121.element(1), z121.element(3)])

    def test_subgroup_outside_teichmuller_rejected(self, z25):
        with pytest.raises(NotASubgroupError):
            coset_partition(unit_group(z25), [z25.one, z25.element(6)])

    def test_universe_not_closed(self, z121):
        group = teichmuller_group(z121)
        subgroup = subgroup_of_order(group, 5)
        with pytest.raises(NotASubgroupError):
            coset_partition(group[:6], subgroup)


class TestPartition:
    def test_block_lookup_and_restrict(self, z121_tamo_barg):
        partition = z121_tamo_barg.partition
        assert partition.n == 10
        assert partition.num_blocks == 2
        assert partition.block_sizes == (5, 5)
        assert partition.block_of(7) == 1
        restricted = partition.restrict([1])
        assert _ints(restricted.points) == [40, 120, 118, 112, 94]
        assert restricted.blocks == ((0, 1, 2, 3, 4),)

    def test_block_index_out_of_range(self, z121_tamo_barg):
        with pytest.raises(IndexOutOfRangeError):
            z121_tamo_barg.partition.block_points(2)
        with pytest.raises(IndexOutOfRangeError):
            z121_tamo_barg.partition.block_of(10)

    def test_blocks_must_cover_points(self, z25):
        with pytest.raises(BadParametersError):
            Partition(z25, (z25.one, z25.element(7)), ((0,),), Certificate.SUBTRACTIVE)

    def test_certificate_must_match_points(self, z25):
        with pytest.raises(BadParametersError):
            Partition(z25, (z25.element(1), z25.element(6)), ((0, 1),), Certificate.SUBTRACTIVE)
        with pytest.raises(BadParametersError):
            Partition(z25, (z25.zero, z25.one), ((0, 1),), Certificate.SUBTRACTIVE)


class TestMultiblocks:
    def test_teichmuller_cosets_come_first(self, z25):
        subgroup = subgroup_of_order(teichmuller_group(z25), 2)
        partition = multiblock_partition(z25, subgroup)
        assert partition.n == 20
        assert set(partition.points) == set(unit_group(z25))
        assert [_ints(partition.block_points(i)) for i in range(2)] == [[1, 24], [7, 18]]
        assert all(size == 2 for size in partition.block_sizes)

    def test_units_are_not_subtractive(self, z25):
        subgroup = subgroup_of_order(teichmuller_group(z25), 2)
        partition = multiblock_partition(z25, subgroup)
        assert partition.certificate is Certificate.UNCERTIFIED


class TestMaximality:
    @pytest.mark.parametrize("ring_name", ["z9", "z25", "z121", "gr4_2"])
    def test_teichmuller_group_is_maximal(self, request, ring_name):
        ring = request.getfixturevalue(ring_name)
        points = maximal_subtractive_set(ring)
        assert len(points) == ring.residue_size - 1
        assert is_subtractive(points)
        used = set(points)
        for a in ring.elements():
            if a not in used:
                assert not is_subtractive([*points, a])
