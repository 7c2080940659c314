"""Encoding and local repair for every construction."""

import dataclasses
import itertools
from fractions import Fraction

import numpy as np
import pytest

from src.algebra.poly_algebra import Poly, poly_eval
from src.algebra.ring_core import teichmuller_group
from src.algebra.sets_partitions import Partition, multiblock_partition, subgroup_of_order
from src.codes.constructions import (
    CodeKind,
    CoefficientMap,
    CrtParams,
    GeneralizedParams,
    TamoBargParams,
    almost_opt_encode,
    almost_opt_recover,
    build_almost_optimal,
    build_crt,
    build_generalized,
    build_multiblocks,
    build_rrho,
    build_tamo_barg,
    crt_encode,
    crt_polynomial,
    crt_recover,
    encode,
    encoding_polynomial,
    generalized_encode,
    make_code,
    multiblocks_encode,
    multiblocks_recover,
    params_from_dict,
    params_to_dict,
    random_message,
    recover_symbol,
    recover_word,
    repair_block,
    restrict_to_teichmuller,
    rrho_encode,
    rrho_recover,
    split_crt_message,
    symbols_needed,
    tb_encode,
    tb_recover,
)
from src.errors import (
    BadGoodPolynomialError,
    BadParametersError,
    BlockSizeMismatchError,
    ConstructionMismatchError,
    DegreeTooHighError,
    DivisibilityViolationError,
    IndexOutOfRangeError,
    LengthMismatchError,
    MapNotAvailableError,
    NotWellConditionedError,
    PositionNotErasedError,
    TooManyBlocksRequestedError,
    TooManyErasuresInBlockError,
)
from src.orchestrator import ErasureModel, simulate_repair

RECOVERY_TRIALS = 1000


def _ints(word):
    return [a.index for a in word]


def _erase(word, *positions):
    return [None if k in positions else c for k, c in enumerate(word)]


class TestTamoBarg:
    def test_parameters(self, z121_tamo_barg):
        assert z121_tamo_barg.kind is CodeKind.TAMO_BARG
        assert (z121_tamo_barg.n, z121_tamo_barg.k, z121_tamo_barg.locality) == (10, 8, 4)
        assert (z121_tamo_barg.distance.value, z121_tamo_barg.distance.exact) == (2, True)
        assert z121_tamo_barg.layout[:3] == ((0, 0), (0, 1), (1, 0))

    def test_encoding_polynomial(self, z121, z121_tamo_barg, z121_message):
        f = encoding_polynomial(z121_tamo_barg, z121_message)
        assert f == Poly(z121, [1, 3, 0, 11, 0, 0, 7, 0, 1])

    def test_encode(self, z121_tamo_barg, z121_message, z121_codeword):
        assert _ints(encode(z121_tamo_barg, z121_message)) == z121_codeword
        assert _ints(tb_encode(z121_tamo_barg, z121_message)) == z121_codeword

    def test_coordinates_follow_coset_order(self, z121_tamo_barg, z121_message):
        assert _ints(z121_tamo_barg.partition.points) == [1, 3, 9, 27, 81, 40, 120, 118, 112, 94]
        assert _ints(encode(z121_tamo_barg, z121_message)) == [23, 113, 6, 33, 72, 114, 116, 106, 7, 25]

    def test_recover_single_erasure(self, z121, z121_tamo_barg, z121_codeword):
        word = _erase([z121.element(c) for c in z121_codeword], 4)
        assert tb_recover(z121_tamo_barg, word, 4) == z121.element(72)
        repair = repair_block(z121_tamo_barg, word, 0)
        assert repair.read == (0, 1, 2, 3)
        assert repair.values == {4: z121.element(72)}

    def test_recover_one_per_block(self, z121, z121_tamo_barg, z121_codeword):
        codeword = tuple(z121.element(c) for c in z121_codeword)
        result = recover_word(z121_tamo_barg, _erase(codeword, 4, 9))
        assert result.codeword == codeword
        assert result.symbols_read == 8
        assert set(result.repaired) == {4, 9}

    def test_two_erasures_in_a_block(self, z121, z121_tamo_barg, z121_codeword):
        word = _erase([z121.element(c) for c in z121_codeword], 0, 4)
        with pytest.raises(TooManyErasuresInBlockError) as info:
            recover_word(z121_tamo_barg, word)
        assert (info.value.block, info.value.survivors, info.value.needed) == (0, 3, 4)
        assert info.value.exit_code == 3

    def test_position_not_erased(self, z121, z121_tamo_barg, z121_codeword):
        with pytest.raises(PositionNotErasedError):
            recover_symbol(z121_tamo_barg, [z121.element(c) for c in z121_codeword], 0)

    def test_bad_lengths_and_indices(self, z121_tamo_barg, z121_message):
        with pytest.raises(LengthMismatchError):
            encode(z121_tamo_barg, z121_message[:-1])
        with pytest.raises(LengthMismatchError):
            recover_word(z121_tamo_barg, [None] * 9)
        with pytest.raises(IndexOutOfRangeError):
            repair_block(z121_tamo_barg, [None] * 10, 2)

    def test_z25_generator(self, z25_tamo_barg):
        assert [_ints(row) for row in z25_tamo_barg.evaluations] == [[1, 1, 1, 1], [1, 1, 24, 24]]
        assert (z25_tamo_barg.n, z25_tamo_barg.k, z25_tamo_barg.distance.value) == (4, 2, 2)

    def test_gr4_2(self, gr4_2):
        spec = build_tamo_barg(gr4_2, 3, 1)
        assert (spec.n, spec.k, spec.locality, spec.distance.value) == (3, 2, 2, 2)
        message = [gr4_2.element([1, 2]), gr4_2.element([3, 1])]
        codeword = encode(spec, message)
        assert recover_word(spec, _erase(codeword, 1)).codeword == codeword

    def test_z9_repetition(self, z9):
        spec = build_tamo_barg(z9, 2, 1)
        assert (spec.n, spec.k) == (2, 1)
        assert _ints(encode(spec, [5])) == [5, 5]

    def test_too_many_blocks(self, z121):
        with pytest.raises(TooManyBlocksRequestedError):
            build_tamo_barg(z121, 5, 3)

    def test_block_size_mismatch(self, z121, z121_tamo_barg):
        with pytest.raises(BlockSizeMismatchError):
            make_code(
                CodeKind.TAMO_BARG, z121, z121_tamo_barg.partition, z121_tamo_barg.good_poly, TamoBargParams(3, 2)
            )

    def test_missing_good_polynomial(self, z121, z121_tamo_barg):
        with pytest.raises(BadGoodPolynomialError):
            make_code(CodeKind.TAMO_BARG, z121, z121_tamo_barg.partition, None, TamoBargParams(4, 2))

    def test_not_well_conditioned(self, z25):
        partition = Partition.from_blocks(z25, [[z25.element(1), z25.element(6)], [z25.element(2), z25.element(7)]])
        with pytest.raises(NotWellConditionedError):
            make_code(CodeKind.TAMO_BARG, z25, partition, None, TamoBargParams(1, 1))

    def test_wrong_params_record(self, z121, z121_tamo_barg):
        with pytest.raises(BadParametersError):
            make_code(CodeKind.TAMO_BARG, z121, z121_tamo_barg.partition, z121_tamo_barg.good_poly, CrtParams((2, 3)))

    def test_construction_mismatch(self, z121_tamo_barg, z121_message):
        with pytest.raises(ConstructionMismatchError):
            rrho_encode(z121_tamo_barg, z121_message)

    def test_shifted_variant_recovers(self, z121, z121_message):
        spec = build_tamo_barg(z121, 5, 2, variant="x^h-1")
        codeword = encode(spec, z121_message)
        assert tb_recover(spec, _erase(codeword, 7), 7) == codeword[7]


class TestGeneralized:
    def test_power_basis_matches_tamo_barg(self, z121, z121_message, z121_codeword):
        spec = build_generalized(z121, 5, 2)
        assert _ints(generalized_encode(spec, z121_message)) == z121_codeword
        assert spec.distance.value == 2
        assert not spec.distance.exact

    def test_idempotent_basis(self, z121, z121_message):
        spec = build_generalized(z121, 5, 2, CoefficientMap.IDEMPOTENT_BASIS)
        power = build_generalized(z121, 5, 2)
        codeword = encode(spec, z121_message)
        assert generalized_encode(power, z121_message, "idempotent_basis") == codeword
        assert all(b.degree < spec.n for b in spec.basis)
        assert tb_recover(spec, _erase(codeword, 6), 6) == codeword[6]

    def test_idempotent_layout_is_block_local(self, z121):
        spec = build_generalized(z121, 5, 2, CoefficientMap.IDEMPOTENT_BASIS)
        message = [0] * spec.k
        message[spec.layout.index((0, 1))] = 1
        assert _ints(encode(spec, message)) == [0] * 5 + [1] * 5

    def test_power_map_needs_subtractive_values(self, z121, z121_tamo_barg):
        tampered = dataclasses.replace(z121_tamo_barg.good_poly, values=(z121.one, z121.element(12)))
        with pytest.raises(MapNotAvailableError):
            make_code(
                CodeKind.GENERALIZED, z121, z121_tamo_barg.partition, tampered, GeneralizedParams(4, 2)
            )


class TestAlmostOptimal:
    @pytest.fixture(scope="class")
    def spec(self, z121):
        return build_almost_optimal(z121, 5, 3, 3)

    def test_partition_and_good_polynomial(self, spec):
        assert [_ints(spec.partition.block_points(i)) for i in range(2)] == [
            [1, 3, 9, 27, 81],
            [40, 94, 112],
        ]
        assert [v.index for v in spec.good_poly.values] == [2, 0]
        assert (spec.n, spec.k, spec.locality) == (8, 3, 4)
        assert spec.distance.value == 5

    def test_basis(self, z121, spec):
        h_short = (Poly.x(z121) - 40) * (Poly.x(z121) - 94) * (Poly.x(z121) - 112)
        assert list(spec.basis) == [Poly.constant(z121, 1), Poly.x(z121), h_short]
        assert spec.layout == ((0, 0), (1, 0), (3, 0))

    def test_weight_of_short_block_annihilator(self, spec):
        codeword = almost_opt_encode(spec, [0, 0, 1])
        assert sum(1 for c in codeword if not c.is_zero) == 5

    def test_short_block_repairs_from_two_symbols(self, spec):
        assert symbols_needed(spec, 1) == 2
        codeword = encode(spec, [7, 3, 11])
        word = _erase(codeword, 5)
        assert almost_opt_recover(spec, word, 5) == codeword[5]
        assert repair_block(spec, word, 1).read == (6, 7)

    def test_dimension_too_large(self, z121):
        with pytest.raises(TooManyBlocksRequestedError):
            build_almost_optimal(z121, 5, 7, 3)

    @pytest.mark.parametrize("short_block", [1, 5])
    def test_short_block_size(self, z121, short_block):
        with pytest.raises(BlockSizeMismatchError):
            build_almost_optimal(z121, 5, 3, short_block)

    def test_divisibility(self, z121):
        with pytest.raises(DivisibilityViolationError):
            build_almost_optimal(z121, 5, 4, 3)


class TestRRho:
    def test_parameters(self, z121):
        spec = build_rrho(z121, 5, 2, 1)
        assert (spec.n, spec.k, spec.locality) == (10, 4, 4)
        assert (spec.distance.value, spec.distance.exact) == (7, True)

    def test_weight_seven_witness(self, z121):
        spec = build_rrho(z121, 5, 2, 1)
        x = Poly.x(z121)
        cubic = (x - 1) * (x - 3) * (x - 9)
        message = [94, 39, 108, 1]
        assert encoding_polynomial(spec, message) == cubic
        codeword = rrho_encode(spec, message)
        assert [k for k, c in enumerate(codeword) if c.is_zero] == [0, 1, 2]
        assert sum(1 for c in codeword if not c.is_zero) == spec.distance.value == 7

    def test_repairs_rho_minus_one_erasures(self, z121):
        spec = build_rrho(z121, 5, 3, 1)
        assert (spec.locality, spec.k, spec.distance.value) == (3, 3, 8)
        codeword = rrho_encode(spec, [5, 17, 99])
        word = _erase(codeword, 1, 3, 8)
        assert rrho_recover(spec, word, 0) == codeword[:5]
        assert rrho_recover(spec, word, 1) == codeword[5:]

    def test_rho_lower_bound(self, z121):
        with pytest.raises(BadParametersError):
            build_rrho(z121, 5, 1, 1)


class TestCrt:
    @pytest.fixture(scope="class")
    def spec(self, z121):
        return build_crt(z121, 5, [2, 3])

    def test_parameters(self, spec):
        assert (spec.n, spec.k, spec.locality, spec.distance.value) == (10, 5, 3, 3)
        assert spec.good_poly is None

    def test_blocks_carry_local_messages(self, z121, spec):
        a0 = Poly(z121, [1, 2])
        a1 = Poly(z121, [3, 1, 1])
        codeword = crt_encode(spec, [a0, a1])
        points = spec.partition.points
        assert codeword[:5] == tuple(poly_eval(a0, a) for a in points[:5])
        assert codeword[5:] == tuple(poly_eval(a1, a) for a in points[5:])
        assert encode(spec, [1, 2, 3, 1, 1]) == codeword
        assert split_crt_message(spec, [1, 2, 3, 1, 1]) == [a0, a1]

    def test_crt_polynomial_degree(self, z121, spec):
        f = crt_polynomial(spec, [Poly(z121, [1, 2]), Poly(z121, [3, 1, 1])])
        assert f.degree < spec.n

    def test_local_degree_too_high(self, z121, spec):
        with pytest.raises(DegreeTooHighError):
            crt_polynomial(spec, [Poly(z121, [1, 2, 3]), Poly(z121, [1])])

    def test_recover_block(self, spec):
        codeword = encode(spec, [4, 0, 9, 9, 1])
        word = _erase(codeword, 2, 4, 6, 9)
        assert crt_recover(spec, word, 0) == codeword[:5]
        assert crt_recover(spec, word, 1) == codeword[5:]

    @pytest.mark.parametrize(
        "ranks, error",
        [
            ([2], BlockSizeMismatchError),
            ([0, 3], BadParametersError),
            ([5, 1], BlockSizeMismatchError),
        ],
    )
    def test_rank_validation(self, z121, ranks, error):
        with pytest.raises(error):
            build_crt(z121, 5, ranks)

    def test_needs_subtractive_points(self, z25):
        partition = multiblock_partition(z25, subgroup_of_order(teichmuller_group(z25), 2))
        with pytest.raises(NotWellConditionedError):
            make_code(CodeKind.CRT, z25, partition, None, CrtParams((1,) * 10))


class TestMultiblocks:
    def test_parameters(self, z25_multiblocks):
        assert (z25_multiblocks.n, z25_multiblocks.k, z25_multiblocks.locality) == (20, 2, 1)
        assert (z25_multiblocks.distance.value, z25_multiblocks.distance.exact) == (10, True)

    def test_low_weight_codeword(self, z25_multiblocks):
        codeword = multiblocks_encode(z25_multiblocks, [-5, 5])
        assert sum(1 for c in codeword if not c.is_zero) == 10

    def test_restriction_is_tamo_barg(self, z25_multiblocks, z25_tamo_barg):
        inner = restrict_to_teichmuller(z25_multiblocks)
        assert inner.kind is CodeKind.TAMO_BARG
        assert (inner.n, inner.k, inner.distance.value) == (4, 2, 2)
        assert inner.evaluations == z25_tamo_barg.evaluations

    def test_recover(self, z25_multiblocks):
        codeword = encode(z25_multiblocks, [3, 19])
        assert multiblocks_recover(z25_multiblocks, _erase(codeword, 10), 10) == codeword[10]

    def test_t_limited_by_teichmuller_blocks(self, z25):
        with pytest.raises(TooManyBlocksRequestedError):
            build_multiblocks(z25, 2, 3)


class TestParams:
    def test_dict_round_trip(self):
        params = GeneralizedParams(4, 2, CoefficientMap.IDEMPOTENT_BASIS)
        data = params_to_dict(params)
        assert data == {"r": 4, "t": 2, "coefficient_map": "idempotent_basis"}
        assert params_from_dict(CodeKind.GENERALIZED, data) == params

    def test_unknown_field(self):
        with pytest.raises(BadParametersError):
            params_from_dict(CodeKind.TAMO_BARG, {"r": 4, "t": 2, "rho": 3})


BUILDERS = {
    "tb-z121": lambda rings: build_tamo_barg(rings["z121"], 5, 2),
    "tb-z25": lambda rings: build_tamo_barg(rings["z25"], 2, 2),
    "tb-z9": lambda rings: build_tamo_barg(rings["z9"], 2, 1),
    "tb-gr4_2": lambda rings: build_tamo_barg(rings["gr4_2"], 3, 1),
    "generalized": lambda rings: build_generalized(rings["z121"], 5, 2, "idempotent_basis"),
    "generalized-gr4_2": lambda rings: build_generalized(rings["gr4_2"], 3, 1, "idempotent_basis"),
    "almost-optimal": lambda rings: build_almost_optimal(rings["z121"], 5, 3, 3),
    "rrho": lambda rings: build_rrho(rings["z121"], 5, 2, 2),
    "rrho-z9": lambda rings: build_rrho(rings["z9"], 2, 2, 1),
    "rrho-gr4_2": lambda rings: build_rrho(rings["gr4_2"], 3, 2, 1),
    "crt": lambda rings: build_crt(rings["z121"], 5, [2, 3]),
    "crt-z9": lambda rings: build_crt(rings["z9"], 2, [1]),
    "crt-gr4_2": lambda rings: build_crt(rings["gr4_2"], 3, [2]),
    "multiblocks": lambda rings: build_multiblocks(rings["z25"], 2, 2),
    "multiblocks-z9": lambda rings: build_multiblocks(rings["z9"], 2, 1),
    "multiblocks-gr4_2": lambda rings: build_multiblocks(rings["gr4_2"], 3, 1),
}


@pytest.fixture
def rings(z9, z25, z121, gr4_2):
    return {"z9": z9, "z25": z25, "z121": z121, "gr4_2": gr4_2}


class TestRecoverySuites:
    """Every construction repairs every tolerated erasure pattern over many random words."""

    @pytest.mark.parametrize("name", list(BUILDERS))
    def test_one_random_erasure(self, rings, name):
        spec = BUILDERS[name](rings)
        report = simulate_repair(spec, RECOVERY_TRIALS, seed=11)
        assert report.successes == RECOVERY_TRIALS
        assert report.repair_events == RECOVERY_TRIALS
        assert report.symbols_read <= RECOVERY_TRIALS * spec.locality

    def test_rrho_two_erasures_per_block(self, z121):
        spec = build_rrho(z121, 5, 3, 1)
        report = simulate_repair(spec, RECOVERY_TRIALS, seed=5, erasure_model=ErasureModel("per_block", 2))
        assert report.success_rate == 1.0
        assert report.avg_symbols_read == 3.0

    def test_crt_two_erasures_per_block(self, z121):
        spec = build_crt(z121, 5, [2, 3])
        report = simulate_repair(spec, RECOVERY_TRIALS, seed=8, erasure_model=ErasureModel("per_block", 2))
        assert report.successes == RECOVERY_TRIALS
        assert report.symbols_read == RECOVERY_TRIALS * 5


class TestEncodingMaps:
    LINEARITY_TRIALS = 200

    @pytest.mark.parametrize("name", list(BUILDERS))
    def test_module_linear(self, rings, name):
        spec = BUILDERS[name](rings)
        rng = np.random.Generator(np.random.PCG64(17))
        for _ in range(self.LINEARITY_TRIALS):
            a, b = random_message(spec, rng), random_message(spec, rng)
            c = spec.ring.from_index(int(rng.integers(spec.ring.order)))
            combined = [x + c * y for x, y in zip(a, b)]
            expected = [x + c * y for x, y in zip(encode(spec, a), encode(spec, b))]
            assert list(encode(spec, combined)) == expected

    @pytest.mark.parametrize("name", ["tb-z25", "tb-z9", "tb-gr4_2", "rrho-z9", "crt-gr4_2", "multiblocks-z9"])
    def test_injective(self, rings, name):
        spec = BUILDERS[name](rings)
        ring = spec.ring
        codewords = {
            encode(spec, [ring.from_index(i) for i in message])
            for message in itertools.product(range(ring.order), repeat=spec.k)
        }
        assert len(codewords) == ring.order**spec.k

    @pytest.mark.parametrize("name", list(BUILDERS))
    def test_rate_bound(self, rings, name):
        spec = BUILDERS[name](rings)
        assert Fraction(spec.k, spec.n) <= Fraction(spec.locality, spec.locality + 1)
