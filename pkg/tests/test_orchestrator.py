"""Analysis pipeline and seeded repair simulation."""

import logging

import pytest

from src.codes.analysis import bounds
from src.codes.constructions import CodeKind
from src.errors import BadErasureModelError, BadParametersError, InstanceTooLargeError
from src.orchestrator import (
    CodeAnalysisPipeline,
    ErasureModel,
    analyze,
    bounds_output,
    simulate_repair,
)
from src.schemas import SimReport


class TestPipeline:
    def test_small_tamo_barg(self, z25_tamo_barg):
        report = analyze(z25_tamo_barg)
        assert report.kind is CodeKind.TAMO_BARG
        assert (report.n, report.k) == (4, 2)
        assert report.subtype == [2, 0]
        assert report.type == "2"
        assert report.is_free
        assert report.d_brute == 2
        assert report.locality == [1, 1, 1, 1]
        assert report.components == [[0, 1], [2, 3]]
        assert report.construct_T.T == [0, 1]
        assert report.construct_T.completed
        assert report.bounds.lrc == 2
        assert report.meets_lrc_bound

    def test_large_code_falls_back_to_designed_distance(self, z121_tamo_barg):
        report = CodeAnalysisPipeline(with_construct_t=False).run(z121_tamo_barg)
        assert report.d_brute is None
        assert report.locality == [4] * 10
        assert report.construct_T is None
        assert report.meets_lrc_bound

    def test_skipped_steps_are_logged(self, z25_tamo_barg, caplog):
        with caplog.at_level(logging.INFO, logger="src.orchestrator"):
            report = CodeAnalysisPipeline(cap=10).run(z25_tamo_barg)
        assert report.d_brute is None
        assert "STEP 1: Standard form" in caplog.text
        assert "Skipped" in caplog.text

    def test_multiblocks_is_not_optimal(self, z25_multiblocks):
        report = analyze(z25_multiblocks)
        assert report.d_brute == 10
        assert report.bounds.lrc == 18
        assert not report.meets_lrc_bound

    def test_bounds_output(self):
        output = bounds_output(bounds(11, 8, 4))
        assert output.rate_bound == "4/5"
        assert output.nonexistence == "impossible"
        assert output.unguarded_impossible


class TestSimulation:
    def test_deterministic(self, z121_tamo_barg):
        first = simulate_repair(z121_tamo_barg, 200, seed=42)
        second = simulate_repair(z121_tamo_barg, 200, seed=42)
        assert first == second

    def test_single_erasure_statistics(self, z121_tamo_barg):
        report = simulate_repair(z121_tamo_barg, 500, seed=3)
        assert report.success_rate == 1.0
        assert report.avg_symbols_read == 4.0
        assert report.mds_baseline_reads == 8
        assert report.per_block_histogram[1] == 500
        assert report.per_block_histogram[0] == 500
        assert report.seed == 3

    def test_two_erasures_per_block_fail(self, z121_tamo_barg):
        report = simulate_repair(z121_tamo_barg, 50, seed=1, erasure_model=ErasureModel("per_block", 2))
        assert report.successes == 0
        assert report.success_rate == 0.0
        assert report.per_block_histogram == {2: 100}

    def test_zero_trials(self, z121_tamo_barg):
        report = simulate_repair(z121_tamo_barg, 0, seed=0)
        assert (report.trials, report.success_rate, report.avg_symbols_read) == (0, 0.0, 0.0)

    def test_merge(self, z121_tamo_barg):
        left = simulate_repair(z121_tamo_barg, 30, seed=1)
        right = simulate_repair(z121_tamo_barg, 20, seed=2)
        merged = left.merge(right)
        assert merged.trials == 50
        assert merged.successes == 50
        assert merged.seed == 1
        assert merged.per_block_histogram == {0: 50, 1: 50}
        assert merged.avg_symbols_read == 4.0

    def test_cap(self, z121_tamo_barg):
        with pytest.raises(InstanceTooLargeError):
            simulate_repair(z121_tamo_barg, 1000, seed=1, cap=100)

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, z121_tamo_barg, seed):
        with pytest.raises(BadParametersError):
            simulate_repair(z121_tamo_barg, 1, seed=seed)

    def test_per_block_exceeds_block(self, z121_tamo_barg):
        with pytest.raises(BadErasureModelError):
            simulate_repair(z121_tamo_barg, 1, seed=1, erasure_model=ErasureModel("per_block", 6))

    def test_unknown_model(self):
        with pytest.raises(BadErasureModelError):
            ErasureModel.parse("burst")

    def test_report_schema_rejects_bad_seed(self):
        with pytest.raises(ValueError):
            SimReport(mds_baseline_reads=1, seed=-1)
