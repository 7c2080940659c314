"""
Data Schemas Module - JSON Wire Formats
=======================================

Pydantic models for everything the CLI reads or writes. Domain objects in
``src.algebra`` and ``src.codes`` are plain dataclasses; ``src.serialization``
converts between them and these models.

Element encoding:
-----------------
A ring element is a plain integer when m = 1 and a list of m coefficients
(constant term first) when m > 1. Erasures inside words are ``null``.

Schema Hierarchy:
-----------------
1. RingModel / RingInfo       - ring descriptor and `ring info` output
2. PartitionModel / GoodPolyModel / CodeSpecModel - code files
3. EncodeOutput / RecoverOutput - encoder and repair results
4. BoundsOutput / AnalysisReport - analysis pipeline results
5. SimReport                   - repair simulation results
"""

from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field

from src.algebra.sets_partitions import Certificate
from src.codes.constructions import CodeKind

ElementJson = Union[int, List[int]]


# ============================================================================
# RINGS
# ============================================================================


class RingModel(BaseModel):
    """
    GR(p^s, m) descriptor.

    Attributes:
        p: Prime characteristic of the residue field
        s: Nilpotency index
        m: Extension degree
        modulus: Ascending coefficients of the monic modulus (length m + 1)
    """

    p: int = Field(ge=2)
    s: int = Field(ge=1)
    m: int = Field(ge=1)
    modulus: List[int]


class RingInfo(BaseModel):
    """Output of `ring info`."""

    name: str
    ring: RingModel
    characteristic: int
    order: int
    units: int
    residue_field_order: int
    teichmuller_generator: ElementJson
    teichmuller_group: List[ElementJson]


# ============================================================================
# CODE FILES
# ============================================================================
# A CodeSpec file stores the construction inputs (ring, partition, good
# polynomial, parameters) plus the derived numbers. Loading re-runs
# make_code and rejects files whose derived numbers disagree.
# ============================================================================


class PartitionModel(BaseModel):
    """
    Attributes:
        points: Evaluation points in coordinate order
        blocks: 0-based coordinate indices of each block
        certificate: Conditioning certificate of the point set
        special_index: Position of the special point, if any
    """

    points: List[ElementJson]
    blocks: List[List[int]]
    certificate: Certificate
    special_index: Optional[int] = None


class GoodPolyModel(BaseModel):
    coeffs: List[ElementJson] = Field(description="Ascending coefficients of g")
    values: List[ElementJson] = Field(description="Constant value of g on each block")
    monic: bool
    values_subtractive: bool


class CodeSpecModel(BaseModel):
    kind: CodeKind
    ring: RingModel
    partition: PartitionModel
    good_poly: Optional[GoodPolyModel] = None
    params: Dict[str, Any]
    n: int
    k: int
    locality: int
    distance: int
    distance_exact: bool


class GoodPolyOutput(BaseModel):
    """Output of `goodpoly`: x^h (or x^h - 1) certified on the cosets of H."""

    ring: str
    subgroup: List[ElementJson]
    partition: PartitionModel
    good_poly: GoodPolyModel


# ============================================================================
# ENCODING AND REPAIR
# ============================================================================


class EncodeOutput(BaseModel):
    codeword: List[ElementJson]


class RepairEntry(BaseModel):
    """
    One repaired block. Positions are 1-based.

    Attributes:
        block: 0-based block index
        repaired: 1-based position -> recovered symbol
        read: 1-based positions read by the interpolation
    """

    block: int
    repaired: Dict[int, ElementJson]
    read: List[int]


class RecoverOutput(BaseModel):
    codeword: List[ElementJson]
    repairs: List[RepairEntry]
    symbols_read: int


# ============================================================================
# ANALYSIS
# ============================================================================


class BoundsOutput(BaseModel):
    """
    Bound values for (n, K, r) plus the non-existence test.

    ``rate_bound`` is the fraction r/(r+1) written as "r/(r+1)".
    """

    n: int
    k: int
    r: int
    singleton: int
    generalized_singleton: int
    lrc: int
    subtype_bound: Optional[int] = None
    rho: Optional[int] = None
    rrho: Optional[int] = None
    rate_bound: str
    rate_holds: bool
    nonexistence: Literal["impossible", "inconclusive"]
    unguarded_impossible: bool


class ConstructTOutput(BaseModel):
    T: List[int]
    M: int
    kappa: int
    completed: bool


class AnalysisReport(BaseModel):
    """
    Output of `analyze`.

    Attributes:
        d_brute: Exhaustive minimum distance (None when over the cap)
        locality: Exhaustive minimal locality per coordinate (None: not recoverable)
        components: Connected components of the dependency graph (0-based)
        meets_lrc_bound: d (brute force, or the exact designed value) equals the LRC bound
    """

    kind: CodeKind
    n: int
    k: int
    subtype: List[int]
    type: str
    is_free: bool
    designed_distance: int
    distance_exact: bool
    d_brute: Optional[int] = None
    locality: List[Optional[int]] = Field(default_factory=list)
    components: List[List[int]] = Field(default_factory=list)
    construct_T: Optional[ConstructTOutput] = None
    bounds: BoundsOutput
    meets_lrc_bound: bool


# ============================================================================
# SIMULATION
# ============================================================================


class SimReport(BaseModel):
    """
    Repair simulation summary.

    Attributes:
        trials: Number of (message, erasure pattern) trials
        successes: Trials whose every erasure was repaired exactly
        success_rate: successes / trials (0.0 without trials)
        symbols_read: Total symbols read by all block repairs
        repair_events: Number of block repairs performed
        avg_symbols_read: symbols_read / repair_events (0.0 without repairs)
        mds_baseline_reads: K, the reads an MDS code needs per repair
        per_block_histogram: erasures-in-a-block -> number of (trial, block) pairs
        seed: 64-bit seed of the PCG64 generator
    """

    trials: int = 0
    successes: int = 0
    success_rate: float = 0.0
    symbols_read: int = 0
    repair_events: int = 0
    avg_symbols_read: float = 0.0
    mds_baseline_reads: int
    per_block_histogram: Dict[int, int] = Field(default_factory=dict)
    seed: int = Field(ge=0, lt=2**64)

    @classmethod
    def build(
        cls,
        trials: int,
        successes: int,
        symbols_read: int,
        repair_events: int,
        mds_baseline_reads: int,
        per_block_histogram: Dict[int, int],
        seed: int,
    ) -> "SimReport":
        return cls(
            trials=trials,
            successes=successes,
            success_rate=successes / trials if trials else 0.0,
            symbols_read=symbols_read,
            repair_events=repair_events,
            avg_symbols_read=symbols_read / repair_events if repair_events else 0.0,
            mds_baseline_reads=mds_baseline_reads,
            per_block_histogram=dict(sorted(per_block_histogram.items())),
            seed=seed,
        )

    def merge(self, other: "SimReport") -> "SimReport":
        """Combine two batches; the left seed is kept."""
        histogram = dict(self.per_block_histogram)
        for erasures, count in other.per_block_histogram.items():
            histogram[erasures] = histogram.get(erasures, 0) + count
        return SimReport.build(
            trials=self.trials + other.trials,
            successes=self.successes + other.successes,
            symbols_read=self.symbols_read + other.symbols_read,
            repair_events=self.repair_events + other.repair_events,
            mds_baseline_reads=self.mds_baseline_reads,
            per_block_histogram=histogram,
            seed=self.seed,
        )
