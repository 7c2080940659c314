"""
LRC Constructions
=================

Encoders and local-repair decoders for six families of locally recoverable
codes over Galois rings. Every family encodes a message a in R^K as the
evaluation of an encoding polynomial f_a over the ordered evaluation set of a
``Partition``; f_a is a linear combination of fixed basis polynomials, so each
``CodeSpec`` carries its basis and the message layout that indexes it.

Families:
---------
    TAMO_BARG       f_a = sum a_ij g^j x^i, blocks of size r+1, t <= l
    GENERALIZED     same space, coefficients through the power basis {g^j} or
                    the idempotent basis {f_j} of F_A
    ALMOST_OPTIMAL  unequal last block of size m_last < r+1; terms with
                    i >= m_last carry the annihilator of the short block
    RRHO            blocks of size r+rho-1, up to rho-1 erasures per block
    CRT             f = a_i mod h_i on block i (per-block MDS codes)
    MULTIBLOCKS     evaluation over all of N(R), cosets of H as blocks

Message layouts:
----------------
Coefficients a_ij are flattened row-major in i then j (i = power of x, j =
power of g). For ALMOST_OPTIMAL the row i = m_last-1 starts at j = 1. For CRT
the message is a_1, ..., a_l concatenated, each coefficient-low-first.

Repair:
-------
Local repair reads the lexicographically first sufficient set of surviving
symbols in the erased symbol's block and interpolates the block restriction
of f_a through them.
"""

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.algebra.poly_algebra import (
    GoodPolynomial,
    GoodPolyVariant,
    Poly,
    annihilator_poly,
    fa_idempotent_basis,
    fa_power_basis_check,
    lagrange_interpolate,
    poly_eval,
    subgroup_good_polynomial,
    vanishing_shift,
    verify_good_polynomial,
)
from src.algebra.ring_core import GaloisRing, RingElement, teichmuller_group, unit_group
from src.algebra.sets_partitions import (
    Certificate,
    Partition,
    coset_partition,
    is_well_conditioned,
    multiblock_partition,
    subgroup_of_order,
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
    RingMismatchError,
    TooManyBlocksRequestedError,
    TooManyErasuresInBlockError,
)

logger = logging.getLogger(__name__)

Symbol = Optional[RingElement]
Word = Sequence[Symbol]
Codeword = Tuple[Symbol, ...]
ERASED = None


class CodeKind(str, Enum):
    TAMO_BARG = "tamo_barg"
    GENERALIZED = "generalized"
    ALMOST_OPTIMAL = "almost_optimal"
    RRHO = "rrho"
    CRT = "crt"
    MULTIBLOCKS = "multiblocks"


class CoefficientMap(str, Enum):
    POWER_BASIS = "power_basis"
    IDEMPOTENT_BASIS = "idempotent_basis"


# ============================================================================
# PARAMETER RECORDS
# ============================================================================


@dataclass(frozen=True)
class TamoBargParams:
    r: int
    t: int


@dataclass(frozen=True)
class GeneralizedParams:
    r: int
    t: int
    coefficient_map: CoefficientMap = CoefficientMap.POWER_BASIS


@dataclass(frozen=True)
class AlmostOptimalParams:
    r: int
    k: int
    m_last: int


@dataclass(frozen=True)
class RRhoParams:
    r: int
    rho: int
    t: int


@dataclass(frozen=True)
class CrtParams:
    ranks: Tuple[int, ...]


@dataclass(frozen=True)
class MultiblocksParams:
    r: int
    t: int


CodeParams = Union[
    TamoBargParams, GeneralizedParams, AlmostOptimalParams, RRhoParams, CrtParams, MultiblocksParams
]

PARAMS_BY_KIND = {
    CodeKind.TAMO_BARG: TamoBargParams,
    CodeKind.GENERALIZED: GeneralizedParams,
    CodeKind.ALMOST_OPTIMAL: AlmostOptimalParams,
    CodeKind.RRHO: RRhoParams,
    CodeKind.CRT: CrtParams,
    CodeKind.MULTIBLOCKS: MultiblocksParams,
}


def params_from_dict(kind: CodeKind, data: Dict) -> CodeParams:
    cls = PARAMS_BY_KIND[CodeKind(kind)]
    data = dict(data)
    if cls is CrtParams:
        data["ranks"] = tuple(data["ranks"])
    if cls is GeneralizedParams and "coefficient_map" in data:
        data["coefficient_map"] = CoefficientMap(data["coefficient_map"])
    try:
        return cls(**data)
    except TypeError as e:
        raise BadParametersError(f"bad parameters for {kind.value}: {e}") from e


def params_to_dict(params: CodeParams) -> Dict:
    data = asdict(params)
    if "ranks" in data:
        data["ranks"] = list(data["ranks"])
    if "coefficient_map" in data:
        data["coefficient_map"] = CoefficientMap(data["coefficient_map"]).value
    return data


@dataclass(frozen=True)
class DistanceGuarantee:
    """Designed minimum distance; ``exact`` is False for lower bounds."""

    value: int
    exact: bool


@dataclass(frozen=True)
class CodeSpec:
    """
    A validated code instance; build with ``make_code`` or a ``build_*`` helper.

    Attributes:
        kind: Construction family
        ring: Alphabet ring
        partition: Evaluation set in coordinate order with its blocks
        good_poly: Certified good polynomial (None for CRT)
        params: Family-specific parameter record
        n, k: Length and rank
        locality: Designed locality r (max K_i for CRT)
        distance: Designed distance guarantee
        basis: Encoding polynomial of each message coordinate
        layout: Index label of each message coordinate ((i, j), or (block, degree) for CRT)
    """

    kind: CodeKind
    ring: GaloisRing
    partition: Partition
    good_poly: Optional[GoodPolynomial]
    params: CodeParams
    n: int
    k: int
    locality: int
    distance: DistanceGuarantee
    basis: Tuple[Poly, ...]
    layout: Tuple[Tuple[int, int], ...]

    @cached_property
    def evaluations(self) -> Tuple[Tuple[RingElement, ...], ...]:
        """Basis polynomials evaluated on the points: the generator matrix."""
        return tuple(
            tuple(poly_eval(b, a) for a in self.partition.points) for b in self.basis
        )

    @property
    def max_degree(self) -> Union[int, float]:
        """Largest degree an encoding polynomial can reach."""
        return max((b.degree for b in self.basis), default=Poly(self.ring).degree)

    @cached_property
    def annihilator(self) -> Poly:
        return annihilator_poly(self.partition.points)


# ============================================================================
# VALIDATION HELPERS
# ============================================================================


def _require_kind(spec: CodeSpec, *kinds: CodeKind) -> None:
    if spec.kind not in kinds:
        names = ", ".join(k.value for k in kinds)
        raise ConstructionMismatchError(f"expected a {names} code, got {spec.kind.value}")


def _require_well_conditioned(partition: Partition) -> None:
    report = is_well_conditioned(partition.points)
    if not report.ok:
        raise NotWellConditionedError(
            f"evaluation set is not well-conditioned (witness {report.witness})",
            witness=report.witness,
        )


def _require_block_sizes(partition: Partition, size: int) -> None:
    bad = [s for s in partition.block_sizes if s != size]
    if bad:
        raise BlockSizeMismatchError(f"all blocks must have size {size}, found {sorted(set(bad))}")


def _require_good_poly(
    good: Optional[GoodPolynomial], partition: Partition
) -> GoodPolynomial:
    if good is None:
        raise BadGoodPolynomialError("this construction needs a good polynomial")
    if good.partition.points != partition.points or good.partition.blocks != partition.blocks:
        raise BadGoodPolynomialError("good polynomial was certified on another partition")
    if not good.monic:
        raise BadGoodPolynomialError(f"good polynomial leading coefficient {good.g.leading} is not a unit")
    return good


def _positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise BadParametersError(f"{name} must be positive, got {value}")


def _power_basis(ring: GaloisRing, g: Poly, r: int, t: int) -> Tuple[List[Poly], List[Tuple[int, int]]]:
    powers = [g**j for j in range(t)]
    basis, layout = [], []
    for i in range(r):
        xi = Poly.monomial(ring, i)
        for j in range(t):
            basis.append(xi * powers[j])
            layout.append((i, j))
    return basis, layout


def _idempotent_basis(
    partition: Partition, r: int, t: int
) -> Tuple[List[Poly], List[Tuple[int, int]]]:
    ring = partition.ring
    idempotents = fa_idempotent_basis(partition)
    h_a = annihilator_poly(partition.points)
    basis, layout = [], []
    for i in range(r):
        xi = Poly.monomial(ring, i)
        for j in range(t):
            basis.append((xi * idempotents[j]) % h_a)
            layout.append((i, j))
    return basis, layout


def _degree_bound(n: int, basis: Sequence[Poly]) -> int:
    top = max(int(b.degree) for b in basis) if basis else 0
    return max(n - top, 1)


# ============================================================================
# make_code
# ============================================================================


def make_code(
    kind: Union[CodeKind, str],
    ring: GaloisRing,
    partition: Partition,
    good_poly: Optional[GoodPolynomial],
    params: CodeParams,
) -> CodeSpec:
    """
    Validate a construction and derive n, K, locality and designed distance.

    Raises:
        BlockSizeMismatchError, NotWellConditionedError, BadGoodPolynomialError,
        DivisibilityViolationError, TooManyBlocksRequestedError, MapNotAvailableError
    """
    kind = CodeKind(kind)
    if partition.ring != ring:
        raise RingMismatchError(f"partition lives in {partition.ring}, not {ring}")
    if not isinstance(params, PARAMS_BY_KIND[kind]):
        raise BadParametersError(f"{kind.value} needs {PARAMS_BY_KIND[kind].__name__}")
    builder = {
        CodeKind.TAMO_BARG: _make_tamo_barg,
        CodeKind.GENERALIZED: _make_generalized,
        CodeKind.ALMOST_OPTIMAL: _make_almost_optimal,
        CodeKind.RRHO: _make_rrho,
        CodeKind.CRT: _make_crt,
        CodeKind.MULTIBLOCKS: _make_multiblocks,
    }[kind]
    spec = builder(ring, partition, good_poly, params)
    logger.debug(
        f"{kind.value} over {ring}: n={spec.n}, K={spec.k}, r={spec.locality}, "
        f"d{'=' if spec.distance.exact else '>='}{spec.distance.value}"
    )
    return spec


def _make_tamo_barg(ring, partition, good_poly, params: TamoBargParams) -> CodeSpec:
    r, t = params.r, params.t
    _positive(r=r, t=t)
    _require_block_sizes(partition, r + 1)
    _require_well_conditioned(partition)
    good = _require_good_poly(good_poly, partition)
    if t > partition.num_blocks:
        raise TooManyBlocksRequestedError(f"t={t} exceeds the {partition.num_blocks} blocks")
    basis, layout = _power_basis(ring, good.g, r, t)
    n, k = partition.n, r * t
    return CodeSpec(
        CodeKind.TAMO_BARG, ring, partition, good, params, n, k, r,
        DistanceGuarantee(n - k - t + 2, exact=True), tuple(basis), tuple(layout),
    )


def _make_generalized(ring, partition, good_poly, params: GeneralizedParams) -> CodeSpec:
    r, t = params.r, params.t
    _positive(r=r, t=t)
    _require_block_sizes(partition, r + 1)
    _require_well_conditioned(partition)
    good = _require_good_poly(good_poly, partition)
    if t > partition.num_blocks:
        raise TooManyBlocksRequestedError(f"t={t} exceeds the {partition.num_blocks} blocks")
    basis, layout = _generalized_basis(partition, good, r, t, params.coefficient_map)
    n = partition.n
    return CodeSpec(
        CodeKind.GENERALIZED, ring, partition, good, params, n, r * t, r,
        DistanceGuarantee(_degree_bound(n, basis), exact=False), tuple(basis), tuple(layout),
    )


def _generalized_basis(
    partition: Partition,
    good: GoodPolynomial,
    r: int,
    t: int,
    coefficient_map: Union[CoefficientMap, str],
) -> Tuple[List[Poly], List[Tuple[int, int]]]:
    coefficient_map = CoefficientMap(coefficient_map)
    if coefficient_map is CoefficientMap.POWER_BASIS:
        if not fa_power_basis_check(good):
            raise MapNotAvailableError("block values of g are not subtractive; powers of g do not span F_A")
        return _power_basis(partition.ring, good.g, r, t)
    return _idempotent_basis(partition, r, t)


def _make_almost_optimal(ring, partition, good_poly, params: AlmostOptimalParams) -> CodeSpec:
    r, k, m_last = params.r, params.k, params.m_last
    _positive(r=r, k=k)
    if (k + 1) % r:
        raise DivisibilityViolationError(f"r={r} must divide K+1={k + 1}")
    sizes = partition.block_sizes
    if not 2 <= m_last <= r or sizes[-1] != m_last or any(s != r + 1 for s in sizes[:-1]):
        raise BlockSizeMismatchError(
            f"need blocks of size {r + 1} followed by one block of size m_last in [2, {r}], got {sizes}"
        )
    _require_well_conditioned(partition)
    good = _require_good_poly(good_poly, partition)
    if not good.values_subtractive:
        raise BadGoodPolynomialError("powers of g must span F_A (block values not subtractive)")
    if not good.values[-1].is_zero:
        raise BadGoodPolynomialError("g must vanish on the short block; apply vanishing_shift")
    u = (k + 1) // r
    n = partition.n
    if (u - 1) * (r + 1) + r - 1 >= n:
        raise TooManyBlocksRequestedError(f"K={k} needs encoding degree beyond n-1={n - 1}")
    g = good.g
    h_short = annihilator_poly(partition.block_points(partition.num_blocks - 1))
    powers = [g**j for j in range(u)]
    basis, layout = [], []
    for i in range(r):
        if i < m_last:
            start = 1 if i == m_last - 1 else 0
            lead = Poly.monomial(ring, i)
        else:
            start = 0
            lead = Poly.monomial(ring, i - m_last) * h_short
        for j in range(start, u):
            basis.append(lead * powers[j])
            layout.append((i, j))
    ceil_k_r = -(-k // r)
    return CodeSpec(
        CodeKind.ALMOST_OPTIMAL, ring, partition, good, params, n, k, r,
        DistanceGuarantee(n - k - ceil_k_r + 1, exact=False), tuple(basis), tuple(layout),
    )


def _make_rrho(ring, partition, good_poly, params: RRhoParams) -> CodeSpec:
    r, rho, t = params.r, params.rho, params.t
    _positive(r=r, t=t)
    if rho < 2:
        raise BadParametersError(f"rho must be at least 2, got {rho}")
    _require_block_sizes(partition, r + rho - 1)
    _require_well_conditioned(partition)
    good = _require_good_poly(good_poly, partition)
    if t > partition.num_blocks:
        raise TooManyBlocksRequestedError(f"t={t} exceeds the {partition.num_blocks} blocks")
    basis, layout = _power_basis(ring, good.g, r, t)
    n, k = partition.n, r * t
    return CodeSpec(
        CodeKind.RRHO, ring, partition, good, params, n, k, r,
        DistanceGuarantee(n - k + 1 - (t - 1) * (rho - 1), exact=True), tuple(basis), tuple(layout),
    )


def _make_crt(ring, partition, good_poly, params: CrtParams) -> CodeSpec:
    ranks = tuple(params.ranks)
    if is_well_conditioned(partition.points).certificate is not Certificate.SUBTRACTIVE:
        raise NotWellConditionedError("CRT construction needs a subtractive evaluation set")
    if len(ranks) != partition.num_blocks:
        raise BlockSizeMismatchError(f"{len(ranks)} ranks for {partition.num_blocks} blocks")
    for i, (k_i, n_i) in enumerate(zip(ranks, partition.block_sizes)):
        if k_i < 1:
            raise BadParametersError(f"block {i}: rank must be positive")
        if k_i >= n_i:
            raise BlockSizeMismatchError(f"block {i}: rank {k_i} must be below its size {n_i}")
    idempotents = fa_idempotent_basis(partition)
    h_a = annihilator_poly(partition.points)
    basis, layout = [], []
    for i, k_i in enumerate(ranks):
        for j in range(k_i):
            basis.append((Poly.monomial(ring, j) * idempotents[i]) % h_a)
            layout.append((i, j))
    d = min(n_i - k_i + 1 for k_i, n_i in zip(ranks, partition.block_sizes))
    return CodeSpec(
        CodeKind.CRT, ring, partition, None, CrtParams(ranks), partition.n, sum(ranks), max(ranks),
        DistanceGuarantee(d, exact=False), tuple(basis), tuple(layout),
    )


def teichmuller_prefix_blocks(partition: Partition) -> int:
    """Number of leading blocks lying inside the Teichmuller group."""
    teich = set(teichmuller_group(partition.ring))
    count = 0
    for i in range(partition.num_blocks):
        if not set(partition.block_points(i)) <= teich:
            break
        count += 1
    return count


def _make_multiblocks(ring, partition, good_poly, params: MultiblocksParams) -> CodeSpec:
    r, t = params.r, params.t
    _positive(r=r, t=t)
    _require_block_sizes(partition, r + 1)
    if set(partition.points) != set(unit_group(ring)):
        raise BadParametersError("multiblocks evaluation set must be all of N(R)")
    prefix = teichmuller_prefix_blocks(partition)
    if prefix * (r + 1) != ring.residue_size - 1:
        raise BadParametersError("the Teichmuller group must be covered by the leading blocks")
    good = _require_good_poly(good_poly, partition)
    if t > prefix:
        raise TooManyBlocksRequestedError(
            f"t={t} exceeds the {prefix} blocks inside the maximal subtractive subset"
        )
    basis, layout = _power_basis(ring, good.g, r, t)
    k = r * t
    inner_d = (ring.residue_size - 1) - k - t + 2
    scale = ring.p ** (ring.m * (ring.s - 1))
    return CodeSpec(
        CodeKind.MULTIBLOCKS, ring, partition, good, params, partition.n, k, r,
        DistanceGuarantee(scale * inner_d, exact=True), tuple(basis), tuple(layout),
    )


def restrict_to_teichmuller(spec: CodeSpec) -> CodeSpec:
    """The Tamo-Barg code C' obtained by keeping only the Teichmuller prefix of a multiblocks code."""
    _require_kind(spec, CodeKind.MULTIBLOCKS)
    prefix = teichmuller_prefix_blocks(spec.partition)
    sub = spec.partition.restrict(range(prefix))
    good = verify_good_polynomial(spec.good_poly.g, sub, require_monic=True)
    return make_code(CodeKind.TAMO_BARG, spec.ring, sub, good, TamoBargParams(spec.params.r, spec.params.t))


# ============================================================================
# ENCODING
# ============================================================================


def _coerce_message(spec: CodeSpec, message: Sequence) -> List[RingElement]:
    if len(message) != spec.k:
        raise LengthMismatchError(f"message has {len(message)} symbols, expected K={spec.k}")
    return [spec.ring.element(a) for a in message]


def encoding_polynomial(spec: CodeSpec, message: Sequence) -> Poly:
    """f_a = sum_k a_k * basis_k."""
    coeffs = _coerce_message(spec, message)
    f = Poly(spec.ring)
    for a, b in zip(coeffs, spec.basis):
        if not a.is_zero:
            f = f + b * a
    return f


def encode(spec: CodeSpec, message: Sequence) -> Codeword:
    """Evaluate f_a on the evaluation set (via the cached basis evaluations)."""
    coeffs = _coerce_message(spec, message)
    word = [spec.ring.zero] * spec.n
    for a, row in zip(coeffs, spec.evaluations):
        if a.is_zero:
            continue
        for pos, value in enumerate(row):
            word[pos] = word[pos] + a * value
    return tuple(word)


def tb_encode(spec: CodeSpec, message: Sequence) -> Codeword:
    _require_kind(spec, CodeKind.TAMO_BARG)
    return encode(spec, message)


def generalized_encode(
    spec: CodeSpec, message: Sequence, coefficient_map: Optional[Union[CoefficientMap, str]] = None
) -> Codeword:
    """
    Encode through a chosen coefficient map into F_A^r. Without ``coefficient_map``
    the code's own map is used.
    """
    _require_kind(spec, CodeKind.GENERALIZED)
    if coefficient_map is None or CoefficientMap(coefficient_map) is spec.params.coefficient_map:
        return encode(spec, message)
    basis, _ = _generalized_basis(
        spec.partition, spec.good_poly, spec.params.r, spec.params.t, coefficient_map
    )
    coeffs = _coerce_message(spec, message)
    f = Poly(spec.ring)
    for a, b in zip(coeffs, basis):
        f = f + b * a
    return tuple(poly_eval(f, x) for x in spec.partition.points)


def almost_opt_encode(spec: CodeSpec, message: Sequence) -> Codeword:
    _require_kind(spec, CodeKind.ALMOST_OPTIMAL)
    return encode(spec, message)


def rrho_encode(spec: CodeSpec, message: Sequence) -> Codeword:
    _require_kind(spec, CodeKind.RRHO)
    return encode(spec, message)


def multiblocks_encode(spec: CodeSpec, message: Sequence) -> Codeword:
    _require_kind(spec, CodeKind.MULTIBLOCKS)
    return encode(spec, message)


def split_crt_message(spec: CodeSpec, message: Sequence) -> List[Poly]:
    """Cut a flat CRT message into the local polynomials a_1, ..., a_l."""
    _require_kind(spec, CodeKind.CRT)
    coeffs = _coerce_message(spec, message)
    polys, start = [], 0
    for k_i in spec.params.ranks:
        polys.append(Poly(spec.ring, coeffs[start : start + k_i]))
        start += k_i
    return polys


def crt_polynomial(spec: CodeSpec, message_polys: Sequence[Poly]) -> Poly:
    """The unique f with deg f < n and f = a_i mod h_i for every block."""
    _require_kind(spec, CodeKind.CRT)
    ranks = spec.params.ranks
    if len(message_polys) != len(ranks):
        raise LengthMismatchError(f"{len(message_polys)} local messages for {len(ranks)} blocks")
    idempotents = fa_idempotent_basis(spec.partition)
    f = Poly(spec.ring)
    for i, (a_i, k_i) in enumerate(zip(message_polys, ranks)):
        if a_i.degree >= k_i:
            raise DegreeTooHighError(f"block {i}: local message degree {a_i.degree} >= K_i={k_i}")
        f = f + a_i * idempotents[i]
    return f % spec.annihilator


def crt_encode(spec: CodeSpec, message_polys: Sequence[Poly]) -> Codeword:
    f = crt_polynomial(spec, message_polys)
    return tuple(poly_eval(f, a) for a in spec.partition.points)


def random_message(spec: CodeSpec, rng: np.random.Generator) -> List[RingElement]:
    """K uniformly random ring elements drawn from ``rng``."""
    digits = rng.integers(0, spec.ring.q, size=(spec.k, spec.ring.m))
    return [spec.ring.element([int(c) for c in row]) for row in digits]


# ============================================================================
# LOCAL REPAIR
# ============================================================================


@dataclass(frozen=True)
class RepairResult:
    """Repaired symbols of one block and the positions read to repair them."""

    block: int
    values: Dict[int, RingElement]
    read: Tuple[int, ...]


def symbols_needed(spec: CodeSpec, block: int) -> int:
    """Survivors interpolation needs in a block (degree of the block restriction + 1)."""
    if spec.kind is CodeKind.CRT:
        return spec.params.ranks[block]
    if spec.kind is CodeKind.ALMOST_OPTIMAL and block == spec.partition.num_blocks - 1:
        return spec.params.m_last - 1
    return spec.locality


def _check_word(spec: CodeSpec, word: Word) -> None:
    if len(word) != spec.n:
        raise LengthMismatchError(f"word has {len(word)} symbols, expected n={spec.n}")


def repair_block(spec: CodeSpec, word: Word, block: int) -> RepairResult:
    """
    Fill every erasure of one block from the first sufficient survivors.

    Raises:
        TooManyErasuresInBlockError: fewer survivors than the block needs
    """
    _check_word(spec, word)
    if not 0 <= block < spec.partition.num_blocks:
        raise IndexOutOfRangeError(f"block {block} outside [0, {spec.partition.num_blocks})")
    positions = spec.partition.blocks[block]
    erased = [k for k in positions if word[k] is None]
    if not erased:
        return RepairResult(block, {}, ())
    survivors = [k for k in positions if word[k] is not None]
    need = symbols_needed(spec, block)
    if len(survivors) < need:
        raise TooManyErasuresInBlockError(
            f"block {block}: {len(survivors)} survivors, {need} needed",
            block=block, survivors=len(survivors), needed=need,
        )
    read = tuple(survivors[:need])
    points = spec.partition.points
    delta = lagrange_interpolate(
        [(points[k], spec.ring.element(word[k])) for k in read], spec.ring
    )
    values = {k: poly_eval(delta, points[k]) for k in erased}
    logger.debug(f"block {block}: repaired {erased} reading {list(read)}")
    return RepairResult(block, values, read)


def recover_symbol(spec: CodeSpec, word: Word, pos: int) -> RingElement:
    _check_word(spec, word)
    if not 0 <= pos < spec.n:
        raise IndexOutOfRangeError(f"position {pos} outside [0, {spec.n})")
    if word[pos] is not None:
        raise PositionNotErasedError(f"position {pos} is not erased")
    return repair_block(spec, word, spec.partition.block_of(pos)).values[pos]


def tb_recover(spec: CodeSpec, word: Word, pos: int) -> RingElement:
    """Repair one erased coordinate of a Tamo-Barg (or generalized) codeword from r symbols."""
    _require_kind(spec, CodeKind.TAMO_BARG, CodeKind.GENERALIZED)
    return recover_symbol(spec, word, pos)


def almost_opt_recover(spec: CodeSpec, word: Word, pos: int) -> RingElement:
    _require_kind(spec, CodeKind.ALMOST_OPTIMAL)
    return recover_symbol(spec, word, pos)


def multiblocks_recover(spec: CodeSpec, word: Word, pos: int) -> RingElement:
    _require_kind(spec, CodeKind.MULTIBLOCKS)
    return recover_symbol(spec, word, pos)


def _block_symbols(spec: CodeSpec, word: Word, block: int) -> Tuple[RingElement, ...]:
    result = repair_block(spec, word, block)
    return tuple(
        result.values[k] if k in result.values else word[k] for k in spec.partition.blocks[block]
    )


def rrho_recover(spec: CodeSpec, word: Word, block: int) -> Tuple[RingElement, ...]:
    """All symbols of one block, repairing up to rho-1 erasures from r survivors."""
    _require_kind(spec, CodeKind.RRHO)
    return _block_symbols(spec, word, block)


def crt_recover(spec: CodeSpec, word: Word, block: int) -> Tuple[RingElement, ...]:
    """All symbols of one block, interpolating a_i from any K_i survivors."""
    _require_kind(spec, CodeKind.CRT)
    return _block_symbols(spec, word, block)


@dataclass(frozen=True)
class WordRepair:
    codeword: Tuple[RingElement, ...]
    repairs: Tuple[RepairResult, ...]

    @property
    def symbols_read(self) -> int:
        return sum(len(r.read) for r in self.repairs)

    @property
    def repaired(self) -> Dict[int, RingElement]:
        out: Dict[int, RingElement] = {}
        for r in self.repairs:
            out.update(r.values)
        return out


def recover_word(spec: CodeSpec, word: Word) -> WordRepair:
    """Repair every block holding erasures; blocks are processed in order."""
    _check_word(spec, word)
    filled = list(word)
    repairs = []
    for block in range(spec.partition.num_blocks):
        if all(word[k] is not None for k in spec.partition.blocks[block]):
            continue
        result = repair_block(spec, word, block)
        for k, v in result.values.items():
            filled[k] = v
        repairs.append(result)
    return WordRepair(tuple(filled), tuple(repairs))


# ============================================================================
# BUILDERS
# ============================================================================
# Convenience constructors from a ring and a subgroup order h of the
# Teichmuller group: blocks are the cosets of the order-h subgroup.
# ============================================================================


def _teichmuller_cosets(ring: GaloisRing, h: int) -> Tuple[Tuple[RingElement, ...], Partition]:
    subgroup = subgroup_of_order(teichmuller_group(ring), h)
    return subgroup, coset_partition(teichmuller_group(ring), subgroup)


def build_tamo_barg(
    ring: GaloisRing,
    subgroup_order: int,
    t: int,
    blocks: Optional[int] = None,
    variant: Union[GoodPolyVariant, str] = GoodPolyVariant.PLAIN,
) -> CodeSpec:
    """Tamo-Barg code on the cosets of H (optionally only the first ``blocks`` cosets)."""
    subgroup, partition = _teichmuller_cosets(ring, subgroup_order)
    if blocks is not None:
        partition = partition.restrict(range(blocks))
    good = subgroup_good_polynomial(subgroup, partition, variant)
    return make_code(CodeKind.TAMO_BARG, ring, partition, good, TamoBargParams(subgroup_order - 1, t))


def build_generalized(
    ring: GaloisRing,
    subgroup_order: int,
    t: int,
    coefficient_map: Union[CoefficientMap, str] = CoefficientMap.POWER_BASIS,
    variant: Union[GoodPolyVariant, str] = GoodPolyVariant.PLAIN,
) -> CodeSpec:
    subgroup, partition = _teichmuller_cosets(ring, subgroup_order)
    good = subgroup_good_polynomial(subgroup, partition, variant)
    params = GeneralizedParams(subgroup_order - 1, t, CoefficientMap(coefficient_map))
    return make_code(CodeKind.GENERALIZED, ring, partition, good, params)


def build_rrho(ring: GaloisRing, subgroup_order: int, rho: int, t: int) -> CodeSpec:
    """(r, rho) code on cosets of size h = r + rho - 1."""
    subgroup, partition = _teichmuller_cosets(ring, subgroup_order)
    good = subgroup_good_polynomial(subgroup, partition)
    r = subgroup_order - rho + 1
    return make_code(CodeKind.RRHO, ring, partition, good, RRhoParams(r, rho, t))


def build_crt(ring: GaloisRing, subgroup_order: int, ranks: Sequence[int]) -> CodeSpec:
    _, partition = _teichmuller_cosets(ring, subgroup_order)
    return make_code(CodeKind.CRT, ring, partition, None, CrtParams(tuple(ranks)))


def build_multiblocks(ring: GaloisRing, subgroup_order: int, t: int) -> CodeSpec:
    """Multiblocks code on the cosets of H in N(R), Teichmuller cosets first."""
    subgroup = subgroup_of_order(teichmuller_group(ring), subgroup_order)
    partition = multiblock_partition(ring, subgroup)
    good = subgroup_good_polynomial(subgroup, partition)
    return make_code(
        CodeKind.MULTIBLOCKS, ring, partition, good, MultiblocksParams(subgroup_order - 1, t)
    )


def build_almost_optimal(
    ring: GaloisRing,
    subgroup_order: int,
    k: int,
    short_block: int,
    full_blocks: Optional[int] = None,
) -> CodeSpec:
    """
    Full cosets followed by the ``short_block`` smallest points of the next coset,
    with g = x^h shifted to vanish on the short block.
    """
    _, cosets = _teichmuller_cosets(ring, subgroup_order)
    if full_blocks is None:
        full_blocks = cosets.num_blocks - 1
    if not 0 <= full_blocks < cosets.num_blocks:
        raise TooManyBlocksRequestedError(
            f"{full_blocks} full blocks leave no coset for the short block ({cosets.num_blocks} cosets)"
        )
    point_blocks = [cosets.block_points(i) for i in range(full_blocks)]
    point_blocks.append(sorted(cosets.block_points(full_blocks))[:short_block])
    partition = Partition.from_blocks(ring, point_blocks)
    good = verify_good_polynomial(Poly.monomial(ring, subgroup_order), partition, require_monic=True)
    good = vanishing_shift(good, partition.num_blocks - 1)
    params = AlmostOptimalParams(subgroup_order - 1, k, short_block)
    return make_code(CodeKind.ALMOST_OPTIMAL, ring, partition, good, params)
