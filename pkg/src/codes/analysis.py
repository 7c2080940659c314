"""
Code Analysis
=============

Ground-truth checks for linear codes over Galois rings: standard-form
reduction, exhaustive distance and locality, dependency graphs, the greedy
construction of a large non-information set T, the distance bounds, tower
projections to the residue field and componentwise product codes.

Everything here accepts either a ``CodeSpec`` or a bare ``LinearCode`` (a
generator matrix with its ring). Exhaustive operations refuse instances with
more than ``cap`` messages (``Settings.enumeration_cap`` by default).

Standard form:
--------------
Row reduction over a chain ring picks, at every step, a pivot of minimal
p-valuation in the remaining submatrix. Rows then come out grouped by pivot
valuation 0, 1, ..., s-1; the group sizes are the subtype (k_0, ..., k_{s-1}),
the rank is K = sum k_i and |C| = p^(m * sum (s-i) k_i).
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple, Union

import galois
import numpy as np

from src.algebra.ring_core import (
    GaloisRing,
    ProductRing,
    RingElement,
    p_quotient,
    residue_project,
    try_invert,
)
from src.codes.constructions import CodeSpec
from src.errors import (
    BadParametersError,
    IndexOutOfRangeError,
    InstanceTooLargeError,
    LengthMismatchError,
)
from src.settings import get_settings

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[RingElement]]


@dataclass(frozen=True)
class LinearCode:
    """The R-submodule of R^n spanned by ``rows``."""

    ring: GaloisRing
    rows: Tuple[Tuple[RingElement, ...], ...]
    n: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.n:
                raise LengthMismatchError(f"generator row of length {len(row)} in a length-{self.n} code")

    @classmethod
    def from_rows(cls, ring: GaloisRing, rows: Sequence[Sequence], n: Optional[int] = None) -> "LinearCode":
        elements = tuple(tuple(ring.element(c) for c in row) for row in rows)
        if n is None:
            if not elements:
                raise BadParametersError("length of a code without rows must be given")
            n = len(elements[0])
        return cls(ring, elements, n)


CodeLike = Union[CodeSpec, LinearCode]


def as_linear_code(code: CodeLike) -> LinearCode:
    if isinstance(code, LinearCode):
        return code
    if isinstance(code, CodeSpec):
        return LinearCode(code.ring, code.evaluations, code.n)
    raise BadParametersError(f"cannot analyse {type(code).__name__}")


def generator_matrix(spec: CodeSpec) -> Tuple[Tuple[RingElement, ...], ...]:
    """K x n matrix whose rows are the encodings of the unit messages."""
    return spec.evaluations


def _cap(cap: Optional[int]) -> int:
    return get_settings().enumeration_cap if cap is None else cap


# ============================================================================
# STANDARD FORM
# ============================================================================


@dataclass(frozen=True)
class StandardFormResult:
    """
    Attributes:
        subtype: (k_0, ..., k_{s-1}), rows per pivot valuation
        rank: K = sum k_i
        type: k = (1/s) sum (s-i) k_i, i.e. log_{p^(s m)} |C|
        permutation: permutation[j] is the original column now at position j
        matrix: Reduced rows, columns permuted
        pivot_valuations: Valuation of each row's pivot, nondecreasing
        log_size: log_p |C|
    """

    subtype: Tuple[int, ...]
    rank: int
    type: Fraction
    permutation: Tuple[int, ...]
    matrix: Tuple[Tuple[RingElement, ...], ...]
    pivot_valuations: Tuple[int, ...]
    log_size: int

    @property
    def is_free(self) -> bool:
        return self.rank == self.subtype[0]


def standard_form(
    matrix: Matrix, ring: Optional[GaloisRing] = None, n: Optional[int] = None
) -> StandardFormResult:
    """
    Reduce a generator matrix over a Galois ring to standard form.

    Args:
        matrix: Rows of ring elements
        ring: Needed only when ``matrix`` has no entries
        n: Column count, needed only when ``matrix`` has no rows
    """
    rows = [list(row) for row in matrix]
    if ring is None:
        ring = next((c.ring for row in rows for c in row), None)
        if ring is None:
            raise BadParametersError("standard form of an empty matrix needs the ring")
    s, p = ring.s, ring.p
    cols = len(rows[0]) if rows else (n or 0)
    perm = list(range(cols))
    pivots: List[int] = []

    rank = 0
    while rank < len(rows) and rank < cols:
        best = None
        for i in range(rank, len(rows)):
            for j in range(rank, cols):
                v = rows[i][j].valuation
                if v < s and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        rows[rank], rows[i] = rows[i], rows[rank]
        if j != rank:
            for row in rows:
                row[rank], row[j] = row[j], row[rank]
            perm[rank], perm[j] = perm[j], perm[rank]
        scale = try_invert(p_quotient(rows[rank][rank], v))
        rows[rank] = [c * scale for c in rows[rank]]
        pivot_row = rows[rank]
        for i in range(rank + 1, len(rows)):
            lead = rows[i][rank]
            if lead.is_zero:
                continue
            factor = p_quotient(lead, v)
            rows[i] = [a - factor * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(v)
        rank += 1

    subtype = tuple(pivots.count(i) for i in range(s))
    weighted = sum((s - i) * k for i, k in enumerate(subtype))
    return StandardFormResult(
        subtype=subtype,
        rank=rank,
        type=Fraction(weighted, s),
        permutation=tuple(perm),
        matrix=tuple(tuple(row) for row in rows[:rank]),
        pivot_valuations=tuple(pivots),
        log_size=ring.m * weighted,
    )


def _columns(code: LinearCode, subset: Sequence[int]) -> List[List[RingElement]]:
    return [[row[j] for j in subset] for row in code.rows]


def _punctured_log_size(code: LinearCode, subset: Sequence[int]) -> int:
    return standard_form(_columns(code, subset), code.ring, len(subset)).log_size


def punctured_cardinality(code: CodeLike, subset: Sequence[int]) -> int:
    """|C_S|: size of the code restricted to the coordinates in ``subset``."""
    code = as_linear_code(code)
    for j in subset:
        if not 0 <= j < code.n:
            raise IndexOutOfRangeError(f"coordinate {j} outside [0, {code.n})")
    return code.ring.p ** _punctured_log_size(code, sorted(set(subset)))


def punctured_rank(code: CodeLike, subset: Sequence[int]) -> int:
    """M(S): number of modularly independent coordinates in S."""
    code = as_linear_code(code)
    return standard_form(_columns(code, sorted(set(subset))), code.ring, len(set(subset))).rank


# ============================================================================
# EXHAUSTIVE ENUMERATION
# ============================================================================
# Ring elements are m digits mod q and multiplication by a fixed element is
# Z_q-linear, so the whole encoder is one integer matrix of shape
# (K*m, n*m) applied to message digit vectors.
# ============================================================================


def _linear_map(code: LinearCode) -> np.ndarray:
    ring, m = code.ring, code.ring.m
    monomials = [ring.monomial(j) for j in range(m)]
    out = np.zeros((len(code.rows) * m, code.n * m), dtype=np.int64)
    for k, row in enumerate(code.rows):
        for j, mono in enumerate(monomials):
            for i, g in enumerate(row):
                out[k * m + j, i * m : (i + 1) * m] = (mono * g).coeffs
    return out


def _message_count(code: LinearCode) -> int:
    return code.ring.order ** len(code.rows)


def _check_enumerable(code: LinearCode, cap: int) -> int:
    total = _message_count(code)
    if total > cap:
        raise InstanceTooLargeError(
            f"{total} messages exceed the enumeration cap {cap}; raise --cap or LRC_ENUMERATION_CAP"
        )
    return total


def iter_codewords(code: CodeLike, cap: Optional[int] = None) -> Iterator[np.ndarray]:
    """
    Yield every codeword (with multiplicity) in chunks of shape (chunk, n, m),
    digits in [0, q).
    """
    code = as_linear_code(code)
    total = _check_enumerable(code, _cap(cap))
    q, m = code.ring.q, code.ring.m
    digits_per_message = len(code.rows) * m
    mapping = _linear_map(code)
    powers = q ** np.arange(digits_per_message, dtype=np.int64)
    chunk = get_settings().enumeration_chunk
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers) % q
        words = (digits @ mapping) % q
        logger.debug(f"enumerated messages {start}..{start + len(idx) - 1} of {total}")
        yield words.reshape(len(idx), code.n, m)


def iter_supports(code: CodeLike, cap: Optional[int] = None) -> Iterator[np.ndarray]:
    for words in iter_codewords(code, cap):
        yield words.any(axis=2)


def count_codewords(code: CodeLike, cap: Optional[int] = None) -> int:
    """|C| by enumeration."""
    seen: Set[bytes] = set()
    for words in iter_codewords(code, cap):
        flat = np.ascontiguousarray(words.reshape(len(words), -1))
        seen.update(row.tobytes() for row in flat)
    return len(seen)


def brute_force_min_distance(code: CodeLike, cap: Optional[int] = None) -> Optional[int]:
    """
    Minimum Hamming weight over all nonzero codewords, or None for the zero code.

    Raises:
        InstanceTooLargeError: |R|^K exceeds the cap
    """
    best: Optional[int] = None
    for support in iter_supports(code, cap):
        weights = support.sum(axis=1)
        weights = weights[weights > 0]
        if weights.size:
            low = int(weights.min())
            best = low if best is None else min(best, low)
    return best


def support_patterns(code: CodeLike, cap: Optional[int] = None) -> Set[Tuple[bool, ...]]:
    """Distinct supports of the codewords (the zero support included)."""
    patterns: Set[Tuple[bool, ...]] = set()
    for support in iter_supports(code, cap):
        for row in np.unique(support, axis=0):
            patterns.add(tuple(bool(b) for b in row))
    return patterns


# ============================================================================
# LOCALITY AND DEPENDENCY GRAPHS
# ============================================================================


@dataclass(frozen=True)
class LocalityReport:
    """
    Minimal locality per coordinate and the recovering set found for it
    (None where no subset of the other coordinates determines it).
    """

    localities: Tuple[Optional[int], ...]
    recovering_sets: Tuple[Optional[Tuple[int, ...]], ...]

    @property
    def locality(self) -> Optional[int]:
        if any(r is None for r in self.localities):
            return None
        return max(self.localities, default=0)


def brute_force_locality(code: CodeLike, cap: Optional[int] = None) -> LocalityReport:
    """
    For each coordinate i, the smallest S (not containing i) with |C_S| = |C_{S+i}|.

    Subsets are searched by size, then lexicographically, so each recovering
    set is the first minimal one. Punctured sizes come from standard forms, so
    the cap bounds the number of distinct subsets reduced rather than messages.

    Raises:
        InstanceTooLargeError: more than ``cap`` punctured codes would be reduced
    """
    code = as_linear_code(code)
    limit = _cap(cap)
    memo: Dict[FrozenSet[int], int] = {}

    def log_size(subset: FrozenSet[int]) -> int:
        if subset not in memo:
            if len(memo) >= limit:
                raise InstanceTooLargeError(f"locality search exceeded {limit} punctured codes")
            memo[subset] = _punctured_log_size(code, sorted(subset))
        return memo[subset]

    localities: List[Optional[int]] = []
    sets: List[Optional[Tuple[int, ...]]] = []
    for i in range(code.n):
        others = [j for j in range(code.n) if j != i]
        found: Optional[Tuple[int, ...]] = None
        for size in range(len(others) + 1):
            for subset in combinations(others, size):
                base = frozenset(subset)
                if log_size(base) == log_size(base | {i}):
                    found = subset
                    break
            if found is not None:
                break
        localities.append(None if found is None else len(found))
        sets.append(found)
    logger.debug(f"localities {localities} ({len(memo)} punctured codes reduced)")
    return LocalityReport(tuple(localities), tuple(sets))


@dataclass(frozen=True)
class DependencyGraph:
    """Directed graph with an edge i -> j for every j in a recovering set S_i, |S_i| <= r."""

    n: int
    edges: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self.edges.get(i, ())

    def out_degree(self, i: int) -> int:
        return len(self.neighbors(i))


def dependency_graph(locality: LocalityReport, r: int) -> DependencyGraph:
    edges = {
        i: tuple(s)
        for i, s in enumerate(locality.recovering_sets)
        if s is not None and len(s) <= r
    }
    return DependencyGraph(len(locality.localities), edges)


def connected_components(graph: DependencyGraph) -> List[Tuple[int, ...]]:
    """Weakly connected components, each sorted, ordered by smallest vertex."""
    adjacency: Dict[int, Set[int]] = {v: set() for v in range(graph.n)}
    for i, targets in graph.edges.items():
        for j in targets:
            adjacency[i].add(j)
            adjacency[j].add(i)
    seen: Set[int] = set()
    components = []
    for start in range(graph.n):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        members = []
        while queue:
            v = queue.popleft()
            members.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(tuple(sorted(members)))
    return components


@dataclass(frozen=True)
class ConstructTResult:
    """
    Attributes:
        T: The constructed coordinate set (sorted)
        M: Number of modularly independent coordinates in T
        kappa: Rank of the code
        completed: False when no admissible coordinate was left before M reached kappa-1
    """

    T: Tuple[int, ...]
    M: int
    kappa: int
    completed: bool


def construct_T(
    code: CodeLike,
    r: int,
    cap: Optional[int] = None,
    locality: Optional[LocalityReport] = None,
) -> ConstructTResult:
    """
    Grow a set T with M(T) = kappa - 1 from recovering sets of size <= r.

    Each step takes the smallest j outside T with a neighbour outside T. If
    T + N(j) stays below kappa the whole of N(j) + j joins T; otherwise
    elements of N(j) + j are added in order while M(T) <= kappa - 1.
    """
    linear = as_linear_code(code)
    if locality is None:
        locality = brute_force_locality(linear, cap)
    graph = dependency_graph(locality, r)
    kappa = standard_form(linear.rows, linear.ring, linear.n).rank

    def rank_of(subset: Set[int]) -> int:
        return punctured_rank(linear, sorted(subset))

    T: Set[int] = set()
    current = 0
    while current <= kappa - 2:
        j = next(
            (
                v
                for v in range(linear.n)
                if v not in T and any(w not in T for w in graph.neighbors(v))
            ),
            None,
        )
        if j is None:
            logger.warning(f"construct_T stalled at |T|={len(T)}, M(T)={current}, kappa={kappa}")
            return ConstructTResult(tuple(sorted(T)), current, kappa, completed=False)
        neighborhood = set(graph.neighbors(j))
        if rank_of(T | neighborhood) < kappa:
            T |= neighborhood | {j}
        else:
            for v in sorted(neighborhood | {j}):
                if v in T:
                    continue
                if rank_of(T | {v}) <= kappa - 1:
                    T.add(v)
        current = rank_of(T)
    return ConstructTResult(tuple(sorted(T)), current, kappa, completed=True)


# ============================================================================
# BOUNDS
# ============================================================================


@dataclass(frozen=True)
class BoundReport:
    """
    Distance and rate bounds for parameters (n, K, r).

    ``singleton`` uses the type k when a subtype is supplied and K otherwise;
    ``subtype_bound`` is only computed from a subtype.
    """

    n: int
    k: int
    r: int
    singleton: int
    generalized_singleton: int
    lrc: int
    rate_bound: Fraction
    rate_holds: bool
    subtype_bound: Optional[int] = None
    rrho: Optional[int] = None
    rho: Optional[int] = None


def _ceil_div(a: Union[int, Fraction], b: int) -> int:
    return math.ceil(Fraction(a) / b)


def bounds(
    n: int,
    k: int,
    r: int,
    rho: Optional[int] = None,
    subtype: Optional[Sequence[int]] = None,
) -> BoundReport:
    """
    Raises:
        BadParametersError: unless 1 <= r <= K <= n (and rho >= 2 when given)
    """
    if not 1 <= r <= k <= n:
        raise BadParametersError(f"bounds need 1 <= r <= K <= n, got n={n}, K={k}, r={r}")
    if rho is not None and rho < 2:
        raise BadParametersError(f"rho must be at least 2, got {rho}")
    code_type: Union[int, Fraction] = k
    subtype_bound = None
    if subtype is not None:
        s = len(subtype)
        if s < 1 or sum(subtype) != k:
            raise BadParametersError(f"subtype {tuple(subtype)} does not sum to K={k}")
        code_type = Fraction(sum((s - i) * k_i for i, k_i in enumerate(subtype)), s)
        subtype_bound = math.floor(n - code_type - _ceil_div(code_type, r) + 2)
    rrho_bound = None
    if rho is not None:
        rrho_bound = n - k + 1 - (_ceil_div(k, r) - 1) * (rho - 1)
    rate_bound = Fraction(r, r + 1)
    return BoundReport(
        n=n,
        k=k,
        r=r,
        singleton=math.floor(n - code_type + 1),
        generalized_singleton=n - k + 1,
        lrc=n - k - _ceil_div(k, r) + 2,
        rate_bound=rate_bound,
        rate_holds=Fraction(k, n) <= rate_bound,
        subtype_bound=subtype_bound,
        rrho=rrho_bound,
        rho=rho,
    )


def is_optimal_lrc(d: int, n: int, k: int, r: int) -> bool:
    """d meets the LRC bound n - K - ceil(K/r) + 2."""
    return d == n - k - _ceil_div(k, r) + 2


class Verdict(str, Enum):
    IMPOSSIBLE = "impossible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NonexistenceResult:
    """
    ``verdict`` applies the guard n > K + K/r; ``unguarded_impossible`` is the
    same test without it.
    """

    verdict: Verdict
    unguarded_impossible: bool


def nonexistence_predicate(n: int, k: int, r: int) -> NonexistenceResult:
    """Can an optimal (n, K, r) LRC with r | K exist?"""
    if r < 1:
        raise BadParametersError(f"r must be positive, got {r}")
    unguarded = k % r == 0 and r + k // r > n - k - 1
    guarded = unguarded and n > k + k // r
    return NonexistenceResult(
        Verdict.IMPOSSIBLE if guarded else Verdict.INCONCLUSIVE, unguarded_impossible=unguarded
    )


# ============================================================================
# TOWER OF CODES
# ============================================================================


@dataclass(frozen=True)
class TowerProjection:
    """Residue-field image of (C : p^level) as a generator matrix over F_{p^m}."""

    level: int
    field: type
    matrix: galois.FieldArray
    dimension: int

    def min_distance(self, cap: Optional[int] = None) -> Optional[int]:
        return field_min_distance(self.field, self.matrix, cap)


def tower_projection(code: CodeLike, level: int) -> TowerProjection:
    """
    Project (C : p^level) = {x : p^level x in C} onto the residue field.

    Standard-form rows with pivot valuation v <= level contribute row / p^v
    mod p; the others vanish mod p.

    Raises:
        IndexOutOfRangeError: level outside [0, s-1]
    """
    linear = as_linear_code(code)
    ring = linear.ring
    if not 0 <= level <= ring.s - 1:
        raise IndexOutOfRangeError(f"tower level {level} outside [0, {ring.s - 1}]")
    form = standard_form(linear.rows, ring, linear.n)
    inverse = [0] * linear.n
    for position, original in enumerate(form.permutation):
        inverse[original] = position
    values = []
    for row, v in zip(form.matrix, form.pivot_valuations):
        if v > level:
            continue
        unit_row = [p_quotient(c, v) for c in row]
        values.append([int(residue_project(unit_row[inverse[j]])) for j in range(linear.n)])
    field_cls = ring.residue_field
    matrix = field_cls(np.array(values, dtype=np.int64).reshape(len(values), linear.n))
    dimension = int(np.linalg.matrix_rank(matrix)) if len(values) else 0
    return TowerProjection(level, field_cls, matrix, dimension)


def field_min_distance(
    field_cls: type, matrix: galois.FieldArray, cap: Optional[int] = None
) -> Optional[int]:
    """Minimum weight of the row space of a field matrix by enumeration."""
    rows, n = matrix.shape
    order = field_cls.order
    total = order**rows
    limit = _cap(cap)
    if total > limit:
        raise InstanceTooLargeError(f"{total} messages exceed the enumeration cap {limit}")
    if rows == 0:
        return None
    powers = order ** np.arange(rows, dtype=np.int64)
    chunk = get_settings().enumeration_chunk
    best: Optional[int] = None
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        messages = field_cls((idx[:, None] // powers) % order)
        weights = np.count_nonzero((messages @ matrix).view(np.ndarray), axis=1)
        weights = weights[weights > 0]
        if weights.size:
            low = int(weights.min())
            best = low if best is None else min(best, low)
    return best


# ============================================================================
# PRODUCT CODES
# ============================================================================


@dataclass(frozen=True)
class ProductCode:
    """
    C = C_1 x ... x C_w over R_1 x ... x R_w, acting componentwise.

    Attributes:
        ring: The product ring
        factors: Factor codes
        n: Common length
        k: max_i K_i
        d: Minimum distance of C, from the union of factor supports
        r: max_i r_i (exhaustive factor localities)
        factor_distances: d_i per factor
        meets_lrc_bound: d = n - K - ceil(K/r) + 2
    """

    ring: ProductRing
    factors: Tuple[LinearCode, ...]
    n: int
    k: int
    d: Optional[int]
    r: Optional[int]
    factor_distances: Tuple[Optional[int], ...]
    meets_lrc_bound: bool


def product_code_combine(factors: Sequence[CodeLike], cap: Optional[int] = None) -> ProductCode:
    """
    Combine codes over R_1, ..., R_w into one code over their product.

    A codeword's support is the union of its components' supports, so d is the
    minimum popcount over unions of factor support patterns, not all empty.

    Raises:
        LengthMismatchError: the factor codes have different lengths
    """
    codes = tuple(as_linear_code(c) for c in factors)
    if not codes:
        raise BadParametersError("product code needs at least one factor")
    n = codes[0].n
    if any(c.n != n for c in codes):
        raise LengthMismatchError(f"factor lengths differ: {[c.n for c in codes]}")

    ranks = [standard_form(c.rows, c.ring, n).rank for c in codes]
    distances = tuple(brute_force_min_distance(c, cap) for c in codes)
    localities = [brute_force_locality(c, cap).locality for c in codes]

    patterns = [support_patterns(c, cap) for c in codes]
    d: Optional[int] = None
    for combo in product(*patterns):
        union = [any(bits) for bits in zip(*combo)]
        weight = sum(union)
        if weight and (d is None or weight < d):
            d = weight

    k = max(ranks)
    r = None if any(x is None for x in localities) else max(localities)
    meets = d is not None and r is not None and k >= 1 and is_optimal_lrc(d, n, k, max(r, 1))
    ring = ProductRing(tuple(c.ring for c in codes))
    logger.debug(f"product over {ring}: n={n}, K={k}, d={d}, r={r}, factor d={distances}")
    return ProductCode(ring, codes, n, k, d, r, distances, meets)
