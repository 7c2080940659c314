"""
Serialization
=============

Conversion between domain objects and the JSON models in ``src.schemas``, and
parsing of the CLI's compact element syntax.

CLI element tokens:
-------------------
    m = 1:  plain integers            "23"
    m > 1:  colon-separated coeffs    "1:3"   (= 1 + 3x)
    erasure (words only):             "_"

Parsing follows the validate-then-convert pattern: JSON is decoded and checked
against its pydantic model, and any decoding or validation failure surfaces as
``SerializationError``.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Type, TypeVar, Union

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from src.algebra.poly_algebra import GoodPolynomial, Poly, verify_good_polynomial
from src.algebra.ring_core import GaloisRing, RingElement, make_galois_ring
from src.algebra.sets_partitions import Partition, is_well_conditioned
from src.codes.constructions import (
    CodeSpec,
    make_code,
    params_from_dict,
    params_to_dict,
)
from src.errors import LrcError, SerializationError
from src.schemas import (
    CodeSpecModel,
    ElementJson,
    GoodPolyModel,
    PartitionModel,
    RingModel,
)

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

ERASURE_TOKEN = "_"


# ============================================================================
# ELEMENTS
# ============================================================================


def element_to_json(a: RingElement) -> ElementJson:
    if a.ring.m == 1:
        return a.coeffs[0]
    return list(a.coeffs)


def element_from_json(ring: GaloisRing, value: ElementJson) -> RingElement:
    if isinstance(value, int):
        if ring.m > 1:
            raise SerializationError(f"{ring} elements are coefficient lists, got {value}")
        return ring.element(value)
    if len(value) != ring.m:
        raise SerializationError(f"{ring} elements have {ring.m} coefficients, got {value}")
    return ring.element(value)


def parse_element(ring: GaloisRing, token: str) -> RingElement:
    """Parse one CLI token ("23" or "1:3")."""
    token = token.strip()
    try:
        parts = [int(part) for part in token.split(":")]
    except ValueError as e:
        raise SerializationError(f"bad element token {token!r}") from e
    if len(parts) == 1 and ring.m == 1:
        return ring.element(parts[0])
    if len(parts) != ring.m:
        raise SerializationError(f"{ring} elements need {ring.m} coefficients: {token!r}")
    return ring.element(parts)


def parse_message(ring: GaloisRing, text: str) -> List[RingElement]:
    if not text.strip():
        return []
    return [parse_element(ring, token) for token in text.split(",")]


def parse_word(ring: GaloisRing, text: str) -> List[Optional[RingElement]]:
    """Comma-separated symbols with "_" for erasures."""
    word: List[Optional[RingElement]] = []
    for token in text.split(","):
        token = token.strip()
        word.append(None if token == ERASURE_TOKEN else parse_element(ring, token))
    return word


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise SerializationError(f"expected comma-separated integers, got {text!r}") from e


# ============================================================================
# DOMAIN <-> MODEL
# ============================================================================


def ring_to_model(ring: GaloisRing) -> RingModel:
    return RingModel(p=ring.p, s=ring.s, m=ring.m, modulus=list(ring.modulus))


def ring_from_model(model: RingModel) -> GaloisRing:
    return make_galois_ring(model.p, model.s, model.m, model.modulus)


def partition_to_model(partition: Partition) -> PartitionModel:
    return PartitionModel(
        points=[element_to_json(a) for a in partition.points],
        blocks=[list(block) for block in partition.blocks],
        certificate=partition.certificate,
        special_index=partition.special_index,
    )


def partition_from_model(ring: GaloisRing, model: PartitionModel) -> Partition:
    points = tuple(element_from_json(ring, v) for v in model.points)
    report = is_well_conditioned(points)
    if report.certificate is not model.certificate:
        raise SerializationError(
            f"stored certificate {model.certificate.value} disagrees with {report.certificate.value}"
        )
    return Partition(
        ring,
        points,
        tuple(tuple(block) for block in model.blocks),
        report.certificate,
        report.special_index,
    )


def good_poly_to_model(good: GoodPolynomial) -> GoodPolyModel:
    return GoodPolyModel(
        coeffs=[element_to_json(c) for c in good.g.coeffs],
        values=[element_to_json(v) for v in good.values],
        monic=good.monic,
        values_subtractive=good.values_subtractive,
    )


def good_poly_from_model(partition: Partition, model: GoodPolyModel) -> GoodPolynomial:
    ring = partition.ring
    g = Poly(ring, [element_from_json(ring, c) for c in model.coeffs])
    good = verify_good_polynomial(g, partition)
    stored = tuple(element_from_json(ring, v) for v in model.values)
    if stored != good.values:
        raise SerializationError("stored block values of g do not match the polynomial")
    return good


def spec_to_model(spec: CodeSpec) -> CodeSpecModel:
    return CodeSpecModel(
        kind=spec.kind,
        ring=ring_to_model(spec.ring),
        partition=partition_to_model(spec.partition),
        good_poly=None if spec.good_poly is None else good_poly_to_model(spec.good_poly),
        params=params_to_dict(spec.params),
        n=spec.n,
        k=spec.k,
        locality=spec.locality,
        distance=spec.distance.value,
        distance_exact=spec.distance.exact,
    )


def spec_from_model(model: CodeSpecModel) -> CodeSpec:
    """Rebuild and re-validate a code; the stored derived numbers must agree."""
    ring = ring_from_model(model.ring)
    partition = partition_from_model(ring, model.partition)
    good = None if model.good_poly is None else good_poly_from_model(partition, model.good_poly)
    spec = make_code(model.kind, ring, partition, good, params_from_dict(model.kind, model.params))
    stored = (model.n, model.k, model.locality, model.distance, model.distance_exact)
    derived = (spec.n, spec.k, spec.locality, spec.distance.value, spec.distance.exact)
    if stored != derived:
        raise SerializationError(f"code file says (n, K, r, d, exact) = {stored}, rebuilt {derived}")
    return spec


# ============================================================================
# FILES
# ============================================================================


def parse_model(model_cls: Type[ModelT], text: str) -> ModelT:
    try:
        data = json.loads(text)
        return model_cls(**data)
    except json.JSONDecodeError as e:
        raise SerializationError(f"invalid JSON: {e}") from e
    except (PydanticValidationError, TypeError) as e:
        raise SerializationError(f"{model_cls.__name__} validation failed: {e}") from e


def dumps_spec(spec: CodeSpec) -> str:
    return spec_to_model(spec).model_dump_json(indent=2)


def loads_spec(text: str) -> CodeSpec:
    model = parse_model(CodeSpecModel, text)
    try:
        return spec_from_model(model)
    except SerializationError:
        raise
    except LrcError as e:
        raise SerializationError(f"code file does not describe a valid code: {e}") from e


def save_spec(spec: CodeSpec, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_spec(spec) + "\n", encoding="utf-8")
    logger.info(f"Saved {spec.kind.value} code to {path}")


def load_spec(path: Union[str, Path]) -> CodeSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"cannot read code file {path}: {e}") from e
    return loads_spec(text)
