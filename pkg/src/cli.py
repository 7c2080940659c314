"""
Command-Line Interface
======================

    lrc ring info   --p 11 --s 2 --m 1
    lrc goodpoly    --p 11 --s 2 --subgroup-order 5
    lrc make-code   --p 11 --s 2 --construction tamo_barg --subgroup-order 5 --t 2 --output z121.json
    lrc encode      --code z121.json --message 1,0,3,7,0,0,11,1
    lrc recover     --code z121.json --word 23,113,6,33,_,114,116,106,7,25
    lrc analyze     --code z121.json
    lrc bounds      --n 10 --k 8 --r 4
    lrc simulate    --code z121.json --trials 1000 --seed 7

JSON results go to stdout, logs to stderr. Positions on the command line and
in its output are 1-based; block indices are 0-based.

Exit codes: 0 success, 1 usage, 2 domain error, 3 unrecoverable erasures.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import BaseModel

from src.algebra.poly_algebra import GoodPolyVariant, subgroup_good_polynomial
from src.algebra.ring_core import GaloisRing, make_galois_ring, teichmuller_group
from src.algebra.sets_partitions import coset_partition, subgroup_of_order
from src.codes.analysis import bounds
from src.codes.constructions import (
    CodeKind,
    CoefficientMap,
    CodeSpec,
    build_almost_optimal,
    build_crt,
    build_generalized,
    build_multiblocks,
    build_rrho,
    build_tamo_barg,
    encode,
    recover_word,
)
from src.errors import LrcError
from src.orchestrator import CodeAnalysisPipeline, ErasureModel, bounds_output, simulate_repair
from src.schemas import EncodeOutput, GoodPolyOutput, RecoverOutput, RepairEntry, RingInfo
from src.serialization import (
    element_to_json,
    good_poly_to_model,
    load_spec,
    parse_int_list,
    parse_message,
    parse_word,
    partition_to_model,
    ring_to_model,
    save_spec,
    spec_to_model,
)
from src.settings import get_settings

logger = logging.getLogger(__name__)


class MissingFlagError(Exception):
    """A flag the chosen construction needs was not given."""


class LrcArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_ring_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="prime characteristic")
    parser.add_argument("--s", type=int, default=1, help="nilpotency index (default 1)")
    parser.add_argument("--m", type=int, default=1, help="extension degree (default 1)")
    parser.add_argument("--modulus", help="ascending modulus coefficients, comma-separated")


def _add_code_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--code", required=True, help="CodeSpec JSON file from make-code")


def build_parser() -> argparse.ArgumentParser:
    parser = LrcArgumentParser(
        prog="lrc", description="Locally recoverable codes over Galois rings"
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="log level for stderr (default: LRC_LOG_LEVEL or WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=LrcArgumentParser)

    ring = commands.add_parser("ring", help="ring utilities")
    ring_commands = ring.add_subparsers(dest="ring_command", required=True)
    info = ring_commands.add_parser("info", help="describe GR(p^s, m)")
    _add_ring_args(info)

    goodpoly = commands.add_parser("goodpoly", help="good polynomial on the cosets of H")
    _add_ring_args(goodpoly)
    goodpoly.add_argument("--subgroup-order", type=int, required=True)
    goodpoly.add_argument("--variant", choices=[v.value for v in GoodPolyVariant], default="x^h")

    make = commands.add_parser("make-code", help="build a code and write its CodeSpec JSON")
    _add_ring_args(make)
    make.add_argument("--construction", choices=[k.value for k in CodeKind], required=True)
    make.add_argument("--subgroup-order", type=int, help="block size h (order of H)")
    make.add_argument("--r", type=int, help="locality; alternative to --subgroup-order")
    make.add_argument("--t", type=int, help="number of g-powers per x-power")
    make.add_argument("--rho", type=int, help="rrho: erasures tolerated per block plus one")
    make.add_argument("--k", type=int, help="almost_optimal: dimension K")
    make.add_argument("--short-block", type=int, help="almost_optimal: size of the last block")
    make.add_argument("--ranks", help="crt: per-block ranks, comma-separated")
    make.add_argument(
        "--coefficient-map",
        choices=[c.value for c in CoefficientMap],
        default=CoefficientMap.POWER_BASIS.value,
    )
    make.add_argument("--variant", choices=[v.value for v in GoodPolyVariant], default="x^h")
    make.add_argument("--output", help="write the CodeSpec here instead of stdout")

    enc = commands.add_parser("encode", help="encode a message")
    _add_code_arg(enc)
    enc.add_argument("--message", required=True, help="K comma-separated symbols")

    rec = commands.add_parser("recover", help="repair erasures (marked _) in a word")
    _add_code_arg(rec)
    rec.add_argument("--word", required=True, help="n comma-separated symbols, _ for erasures")

    ana = commands.add_parser("analyze", help="standard form, brute-force d, locality, bounds")
    _add_code_arg(ana)
    ana.add_argument("--cap", type=int, help="enumeration cap (default LRC_ENUMERATION_CAP)")

    bnd = commands.add_parser("bounds", help="distance and rate bounds for (n, K, r)")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--k", type=int, required=True)
    bnd.add_argument("--r", type=int, required=True)
    bnd.add_argument("--rho", type=int)
    bnd.add_argument("--subtype", help="k_0,...,k_{s-1}")

    sim = commands.add_parser("simulate", help="seeded erasure-repair simulation")
    _add_code_arg(sim)
    sim.add_argument("--trials", type=int, required=True)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--erasure-model", choices=["one_random", "per_block"], default="one_random")
    sim.add_argument("--per-block", type=int, help="erasures per block for per_block")
    sim.add_argument("--cap", type=int)
    return parser


# ============================================================================
# COMMANDS
# ============================================================================


def _ring(args: argparse.Namespace) -> GaloisRing:
    modulus = parse_int_list(args.modulus) if args.modulus else None
    return make_galois_ring(args.p, args.s, args.m, modulus)


def cmd_ring_info(args: argparse.Namespace) -> BaseModel:
    ring = _ring(args)
    group = teichmuller_group(ring)
    return RingInfo(
        name=str(ring),
        ring=ring_to_model(ring),
        characteristic=ring.q,
        order=ring.order,
        units=ring.unit_count,
        residue_field_order=ring.residue_size,
        teichmuller_generator=element_to_json(group[1] if len(group) > 1 else group[0]),
        teichmuller_group=[element_to_json(a) for a in group],
    )


def cmd_goodpoly(args: argparse.Namespace) -> BaseModel:
    ring = _ring(args)
    group = teichmuller_group(ring)
    subgroup = subgroup_of_order(group, args.subgroup_order)
    partition = coset_partition(group, subgroup)
    good = subgroup_good_polynomial(subgroup, partition, args.variant)
    return GoodPolyOutput(
        ring=str(ring),
        subgroup=[element_to_json(a) for a in subgroup],
        partition=partition_to_model(partition),
        good_poly=good_poly_to_model(good),
    )


def _block_size(args: argparse.Namespace, kind: CodeKind) -> int:
    if args.subgroup_order is not None:
        return args.subgroup_order
    if args.r is None:
        raise MissingFlagError("give --subgroup-order or --r")
    if kind is CodeKind.RRHO:
        return args.r + _required(args.rho, "--rho") - 1
    if kind is CodeKind.CRT:
        raise MissingFlagError("crt needs --subgroup-order")
    return args.r + 1


def _required(value: Optional[int], flag: str) -> int:
    if value is None:
        raise MissingFlagError(f"this construction needs {flag}")
    return value


def make_code_from_args(args: argparse.Namespace) -> CodeSpec:
    ring = _ring(args)
    kind = CodeKind(args.construction)
    h = _block_size(args, kind)
    if kind is CodeKind.TAMO_BARG:
        return build_tamo_barg(ring, h, _required(args.t, "--t"), variant=args.variant)
    if kind is CodeKind.GENERALIZED:
        return build_generalized(
            ring, h, _required(args.t, "--t"), args.coefficient_map, variant=args.variant
        )
    if kind is CodeKind.ALMOST_OPTIMAL:
        return build_almost_optimal(
            ring, h, _required(args.k, "--k"), _required(args.short_block, "--short-block")
        )
    if kind is CodeKind.RRHO:
        return build_rrho(ring, h, _required(args.rho, "--rho"), _required(args.t, "--t"))
    if kind is CodeKind.CRT:
        if not args.ranks:
            raise MissingFlagError("crt needs --ranks")
        return build_crt(ring, h, parse_int_list(args.ranks))
    return build_multiblocks(ring, h, _required(args.t, "--t"))


def cmd_make_code(args: argparse.Namespace) -> Optional[BaseModel]:
    spec = make_code_from_args(args)
    if args.output:
        save_spec(spec, args.output)
        return None
    return spec_to_model(spec)


def cmd_encode(args: argparse.Namespace) -> BaseModel:
    spec = load_spec(args.code)
    codeword = encode(spec, parse_message(spec.ring, args.message))
    return EncodeOutput(codeword=[element_to_json(c) for c in codeword])


def cmd_recover(args: argparse.Namespace) -> BaseModel:
    spec = load_spec(args.code)
    result = recover_word(spec, parse_word(spec.ring, args.word))
    repairs = [
        RepairEntry(
            block=r.block,
            repaired={k + 1: element_to_json(v) for k, v in sorted(r.values.items())},
            read=[k + 1 for k in r.read],
        )
        for r in result.repairs
    ]
    for entry in repairs:
        for pos, value in entry.repaired.items():
            logger.info(f"position {pos} = {value} (read {entry.read})")
    return RecoverOutput(
        codeword=[element_to_json(c) for c in result.codeword],
        repairs=repairs,
        symbols_read=result.symbols_read,
    )


def cmd_analyze(args: argparse.Namespace) -> BaseModel:
    spec = load_spec(args.code)
    return CodeAnalysisPipeline(cap=args.cap).run(spec)


def cmd_bounds(args: argparse.Namespace) -> BaseModel:
    subtype = parse_int_list(args.subtype) if args.subtype else None
    return bounds_output(bounds(args.n, args.k, args.r, rho=args.rho, subtype=subtype))


def cmd_simulate(args: argparse.Namespace) -> BaseModel:
    spec = load_spec(args.code)
    model = ErasureModel.parse(args.erasure_model, args.per_block)
    return simulate_repair(spec, args.trials, args.seed, model, cap=args.cap)


COMMANDS = {
    "goodpoly": cmd_goodpoly,
    "make-code": cmd_make_code,
    "encode": cmd_encode,
    "recover": cmd_recover,
    "analyze": cmd_analyze,
    "bounds": cmd_bounds,
    "simulate": cmd_simulate,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one command, print its JSON; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = args.log_level or get_settings().log_level
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)

    handler = cmd_ring_info if args.command == "ring" else COMMANDS[args.command]
    try:
        result = handler(args)
    except MissingFlagError as e:
        parser.error(str(e))
    except LrcError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    if result is not None:
        sys.stdout.write(json.dumps(result.model_dump(mode="json"), indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
