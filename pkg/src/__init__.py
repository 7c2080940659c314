"""
Galois LRC - Locally Recoverable Codes over Galois Rings
========================================================

Evaluation-code LRCs over Galois rings GR(p^s, m): a lost symbol is rebuilt
from the few surviving symbols of its block instead of K symbols as in an MDS
code.

Layers:
-------
    algebra/   ring arithmetic, evaluation sets, polynomials, good polynomials
    codes/     six constructions with local repair; exhaustive analysis
    orchestrator.py  analysis pipeline and repair simulation
    cli.py     `lrc` command line

Quick Start:
------------
    from src.algebra import make_galois_ring
    from src.codes import build_tamo_barg, encode, recover_word

    ring = make_galois_ring(11, 2, 1)                # Z_121
    spec = build_tamo_barg(ring, subgroup_order=5, t=2)
    word = list(encode(spec, [1, 0, 3, 7, 0, 0, 11, 1]))
    word[4] = None
    assert recover_word(spec, word).codeword[4] == ring.element(72)
"""

__version__ = "0.1.0"
__author__ = "Galois LRC Team"

from .codes import CodeSpec, encode, make_code, recover_word
from .errors import LrcError
from .orchestrator import CodeAnalysisPipeline, analyze, simulate_repair
from .schemas import AnalysisReport, CodeSpecModel, SimReport

__all__ = [
    # Codes
    "CodeSpec",
    "make_code",
    "encode",
    "recover_word",
    # Pipeline
    "CodeAnalysisPipeline",
    "analyze",
    "simulate_repair",
    # Schemas
    "AnalysisReport",
    "CodeSpecModel",
    "SimReport",
    # Errors
    "LrcError",
]
