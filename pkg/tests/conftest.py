"""Shared rings and codes."""

import pytest

from src.algebra.ring_core import make_galois_ring
from src.codes.constructions import build_multiblocks, build_tamo_barg


@pytest.fixture(scope="session")
def z121_message():
    return [1, 0, 3, 7, 0, 0, 11, 1]


@pytest.fixture(scope="session")
def z121_codeword():
    return [23, 113, 6, 33, 72, 114, 116, 106, 7, 25]


@pytest.fixture(scope="session")
def z9():
    return make_galois_ring(3, 2, 1)


@pytest.fixture(scope="session")
def z25():
    return make_galois_ring(5, 2, 1)


@pytest.fixture(scope="session")
def z121():
    return make_galois_ring(11, 2, 1)


@pytest.fixture(scope="session")
def gr4_2():
    return make_galois_ring(2, 2, 2)


@pytest.fixture(scope="session")
def z121_tamo_barg(z121):
    """Z_121, blocks {1,3,9,27,81} and {40,94,112,118,120}, g = x^5, t = 2."""
    return build_tamo_barg(z121, 5, 2)


@pytest.fixture(scope="session")
def z25_tamo_barg(z25):
    """n=4, K=2, r=1 on the cosets {1,24}, {7,18}."""
    return build_tamo_barg(z25, 2, 2)


@pytest.fixture(scope="session")
def z25_multiblocks(z25):
    """n=20, K=2, r=1 on the cosets of {1,24} in N(Z_25)."""
    return build_multiblocks(z25, 2, 2)