"""Galois ring arithmetic, Hensel lifting, Teichmuller groups and product rings."""

import pytest

from src.algebra.ring_core import (
    arith,
    hensel_lift_root,
    inject_component,
    lift_residue,
    make_galois_ring,
    p_quotient,
    product_ring,
    project_component,
    residue_project,
    teichmuller_group,
    try_invert,
    unit_group,
)
from src.errors import (
    IndexOutOfRangeError,
    NoDefaultModulusError,
    NonPrimeError,
    NotASimpleRootError,
    NotAUnitError,
    ReducibleModulusError,
    RingMismatchError,
)


class TestConstruction:
    def test_sizes(self, z121, gr4_2):
        assert (z121.q, z121.order, z121.unit_count, z121.residue_size) == (121, 121, 110, 11)
        assert (gr4_2.q, gr4_2.order, gr4_2.unit_count, gr4_2.residue_size) == (4, 16, 12, 4)

    def test_names(self, z121, gr4_2):
        assert str(z121) == "Z_121"
        assert str(gr4_2) == "GR(4,2)"
        assert str(make_galois_ring(2, 1, 3)) == "GF(2^3)"

    def test_non_prime(self):
        with pytest.raises(NonPrimeError):
            make_galois_ring(4, 1, 1)

    def test_reducible_modulus(self):
        # x^2 + 1 = (x + 1)^2 over F_2
        with pytest.raises(ReducibleModulusError):
            make_galois_ring(2, 1, 2, modulus=[1, 0, 1])

    def test_non_monic_modulus(self):
        with pytest.raises(ReducibleModulusError):
            make_galois_ring(3, 1, 2, modulus=[1, 0, 2])

    def test_no_default_modulus(self):
        with pytest.raises(NoDefaultModulusError):
            make_galois_ring(17, 1, 2)

    def test_explicit_modulus_matches_default(self, gr4_2):
        assert make_galois_ring(2, 2, 2, modulus=[1, 1, 1]) == gr4_2


class TestArithmetic:
    def test_integer_embedding_wraps(self, z121):
        assert z121.element(-1) == z121.element(120)
        assert z121.element(3) * 41 == z121.element(2)

    def test_gr4_2_multiplication(self, gr4_2):
        x = gr4_2.element([0, 1])
        assert x * x == gr4_2.element([3, 3])
        assert x**3 == gr4_2.one

    def test_inverse(self, z121, gr4_2):
        for ring in (z121, gr4_2):
            for a in unit_group(ring):
                assert a * try_invert(a) == ring.one

    def test_negative_power(self, z25):
        a = z25.element(7)
        assert a**-1 == z25.element(18)

    def test_zero_divisor_has_no_inverse(self, z121):
        with pytest.raises(NotAUnitError):
            try_invert(z121.element(22))

    def test_valuation(self, z121, gr4_2):
        assert z121.element(22).valuation == 1
        assert z121.element(5).valuation == 0
        assert z121.zero.valuation == 2
        assert gr4_2.element([2, 2]).valuation == 1

    def test_p_quotient(self, z121):
        assert p_quotient(z121.element(22), 1) == z121.element(2)

    def test_index_round_trip(self, gr4_2):
        assert gr4_2.element([3, 1]).index == 7
        assert gr4_2.from_index(7) == gr4_2.element([3, 1])
        assert [a.index for a in gr4_2.elements()] == list(range(16))

    def test_from_index_out_of_range(self, gr4_2):
        with pytest.raises(IndexOutOfRangeError):
            gr4_2.from_index(16)

    def test_arith_dispatch(self, z25):
        a, b = z25.element(7), z25.element(20)
        assert arith("add", a, b) == z25.element(2)
        assert arith("sub", a, b) == z25.element(12)
        assert arith("mul", a, b) == z25.element(15)
        assert arith("neg", a) == z25.element(18)

    def test_mixed_rings_rejected(self, z25, z121):
        with pytest.raises(RingMismatchError):
            arith("add", z25.one, z121.one)
        with pytest.raises(RingMismatchError):
            z25.one * z121.one


class TestResidueField:
    def test_projection_and_lift(self, gr4_2):
        a = gr4_2.element([3, 1])
        bar = residue_project(a)
        assert int(bar) == 3
        assert lift_residue(gr4_2, bar) == gr4_2.element([1, 1])

    def test_unit_iff_residue_nonzero(self, z25):
        for a in z25.elements():
            assert a.is_unit == (int(residue_project(a)) != 0)


class TestHensel:
    def test_square_root_of_two_mod_49(self):
        z49 = make_galois_ring(7, 2, 1)
        root = hensel_lift_root([-2, 0, 1], 3, ring=z49)
        assert root == z49.element(10)
        assert root * root == z49.element(2)

    def test_not_a_root(self):
        z49 = make_galois_ring(7, 2, 1)
        with pytest.raises(NotASimpleRootError):
            hensel_lift_root([-2, 0, 1], 1, ring=z49)

    def test_repeated_root(self):
        z49 = make_galois_ring(7, 2, 1)
        with pytest.raises(NotASimpleRootError):
            hensel_lift_root([0, 0, 1], 0, ring=z49)


class TestTeichmuller:
    @pytest.mark.parametrize(
        "ring_name, expected",
        [
            ("z9", [1, 8]),
            ("z25", [1, 7, 24, 18]),
            ("z121", [1, 112, 81, 118, 27, 120, 9, 40, 3, 94]),
        ],
    )
    def test_group_listing(self, request, ring_name, expected):
        ring = request.getfixturevalue(ring_name)
        assert [a.index for a in teichmuller_group(ring)] == expected

    def test_gr4_2_generator_is_x(self, gr4_2):
        x = gr4_2.element([0, 1])
        assert teichmuller_group(gr4_2) == (gr4_2.one, x, gr4_2.element([3, 3]))

    def test_group_is_closed_and_cyclic(self, z121):
        group = teichmuller_group(z121)
        members = set(group)
        assert len(members) == 10
        assert all(a * b in members for a in group for b in group)
        assert group[1] ** 10 == z121.one

    def test_residues_are_distinct_units(self, gr4_2):
        residues = {int(residue_project(a)) for a in teichmuller_group(gr4_2)}
        assert residues == {1, 2, 3}


class TestProductRing:
    def test_idempotents(self, z9):
        z4 = make_galois_ring(2, 2, 1)
        ring = product_ring([z9, z4])
        e0, e1 = ring.idempotent(0), ring.idempotent(1)
        assert (e0 * e1).is_zero
        assert e0 + e1 == ring.one
        assert e0 * e0 == e0
        assert ring.order == 36

    def test_inject_project(self, z9):
        ring = product_ring([z9, make_galois_ring(2, 2, 1)])
        x = inject_component(ring, 5, 0)
        assert project_component(x, 0) == z9.element(5)
        assert project_component(x, 1).is_zero

    def test_component_out_of_range(self, z9):
        ring = product_ring([z9])
        with pytest.raises(IndexOutOfRangeError):
            ring.idempotent(1)
