"""Module for testing the Clifford-Weil group"""
from fractions import Fraction
from unittest import TestCase

from mock import patch

from cliffweil.codes import named_code
from cliffweil.cwg import (
    MatrixGroup,
    clifford_weil_generators,
    clifford_weil_group,
    close_group,
    expected_order,
    gen_d,
    gen_h,
    gen_m,
    galois_gen,
    hd_cube_scalar,
    is_invariant,
    known_molien_coefficients,
    molien,
    molien_closed_form,
    molien_to_dict,
    multiply_by_denominator,
    reynolds,
    scalar_subgroup,
    verify_structure,
)
from cliffweil.cyclotomic import I, INV_SQRT2, ZETA8, CycMatrix
from cliffweil.exceptions import BudgetExceededException, GroupClosureException
from cliffweil.gf import get_field
from cliffweil.poly import cwe
from test.helpers import poly, variables


class TestGenerators(TestCase):
    """Class for testing the generating matrices"""

    def test_scaling(self):
        """ Test that m_w over F4 sends 0, 1, w, w^2 to 0, w, w^2, 1 """
        images, factors = gen_m(get_field(2).element(2)).monomial_form()

        self.assertEqual([0, 2, 3, 1], images)
        self.assertEqual([1, 1, 1, 1], factors)

    def test_scaling_by_zero(self):
        """ Test that m_0 is refused """
        with self.assertRaises(GroupClosureException):
            gen_m(get_field(2).element(0))

    def test_phase(self):
        """ Test that d_1 over F4 is diag(1, -1, i, i) """
        self.assertEqual(CycMatrix.diagonal([1, -1, I, I]), gen_d(get_field(2).element(1)))

    def test_macwilliams_even_degree(self):
        """ Test that h over F4 is a real matrix with entries +-1/2 """
        h = gen_h(get_field(2))

        self.assertEqual(Fraction(1, 2), h.entry(0, 0))
        self.assertEqual(Fraction(-1, 2), h.entry(2, 2))
        self.assertTrue(h.is_unitary())
        self.assertTrue((h @ h).is_identity())

    def test_macwilliams_odd_degree(self):
        """ Test that h over F2 carries the factor 1/sqrt(2) """
        h = gen_h(get_field(1))

        self.assertEqual(INV_SQRT2, h.entry(0, 1))
        self.assertEqual(-INV_SQRT2, h.entry(1, 1))

    def test_galois_generator(self):
        """ Test that Frobenius over F4 swaps w and w^2 """
        self.assertEqual(CycMatrix.permutation([0, 1, 3, 2]), galois_gen(get_field(2)))

    def test_generator_counts(self):
        """ Test the sizes of the full and minimal generator lists """
        ctx = get_field(2)

        self.assertEqual(7, len(clifford_weil_generators(ctx)))
        self.assertEqual(3, len(clifford_weil_generators(ctx, minimal=True)))
        self.assertEqual(4, len(clifford_weil_generators(ctx, minimal=True, with_galois=True)))
        self.assertEqual(3, len(clifford_weil_generators(get_field(1), with_galois=True)))


class TestClosure(TestCase):
    """Class for testing group closure"""

    def test_binary_group(self):
        """ Test that the group over F2 has order 192 and passes the structure checks """
        group = clifford_weil_group(1)

        self.assertEqual(192, group.order)
        self.assertEqual(expected_order(1), group.order)
        self.assertEqual(2, group.dim)
        self.assertEqual(8, len(scalar_subgroup(group)))

        report = verify_structure(group, 1)

        self.assertTrue(report["passed"], report["checks"])
        self.assertEqual(8, report["centre_order"])
        self.assertEqual(["0", "1", "0", "0"], report["hd_cube_scalar"])
        self.assertTrue(report["checks"]["hd_cube"])

    @patch("cliffweil.cwg.hd_cube_scalar")
    def test_binary_cube_must_be_zeta8(self, mock_hd_cube_scalar):
        """ Test that another eighth root of unity as (h d_1)^3 fails the F2 structure check """
        mock_hd_cube_scalar.return_value = ZETA8 ** 3

        report = verify_structure(clifford_weil_group(1), 1)

        self.assertFalse(report["checks"]["hd_cube"])
        self.assertFalse(report["passed"])

    def test_full_generators_agree(self):
        """ Test that the full and minimal generator lists close to the same group over F2 """
        ctx = get_field(1)
        full = close_group(clifford_weil_generators(ctx), 1000)

        self.assertEqual(clifford_weil_group(1).order, full.order)
        for gen in clifford_weil_generators(ctx, minimal=True):
            self.assertIn(gen, full)

    def test_cap(self):
        """ Test that closure stops at the cap """
        with self.assertRaises(BudgetExceededException):
            close_group(clifford_weil_generators(get_field(1), minimal=True), 10)

    def test_empty_generators(self):
        """ Test that an empty generator list cannot be closed """
        with self.assertRaises(GroupClosureException):
            close_group([], 10)

    def test_cyclic_group(self):
        """ Test that zeta times the identity generates a group of order 8 """
        group = close_group([CycMatrix.scalar(2, ZETA8)], 100, compact=True)

        self.assertIsInstance(group, MatrixGroup)
        self.assertEqual(8, len(group))
        self.assertEqual({"order": 8, "dim": 2, "generators": 1, "field_degree": None, "with_galois": False},
                         group.to_dict())

    def test_expected_orders(self):
        """ Test the order formula for F2, F4 and F8 """
        self.assertEqual(192, expected_order(1))
        self.assertEqual(4 * 64 * 15, expected_order(2))
        self.assertEqual(2 * 4 * 64 * 15, expected_order(2, with_galois=True))
        self.assertEqual(8 * 512 * 63, expected_order(3))

    def test_hd_cube(self):
        """ Test that (h d_1)^3 is zeta_8 over F2 """
        self.assertEqual(ZETA8, hd_cube_scalar(get_field(1)))


class TestMolienSeries(TestCase):
    """Class for testing Molien series"""

    def test_binary_molien(self):
        """ Test that the exact Molien sum over F2 is 1 / ((1 - t^8)(1 - t^24)) """
        series = molien(clifford_weil_group(1), 32)

        self.assertEqual(known_molien_coefficients(1, 32), series.coeffs)
        self.assertEqual([1, 0, 0, 0, 0, 0, 0, 0, 1], series.coeffs[:9])
        self.assertEqual(2, series.coeffs[24])
        self.assertEqual(192, series.order)
        self.assertEqual(str(series.coeffs[24]), molien_to_dict(series)["coeffs"][24])

    def test_closed_form(self):
        """ Test the expansion of 1 / (1 - t^4) """
        self.assertEqual([1, 0, 0, 0, 1, 0, 0, 0, 1], molien_closed_form({0: 1}, (4,), 8))

    def test_closed_form_with_numerator(self):
        """ Test that the numerator of the F4 series is recovered from its expansion """
        coeffs = known_molien_coefficients(2, 48)

        numerator = multiply_by_denominator(coeffs, (4, 8, 12, 20))

        expected = [0] * 49
        expected[0] = 1
        expected[40] = 1
        self.assertEqual(expected, numerator)


class TestInvariance(TestCase):
    """Class for testing invariance and the Reynolds operator"""

    def test_enumerators_are_invariant(self):
        """ Test that the enumerators of Q4 and H8 are fixed by their groups """
        f4 = clifford_weil_generators(get_field(2))
        f2 = clifford_weil_generators(get_field(1))

        self.assertTrue(is_invariant(cwe(named_code("Q4")), f4))
        self.assertTrue(is_invariant(cwe(named_code("H8")), f2))
        self.assertTrue(is_invariant(cwe(named_code("H8")), clifford_weil_group(1)))

    def test_monomial_is_not_invariant(self):
        """ Test that x0^4 is not invariant over F4 """
        self.assertFalse(is_invariant(poly(4, {(4, 0, 0, 0): 1}), clifford_weil_generators(get_field(2))))

    def test_reynolds(self):
        """ Test that averaging x0^8 over the F2 group gives a multiple of the Hamming enumerator """
        x0, _ = variables(2)
        hamming = cwe(named_code("H8"))

        average = reynolds(x0 ** 8, clifford_weil_group(1))

        factor = average.coefficient((8, 0))
        self.assertNotEqual(0, factor)
        self.assertEqual(hamming * factor, average)
