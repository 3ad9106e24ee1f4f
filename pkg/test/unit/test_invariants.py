"""Module for testing invariant spaces and the extremality search"""
from fractions import Fraction
from unittest import TestCase

from cliffweil.codes import named_code
from cliffweil.cwg import clifford_weil_generators, is_invariant
from cliffweil.exceptions import BudgetExceededException, InvariantComputationException
from cliffweil.gf import get_field
from cliffweil.invariants import (
    DISTANCE_TOO_SMALL,
    NEGATIVE_COEFF,
    NO_SOLUTION,
    NOT_DIV3,
    NOT_POWER_OF_TWO,
    WRONG_TOTAL,
    ExtremalReport,
    check_conditions,
    check_independence,
    classify_rational_subcodes,
    extremal_search,
    integral_solution_lattice,
    invariant_space,
    reproduce_table,
    table_distances,
    unique_extremal_enumerator,
)
from cliffweil.poly import SparsePoly, cwe
from test.helpers import poly, variables


class TestInvariantSpace(TestCase):
    """Class for testing invariant_space"""

    def test_binary_degree_eight(self):
        """ Test that the only degree 8 invariant over F2 is the Hamming enumerator """
        basis = invariant_space(1, 8)

        self.assertEqual([cwe(named_code("H8"))], basis.polys)
        self.assertEqual(1, basis.dimension)

    def test_binary_degree_four(self):
        """ Test that there are no degree 4 invariants over F2 """
        self.assertEqual(0, invariant_space(1, 4).dimension)

    def test_f4_degree_four(self):
        """ Test that the degree 4 invariants over F4 are spanned by the enumerator of Q4 """
        self.assertEqual([cwe(named_code("Q4"))], invariant_space(2, 4).polys)

    def test_f4_degree_eight(self):
        """ Test that the degree 8 invariants over F4 are two dimensional and echelonized """
        basis = invariant_space(2, 8)

        self.assertEqual(2, basis.dimension)
        for poly_ in basis.polys:
            self.assertEqual(1, poly_.coefficient(poly_.leading_monomial()))
        self.assertEqual({"field", "degree", "with_galois", "dimension", "basis"}, set(basis.to_dict()))

    def test_degree_zero(self):
        """ Test that the degree 0 invariants are the constants """
        self.assertEqual([SparsePoly.constant(4, 1)], invariant_space(2, 0).polys)

    def test_other_fields(self):
        """ Test that only F2 and F4 are supported """
        with self.assertRaises(InvariantComputationException):
            invariant_space(3, 8)

    def test_degree_cap(self):
        """ Test that degrees above the cap raise """
        with self.assertRaises(BudgetExceededException):
            invariant_space(2, 44)

    def test_basis_is_invariant(self):
        """ Test that every basis polynomial is fixed by every generator of its group """
        cases = ((2, 8, False), (2, 12, False), (2, 16, False), (2, 12, True), (1, 8, False), (1, 16, False))
        for field_degree, degree, with_galois in cases:
            gens = clifford_weil_generators(get_field(field_degree), with_galois=with_galois)
            basis = invariant_space(field_degree, degree, with_galois)
            self.assertTrue(basis.polys, degree)
            for poly_ in basis.polys:
                self.assertTrue(is_invariant(poly_, gens), (field_degree, degree, with_galois))


class TestIndependence(TestCase):
    """Class for testing the Jacobian independence check"""

    def test_independent(self):
        """ Test that x0^2 and x1^2 are independent at the default point """
        x0, x1 = variables(2)

        result = check_independence([x0 ** 2, x1 ** 2])

        self.assertEqual({"rank": 2, "point_rank": 2, "method": "point", "independent": True}, result)

    def test_dependent(self):
        """ Test that proportional polynomials fall back to symbolic minors and are dependent """
        x0, x1 = variables(2)
        first = x0 * x1
        second = first * 3

        result = check_independence([first, second])

        self.assertEqual(1, result["rank"])
        self.assertEqual("symbolic", result["method"])
        self.assertFalse(result["independent"])

    def test_enumerators_are_independent(self):
        """ Test that the enumerators of Q4 and Q8 are independent """
        result = check_independence([cwe(named_code("Q4")), cwe(named_code("Q8"))])

        self.assertTrue(result["independent"])


class TestConditions(TestCase):
    """Class for testing the conditions on candidate enumerators"""

    def test_q4_at_distance_three(self):
        """ Test that cwe(Q4) satisfies every condition at d = 3 """
        self.assertEqual([], check_conditions(cwe(named_code("Q4")), 4, 3))

    def test_q4_at_distance_four(self):
        """ Test that cwe(Q4) fails the distance condition at d = 4 """
        failures = check_conditions(cwe(named_code("Q4")), 4, 4)

        self.assertEqual([DISTANCE_TOO_SMALL], [entry["code"] for entry in failures])
        self.assertEqual("e", failures[0]["condition"])

    def test_several_failures(self):
        """ Test that x0^4 - x1^4 is negative, has the wrong total and no power of two at (1,1,0,0) """
        failures = check_conditions(poly(4, {(4, 0, 0, 0): 1, (0, 4, 0, 0): -1}), 4, 1)

        codes = [entry["code"] for entry in failures]

        self.assertEqual([NEGATIVE_COEFF, WRONG_TOTAL, NOT_POWER_OF_TWO], codes)

    def test_divisibility_by_three(self):
        """ Test that the coefficient of x0^a (x1 x_w x_w2)^b must be divisible by 3 """
        candidate = poly(4, {(4, 0, 0, 0): 1, (0, 4, 0, 0): 1, (0, 0, 4, 0): 1, (0, 0, 0, 4): 1,
                             (1, 1, 1, 1): 11})

        codes = [entry["code"] for entry in check_conditions(candidate, 4, 1)]

        self.assertIn(NOT_DIV3, codes)

    def test_fractional_coefficients(self):
        """ Test that fractional coefficients are reported """
        candidate = poly(4, {(4, 0, 0, 0): Fraction(1, 2)})

        self.assertIn("NON_INTEGRAL", [entry["code"] for entry in check_conditions(candidate, 4, 1)])


class TestSolutionLattice(TestCase):
    """Class for testing the integral parameter lattice"""

    def test_half_integral_direction(self):
        """ Test that x0^4/2 + x1^4 + u x0^4/2 is integral exactly for odd u """
        particular = poly(4, {(4, 0, 0, 0): Fraction(1, 2), (0, 4, 0, 0): 1})
        direction = poly(4, {(4, 0, 0, 0): Fraction(1, 2)})

        offset, steps = integral_solution_lattice(particular, [direction], divisible_by_three=False)

        self.assertEqual(poly(4, {(0, 4, 0, 0): 1}), offset)
        self.assertEqual([poly(4, {(4, 0, 0, 0): 1})], steps)

    def test_no_integral_point(self):
        """ Test that x0^4/2 + u x1^4 is never integral """
        particular = poly(4, {(4, 0, 0, 0): Fraction(1, 2), (0, 4, 0, 0): 1})
        direction = poly(4, {(0, 4, 0, 0): 1})

        self.assertIsNone(integral_solution_lattice(particular, [direction], divisible_by_three=False))

    def test_divisibility_by_three(self):
        """ Test that the x0 x1 x_w x_w2 coefficient is forced into 3Z """
        particular = poly(4, {(4, 0, 0, 0): 1, (1, 1, 1, 1): 1})
        direction = poly(4, {(1, 1, 1, 1): 1})

        offset, steps = integral_solution_lattice(particular, [direction])

        self.assertEqual(poly(4, {(4, 0, 0, 0): 1}), offset)
        self.assertEqual([poly(4, {(1, 1, 1, 1): 3})], steps)

    def test_degenerate_rows(self):
        """ Test that directions parallel to the particular solution are rejected """
        particular = poly(4, {(4, 0, 0, 0): 1})

        with self.assertRaises(InvariantComputationException):
            integral_solution_lattice(particular, [particular])


class TestExtremalSearch(TestCase):
    """Class for testing the extremality search"""

    def test_unique_enumerators(self):
        """ Test that the distance conditions pin down the enumerators of Q8 and Q12 """
        self.assertEqual(cwe(named_code("Q8")), unique_extremal_enumerator(8, 4))
        self.assertEqual(cwe(named_code("Q12")), unique_extremal_enumerator(12, 6))

    def test_length_four_distance_four(self):
        """ Test that no code of length 4 has distance 4 """
        report = extremal_search(4, 4)

        self.assertFalse(report.feasible)
        self.assertEqual([NO_SOLUTION], report.obstruction_codes)

    def test_length_not_divisible_by_four(self):
        """ Test that lengths not divisible by 4 are infeasible """
        self.assertEqual([NO_SOLUTION], extremal_search(6, 2).obstruction_codes)

    def test_length_eight(self):
        """ Test that length 8 with distance 4 has the single candidate cwe(Q8) """
        report = extremal_search(8, 4)

        self.assertTrue(report.feasible)
        self.assertEqual([cwe(named_code("Q8"))], report.candidates)
        self.assertEqual([], report.obstructions)
        self.assertEqual([4], report.subcode_dimensions)
        self.assertTrue(report.to_dict()["feasible"])

    def test_classify_rational_subcodes(self):
        """ Test that p(1,1,0,0) = 2^m gives m """
        report = ExtremalReport(4, 3, True, [cwe(named_code("Q4"))])

        self.assertEqual([1], classify_rational_subcodes(report))

    def test_obstruction_codes_are_distinct(self):
        """ Test that repeated obstruction codes are listed once """
        report = ExtremalReport(8, 6, False, obstructions=[
            {"code": NOT_DIV3, "detail": "first"},
            {"code": NEGATIVE_COEFF, "detail": "second"},
            {"code": NOT_DIV3, "detail": "third"},
        ])

        self.assertEqual([NOT_DIV3, NEGATIVE_COEFF], report.obstruction_codes)

    def test_table_degree_cap(self):
        """ Test that the extremal searches of the table respect the degree cap """
        with self.assertRaises(BudgetExceededException):
            reproduce_table(degree_cap=8)

    def test_table_distances(self):
        """ Test that table rows reduce to a length to distance mapping """
        rows = [{"n": 4, "d": 3, "witness": "Q4"}, {"n": 8, "d": 4, "witness": "Q8"}]

        self.assertEqual({4: 3, 8: 4}, dict(table_distances(rows)))
