"""Module for testing finite field arithmetic"""
from unittest import TestCase

from hypothesis import given, strategies

from cliffweil.exceptions import FieldArithmeticException
from cliffweil.gf import (
    FieldCtx,
    ScBasis,
    combine,
    default_basis,
    expand,
    find_sc_basis,
    frobenius,
    get_embedding,
    get_field,
    is_irreducible,
    modulus_for,
    parse_field,
    phi,
    phi_vector,
    primitive_element,
    trace,
)

F16_ELEMENTS = strategies.integers(min_value=0, max_value=15)
F8_ELEMENTS = strategies.integers(min_value=0, max_value=7)


class TestFieldArithmetic(TestCase):
    """Class for testing GF(2^m) arithmetic"""

    def test_f4_multiplication(self):
        """ Test that w * w = w^2 and w * w^2 = 1 in F4 """
        ctx = get_field(2)

        self.assertEqual(3, ctx.mul(2, 2))
        self.assertEqual(1, ctx.mul(2, 3))
        self.assertEqual(3, ctx.inverse(2))

    def test_f4_trace(self):
        """ Test that the absolute trace of F4 vanishes exactly on F2 """
        ctx = get_field(2)

        self.assertEqual([0, 0, 1, 1], [ctx.trace(a) for a in ctx.elements()])

    def test_frobenius(self):
        """ Test that Frobenius swaps w and w^2 and has order m """
        f4 = get_field(2)
        f8 = get_field(3)

        self.assertEqual(3, f4.frobenius(2))
        self.assertEqual(list(f8.elements()), [f8.frobenius(a, 3) for a in f8.elements()])

    def test_division_by_zero(self):
        """ Test that zero has no inverse """
        with self.assertRaises(FieldArithmeticException):
            get_field(3).inverse(0)

    def test_out_of_range_element(self):
        """ Test that encodings outside the field are rejected """
        with self.assertRaises(FieldArithmeticException):
            get_field(2).element(4)

    def test_field_elements(self):
        """ Test that the FieldElement wrapper follows the field operations """
        ctx = get_field(2)
        omega = ctx.element(2)

        self.assertEqual(1, omega * ctx.element(3))
        self.assertEqual(ctx.element(3), omega ** 2)
        self.assertEqual(ctx.element(3), omega + 1)
        self.assertEqual(ctx.element(1), omega / omega)
        self.assertEqual(ctx.element(3), omega.inverse())
        self.assertEqual(ctx.element(3), frobenius(omega, 1))
        self.assertEqual(1, trace(omega))
        self.assertTrue(ctx.element(1) < omega)

    def test_mixed_fields(self):
        """ Test that elements of different fields cannot be combined """
        with self.assertRaises(FieldArithmeticException):
            get_field(2).element(1) + get_field(3).element(1)

    @given(F16_ELEMENTS, F16_ELEMENTS, F16_ELEMENTS)
    def test_field_axioms(self, a, b, c):
        """ Test that multiplication in F16 is commutative, associative and distributes over addition """
        ctx = get_field(4)

        self.assertEqual(ctx.mul(a, b), ctx.mul(b, a))
        self.assertEqual(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)))
        self.assertEqual(ctx.mul(a, b ^ c), ctx.mul(a, b) ^ ctx.mul(a, c))

    @given(strategies.integers(min_value=1, max_value=15))
    def test_inverse(self, a):
        """ Test that every nonzero element of F16 times its inverse is one """
        ctx = get_field(4)

        self.assertEqual(1, ctx.mul(a, ctx.inverse(a)))

    @given(F16_ELEMENTS, F16_ELEMENTS)
    def test_trace_additive(self, a, b):
        """ Test that the trace is additive and Frobenius invariant """
        ctx = get_field(4)

        self.assertEqual(ctx.trace(a) ^ ctx.trace(b), ctx.trace(a ^ b))
        self.assertEqual(ctx.trace(a), ctx.trace(ctx.frobenius(a)))


class TestFieldConstruction(TestCase):
    """Class for testing moduli, field names and primitive elements"""

    def test_irreducibility(self):
        """ Test the irreducibility check on small binary polynomials """
        self.assertTrue(is_irreducible(0b111))
        self.assertTrue(is_irreducible(0b1011))
        self.assertFalse(is_irreducible(0b101))
        self.assertFalse(is_irreducible(0b1))

    def test_modulus_search(self):
        """ Test that degrees outside the table get an irreducible trinomial """
        modulus = modulus_for(7)

        self.assertEqual(7, modulus.bit_length() - 1)
        self.assertTrue(is_irreducible(modulus))
        self.assertEqual(3, bin(modulus).count("1"))

    def test_reducible_modulus(self):
        """ Test that a reducible modulus is rejected """
        with self.assertRaises(FieldArithmeticException):
            FieldCtx(2, 0b101)

    def test_parse_field(self):
        """ Test that field names are parsed into cached contexts """
        self.assertIs(get_field(2), parse_field("F4"))
        self.assertEqual(3, parse_field("F8").degree)

    def test_parse_field_invalid(self):
        """ Test that malformed field names are rejected """
        for name in ("F6", "F1", "G4", "", None):
            with self.assertRaises(FieldArithmeticException):
                parse_field(name)

    def test_primitive_element(self):
        """ Test that the least primitive element generates the multiplicative group """
        for degree in (1, 2, 3, 4):
            ctx = get_field(degree)
            generator = primitive_element(ctx)
            powers = {ctx.power(generator, exponent) for exponent in range(ctx.order - 1)}
            self.assertEqual(set(range(1, ctx.order)), powers)

        self.assertEqual(2, primitive_element(get_field(2)))


class TestEmbeddingAndBasis(TestCase):
    """Class for testing subfield embeddings and self-complementary bases"""

    def test_embedding_is_a_homomorphism(self):
        """ Test that the embedding of F4 into F16 respects sums and products """
        embedding = get_embedding(2, 4)
        f4, f16 = embedding.sub, embedding.ext

        for a in f4.elements():
            self.assertEqual(a, embedding.restrict(embedding.embed(a)))
            for b in f4.elements():
                self.assertEqual(embedding.embed(a ^ b), embedding.embed(a) ^ embedding.embed(b))
                product = f16.mul(embedding.embed(a), embedding.embed(b))
                self.assertEqual(embedding.embed(f4.mul(a, b)), product)

    def test_restrict_outside_subfield(self):
        """ Test that restricting an element outside the subfield fails """
        embedding = get_embedding(1, 2)

        self.assertFalse(embedding.contains(2))
        with self.assertRaises(FieldArithmeticException):
            embedding.restrict(2)

    def test_not_a_subfield(self):
        """ Test that F4 does not embed in F8 """
        with self.assertRaises(FieldArithmeticException):
            get_embedding(2, 3)

    def test_pinned_f4_basis(self):
        """ Test that F4 has the basis (w, w^2) and phi = (0, 2, 1, 1) """
        basis = default_basis(2)

        self.assertEqual((2, 3), basis.values)
        self.assertEqual([0, 2, 1, 1], basis.phi_table)

    def test_f2_basis(self):
        """ Test that the basis of F2 over itself is (1) """
        basis = default_basis(1)

        self.assertEqual((1,), basis.values)
        self.assertEqual([0, 1], basis.phi_table)

    def test_invalid_basis(self):
        """ Test that a basis which is not trace orthogonal is rejected """
        with self.assertRaises(FieldArithmeticException):
            ScBasis(get_field(2), (1, 2))

    def test_relative_basis(self):
        """ Test that F16 has a self-complementary basis over F4 """
        embedding = get_embedding(2, 4)
        basis = find_sc_basis(get_field(4), embedding)

        self.assertEqual(2, len(basis.values))
        self.assertEqual(get_field(2), basis.sub)
        for a in get_field(4).elements():
            self.assertEqual(a, basis.combine(basis.coordinates(a)))

    def test_expand_combine(self):
        """ Test that expansion over the basis is inverted by combine """
        basis = default_basis(3)
        ctx = basis.ctx

        for a in ctx.elements():
            element = ctx.element(a)
            self.assertEqual(element, combine(expand(element, basis), basis))

    def test_phi_of_wrong_field(self):
        """ Test that phi refuses an element of another field """
        with self.assertRaises(FieldArithmeticException):
            phi(get_field(3).element(1), default_basis(2))

    @given(F8_ELEMENTS, F8_ELEMENTS)
    def test_phi_quadratic(self, a, b):
        """ Test that phi(a + b) = phi(a) + phi(b) + 2 trace(ab) mod 4 """
        basis = default_basis(3)
        ctx = basis.ctx

        expected = (basis.phi_value(a) + basis.phi_value(b) + 2 * ctx.trace(ctx.mul(a, b))) % 4
        self.assertEqual(expected, basis.phi_value(a ^ b))

    @given(strategies.lists(F8_ELEMENTS, min_size=1, max_size=4))
    def test_phi_vector(self, vector):
        """ Test that phi of a sum is phi of the vector plus twice the second symmetric function """
        basis = default_basis(3)
        ctx = basis.ctx
        total, second = 0, 0
        for entry in vector:
            second ^= ctx.mul(total, entry)
            total ^= entry

        self.assertEqual((phi_vector(vector, basis) + 2 * ctx.trace(second)) % 4, basis.phi_value(total))
