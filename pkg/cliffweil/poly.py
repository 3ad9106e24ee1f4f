"""
Exact sparse multivariate polynomials in q variables x_a indexed by field elements,
and the complete weight enumerator of a code.

Terms are kept in a dict keyed by the packed exponent vector: 16 bits per variable with
x_0 in the most significant position, so integer order on keys is lexicographic order
on exponent vectors. Coefficients are ints or Fractions; Cyc8 coefficients appear only
while a cyclotomic matrix acts and are folded back to rationals whenever possible.
"""
import collections
import logging
import math

from fractions import Fraction

from cliffweil.codes import composition_counts
from cliffweil.config import DEFAULT_CODEWORD_BUDGET, DEFAULT_TERM_CAP
from cliffweil.cyclotomic import Cyc8
from cliffweil.exceptions import BudgetExceededException
from cliffweil.gf import get_embedding

logger = logging.getLogger(__name__)

EXPONENT_BITS = 16
EXPONENT_MASK = (1 << EXPONENT_BITS) - 1


def pack(exponents):
    """ Packs an exponent vector into an integer key """
    key = 0
    for exponent in exponents:
        if not 0 <= exponent <= EXPONENT_MASK:
            raise ValueError("Exponent {0} out of range".format(exponent))
        key = (key << EXPONENT_BITS) | exponent
    return key


def unpack(key, nvars):
    """ Inverse of pack """
    exponents = [0] * nvars
    for index in range(nvars - 1, -1, -1):
        exponents[index] = key & EXPONENT_MASK
        key >>= EXPONENT_BITS
    return tuple(exponents)


def _normalize(coefficient):
    if isinstance(coefficient, Cyc8) and coefficient.is_rational():
        coefficient = coefficient.to_rational()
    if isinstance(coefficient, Fraction) and coefficient.denominator == 1:
        coefficient = coefficient.numerator
    return coefficient


class SparsePoly(object):
    """An immutable polynomial in nvars variables"""

    __slots__ = ("nvars", "terms")

    # largest number of terms a product or substitution may create
    term_cap = DEFAULT_TERM_CAP

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        cleaned = {}
        for key, coefficient in (terms or {}).items():
            coefficient = _normalize(coefficient)
            if coefficient:
                cleaned[key] = coefficient
        self.terms = cleaned

    @classmethod
    def from_exponents(cls, nvars, mapping):
        """ Builds a polynomial from {exponent tuple: coefficient} """
        terms = collections.defaultdict(int)
        for exponents, coefficient in mapping.items():
            if len(exponents) != nvars:
                raise ValueError("Exponent vector {0} does not have {1} entries".format(exponents, nvars))
            terms[pack(exponents)] += coefficient
        return cls(nvars, terms)

    @classmethod
    def constant(cls, nvars, value):
        """ The constant polynomial """
        return cls(nvars, {0: value})

    @classmethod
    def variable(cls, nvars, index, coefficient=1):
        """ coefficient * x_index """
        exponents = [0] * nvars
        exponents[index] = 1
        return cls(nvars, {pack(exponents): coefficient})

    @classmethod
    def linear_form(cls, coefficients):
        """ sum(coefficients[b] * x_b) """
        nvars = len(coefficients)
        terms = {}
        for index, coefficient in enumerate(coefficients):
            exponents = [0] * nvars
            exponents[index] = 1
            terms[pack(exponents)] = coefficient
        return cls(nvars, terms)

    def exponents(self, key):
        """ Exponent tuple of a packed key """
        return unpack(key, self.nvars)

    def items(self):
        """ (exponent tuple, coefficient) pairs in descending lexicographic order """
        return [(self.exponents(key), self.terms[key]) for key in sorted(self.terms, reverse=True)]

    def monomials(self):
        """ Exponent tuples of the support, in descending lexicographic order """
        return [self.exponents(key) for key in sorted(self.terms, reverse=True)]

    def coefficient(self, exponents):
        """ Coefficient of the monomial with the given exponents """
        return self.terms.get(pack(exponents), 0)

    def leading_monomial(self):
        """ Lexicographically largest monomial of the support """
        return self.exponents(max(self.terms)) if self.terms else None

    def is_zero(self):
        """ True for the zero polynomial """
        return not self.terms

    def degrees(self):
        """ Set of total degrees of the terms """
        return {sum(self.exponents(key)) for key in self.terms}

    @property
    def degree(self):
        """ Total degree, -1 for the zero polynomial """
        return max(self.degrees()) if self.terms else -1

    def is_homogeneous(self):
        """ True if all terms share one total degree """
        return len(self.degrees()) <= 1

    def _check_ring(self, other):
        if other.nvars != self.nvars:
            raise ValueError("Polynomials in {0} and {1} variables cannot be combined".format(
                self.nvars, other.nvars))

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.nvars, other)
        self._check_ring(other)
        terms = dict(self.terms)
        for key, coefficient in other.terms.items():
            terms[key] = terms.get(key, 0) + coefficient
        return SparsePoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.nvars, {key: -coefficient for key, coefficient in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            if not other:
                return SparsePoly(self.nvars)
            terms = {key: coefficient * other for key, coefficient in self.terms.items()}
            return SparsePoly(self.nvars, terms)
        self._check_ring(other)
        left, right = (self, other) if len(self.terms) >= len(other.terms) else (other, self)
        terms = collections.defaultdict(int)
        for right_key, right_coefficient in right.terms.items():
            for left_key, left_coefficient in left.terms.items():
                terms[left_key + right_key] += left_coefficient * right_coefficient
            if len(terms) > self.term_cap:
                raise BudgetExceededException("Product exceeds the term cap of {0}".format(self.term_cap))
        return SparsePoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("Negative powers of polynomials are not supported")
        result, base = SparsePoly.constant(self.nvars, 1), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyc8)):
            return self.terms == SparsePoly.constant(self.nvars, other).terms
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def derivative(self, index):
        """ Partial derivative with respect to x_index """
        shift = EXPONENT_BITS * (self.nvars - 1 - index)
        terms = {}
        for key, coefficient in self.terms.items():
            exponent = (key >> shift) & EXPONENT_MASK
            if exponent:
                terms[key - (1 << shift)] = coefficient * exponent
        return SparsePoly(self.nvars, terms)

    def evaluate(self, point):
        """ Exact value at a point with one coordinate per variable """
        if len(point) != self.nvars:
            raise ValueError("Expected a point with {0} coordinates".format(self.nvars))
        point = [Fraction(value) if isinstance(value, int) else value for value in point]
        total = 0
        for exponents, coefficient in self.items():
            value = coefficient
            for base, exponent in zip(point, exponents):
                if exponent:
                    value = value * base ** exponent
            total = total + value
        return _normalize(total) if isinstance(total, (Fraction, Cyc8)) else total

    def substitute(self, images):
        """
        Algebra morphism x_a -> images[a], expanded by a multivariate Horner scheme.
        :param images: One SparsePoly per variable, all in the same target ring.
        """
        if len(images) != self.nvars:
            raise ValueError("Expected {0} images, got {1}".format(self.nvars, len(images)))
        target = images[0].nvars if images else self.nvars
        terms = [(self.exponents(key), coefficient) for key, coefficient in self.terms.items()]
        return _horner(terms, 0, images, target)

    def scale_by_degree(self, factor):
        """ Multiplies every term of total degree k by factor^k """
        powers = {}
        terms = {}
        for key, coefficient in self.terms.items():
            degree = sum(self.exponents(key))
            if degree not in powers:
                powers[degree] = factor ** degree
            terms[key] = coefficient * powers[degree]
        return SparsePoly(self.nvars, terms)

    def permute(self, images, factors=None):
        """ Monomial substitution x_a -> factors[a] * x_images[a] """
        terms = collections.defaultdict(int)
        for key, coefficient in self.terms.items():
            exponents = self.exponents(key)
            moved = [0] * self.nvars
            for index, exponent in enumerate(exponents):
                if exponent:
                    moved[images[index]] += exponent
                    if factors is not None:
                        coefficient = coefficient * factors[index] ** exponent
            terms[pack(moved)] += coefficient
        return SparsePoly(self.nvars, terms)

    def galois_permute(self, ctx, k=1):
        """ x_a -> x_{a^(2^k)} for variables indexed by the elements of ctx """
        return self.permute([ctx.frobenius(a, k) for a in range(self.nvars)])

    def hamming_specialize(self):
        """
        p(1, x, ..., x) as a list of coefficients indexed by the power of x.
        """
        coefficients = collections.defaultdict(int)
        for key, coefficient in self.terms.items():
            exponents = self.exponents(key)
            coefficients[sum(exponents) - exponents[0]] += coefficient
        if not coefficients:
            return []
        return [_normalize(coefficients[power]) for power in range(max(coefficients) + 1)]

    def to_dict(self):
        """ JSON form, terms in descending monomial order, coefficients as decimal strings """
        terms = []
        for exponents, coefficient in self.items():
            entry = {"exps": list(exponents)}
            if isinstance(coefficient, Cyc8):
                entry["cyc"] = coefficient.to_strings()
            else:
                value = Fraction(coefficient)
                entry["num"] = str(value.numerator)
                entry["den"] = str(value.denominator)
            terms.append(entry)
        return {"field": "F{0}".format(self.nvars), "nvars": self.nvars, "terms": terms}

    @classmethod
    def from_dict(cls, data):
        """ Inverse of to_dict """
        nvars = int(data["nvars"])
        mapping = {}
        for entry in data.get("terms", []):
            if "cyc" in entry:
                coefficient = Cyc8(*[Fraction(value) for value in entry["cyc"]])
            else:
                coefficient = Fraction(int(entry["num"]), int(entry.get("den", "1")))
            mapping[tuple(int(e) for e in entry["exps"])] = coefficient
        return cls.from_exponents(nvars, mapping)

    def __repr__(self):
        shown = ["{0}*x^{1}".format(coefficient, list(exponents))
                 for exponents, coefficient in self.items()[:4]]
        more = " + ..." if len(self.terms) > 4 else ""
        return "SparsePoly({0}{1})".format(" + ".join(shown) or "0", more)


def _horner(terms, index, images, target):
    if index == len(images):
        total = 0
        for _, coefficient in terms:
            total = total + coefficient
        return SparsePoly.constant(target, total)
    buckets = collections.defaultdict(list)
    for exponents, coefficient in terms:
        buckets[exponents[index]].append((exponents, coefficient))
    top = max(buckets)
    if top == 0:
        return _horner(terms, index + 1, images, target)
    result = SparsePoly(target)
    for power in range(top, -1, -1):
        if not result.is_zero():
            result = result * images[index]
        if power in buckets:
            result = result + _horner(buckets[power], index + 1, images, target)
    return result


def cwe(code, budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """
    Complete weight enumerator: sum over codewords c of prod_i x_{c_i}.
    :param code: A LinearCode.
    :return: Homogeneous SparsePoly of degree n in q variables.
    """
    mapping = composition_counts(code, budget, workers)
    poly = SparsePoly.from_exponents(code.q, mapping)
    logger.debug("cwe of %s has %s terms", code, len(poly.terms))
    return poly


def hamming_specialize(poly):
    """ Univariate Hamming weight enumerator p(1, x, ..., x), as a coefficient list """
    return poly.hamming_specialize()


def evaluate(poly, point):
    """ Exact evaluation """
    return poly.evaluate(point)


def substitute(poly, images):
    """ Algebra morphism substitution """
    return poly.substitute(images)


def expansion_images(basis):
    """
    Images of x_a that turn cwe(C) into the enumerator of the subfield expansion of C
    over basis: x_a -> prod_t y_{c_t}, where (c_1, ..., c_e) are the coordinates of a.
    """
    nvars = basis.embedding.sub.order
    images = []
    for a in basis.ctx.elements():
        image = SparsePoly.constant(nvars, 1)
        for coordinate in basis.coordinates(a):
            image = image * SparsePoly.variable(nvars, coordinate)
        images.append(image)
    return images


def restriction_images(ctx, subctx):
    """ x_a -> y_a for a in the subfield and 0 otherwise, giving the enumerator of the rational subcode """
    embedding = get_embedding(subctx.degree, ctx.degree)
    return [SparsePoly.variable(subctx.order, embedding.restrict(a)) if embedding.contains(a)
            else SparsePoly(subctx.order) for a in ctx.elements()]


def act_endomorphism(poly, matrix):
    """
    Substitutes x_a -> sum_b M[a][b] x_b. Monomial matrices permute and rescale terms;
    matrices that are a scalar times a rational matrix are expanded with integer
    coefficients and rescaled per degree; anything else is expanded over Q(zeta_8).
    """
    monomial = matrix.monomial_form()
    if monomial is not None:
        images, factors = monomial
        return poly.permute(images, factors)

    rational = matrix.rational_form()
    if rational is not None:
        unit, entries = rational
        denominator = 1
        for row in entries:
            for entry in row:
                denominator = denominator * entry.denominator // math.gcd(denominator, entry.denominator)
        images = [SparsePoly.linear_form([int(entry * denominator) for entry in row]) for row in entries]
        return poly.substitute(images).scale_by_degree(unit / denominator)

    images = [SparsePoly.linear_form(row) for row in matrix.to_entries()]
    return poly.substitute(images)
