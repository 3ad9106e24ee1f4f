"""
Exact arithmetic in GF(2^m).

Elements are integers whose binary digits are the coefficients of a polynomial over
GF(2), reduced modulo a fixed irreducible polynomial of degree m. The integer value is
also the canonical element order (0, 1, w=2, w^2=3 for F4), which is how polynomial
variables and matrix rows are indexed everywhere else in the package.
"""
import functools
import logging
import re

import numpy
from sympy import primefactors

from cliffweil.exceptions import FieldArithmeticException

logger = logging.getLogger(__name__)

# Lowest weight, lexicographically least irreducible polynomial per degree.
MODULUS_TABLE = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
}

FIELD_NAME_REGEX = re.compile(r"^F(?P<order>\d+)$")

# Fields at most this large get a numpy multiplication table.
TABLE_ORDER_LIMIT = 256


def _degree(poly):
    return poly.bit_length() - 1


def _poly_mod(a, b):
    shift = _degree(b)
    while a and _degree(a) >= shift:
        a ^= b << (_degree(a) - shift)
    return a


def _poly_mul(a, b):
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def _poly_gcd(a, b):
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def is_irreducible(poly):
    """
    Rabin style irreducibility test for a binary polynomial given as a bit vector:
    poly is irreducible iff gcd(x^(2^k) - x, poly) = 1 for every k <= deg/2.
    """
    degree = _degree(poly)
    if degree < 1:
        return False
    if degree == 1:
        return True
    power = 0b10
    for _ in range(degree // 2):
        power = _poly_mod(_poly_mul(power, power), poly)
        if _poly_gcd(power ^ 0b10, poly) != 1:
            return False
    return True


def modulus_for(degree):
    """
    The fixed modulus of GF(2^degree): the lowest weight irreducible polynomial, ties
    broken by the lexicographically least one.
    :param degree: Field degree, a positive integer.
    :return: The modulus as a bit vector.
    """
    if degree < 1:
        raise FieldArithmeticException("Field degree must be positive, got {0}".format(degree))
    if degree in MODULUS_TABLE:
        return MODULUS_TABLE[degree]

    top = (1 << degree) | 1
    # trinomials first, then pentanomials, both with the smallest middle terms first
    for middle in range(1, degree):
        candidate = top | (1 << middle)
        if is_irreducible(candidate):
            return candidate
    for first in range(1, degree):
        for second in range(first + 1, degree):
            for third in range(second + 1, degree):
                candidate = top | (1 << first) | (1 << second) | (1 << third)
                if is_irreducible(candidate):
                    return candidate
    raise FieldArithmeticException("No low weight irreducible polynomial of degree {0}".format(degree))


class FieldCtx(object):
    """GF(2^m) defined by an irreducible modulus; the arithmetic works on integer encodings"""

    def __init__(self, degree, modulus=None):
        modulus = modulus_for(degree) if modulus is None else modulus
        if _degree(modulus) != degree or not is_irreducible(modulus):
            raise FieldArithmeticException(
                "Modulus {0:b} is not an irreducible polynomial of degree {1}".format(modulus, degree)
            )
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        self._mul_table = None
        self._mul_rows = None
        self._trace_table = None

    @property
    def name(self):
        """ Field name, e.g. F4 """
        return "F{0}".format(self.order)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.degree, self.modulus) == (other.degree, other.modulus)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.degree, self.modulus))

    def __repr__(self):
        return str({"field": self.name, "degree": self.degree, "modulus": bin(self.modulus)})

    def check(self, a):
        """ Raises unless a encodes an element of this field """
        if not 0 <= a < self.order:
            raise FieldArithmeticException("{0} is not an element of {1}".format(a, self.name))
        return a

    def elements(self):
        """ All elements in canonical order """
        return range(self.order)

    @staticmethod
    def add(a, b):
        """ Addition (and subtraction) in characteristic 2 """
        return a ^ b

    def mul(self, a, b):
        """ Product of two field elements """
        if self._mul_rows is not None:
            return self._mul_rows[a][b]
        result = 0
        top = 1 << self.degree
        while b:
            if b & 1:
                result ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return result

    def power(self, a, exponent):
        """ a ** exponent, negative exponents invert first """
        if exponent < 0:
            a = self.inverse(a)
            exponent = -exponent
        result = 1
        while exponent:
            if exponent & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            exponent >>= 1
        return result

    def inverse(self, a):
        """ Multiplicative inverse, a^(2^m - 2) """
        if a == 0:
            raise FieldArithmeticException("Division by zero in {0}".format(self.name))
        return self.power(a, self.order - 2)

    def frobenius(self, a, k=1):
        """ a^(2^k) """
        k %= self.degree
        for _ in range(k):
            a = self.mul(a, a)
        return a

    def trace(self, a):
        """ Absolute trace to GF(2), returned as the integer 0 or 1 """
        if self._trace_table is not None:
            return self._trace_table[a]
        total = 0
        for _ in range(self.degree):
            total ^= a
            a = self.mul(a, a)
        return total

    @property
    def mul_table(self):
        """ numpy uint8 multiplication table, only for small fields """
        if self._mul_table is None:
            if self.order > TABLE_ORDER_LIMIT:
                raise FieldArithmeticException(
                    "{0} is too large for a multiplication table".format(self.name))
            table = numpy.zeros((self.order, self.order), dtype=numpy.uint8)
            for a in range(self.order):
                for b in range(a, self.order):
                    table[a, b] = table[b, a] = self.mul(a, b)
            self._mul_table = table
            self._mul_rows = table.tolist()
            self._trace_table = [self.trace(a) for a in range(self.order)]
        return self._mul_table

    def element(self, value):
        """ Wraps an integer encoding as a FieldElement """
        return FieldElement(self.check(value), self)


@functools.lru_cache(maxsize=None)
def get_field(degree):
    """ The field GF(2^degree) built from the fixed modulus table, cached per degree """
    ctx = FieldCtx(degree)
    if ctx.order <= TABLE_ORDER_LIMIT:
        ctx.mul_table  # pylint: disable=pointless-statement
    return ctx


def parse_field(name):
    """
    Parses a field name such as "F4".
    :param name: "F" followed by a power of two.
    :return: The matching FieldCtx.
    """
    match = FIELD_NAME_REGEX.match(name or "")
    order = int(match.group("order")) if match else 0
    if order < 2 or order & (order - 1):
        raise FieldArithmeticException("Invalid field name: {0!r}".format(name))
    return get_field(order.bit_length() - 1)


class FieldElement(object):
    """An immutable element of a FieldCtx"""

    __slots__ = ("value", "ctx")

    def __init__(self, value, ctx):
        self.value = value
        self.ctx = ctx

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldArithmeticException("Elements of {0} and {1} cannot be combined".format(
                    self.ctx.name, other.ctx.name))
            return other.value
        if isinstance(other, int):
            return self.ctx.check(other)
        return None

    def __add__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.value ^ value, self.ctx)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.ctx.mul(self.value, value), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.ctx.mul(self.value, self.ctx.inverse(value)), self.ctx)

    def __pow__(self, exponent):
        return FieldElement(self.ctx.power(self.value, exponent), self.ctx)

    def inverse(self):
        """ Multiplicative inverse """
        return FieldElement(self.ctx.inverse(self.value), self.ctx)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return "{0}({1})".format(self.ctx.name, self.value)


def primitive_element(ctx):
    """
    The least generator of the multiplicative group of ctx.
    :param ctx: A FieldCtx.
    :return: Integer encoding of the generator.
    """
    group_order = ctx.order - 1
    if group_order == 1:
        return 1
    cofactors = [group_order // prime for prime in primefactors(group_order)]
    for candidate in range(2, ctx.order):
        if all(ctx.power(candidate, cofactor) != 1 for cofactor in cofactors):
            return candidate
    raise FieldArithmeticException("No primitive element found in {0}".format(ctx.name))


class FieldEmbedding(object):
    """
    The embedding of a subfield into an extension, sending the class of x in the
    subfield to the least root of the subfield's modulus in the extension.
    """

    def __init__(self, sub, ext):
        if ext.degree % sub.degree:
            raise FieldArithmeticException("{0} is not a subfield of {1}".format(sub.name, ext.name))
        self.sub = sub
        self.ext = ext
        self.relative_degree = ext.degree // sub.degree
        root = self._least_root()
        image = [0] * sub.order
        for value in range(sub.order):
            total, power = 0, 1
            for bit in range(sub.degree):
                if value >> bit & 1:
                    total ^= power
                power = ext.mul(power, root)
            image[value] = total
        self.image = image
        self._preimage = {target: source for source, target in enumerate(image)}

    def _least_root(self):
        if self.sub.degree == 1:
            return 1
        # the roots live in the copy of the subfield: zero and the powers of g^((2^k-1)/(2^m'-1))
        generator = self.ext.power(primitive_element(self.ext),
                                   (self.ext.order - 1) // (self.sub.order - 1))
        candidates = []
        element = 1
        for _ in range(self.sub.order - 1):
            candidates.append(element)
            element = self.ext.mul(element, generator)
        for candidate in sorted(candidates):
            if self._evaluate_modulus(candidate) == 0:
                return candidate
        raise FieldArithmeticException(
            "Modulus of {0} has no root in {1}".format(self.sub.name, self.ext.name))

    def _evaluate_modulus(self, point):
        total, power = 0, 1
        for bit in range(self.sub.degree + 1):
            if self.sub.modulus >> bit & 1:
                total ^= power
            power = self.ext.mul(power, point)
        return total

    def embed(self, value):
        """ Image of a subfield element in the extension """
        return self.image[value]

    def contains(self, value):
        """ True if an extension element lies in the image of the subfield """
        return value in self._preimage

    def restrict(self, value):
        """ Preimage of an extension element lying in the subfield """
        try:
            return self._preimage[value]
        except KeyError:
            raise FieldArithmeticException("{0} of {1} does not lie in {2}".format(
                value, self.ext.name, self.sub.name))

    def relative_trace(self, value):
        """ Tr_{ext/sub}(value) = sum of value^(q'^j), as an extension element """
        total = 0
        for _ in range(self.relative_degree):
            total ^= value
            value = self.ext.frobenius(value, self.sub.degree)
        return total


@functools.lru_cache(maxsize=None)
def get_embedding(sub_degree, ext_degree):
    """ Cached embedding between fields of the fixed modulus table """
    return FieldEmbedding(get_field(sub_degree), get_field(ext_degree))


class ScBasis(object):
    """
    A self-complementary basis (b_1, ..., b_e) of a field over a subfield:
    Tr(b_i b_j) = delta_ij. With the default subfield GF(2) this is the trace-orthogonal
    basis used for phi and binary expansion.
    """

    def __init__(self, ctx, values, embedding=None):
        self.ctx = ctx
        self.embedding = embedding or get_embedding(1, ctx.degree)
        self.values = tuple(values)
        if len(self.values) != self.embedding.relative_degree:
            raise FieldArithmeticException("Basis {0} has the wrong size for {1} over {2}".format(
                self.values, ctx.name, self.embedding.sub.name))
        for i, left in enumerate(self.values):
            for j, right in enumerate(self.values):
                if self.embedding.relative_trace(ctx.mul(left, right)) != (1 if i == j else 0):
                    raise FieldArithmeticException("{0} is not self-complementary".format(self.values))
        self._phi_table = None

    @property
    def sub(self):
        """ The subfield the basis is taken over """
        return self.embedding.sub

    @property
    def elems(self):
        """ The basis as FieldElements """
        return tuple(FieldElement(value, self.ctx) for value in self.values)

    def coordinates(self, a):
        """ Coordinates of a over the basis, as subfield element encodings """
        return tuple(self.embedding.restrict(self.embedding.relative_trace(self.ctx.mul(a, b)))
                     for b in self.values)

    def combine(self, coords):
        """ Inverse of coordinates """
        if len(coords) != len(self.values):
            raise FieldArithmeticException("Expected {0} coordinates, got {1}".format(
                len(self.values), len(coords)))
        total = 0
        for coord, b in zip(coords, self.values):
            total ^= self.ctx.mul(self.embedding.embed(coord), b)
        return total

    def phi_value(self, a):
        """ Hamming weight of the coordinate vector of a, mod 4 """
        if self._phi_table is not None:
            return self._phi_table[a]
        return sum(1 for coord in self.coordinates(a) if coord) % 4

    @property
    def phi_table(self):
        """ phi of every element in canonical order (small fields only) """
        if self._phi_table is None:
            self._phi_table = [self.phi_value(a) for a in range(self.ctx.order)]
        return self._phi_table

    def __eq__(self, other):
        return isinstance(other, ScBasis) and (self.ctx, self.sub, self.values) == (
            other.ctx, other.sub, other.values)

    def __hash__(self):
        return hash((self.ctx, self.sub, self.values))

    def __repr__(self):
        return str({"field": self.ctx.name, "over": self.sub.name, "basis": list(self.values)})


def find_sc_basis(ctx, embedding=None):
    """
    Depth first search, in element order, for the lexicographically first
    self-complementary basis of ctx over a subfield (GF(2) by default).
    :param ctx: The field.
    :param embedding: Optional FieldEmbedding of the subfield into ctx.
    :return: The ScBasis.
    """
    embedding = embedding or get_embedding(1, ctx.degree)
    size = embedding.relative_degree
    chosen = []

    def trace_of_product(a, b):
        return embedding.relative_trace(ctx.mul(a, b))

    def extend():
        if len(chosen) == size:
            return True
        for candidate in range(1, ctx.order):
            if trace_of_product(candidate, candidate) != 1:
                continue
            if any(trace_of_product(candidate, previous) for previous in chosen):
                continue
            chosen.append(candidate)
            if extend():
                return True
            chosen.pop()
        return False

    if not extend():
        raise FieldArithmeticException("No self-complementary basis of {0} over {1}".format(
            ctx.name, embedding.sub.name))
    logger.debug("Self-complementary basis of %s over %s: %s", ctx.name, embedding.sub.name, chosen)
    return ScBasis(ctx, chosen, embedding)


@functools.lru_cache(maxsize=None)
def default_basis(degree):
    """ The pinned self-complementary basis of GF(2^degree) over GF(2) """
    return find_sc_basis(get_field(degree))


def trace(a):
    """ Absolute trace of a FieldElement, 0 or 1 """
    return a.ctx.trace(a.value)


def frobenius(a, k):
    """ a^(2^k) """
    return FieldElement(a.ctx.frobenius(a.value, k), a.ctx)


def phi(a, basis):
    """ The mod 4 weight map relative to a self-complementary basis over GF(2) """
    if basis.ctx != a.ctx:
        raise FieldArithmeticException("Basis of {0} used with an element of {1}".format(
            basis.ctx.name, a.ctx.name))
    return basis.phi_value(a.value)


def phi_vector(vector, basis):
    """ phi extended additively to a vector of integer encodings """
    table = basis.phi_table
    return sum(table[a] for a in vector) % 4


def expand(a, basis):
    """ Coordinates of a over the basis """
    if basis.ctx != a.ctx:
        raise FieldArithmeticException("Basis of {0} used with an element of {1}".format(
            basis.ctx.name, a.ctx.name))
    return basis.coordinates(a.value)


def combine(coords, basis):
    """ The element with the given coordinates over the basis """
    return FieldElement(basis.combine(tuple(int(coord) for coord in coords)), basis.ctx)
