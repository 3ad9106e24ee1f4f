"""
Exact arithmetic in Q(zeta_8) = Q[zeta]/(zeta^4 + 1) and square matrices over it.

Cyc8 stores the four rational coordinates of c0 + c1 zeta + c2 zeta^2 + c3 zeta^3,
with i = zeta^2 and sqrt(2) = zeta - zeta^3. CycMatrix stores all coordinates of a
matrix as one integer array of shape (4, q, q) over a common positive denominator,
reduced to lowest terms so that equal matrices have equal hash keys.
"""
import logging
import math

from fractions import Fraction

import numpy

from cliffweil.exceptions import GroupClosureException

logger = logging.getLogger(__name__)

RATIONAL_TYPES = (int, Fraction)


def _as_fraction(value):
    return value if isinstance(value, Fraction) else Fraction(value)


class Cyc8(object):
    """An element of Q(zeta_8)"""

    __slots__ = ("coords",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.coords = (_as_fraction(c0), _as_fraction(c1), _as_fraction(c2), _as_fraction(c3))

    @classmethod
    def zeta_power(cls, exponent):
        """ zeta^exponent """
        exponent %= 8
        coords = [0, 0, 0, 0]
        coords[exponent % 4] = 1 if exponent < 4 else -1
        return cls(*coords)

    @classmethod
    def coerce(cls, value):
        """ Lifts ints and Fractions into Q(zeta_8) """
        if isinstance(value, Cyc8):
            return value
        if isinstance(value, RATIONAL_TYPES):
            return cls(value)
        raise TypeError("Cannot interpret {0!r} as an element of Q(zeta_8)".format(value))

    def __add__(self, other):
        try:
            other = Cyc8.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyc8(*[a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc8(*[-a for a in self.coords])

    def __sub__(self, other):
        try:
            other = Cyc8.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyc8(*[a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return Cyc8(*[a * other for a in self.coords])
        if not isinstance(other, Cyc8):
            return NotImplemented
        result = [Fraction(0)] * 4
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                if i + j < 4:
                    result[i + j] += a * b
                else:
                    result[i + j - 4] -= a * b
        return Cyc8(*result)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return Cyc8(*[a / other for a in self.coords])
        if not isinstance(other, Cyc8):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyc8.coerce(other) * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = Cyc8(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def galois(self, k):
        """ Image under the automorphism zeta -> zeta^k, k odd """
        if k % 2 == 0:
            raise ValueError("zeta -> zeta^{0} is not an automorphism".format(k))
        result = Cyc8()
        for j, a in enumerate(self.coords):
            if a:
                result = result + Cyc8.zeta_power(k * j) * a
        return result

    def conjugate(self):
        """ Complex conjugate, zeta -> zeta^-1 """
        c0, c1, c2, c3 = self.coords
        return Cyc8(c0, -c3, -c2, -c1)

    def norm(self):
        """ Field norm to Q, the product of the four conjugates """
        product = self * self.galois(3) * self.galois(5) * self.galois(7)
        return product.to_rational()

    def inverse(self):
        """ Multiplicative inverse """
        if self.is_zero():
            raise ZeroDivisionError("Division by zero in Q(zeta_8)")
        return self.galois(3) * self.galois(5) * self.galois(7) / self.norm()

    def is_zero(self):
        """ True for 0 """
        return not any(self.coords)

    def is_rational(self):
        """ True if only the constant coordinate is nonzero """
        return not any(self.coords[1:])

    def to_rational(self):
        """ The value as a Fraction; raises for irrational values """
        if not self.is_rational():
            raise ValueError("{0!r} is not rational".format(self))
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, Cyc8):
            return self.coords == other.coords
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def to_strings(self):
        """ Coordinates as decimal strings, for JSON """
        return [str(a) for a in self.coords]

    def __repr__(self):
        return "Cyc8({0})".format(", ".join(str(a) for a in self.coords))


ZETA8 = Cyc8.zeta_power(1)
I = Cyc8.zeta_power(2)
SQRT2 = Cyc8(0, 1, 0, -1)
INV_SQRT2 = Cyc8(0, Fraction(1, 2), 0, Fraction(-1, 2))


def i_power(exponent):
    """ i^exponent """
    return Cyc8.zeta_power(2 * exponent)


def multiply_coordinates(left, right):
    """ Coordinate arrays (4, ...) multiplied with zeta^4 = -1, matrix products on the last two axes """
    result = [None] * 4
    for i in range(4):
        for j in range(4):
            product = numpy.matmul(left[i], right[j])
            k = i + j
            if k >= 4:
                k -= 4
                product = -product
            result[k] = product if result[k] is None else result[k] + product
    return numpy.stack(result)


class CycMatrix(object):
    """A square matrix over Q(zeta_8) in lowest terms: data / den"""

    __slots__ = ("data", "den", "_key")

    def __init__(self, data, den=1, normalize=True):
        data = numpy.asarray(data)
        if data.ndim != 3 or data.shape[0] != 4 or data.shape[1] != data.shape[2]:
            raise GroupClosureException("Expected coordinates of shape (4, q, q), got {0}".format(data.shape))
        if den == 0:
            raise GroupClosureException("Matrix denominator must be nonzero")
        if den < 0:
            data, den = -data, -den
        if normalize:
            data = data.astype(numpy.int64, copy=False)
            divisor = math.gcd(int(numpy.gcd.reduce(numpy.abs(data).ravel())), int(den))
            if divisor > 1:
                data = data // divisor
                den //= divisor
        self.data = data
        self.den = int(den)
        self._key = None

    @classmethod
    def from_entries(cls, rows):
        """ Builds a matrix from a square list of lists of Cyc8 / rationals """
        entries = [[Cyc8.coerce(entry) for entry in row] for row in rows]
        size = len(entries)
        den = 1
        for row in entries:
            for entry in row:
                for coord in entry.coords:
                    den = den * coord.denominator // math.gcd(den, coord.denominator)
        data = numpy.zeros((4, size, size), dtype=numpy.int64)
        for a, row in enumerate(entries):
            if len(row) != size:
                raise GroupClosureException("Matrix rows must all have length {0}".format(size))
            for b, entry in enumerate(row):
                for k, coord in enumerate(entry.coords):
                    data[k, a, b] = int(coord * den)
        return cls(data, den)

    @classmethod
    def identity(cls, size):
        """ The identity matrix """
        return cls.scalar(size, 1)

    @classmethod
    def scalar(cls, size, value):
        """ value times the identity """
        value = Cyc8.coerce(value)
        return cls.from_entries([[value if a == b else 0 for b in range(size)] for a in range(size)])

    @classmethod
    def diagonal(cls, values):
        """ Diagonal matrix with the given entries """
        size = len(values)
        return cls.from_entries([[values[a] if a == b else 0 for b in range(size)] for a in range(size)])

    @classmethod
    def permutation(cls, images):
        """ The matrix sending x_a to x_images[a] """
        size = len(images)
        data = numpy.zeros((4, size, size), dtype=numpy.int64)
        for a, image in enumerate(images):
            data[0, a, image] = 1
        return cls(data, 1)

    @property
    def dim(self):
        """ Number of rows """
        return self.data.shape[1]

    def entry(self, a, b):
        """ The entry in row a, column b """
        return Cyc8(*[Fraction(int(self.data[k, a, b]), self.den) for k in range(4)])

    def to_entries(self):
        """ List of lists of Cyc8 """
        return [[self.entry(a, b) for b in range(self.dim)] for a in range(self.dim)]

    def __matmul__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise GroupClosureException(
                "Cannot multiply {0}x{0} by {1}x{1} matrices".format(self.dim, other.dim))
        product = multiply_coordinates(self.data.astype(numpy.int64, copy=False),
                                        other.data.astype(numpy.int64, copy=False))
        return CycMatrix(product, self.den * other.den)

    def scale(self, value):
        """ value times the matrix """
        return self @ CycMatrix.scalar(self.dim, value)

    def power(self, exponent):
        """ Non-negative integer power """
        result, base = CycMatrix.identity(self.dim), self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def adjoint(self):
        """ Conjugate transpose, zeta -> zeta^-1 """
        data = self.data.astype(numpy.int64, copy=False)
        conj = numpy.stack([data[0], -data[3], -data[2], -data[1]])
        return CycMatrix(conj.transpose(0, 2, 1), self.den)

    def is_identity(self):
        """ True for the identity matrix """
        return self == CycMatrix.identity(self.dim)

    def is_unitary(self):
        """ M M^dagger = I """
        return (self @ self.adjoint()).is_identity()

    def inverse(self):
        """ Inverse of a unitary matrix, which is its adjoint """
        candidate = self.adjoint()
        if not (self @ candidate).is_identity():
            raise GroupClosureException("Only unitary matrices can be inverted here")
        return candidate

    def scalar_value(self):
        """ The scalar c if the matrix is c times the identity, otherwise None """
        data = self.data
        mask = ~numpy.eye(self.dim, dtype=bool)
        if numpy.any(data[:, mask]):
            return None
        diagonal = data[:, numpy.arange(self.dim), numpy.arange(self.dim)]
        if numpy.any(diagonal != diagonal[:, :1]):
            return None
        return self.entry(0, 0)

    def is_diagonal(self):
        """ True if every off-diagonal entry vanishes """
        mask = ~numpy.eye(self.dim, dtype=bool)
        return not numpy.any(self.data[:, mask])

    def monomial_form(self):
        """
        (images, factors) if every row has exactly one nonzero entry, so that
        x_a -> factors[a] x_images[a]; otherwise None.
        """
        support = numpy.any(self.data != 0, axis=0)
        if numpy.any(support.sum(axis=1) != 1):
            return None
        images = [int(numpy.flatnonzero(row)[0]) for row in support]
        return images, [self.entry(a, image) for a, image in enumerate(images)]

    def rational_form(self):
        """
        (u, R) with the matrix equal to u * R for a Cyc8 unit u and a rational matrix R
        given as lists of Fractions; None when no such factorisation exists.
        """
        nonzero = numpy.argwhere(numpy.any(self.data != 0, axis=0))
        if not len(nonzero):
            return Cyc8(1), [[Fraction(0)] * self.dim for _ in range(self.dim)]
        a, b = nonzero[0]
        unit = self.entry(int(a), int(b))
        inverse = unit.inverse()
        rational = []
        for row in self.to_entries():
            scaled_row = []
            for entry in row:
                scaled = entry * inverse
                if not scaled.is_rational():
                    return None
                scaled_row.append(scaled.to_rational())
            rational.append(scaled_row)
        return unit, rational

    def trace(self):
        """ Sum of the diagonal entries """
        diagonal = numpy.trace(self.data.astype(numpy.int64, copy=False), axis1=1, axis2=2)
        return Cyc8(*[Fraction(int(value), self.den) for value in diagonal])

    def compact(self):
        """ Same matrix stored with the narrowest integer type that holds it """
        if self.data.size and numpy.abs(self.data).max() < 128:
            return CycMatrix(self.data.astype(numpy.int8), self.den, normalize=False)
        return self

    @property
    def key(self):
        """ Canonical hash key: denominator and coordinate bytes """
        if self._key is None:
            data = self.data
            if data.size and numpy.abs(data).max() < 128:
                self._key = (self.den, 1, data.astype(numpy.int8).tobytes())
            else:
                self._key = (self.den, 8, data.astype(numpy.int64).tobytes())
        return self._key

    def __eq__(self, other):
        return isinstance(other, CycMatrix) and self.dim == other.dim and self.key == other.key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key)

    def to_dict(self):
        """ JSON form: entries as coordinate strings """
        entries = [[entry.to_strings() for entry in row] for row in self.to_entries()]
        return {"dim": self.dim, "entries": entries}

    def __repr__(self):
        return "CycMatrix(dim={0}, den={1})".format(self.dim, self.den)
