"""
The Clifford-Weil group of doubly-even self-dual codes over GF(2^f) as exact matrices
over Q(zeta_8): generators, closure, structural checks, invariance and Molien series.

Matrix convention: row a of a generator holds the image of the variable x_a, so a
matrix acts on polynomials through act_endomorphism and the composition f after g has
matrix M_g @ M_f.
"""
import collections
import functools
import logging
import math

from fractions import Fraction

import numpy

from cliffweil.config import group_cap_for
from cliffweil.cyclotomic import ZETA8, Cyc8, CycMatrix, I, multiply_coordinates, i_power
from cliffweil.exceptions import BudgetExceededException, GroupClosureException
from cliffweil.gf import default_basis, get_field, primitive_element
from cliffweil.poly import act_endomorphism

logger = logging.getLogger(__name__)

# number of group elements whose powers are traced in one numpy batch
MOLIEN_CHUNK = 4096
# closure progress is logged every this many new elements
CLOSURE_LOG_INTERVAL = 10 ** 4

MolienSeries = collections.namedtuple("MolienSeries", ["max_degree", "coeffs", "order"])


def molien_to_dict(series):
    """ JSON form of a MolienSeries, coefficients as decimal strings """
    return {"order": series.order, "max_degree": series.max_degree, "coeffs": [str(c) for c in series.coeffs]}


def _power_coefficients(coefficients, max_degree):
    """ Coefficient list of a sparse {degree: coefficient} numerator, truncated """
    series = [0] * (max_degree + 1)
    for degree, coefficient in coefficients.items():
        if degree <= max_degree:
            series[degree] += coefficient
    return series


def _palindromic_numerator(half, total_degree):
    """ M(t) + M(1/t) t^total_degree for M given as {degree: coefficient} """
    numerator = collections.Counter(half)
    for degree, coefficient in half.items():
        numerator[total_degree - degree] += coefficient
    return dict(numerator)


F8_DENOMINATOR = (8, 8, 16, 16, 24, 24, 56, 72)

F8_HALF_NUMERATOR = dict(zip(
    [0] + list(range(16, 105, 8)),
    [1, 5, 77, 300, 908, 2139, 3808, 5864, 8257, 10456, 12504, 14294, 15115],
))

F8_GALOIS_HALF_NUMERATOR = dict(zip(
    [0] + list(range(16, 105, 8)),
    [1, 3, 29, 100, 298, 707, 1268, 1958, 2753, 3482, 4166, 4766, 5045],
))

# (field degree, with Galois) -> (numerator {degree: coefficient}, denominator degrees)
KNOWN_MOLIEN_SERIES = {
    (1, False): ({0: 1}, (8, 24)),
    (1, True): ({0: 1}, (8, 24)),
    (2, False): ({0: 1, 40: 1}, (4, 8, 12, 20)),
    (2, True): ({0: 1}, (4, 8, 12, 20)),
    (3, False): (_palindromic_numerator(F8_HALF_NUMERATOR, 216), F8_DENOMINATOR),
    (3, True): (_palindromic_numerator(F8_GALOIS_HALF_NUMERATOR, 216), F8_DENOMINATOR),
}


def gen_m(r):
    """
    The scaling m_r: x_a -> x_{ar}
    :param r: Nonzero FieldElement.
    :return: Permutation CycMatrix.
    """
    if not r.value:
        raise GroupClosureException("m_r needs a nonzero r")
    ctx = r.ctx
    return CycMatrix.permutation([ctx.mul(a, r.value) for a in ctx.elements()])


def gen_d(r, basis=None):
    """
    The diagonal phase map d_r: x_a -> i^phi(ar) x_a
    :param r: FieldElement.
    :param basis: Self-complementary basis defining phi, the pinned one by default.
    """
    ctx = r.ctx
    basis = basis or default_basis(ctx.degree)
    return CycMatrix.diagonal([i_power(basis.phi_value(ctx.mul(a, r.value))) for a in ctx.elements()])


def character_matrix(ctx):
    """ The integer matrix ((-1)^trace(ab)) indexed by field elements """
    return numpy.array([[-1 if ctx.trace(ctx.mul(a, b)) else 1 for b in ctx.elements()]
                        for a in ctx.elements()], dtype=numpy.int64)


def gen_h(ctx):
    """
    The MacWilliams transformation x_a -> 2^(-f/2) sum_b (-1)^trace(ab) x_b.
    For odd f the scale 2^(-f/2) = 2^(-(f+1)/2) (zeta - zeta^3).
    """
    signs = character_matrix(ctx)
    data = numpy.zeros((4, ctx.order, ctx.order), dtype=numpy.int64)
    if ctx.degree % 2 == 0:
        data[0] = signs
        den = 2 ** (ctx.degree // 2)
    else:
        data[1] = signs
        data[3] = -signs
        den = 2 ** ((ctx.degree + 1) // 2)
    return CycMatrix(data, den)


def galois_gen(ctx, k=1):
    """ The variable permutation x_a -> x_{a^(2^k)} """
    return CycMatrix.permutation([ctx.frobenius(a, k) for a in ctx.elements()])


def clifford_weil_generators(ctx, basis=None, minimal=False, with_galois=False):
    """
    Generators of the Clifford-Weil group over ctx.
    :param ctx: The FieldCtx.
    :param basis: Self-complementary basis defining phi.
    :param minimal: If True only (h, d_1, m_alpha) for the least primitive element alpha,
        otherwise h followed by every m_r and d_r with r nonzero.
    :param with_galois: Also include the Frobenius permutation.
    :return: List of CycMatrix.
    """
    basis = basis or default_basis(ctx.degree)
    gens = [gen_h(ctx)]
    if minimal:
        gens.append(gen_d(ctx.element(1), basis))
        gens.append(gen_m(ctx.element(primitive_element(ctx))))
    else:
        nonzero = [ctx.element(r) for r in range(1, ctx.order)]
        gens.extend(gen_m(r) for r in nonzero)
        gens.extend(gen_d(r, basis) for r in nonzero)
    if with_galois and ctx.degree > 1:
        gens.append(galois_gen(ctx))
    return gens


class MatrixGroup(object):
    """A finite matrix group held as its full element set, keyed by canonical form"""

    def __init__(self, elements, generators, field_degree=None, with_galois=False):
        self.elements = elements
        self.generators = list(generators)
        self.field_degree = field_degree
        self.with_galois = with_galois

    @property
    def order(self):
        """ Number of elements """
        return len(self.elements)

    @property
    def dim(self):
        """ Size of the matrices """
        return self.generators[0].dim

    def contains(self, matrix):
        """ Membership by canonical key """
        return matrix.key in self.elements

    __contains__ = contains

    def __iter__(self):
        return iter(self.elements.values())

    def __len__(self):
        return len(self.elements)

    def to_dict(self):
        """ JSON summary """
        return {"order": self.order, "dim": self.dim, "generators": len(self.generators),
                "field_degree": self.field_degree, "with_galois": self.with_galois}

    def __repr__(self):
        return "MatrixGroup(order={0}, dim={1})".format(self.order, self.dim)


def close_group(gens, cap, compact=False, field_degree=None, with_galois=False):
    """
    Breadth first closure under right multiplication by the generators.
    :param gens: Invertible CycMatrix generators of a finite group.
    :param cap: Largest number of elements allowed; BudgetExceededException above it.
    :param compact: Store elements with int8 coordinates when they fit.
    :return: MatrixGroup
    """
    if not gens:
        raise GroupClosureException("Cannot close an empty generator list")
    identity = CycMatrix.identity(gens[0].dim)
    elements = collections.OrderedDict([(identity.key, identity)])
    frontier = collections.deque([identity])
    while frontier:
        element = frontier.popleft()
        for gen in gens:
            product = element @ gen
            if product.key in elements:
                continue
            if len(elements) >= cap:
                raise BudgetExceededException(
                    "Group closure exceeded the cap of {0} elements".format(cap))
            if compact:
                product = product.compact()
            elements[product.key] = product
            frontier.append(product)
            if len(elements) % CLOSURE_LOG_INTERVAL == 0:
                logger.debug("Closure reached %s elements, frontier %s", len(elements), len(frontier))
    group = MatrixGroup(elements, gens, field_degree, with_galois)
    logger.info("Closed group of order %s from %s generators", group.order, len(gens))
    return group


@functools.lru_cache(maxsize=None)
def clifford_weil_group(degree, with_galois=False, cap=None):
    """ The closed Clifford-Weil group over GF(2^degree), from the minimal generators """
    ctx = get_field(degree)
    gens = clifford_weil_generators(ctx, default_basis(degree), minimal=True, with_galois=with_galois)
    cap = cap if cap is not None else group_cap_for(degree)
    return close_group(gens, cap, compact=degree >= 3, field_degree=degree, with_galois=with_galois)


def scalar_subgroup(group):
    """ The scalars c with c * id in the group """
    return [value for value in (element.scalar_value() for element in group) if value is not None]


def expected_order(degree, with_galois=False):
    """ |Z| * q^2 * |SL_2(q)|, times the Galois group order when it is adjoined """
    q = 2 ** degree
    centre = 4 if degree % 2 == 0 else 8
    order = centre * q * q * q * (q * q - 1)
    return order * degree if with_galois else order


def hd_cube_scalar(ctx, basis=None):
    """ The scalar c with (h d_1)^3 = c * id, or None if the cube is not scalar """
    cube = (gen_h(ctx) @ gen_d(ctx.element(1), basis)).power(3)
    return cube.scalar_value()


def _conjugate(element, by):
    """ by o element o by^-1 """
    return by.inverse() @ element @ by


def _commutator(left, right):
    return left @ right @ left.inverse() @ right.inverse()


def verify_structure(group, degree, basis=None):
    """
    Checks the structure of a closed Clifford-Weil group: the centre, the characters
    of d_r^2 and the translations q_r = h d_r^2 h, the commutators on a
    self-complementary basis, the order formula, the conjugation relations by m_a and
    d_1, h^2 = id and the scalar (h d_1)^3, which must be zeta_8 over F2.
    :param group: MatrixGroup from clifford_weil_group.
    :param degree: Field degree f.
    :return: Report dictionary with one boolean per check and a "passed" flag.
    """
    ctx = get_field(degree)
    basis = basis or default_basis(degree)
    size = ctx.order
    h = gen_h(ctx)
    d_squares = {r: gen_d(ctx.element(r), basis).power(2) for r in ctx.elements()}
    translations = {r: h @ d_squares[r] @ h for r in ctx.elements()}
    checks = collections.OrderedDict()

    scalars = scalar_subgroup(group)
    checks["centre_order"] = len(scalars) == (4 if degree % 2 == 0 else 8)
    checks["i_in_centre"] = CycMatrix.scalar(size, I) in group

    checks["d_squared_characters"] = all(
        d_squares[r] == CycMatrix.diagonal([-1 if ctx.trace(ctx.mul(a, r)) else 1 for a in ctx.elements()])
        for r in ctx.elements())
    checks["translations"] = all(
        translations[r] == CycMatrix.permutation([a ^ r for a in ctx.elements()]) for r in ctx.elements())

    minus_identity = CycMatrix.scalar(size, -1)
    identity = CycMatrix.identity(size)
    checks["commutators"] = all(
        _commutator(translations[left], d_squares[right]) == (minus_identity if j == k else identity)
        for j, left in enumerate(basis.values) for k, right in enumerate(basis.values))

    checks["order_formula"] = group.order == expected_order(degree, group.with_galois)

    d_one = gen_d(ctx.element(1), basis)
    conjugation = True
    for a in range(1, size):
        m_a = gen_m(ctx.element(a))
        a_inverse = ctx.inverse(a)
        for r in ctx.elements():
            if _conjugate(d_squares[r], m_a) != d_squares[ctx.mul(a_inverse, r)]:
                conjugation = False
            if _conjugate(translations[r], m_a) != translations[ctx.mul(a, r)]:
                conjugation = False
    for r in ctx.elements():
        twisted = (d_squares[r] @ translations[r]).scale(i_power(basis.phi_value(r)))
        if _conjugate(translations[r], d_one) != twisted:
            conjugation = False
    checks["conjugation"] = conjugation

    checks["h_squared_identity"] = (h @ h).is_identity()
    checks["generators_unitary"] = all(gen.is_unitary() for gen in group.generators)

    cube = hd_cube_scalar(ctx, basis)
    if cube is None:
        checks["hd_cube"] = False
    elif degree == 1:
        checks["hd_cube"] = cube == ZETA8
    elif degree % 2:
        checks["hd_cube"] = cube ** 4 == -1
    else:
        checks["hd_cube"] = cube ** 4 == 1

    report = collections.OrderedDict([
        ("field", ctx.name),
        ("order", group.order),
        ("expected_order", expected_order(degree, group.with_galois)),
        ("centre_order", len(scalars)),
        ("hd_cube_scalar", cube.to_strings() if cube is not None else None),
        ("checks", checks),
        ("passed", all(checks.values())),
    ])
    if not report["passed"]:
        logger.warning("Structure checks failed for %s: %s",
                       ctx.name, [name for name, ok in checks.items() if not ok])
    return report


def _common_denominator(group):
    common = 1
    for element in group:
        common = common * element.den // math.gcd(common, element.den)
    return common


def _trace_power_classes(group, chunk_size=MOLIEN_CHUNK):
    """
    Counts elements by the traces of their first q powers, which determine the
    characteristic polynomial. Elements are scaled to a common denominator so the
    integer traces can be compared byte for byte.
    :return: (common denominator, Counter of trace bytes)
    """
    common = _common_denominator(group)
    dim = group.dim
    elements = list(group)
    classes = collections.Counter()
    for start in range(0, len(elements), chunk_size):
        batch = elements[start:start + chunk_size]
        data = numpy.stack([element.data.astype(numpy.int64) * (common // element.den) for element in batch],
                           axis=1)
        power = data
        traces = [numpy.trace(power, axis1=2, axis2=3)]
        for _ in range(1, dim):
            power = multiply_coordinates(power, data)
            traces.append(numpy.trace(power, axis1=2, axis2=3))
        per_element = numpy.ascontiguousarray(numpy.stack(traces, axis=2).transpose(1, 2, 0))
        for row in per_element:
            classes[row.tobytes()] += 1
        logger.debug("Traced %s of %s elements", min(start + chunk_size, len(elements)), len(elements))
    return common, classes


def _det_coefficients(power_traces):
    """ Coefficients of det(I - tg) from tr(g^k), k = 1..q, by Newton's identities """
    elementary = [Cyc8(1)]
    for k in range(1, len(power_traces) + 1):
        total = Cyc8()
        for j in range(1, k + 1):
            term = elementary[k - j] * power_traces[j - 1]
            total = total + term if j % 2 else total - term
        elementary.append(total / k)
    return [value if k % 2 == 0 else -value for k, value in enumerate(elementary)]


def _inverse_series(coefficients, max_degree):
    series = [Cyc8(1)]
    for j in range(1, max_degree + 1):
        total = Cyc8()
        for k in range(1, min(j, len(coefficients) - 1) + 1):
            total = total + coefficients[k] * series[j - k]
        series.append(-total)
    return series


def molien(group, max_degree):
    """
    The Molien series (1/|G|) sum_g 1/det(I - tg) up to max_degree, computed exactly:
    elements are grouped by characteristic polynomial and each class contributes
    its multiplicity times the power series of the reciprocal.
    :param group: A closed MatrixGroup.
    :param max_degree: Last coefficient to compute.
    :return: MolienSeries with integer coefficients.
    """
    common, classes = _trace_power_classes(group)
    dim = group.dim
    totals = [Cyc8() for _ in range(max_degree + 1)]
    for raw, count in classes.items():
        values = numpy.frombuffer(raw, dtype=numpy.int64).reshape(dim, 4)
        power_traces = [Cyc8(*[Fraction(int(c), common ** (k + 1)) for c in values[k]]) for k in range(dim)]
        series = _inverse_series(_det_coefficients(power_traces), max_degree)
        for degree in range(max_degree + 1):
            totals[degree] = totals[degree] + series[degree] * count
    logger.debug("Molien sum over %s characteristic polynomial classes", len(classes))

    coeffs = []
    for degree, total in enumerate(totals):
        value = total / group.order
        if not value.is_rational():
            raise GroupClosureException(
                "Molien coefficient at degree {0} is irrational: {1}".format(degree, value))
        value = value.to_rational()
        if value.denominator != 1 or value < 0:
            raise GroupClosureException(
                "Molien coefficient at degree {0} is not a non-negative integer: {1}".format(degree, value))
        coeffs.append(int(value))
    return MolienSeries(max_degree, coeffs, group.order)


def molien_closed_form(numerator, denominator_degrees, max_degree):
    """
    Power series of N(t) / prod(1 - t^d) up to max_degree.
    :param numerator: {degree: coefficient}.
    :param denominator_degrees: Degrees d of the denominator factors.
    :return: List of integer coefficients.
    """
    series = _power_coefficients(numerator, max_degree)
    for step in denominator_degrees:
        for degree in range(step, max_degree + 1):
            series[degree] += series[degree - step]
    return series


def known_molien_coefficients(degree, max_degree, with_galois=False):
    """ Expansion of the closed form known for GF(2^degree) """
    numerator, denominator = KNOWN_MOLIEN_SERIES[(degree, with_galois)]
    return molien_closed_form(numerator, denominator, max_degree)


def multiply_by_denominator(coeffs, denominator_degrees):
    """ Truncated product of a series with prod(1 - t^d), recovering the numerator """
    numerator = list(coeffs)
    for step in denominator_degrees:
        for degree in range(len(numerator) - 1, step - 1, -1):
            numerator[degree] -= numerator[degree - step]
    return numerator


def is_invariant(poly, gens):
    """
    True if the polynomial is fixed by every generator.
    :param poly: SparsePoly in q variables.
    :param gens: MatrixGroup (its generators are used) or list of CycMatrix.
    """
    if isinstance(gens, MatrixGroup):
        gens = gens.generators
    for gen in gens:
        if act_endomorphism(poly, gen) != poly:
            return False
    return True


def _representatives(group, degree):
    """ One element per coset of the scalars c with c^degree = 1 """
    trivial = [value for value in scalar_subgroup(group) if value ** degree == 1]
    seen = set()
    for element in group:
        if element.key in seen:
            continue
        seen.update(element.scale(value).key for value in trivial)
        yield element


def reynolds(poly, group):
    """
    The group average (1/|G|) sum_g g.p. For a homogeneous polynomial of degree n the
    scalars c with c^n = 1 act trivially, so the sum runs over one element per coset.
    """
    elements = list(_representatives(group, poly.degree)) if poly.is_homogeneous() else list(group)
    total = None
    for element in elements:
        image = act_endomorphism(poly, element)
        total = image if total is None else total + image
    return total * Fraction(1, len(elements))
