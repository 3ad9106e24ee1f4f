"""
Homogeneous invariants of the Clifford-Weil group for f = 1, 2 and the extremality
search over F4: which complete weight enumerators of doubly-even self-dual codes of
length n can have minimum distance d.

The invariants of degree n are found in two steps. The subgroup K generated by d_1,
m_alpha (and Frobenius) acts on monomials with phases, so its invariants are spanned
by orbit sums s_j. For p = sum_j v_j s_j the remaining generator h is imposed through
one equation per orbit: the coefficient of h.p at the orbit representative x^a_i must
equal v_i. Since h is self-adjoint for the Fischer inner product <x^a, x^b> = a! delta_ab,
that coefficient is read off h.x^a_i, summed over the members of each orbit j and
weighted by a_j! / a_i!, so only one expansion per orbit is needed. The kernel of this
square system is the invariant space.
"""
import collections
import functools
import itertools
import logging
import math

from fractions import Fraction

from cliffweil.codes import construct_shortened_q20, min_distance, named_code
from cliffweil.config import DEFAULT_CODEWORD_BUDGET, DEFAULT_DEGREE_CAP
from cliffweil.cwg import character_matrix, clifford_weil_group, galois_gen, gen_d, gen_m, reynolds
from cliffweil.cyclotomic import i_power
from cliffweil.exceptions import BudgetExceededException, InvariantComputationException
from cliffweil.gf import default_basis, get_field, primitive_element
from cliffweil.linalg import (
    IntegerLattice,
    rational_nullspace,
    rational_rank,
    rational_rref,
    solve_affine,
    unimodular_column_reduction,
)
from cliffweil.poly import SparsePoly, cwe, pack

logger = logging.getLogger(__name__)

NEGATIVE_COEFF = "NEGATIVE_COEFF"
NON_INTEGRAL = "NON_INTEGRAL"
NOT_DIV3 = "NOT_DIV3"
WRONG_TOTAL = "WRONG_TOTAL"
NOT_POWER_OF_TWO = "NOT_POWER_OF_TWO"
DISTANCE_TOO_SMALL = "DISTANCE_TOO_SMALL"
NO_SOLUTION = "NO_SOLUTION"

JACOBIAN_POINT = (1, 2, 3, 5, 7, 11, 13, 17)

# the algebra generators of the F4 invariants below degree 40
F4_GENERATORS = ("Q4", "Q8", "Q12", "Q20")

# lengths of the extremality table and the code attaining each entry
TABLE_WITNESSES = collections.OrderedDict([
    (4, "Q4"),
    (8, "Q8"),
    (12, "Q12"),
    (16, "S16"),
    (20, "Q20"),
    (24, "Q24"),
])


class InvariantBasis(object):
    """Echelonized basis of the degree-n invariants, leading coefficients 1"""

    def __init__(self, field_degree, degree, with_galois, polys):
        self.field_degree = field_degree
        self.degree = degree
        self.with_galois = with_galois
        self.polys = polys

    @property
    def dimension(self):
        """ Number of basis polynomials """
        return len(self.polys)

    def to_dict(self):
        """ JSON form """
        return {
            "field": get_field(self.field_degree).name,
            "degree": self.degree,
            "with_galois": self.with_galois,
            "dimension": self.dimension,
            "basis": [poly.to_dict() for poly in self.polys],
        }

    def __repr__(self):
        return "InvariantBasis(F{0}, degree={1}, dim={2})".format(
            2 ** self.field_degree, self.degree, self.dimension)


class ExtremalReport(object):
    """Outcome of the extremality search at one (n, d)"""

    def __init__(self, n, d, feasible, candidates=None, obstructions=None):
        self.n = n
        self.d = d
        self.feasible = feasible
        self.candidates = candidates or []
        self.obstructions = obstructions or []

    @property
    def obstruction_codes(self):
        """ Distinct obstruction codes in the order they were found """
        codes = []
        for obstruction in self.obstructions:
            if obstruction["code"] not in codes:
                codes.append(obstruction["code"])
        return codes

    @property
    def subcode_dimensions(self):
        """ m with p(1,1,0,0) = 2^m for every candidate """
        return classify_rational_subcodes(self)

    def to_dict(self):
        """ JSON form """
        return {
            "n": self.n,
            "d": self.d,
            "feasible": self.feasible,
            "candidates": [poly.to_dict() for poly in self.candidates],
            "subcode_dimensions": self.subcode_dimensions,
            "obstructions": self.obstructions,
        }

    def __repr__(self):
        return str({"n": self.n, "d": self.d, "feasible": self.feasible,
                    "candidates": len(self.candidates), "obstructions": self.obstruction_codes})


def _obstruction(code, detail, condition=None):
    entry = {"code": code, "detail": detail}
    if condition:
        entry["condition"] = condition
    return entry


def _monomials(nvars, degree):
    """ Exponent tuples of the given total degree in descending lexicographic order """
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - first):
            yield (first,) + rest


def _monomial_generators(ctx, with_galois):
    """ The generators of K as (images, i-phase exponents) acting on variables """
    basis = default_basis(ctx.degree)
    generators = []
    for matrix in (gen_d(ctx.element(1), basis), gen_m(ctx.element(primitive_element(ctx)))):
        images, factors = matrix.monomial_form()
        generators.append((images, [_i_exponent(factor) for factor in factors]))
    if with_galois and ctx.degree > 1:
        images, _ = galois_gen(ctx).monomial_form()
        generators.append((images, [0] * ctx.order))
    return generators


def _i_exponent(value):
    for exponent in range(4):
        if value == i_power(exponent):
            return exponent
    raise InvariantComputationException("{0} is not a power of i".format(value))


def _act_on_monomial(exponents, generator):
    images, phases = generator
    moved = [0] * len(exponents)
    phase = 0
    for index, exponent in enumerate(exponents):
        if exponent:
            moved[images[index]] += exponent
            phase += exponent * phases[index]
    return tuple(moved), phase % 4


def _invariant_orbits(nvars, degree, generators):
    """
    Orbits of degree-n monomials under K on which K acts trivially, each given by its
    members with the largest monomial first. Orbits where some element fixes a monomial
    with a nontrivial phase have zero orbit sum and are dropped.
    """
    visited = set()
    orbits = []
    for rep in _monomials(nvars, degree):
        if rep in visited:
            continue
        phases = {rep: 0}
        queue = collections.deque([rep])
        conflict = False
        while queue:
            current = queue.popleft()
            for generator in generators:
                image, phase = _act_on_monomial(current, generator)
                total = (phases[current] + phase) % 4
                if image in phases:
                    conflict = conflict or phases[image] != total
                    continue
                phases[image] = total
                queue.append(image)
        visited.update(phases)
        if conflict:
            continue
        if any(phases.values()):
            raise InvariantComputationException("Orbit of {0} carries non-rational coefficients".format(rep))
        orbits.append([rep] + sorted((member for member in phases if member != rep), reverse=True))
    return orbits


def _factorial(exponents):
    result = 1
    for exponent in exponents:
        result *= math.factorial(exponent)
    return result


@functools.lru_cache(maxsize=None)
def invariant_space(field_degree, degree, with_galois=False, degree_cap=DEFAULT_DEGREE_CAP):
    """
    Basis of the homogeneous degree-n invariants of the Clifford-Weil group over
    GF(2^f), f in {1, 2}, optionally together with the Galois permutation.
    :param field_degree: f.
    :param degree: n.
    :param with_galois: Add the Frobenius permutation to the group.
    :param degree_cap: Largest degree allowed, BudgetExceededException above it.
    :return: InvariantBasis, echelonized with leading coefficients 1.
    """
    if field_degree not in (1, 2):
        raise InvariantComputationException("Invariant spaces are only computed over F2 and F4")
    if degree > degree_cap:
        raise BudgetExceededException("Degree {0} exceeds the degree cap of {1}".format(degree, degree_cap))
    ctx = get_field(field_degree)
    nvars = ctx.order
    if degree == 0:
        return InvariantBasis(field_degree, 0, with_galois, [SparsePoly.constant(nvars, 1)])
    if degree % (4 * (3 - field_degree)):
        return InvariantBasis(field_degree, degree, with_galois, [])

    orbits = _invariant_orbits(nvars, degree, _monomial_generators(ctx, with_galois))
    orbit_of = {}
    for index, orbit in enumerate(orbits):
        for member in orbit:
            orbit_of[pack(member)] = index
    factorials = [_factorial(orbit[0]) for orbit in orbits]
    logger.debug("Degree %s over %s: %s K-invariant orbit sums", degree, ctx.name, len(orbits))

    forms = [SparsePoly.linear_form(row) for row in character_matrix(ctx).tolist()]
    powers = {}

    def form_power(index, exponent):
        if (index, exponent) not in powers:
            powers[(index, exponent)] = (form_power(index, exponent - 1) * forms[index]
                                         if exponent else SparsePoly.constant(nvars, 1))
        return powers[(index, exponent)]

    scale = Fraction(1, 2 ** (field_degree * degree // 2))
    size = len(orbits)
    system = []
    for i, orbit in enumerate(orbits):
        factors = sorted((form_power(index, exponent) for index, exponent in enumerate(orbit[0]) if exponent),
                         key=lambda poly: len(poly.terms))
        image = functools.reduce(lambda left, right: left * right, factors)
        sums = [0] * size
        for key, coefficient in image.terms.items():
            j = orbit_of.get(key)
            if j is not None:
                sums[j] += coefficient
        system.append([scale * sums[j] * Fraction(factorials[j], factorials[i]) - (1 if i == j else 0)
                       for j in range(size)])

    kernel = rational_nullspace(system, size)
    reduced, _ = rational_rref(kernel)
    polys = []
    for row in reduced:
        terms = {}
        for j, coefficient in enumerate(row):
            if coefficient:
                for member in orbits[j]:
                    terms[member] = coefficient
        polys.append(SparsePoly.from_exponents(nvars, terms))
    logger.info("Invariants of degree %s over %s%s: dimension %s", degree, ctx.name,
                " with Galois" if with_galois else "", len(polys))
    return InvariantBasis(field_degree, degree, with_galois, polys)


def reynolds_cross_check(field_degree, degree, group=None):
    """
    Recomputes the degree-n invariants as the span of Reynolds images and compares it
    with invariant_space. One monomial per K-orbit suffices: the other members of an
    orbit have the same image, and orbits with a phase conflict average to zero.
    Averaging runs over the whole group, so this is meant for n <= 12 over F4.
    :param field_degree: f.
    :param degree: n.
    :param group: Closed MatrixGroup, by default the Clifford-Weil group over GF(2^f).
    :return: Report dictionary with both dimensions and an "agrees" flag.
    """
    group = group if group is not None else clifford_weil_group(field_degree)
    ctx = get_field(field_degree)
    basis = invariant_space(field_degree, degree, group.with_galois)
    orbits = _invariant_orbits(ctx.order, degree, _monomial_generators(ctx, group.with_galois))
    images = [reynolds(SparsePoly.from_exponents(ctx.order, {orbit[0]: 1}), group) for orbit in orbits]
    images = [image for image in images if not image.is_zero()]
    rank = rational_rank(_coefficient_rows(images)) if images else 0
    joint = rational_rank(_coefficient_rows(images + basis.polys)) if images or basis.polys else 0
    report = collections.OrderedDict([
        ("field", ctx.name),
        ("degree", degree),
        ("with_galois", group.with_galois),
        ("dimension", basis.dimension),
        ("reynolds_rank", rank),
        ("agrees", rank == basis.dimension == joint),
    ])
    if not report["agrees"]:
        logger.warning("Reynolds images disagree with the invariant basis: %s", report)
    return report


def _determinant(matrix):
    """ Laplace expansion along the first row """
    if len(matrix) == 1:
        return matrix[0][0]
    total = None
    for column, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [row[:column] + row[column + 1:] for row in matrix[1:]]
        term = entry * _determinant(minor)
        if column % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else matrix[0][0] * 0


def _symbolic_rank(matrix):
    """ Size of the largest nonvanishing minor of a matrix of SparsePolys """
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    for size in range(min(rows, cols), 0, -1):
        for row_set in itertools.combinations(range(rows), size):
            for col_set in itertools.combinations(range(cols), size):
                minor = [[matrix[r][c] for c in col_set] for r in row_set]
                if not _determinant(minor).is_zero():
                    return size
    return 0


def check_independence(polys, point=None):
    """
    Rank of the Jacobian of a list of polynomials; full rank certifies algebraic
    independence. The rank is taken at a fixed rational point first and, if it is
    deficient there, from the minors of the symbolic Jacobian.
    :param polys: SparsePolys in the same variables.
    :param point: Evaluation point, (1, 2, 3, 5, ...) by default.
    :return: {"rank", "point_rank", "method", "independent"}
    """
    nvars = polys[0].nvars
    point = tuple(point or JACOBIAN_POINT[:nvars])
    jacobian = [[poly.derivative(index) for index in range(nvars)] for poly in polys]
    numeric = [[entry.evaluate(point) for entry in row] for row in jacobian]
    point_rank = rational_rank(numeric)
    rank, method = point_rank, "point"
    if point_rank < min(len(polys), nvars):
        logger.warning("Jacobian rank %s at %s is deficient, computing symbolic minors", point_rank, point)
        rank, method = _symbolic_rank(jacobian), "symbolic"
    return {"rank": rank, "point_rank": point_rank, "method": method, "independent": rank == len(polys)}


@functools.lru_cache(maxsize=None)
def generator_enumerators(budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """ cwe of Q4, Q8, Q12 and Q20 """
    return collections.OrderedDict((name, cwe(named_code(name), budget, workers)) for name in F4_GENERATORS)


def _exponent_vectors(degrees, total):
    if not degrees:
        if total == 0:
            yield ()
        return
    for exponent in range(total // degrees[0], -1, -1):
        for rest in _exponent_vectors(degrees[1:], total - exponent * degrees[0]):
            yield (exponent,) + rest


def _coefficient_rows(polys):
    keys = sorted(set().union(*[poly.terms for poly in polys]), reverse=True) if polys else []
    return [[poly.terms.get(key, 0) for key in keys] for poly in polys]


def product_span_report(degree, budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """
    Compares the products of the four generator enumerators of total degree n with the
    invariant space of degree n.
    :return: Report dictionary; "holds" is True iff the products span the space.
    """
    enumerators = generator_enumerators(budget, workers)
    degrees = [poly.degree for poly in enumerators.values()]
    products = []
    exponents = list(_exponent_vectors(degrees, degree))
    for vector in exponents:
        product = SparsePoly.constant(4, 1)
        for exponent, poly in zip(vector, enumerators.values()):
            if exponent:
                product = product * poly ** exponent
        products.append(product)
    basis = invariant_space(2, degree).polys
    rows = _coefficient_rows(products + basis)
    product_rank = rational_rank(rows[:len(products)]) if products else 0
    total_rank = rational_rank(rows) if rows else 0
    holds = product_rank == total_rank == len(basis)
    return {
        "degree": degree,
        "dimension": len(basis),
        "products": [dict(zip(enumerators, vector)) for vector in exponents],
        "product_rank": product_rank,
        "combined_rank": total_rank,
        "holds": holds,
    }


def product_span_check(degree, budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """ True iff the generator products of degree n span the invariants of degree n """
    return product_span_report(degree, budget, workers)["holds"]


def _is_divisibility_shape(exponents):
    """ x0^a x1^b x_w^b x_w2^b with b > 0 """
    return exponents[1] > 0 and exponents[1] == exponents[2] == exponents[3]


def _power_of_two_exponent(value):
    if value <= 0 or value & (value - 1):
        return None
    return value.bit_length() - 1


def check_conditions(poly, n, d):
    """
    Evaluates the conditions a) to e) on a candidate enumerator of length n over F4:
    a) non-negative integer coefficients, b) coefficients of x0^a (x1 x_w x_w2)^b with
    b > 0 divisible by 3, c) p(1,1,1,1) = 2^n, d) p(1,1,0,0) = 2^m with m <= n/2,
    e) p(1,x,x,x) = 1 + O(x^d).
    :return: List of obstruction dictionaries, empty when every condition holds.
    """
    failures = []
    coefficients = [coefficient for _, coefficient in poly.items()]
    if any(coefficient < 0 for coefficient in coefficients):
        failures.append(_obstruction(NEGATIVE_COEFF, "{0} negative coefficients".format(
            sum(1 for coefficient in coefficients if coefficient < 0)), "a"))
    if any(Fraction(coefficient).denominator != 1 for coefficient in coefficients):
        failures.append(_obstruction(NON_INTEGRAL, "fractional coefficients", "a"))

    shaped = [(exponents, coefficient) for exponents, coefficient in poly.items()
              if _is_divisibility_shape(exponents) and Fraction(coefficient) % 3]
    if shaped:
        failures.append(_obstruction(NOT_DIV3, "coefficient {1} of {0} is not divisible by 3".format(
            *shaped[0]), "b"))

    total = poly.evaluate((1, 1, 1, 1))
    if total != 2 ** n:
        failures.append(_obstruction(WRONG_TOTAL, "p(1,1,1,1) = {0}, expected 2^{1}".format(total, n), "c"))

    rational = poly.evaluate((1, 1, 0, 0))
    exponent = _power_of_two_exponent(int(rational)) if Fraction(rational).denominator == 1 else None
    if exponent is None or exponent > n // 2:
        failures.append(_obstruction(NOT_POWER_OF_TWO, "p(1,1,0,0) = {0}".format(rational), "d"))

    hamming = poly.hamming_specialize()
    low = [hamming[w] if w < len(hamming) else 0 for w in range(d)]
    if low[:1] != [1] or any(low[1:]):
        failures.append(_obstruction(DISTANCE_TOO_SMALL, "p(1,x,x,x) starts {0}".format(
            [str(value) for value in low]), "e"))
    return failures


def solve_extremal_conditions(basis, n, d):
    """
    Solves the linear conditions on p = sum s_j B_j: the coefficient of x0^n is 1 and
    p(1,x,x,x) has no terms of degree 1 to d-1.
    :return: (particular SparsePoly, list of direction SparsePolys) or None if inconsistent.
    """
    if not basis:
        return None
    hamming = [poly.hamming_specialize() for poly in basis]
    rows = [[poly.coefficient((n, 0, 0, 0)) for poly in basis]]
    for weight in range(1, d):
        rows.append([values[weight] if weight < len(values) else 0 for values in hamming])
    solution = solve_affine(rows, [1] + [0] * (d - 1))
    if solution is None:
        return None
    particular, kernel = solution

    def combine(vector):
        total = SparsePoly(basis[0].nvars)
        for coefficient, poly in zip(vector, basis):
            if coefficient:
                total = total + poly * coefficient
        return total

    return combine(particular), [combine(vector) for vector in kernel]


def unique_extremal_enumerator(n, d):
    """ The solution of the linear extremality conditions if it is a single polynomial """
    solution = solve_extremal_conditions(invariant_space(2, n).polys, n, d)
    if solution is None or solution[1]:
        return None
    return solution[0]


def integral_solution_lattice(particular, directions, divisible_by_three=True):
    """
    The parameters u for which particular + sum u_j directions has integral coefficients
    (and, optionally, coefficients of the condition b) shape divisible by 3) form a
    translated lattice. Each monomial gives a row (a_m, alpha_m) that must pair to an
    integer with (u, 1); the Hermite form H of the scaled rows turns this into
    H y = delta k with k integral, solved from the bottom up.
    :return: (offset SparsePoly, list of step SparsePolys) so that the admissible
        polynomials are offset + sum k_i steps_i for integral k, or None if there are none.
    """
    size = len(directions)
    keys = sorted(set(particular.terms).union(*[poly.terms for poly in directions]), reverse=True)
    rows = []
    for key in keys:
        row = [Fraction(poly.terms.get(key, 0)) for poly in directions]
        row.append(Fraction(particular.terms.get(key, 0)))
        if divisible_by_three and _is_divisibility_shape(particular.exponents(key)):
            row = [entry / 3 for entry in row]
        rows.append(row)
    delta = 1
    for row in rows:
        for entry in row:
            delta = delta * entry.denominator // math.gcd(delta, entry.denominator)
    lattice = IntegerLattice(size + 1)
    for row in rows:
        lattice.add_vector([int(entry * delta) for entry in row])
    if lattice.pivots != list(range(size + 1)):
        raise InvariantComputationException("Coefficient rows of the solution space are degenerate")
    hermite = lattice.echelon()
    if hermite[size][size] % delta:
        return None

    # affine forms over (1, k_0, ..., k_{size-1}); y_size = 1
    solution = [None] * (size + 1)
    solution[size] = [Fraction(1)] + [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        form = [Fraction(0)] * (size + 1)
        form[i + 1] = Fraction(delta)
        for j in range(i + 1, size + 1):
            for position in range(size + 1):
                form[position] -= hermite[i][j] * solution[j][position]
        solution[i] = [entry / hermite[i][i] for entry in form]

    def combine(position):
        total = particular if position == 0 else SparsePoly(particular.nvars)
        for form, poly in zip(solution[:size], directions):
            if form[position]:
                total = total + poly * form[position]
        return total

    return combine(0), [combine(position) for position in range(1, size + 1)]


def _integer_interval(constraints):
    """
    Integers t with c + f t >= 0 for every (c, f).
    :return: (low, high), or None if empty.
    """
    low, high = None, None
    for constant, factor in constraints:
        if factor > 0:
            bound = math.ceil(Fraction(-constant, 1) / factor)
            low = bound if low is None else max(low, bound)
        elif factor < 0:
            bound = math.floor(Fraction(constant, 1) / -factor)
            high = bound if high is None else min(high, bound)
        elif constant < 0:
            return None
    if low is None or high is None:
        raise InvariantComputationException("Non-negativity does not bound the solution set")
    return (low, high) if low <= high else None


def _nonnegative_points(offset, steps):
    """ Integer t for which offset + sum t_i steps_i has non-negative coefficients """
    keys = sorted(set(offset.terms).union(*[poly.terms for poly in steps]), reverse=True)
    constraints = [(offset.terms.get(key, 0), [poly.terms.get(key, 0) for poly in steps]) for key in keys]
    if not steps:
        if all(constant >= 0 for constant, _ in constraints):
            yield offset
        return
    if len(steps) == 1:
        interval = _integer_interval([(constant, factors[0]) for constant, factors in constraints])
        for t in range(interval[0], interval[1] + 1) if interval else ():
            yield offset + steps[0] * t
        return
    if len(steps) > 2:
        raise InvariantComputationException(
            "Solution sets of dimension {0} are not enumerated".format(len(steps)))

    # Fourier-Motzkin elimination of the second parameter
    eliminated = [(constant, factors[0]) for constant, factors in constraints if factors[1] == 0]
    for upper in (entry for entry in constraints if entry[1][1] > 0):
        for lower in (entry for entry in constraints if entry[1][1] < 0):
            weight_upper, weight_lower = -lower[1][1], upper[1][1]
            eliminated.append((weight_upper * upper[0] + weight_lower * lower[0],
                               weight_upper * upper[1][0] + weight_lower * lower[1][0]))
    interval = _integer_interval(eliminated)
    for first in range(interval[0], interval[1] + 1) if interval else ():
        inner = _integer_interval([(constant + factors[0] * first, factors[1])
                                   for constant, factors in constraints])
        for second in range(inner[0], inner[1] + 1) if inner else ():
            yield offset + steps[0] * first + steps[1] * second


def extremal_search(n, d, degree_cap=DEFAULT_DEGREE_CAP):
    """
    Decides whether an invariant of degree n over F4 can be the complete weight
    enumerator of a doubly-even self-dual code with minimum distance at least d.
    The linear conditions are solved exactly; integrality and condition b) are imposed
    through a lattice; p(1,1,0,0) being a power of two fixes residues of the lattice
    parameters; the remaining slices are bounded by non-negativity and enumerated.
    :return: ExtremalReport listing every surviving candidate or the obstructions.
    """
    if n <= 0 or n % 4:
        return ExtremalReport(n, d, False, obstructions=[
            _obstruction(NO_SOLUTION, "no doubly-even self-dual codes of length {0}".format(n))])
    basis = invariant_space(2, n, degree_cap=degree_cap).polys
    solution = solve_extremal_conditions(basis, n, d)
    if solution is None:
        return ExtremalReport(n, d, False, obstructions=[
            _obstruction(NO_SOLUTION,
                         "no invariant of degree {0} satisfies the distance conditions".format(n))])
    particular, directions = solution
    logger.debug("Extremal search (%s, %s): %s free parameters", n, d, len(directions))

    if not directions:
        failures = check_conditions(particular, n, d)
        report = ExtremalReport(n, d, not failures, [] if failures else [particular], failures)
        logger.info("Extremal search %s", report)
        return report

    lattice = integral_solution_lattice(particular, directions)
    if lattice is None:
        code = NOT_DIV3 if integral_solution_lattice(particular, directions, False) else NO_SOLUTION
        return ExtremalReport(n, d, False, obstructions=[
            _obstruction(code, "no integral parameters satisfy the coefficient conditions")])
    offset, steps = lattice

    point = (1, 1, 0, 0)
    base_value = int(offset.evaluate(point))
    slopes = [int(step.evaluate(point)) for step in steps]
    divisor = functools.reduce(math.gcd, slopes, 0)
    reachable = [m for m in range(n // 2 + 1)
                 if ((2 ** m - base_value) % divisor == 0 if divisor else 2 ** m == base_value)]
    if not reachable:
        return ExtremalReport(n, d, False, obstructions=[_obstruction(
            NOT_POWER_OF_TWO,
            "p(1,1,0,0) = {0} + {1}.k is {0} mod {2}, never a power of 2".format(base_value, slopes, divisor),
            "d")])

    points = []
    for m in reachable:
        if divisor:
            _, columns = unimodular_column_reduction(slopes)
            shift = (2 ** m - base_value) // divisor
            start = [entry * shift for entry in columns[0]]
            kernel = columns[1:]
        else:
            start = [0] * len(steps)
            kernel = [[1 if i == j else 0 for i in range(len(steps))] for j in range(len(steps))]
        slice_offset = offset
        for coefficient, step in zip(start, steps):
            if coefficient:
                slice_offset = slice_offset + step * coefficient
        slice_steps = []
        for column in kernel:
            direction = SparsePoly(offset.nvars)
            for coefficient, step in zip(column, steps):
                if coefficient:
                    direction = direction + step * coefficient
            slice_steps.append(direction)
        points.extend(_nonnegative_points(slice_offset, slice_steps))

    candidates, obstructions = [], []
    for poly in points:
        failures = check_conditions(poly, n, d)
        if failures:
            seen = {entry["code"] for entry in obstructions}
            obstructions.extend(entry for entry in failures if entry["code"] not in seen)
        else:
            candidates.append(poly)
    candidates.sort(key=lambda poly: poly.evaluate(point))
    if not candidates and not obstructions:
        obstructions.append(_obstruction(
            NEGATIVE_COEFF, "every admissible parameter gives a negative coefficient", "a"))
    report = ExtremalReport(n, d, bool(candidates), candidates, [] if candidates else obstructions)
    logger.info("Extremal search %s", report)
    return report


def classify_rational_subcodes(report):
    """ m with p(1,1,0,0) = 2^m for each candidate, the dimension of its binary subcode """
    return [_power_of_two_exponent(int(poly.evaluate((1, 1, 0, 0)))) for poly in report.candidates]


def _witness_code(name, budget):
    if name == "S16":
        return construct_shortened_q20(budget).code
    return named_code(name)


def reproduce_table(budget=DEFAULT_CODEWORD_BUDGET, workers=1, degree_cap=DEFAULT_DEGREE_CAP):
    """
    For every length of the table: the minimum distance of the witness code, a check
    that its enumerator satisfies every condition at that distance, and the extremal
    search one step further, which must be infeasible.
    :param degree_cap: Largest degree the extremal search may reach.
    :return: List of row dictionaries.
    """
    rows = []
    for n, name in TABLE_WITNESSES.items():
        code = _witness_code(name, budget)
        distance = min_distance(code, budget, workers)
        enumerator = cwe(code, budget, workers)
        lower = check_conditions(enumerator, n, distance)
        upper = extremal_search(n, distance + 1, degree_cap)
        row = collections.OrderedDict([
            ("n", n),
            ("d", distance),
            ("witness", name),
            ("witness_conditions", lower),
            ("next_distance_obstructions", upper.obstruction_codes),
            ("verified", not lower and not upper.feasible),
        ])
        if not row["verified"]:
            logger.warning("Table entry n=%s not verified: %s", n, row)
        rows.append(row)
    return rows


def table_distances(rows):
    """ {n: d} from reproduce_table rows """
    return collections.OrderedDict((row["n"], row["d"]) for row in rows)
