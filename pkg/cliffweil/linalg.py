"""
Exact linear algebra: row reduction over GF(2^m), over the rationals, and integer
lattices in Hermite form.
"""
import bisect
import logging

from fractions import Fraction

logger = logging.getLogger(__name__)


def field_rref(rows, ctx):
    """
    Reduced row echelon form over a FieldCtx: leftmost pivots, monic pivot rows,
    eliminated above and below. Zero rows are dropped.
    :param rows: Iterable of rows of integer field encodings.
    :param ctx: The FieldCtx the entries belong to.
    :return: (reduced rows as lists, pivot columns)
    """
    matrix = [list(row) for row in rows]
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        scale = ctx.inverse(matrix[rank][col])
        pivot = [ctx.mul(scale, entry) for entry in matrix[rank]]
        matrix[rank] = pivot
        for r, row in enumerate(matrix):
            factor = row[col]
            if r != rank and factor:
                matrix[r] = [entry ^ ctx.mul(factor, p) for entry, p in zip(row, pivot)]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    return matrix[:rank], pivots


def field_nullspace(rows, ncols, ctx):
    """
    Basis of {x : row . x = 0 for every row} over a FieldCtx, one vector per free column.
    """
    reduced, pivots = field_rref(rows, ctx)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [0] * ncols
        vector[free] = 1
        for row, pivot in zip(reduced, pivots):
            # x_pivot = -row[free] (characteristic 2: no sign)
            vector[pivot] = row[free]
        basis.append(vector)
    return basis


def field_reduce(vector, reduced, pivots, ctx):
    """ Reduces a vector against an RREF basis, the remainder is zero iff it lies in the span """
    vector = list(vector)
    for row, pivot in zip(reduced, pivots):
        factor = vector[pivot]
        if factor:
            vector = [entry ^ ctx.mul(factor, r) for entry, r in zip(vector, row)]
    return vector


def rational_rref(rows):
    """
    Reduced row echelon form over the rationals, same pivoting rules as field_rref.
    :return: (reduced rows of Fractions, pivot columns)
    """
    matrix = [[Fraction(entry) for entry in row] for row in rows]
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        lead = matrix[rank][col]
        pivot = [entry / lead for entry in matrix[rank]]
        matrix[rank] = pivot
        nonzero = [c for c in range(col, ncols) if pivot[c]]
        for r, row in enumerate(matrix):
            factor = row[col]
            if r != rank and factor:
                for c in nonzero:
                    row[c] -= factor * pivot[c]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    return matrix[:rank], pivots


def rational_rank(rows):
    """ Rank over the rationals """
    return len(rational_rref(rows)[1])


def rational_nullspace(rows, ncols):
    """ Basis of the right kernel over the rationals, one vector per free column """
    reduced, pivots = rational_rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[free]
        basis.append(vector)
    return basis


def solve_affine(rows, rhs):
    """
    Solves rows . x = rhs exactly.
    :param rows: Coefficient matrix.
    :param rhs: Right hand side, one entry per row.
    :return: (particular solution, kernel basis) or None when the system is inconsistent.
    """
    if not rows:
        return None
    ncols = len(rows[0])
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = rational_rref(augmented)
    if ncols in pivots:
        return None
    particular = [Fraction(0)] * ncols
    for row, pivot in zip(reduced, pivots):
        particular[pivot] = row[ncols]
    return particular, rational_nullspace(rows, ncols)


def xgcd(a, b):
    """
    Extended Euclid carrying the Bezout coefficients along.
    :return: (x, y, g) with x*a + y*b == g
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        quotient = g // next_g
        x, next_x = next_x, x - quotient * next_x
        y, next_y = next_y, y - quotient * next_y
        g, next_g = next_g, g - quotient * next_g
    return x, y, g


class IntegerLattice(object):
    """
    Integer lattice kept in echelon form: each added vector is reduced against the
    basis with gcd row operations, so the basis stays upper triangular by pivot column.
    """

    def __init__(self, dimension):
        self.dimension = dimension
        self.basis = []
        self.pivots = []
        self._row_of_column = [None] * dimension

    @property
    def rank(self):
        """ Number of basis vectors """
        return len(self.basis)

    def add_vector(self, vector):
        """ Adds a vector (list of ints) to the generating set """
        if len(vector) != self.dimension:
            raise ValueError("Expected a vector of length {0}".format(self.dimension))
        vec = list(vector)
        for col in range(self.dimension):
            if not vec[col]:
                continue
            position = self._row_of_column[col]
            if position is None:
                where = bisect.bisect_left(self.pivots, col)
                self.basis.insert(where, vec)
                self.pivots.insert(where, col)
                for index, pivot in enumerate(self.pivots):
                    self._row_of_column[pivot] = index
                return
            row = self.basis[position]
            a, b = row[col], vec[col]
            if b % a == 0:
                quotient = b // a
                for c in range(col, self.dimension):
                    vec[c] -= quotient * row[c]
            else:
                x, y, g = xgcd(a, b)
                a_g, minus_b_g = a // g, -b // g
                for c in range(col, self.dimension):
                    left, right = row[c], vec[c]
                    row[c] = x * left + y * right
                    vec[c] = minus_b_g * left + a_g * right

    def echelon(self):
        """ Basis rows with positive pivots, sorted by pivot column """
        rows = []
        for row, pivot in zip(self.basis, self.pivots):
            rows.append([-entry for entry in row] if row[pivot] < 0 else list(row))
        return rows


def unimodular_column_reduction(vector):
    """
    Finds a unimodular integer matrix U with vector . U = (g, 0, ..., 0).
    :param vector: List of integers.
    :return: (g, columns of U as lists); columns 1.. span the integer kernel of vector.
    """
    size = len(vector)
    columns = [[1 if i == j else 0 for i in range(size)] for j in range(size)]
    values = list(vector)
    for j in range(1, size):
        a, b = values[0], values[j]
        if b == 0:
            continue
        if a == 0:
            columns[0], columns[j] = columns[j], columns[0]
            values[0], values[j] = b, 0
            continue
        x, y, g = xgcd(a, b)
        first = [x * u + y * v for u, v in zip(columns[0], columns[j])]
        other = [(-b // g) * u + (a // g) * v for u, v in zip(columns[0], columns[j])]
        columns[0], columns[j] = first, other
        values[0], values[j] = g, 0
    if values and values[0] < 0:
        columns[0] = [-u for u in columns[0]]
        values[0] = -values[0]
    return (values[0] if values else 0), columns

