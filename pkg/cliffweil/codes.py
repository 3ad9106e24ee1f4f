"""
Linear codes over GF(2^f): canonical generator matrices, duals, doubly-even checks,
quadratic-residue constructions, codeword enumeration and the derived codes
(subfield expansion, rational subcodes, shortening) used for the extremality table.
"""
import collections
import functools
import itertools
import logging
import math

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy
from sympy import isprime, n_order

from cliffweil.config import DEFAULT_CODEWORD_BUDGET
from cliffweil.exceptions import BudgetExceededException, CodeConstructionException, FieldArithmeticException
from cliffweil.gf import (
    default_basis,
    find_sc_basis,
    get_embedding,
    get_field,
    parse_field,
    primitive_element,
)
from cliffweil.linalg import field_nullspace, field_reduce, field_rref

logger = logging.getLogger(__name__)

# The inner enumeration table holds at most 2**INNER_BLOCK_BITS codewords.
INNER_BLOCK_BITS = 16
# Codes with at most this many words are checked with phi on every codeword.
EXHAUSTIVE_PHI_LIMIT = 2 ** 20
# Composition keys below this bound are counted with bincount, above it with unique.
BINCOUNT_KEY_LIMIT = 2 ** 22
# Below this many codewords enumeration always runs in-process.
PARALLEL_THRESHOLD = 2 ** 22

DoublyEvenResult = collections.namedtuple("DoublyEvenResult", ["holds", "witness", "method"])

ShortenedConstruction = collections.namedtuple(
    "ShortenedConstruction", ["code", "positions", "adjoined", "candidates_tried"]
)

# name -> (field degree, prime) of the extended quadratic-residue codes in the corpus
QR_CORPUS = collections.OrderedDict([
    ("Q4", (2, 3)),
    ("Q8", (2, 7)),
    ("Q12", (2, 11)),
    ("Q20", (2, 19)),
    ("Q24", (2, 23)),
    ("H8", (1, 7)),
    ("G24", (1, 23)),
    ("QR32", (1, 31)),
])


class LinearCode(object):
    """A linear code of length n over a FieldCtx, stored by its reduced generator matrix"""

    def __init__(self, ctx, n, rows=()):
        rows = [list(row) for row in rows]
        for row in rows:
            if len(row) != n:
                raise CodeConstructionException("Row {0} does not have length {1}".format(row, n))
            for entry in row:
                ctx.check(entry)
        reduced, pivots = field_rref(rows, ctx)
        self.ctx = ctx
        self.n = n
        self.gens = tuple(tuple(row) for row in reduced)
        self.pivots = tuple(pivots)

    @property
    def k(self):
        """ Dimension """
        return len(self.gens)

    @property
    def q(self):
        """ Size of the alphabet """
        return self.ctx.order

    @property
    def size(self):
        """ Number of codewords, q^k """
        return self.q ** self.k

    def contains(self, vector):
        """ True if the vector is a codeword """
        if len(vector) != self.n:
            return False
        remainder = field_reduce(vector, self.gens, self.pivots, self.ctx)
        return not any(remainder)

    def combination(self, coefficients):
        """ The codeword sum(coefficients[j] * gens[j]) """
        word = [0] * self.n
        for coefficient, row in zip(coefficients, self.gens):
            if coefficient:
                word = [w ^ self.ctx.mul(coefficient, r) for w, r in zip(word, row)]
        return word

    def to_dict(self):
        """ JSON form: field name, length, dimension and generator rows """
        return {
            "field": self.ctx.name,
            "n": self.n,
            "k": self.k,
            "gens": [list(row) for row in self.gens],
        }

    @classmethod
    def from_dict(cls, data):
        """ Inverse of to_dict; extra keys are ignored """
        try:
            ctx = parse_field(data["field"])
            code = cls(ctx, int(data["n"]), data.get("gens", []))
        except (KeyError, TypeError, ValueError, FieldArithmeticException) as exc:
            raise CodeConstructionException("Malformed code description: {0}".format(exc))
        if "k" in data and int(data["k"]) != code.k:
            raise CodeConstructionException("Generator rows have rank {0}, expected {1}".format(
                code.k, data["k"]))
        return code

    def __eq__(self, other):
        return isinstance(other, LinearCode) and (self.ctx, self.n, self.gens) == (
            other.ctx, other.n, other.gens)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.ctx, self.n, self.gens))

    def __repr__(self):
        return "LinearCode({0}, n={1}, k={2})".format(self.ctx.name, self.n, self.k)


class WeightProfile(object):
    """Hamming weight distribution of a code"""

    def __init__(self, n, dist):
        self.n = n
        self.dist = {int(weight): int(count) for weight, count in dist.items() if count}

    def count(self, weight):
        """ A_weight """
        return self.dist.get(weight, 0)

    @property
    def total(self):
        """ Number of codewords """
        return sum(self.dist.values())

    def min_distance(self):
        """ Least nonzero weight """
        weights = [weight for weight in self.dist if weight > 0]
        if not weights:
            raise CodeConstructionException("The zero code has no minimum distance")
        return min(weights)

    def as_list(self):
        """ [A_0, ..., A_n] """
        return [self.count(weight) for weight in range(self.n + 1)]

    def to_dict(self):
        """ JSON form with string keys """
        return {"n": self.n, "dist": {str(weight): self.dist[weight] for weight in sorted(self.dist)}}

    def __eq__(self, other):
        return isinstance(other, WeightProfile) and (self.n, self.dist) == (other.n, other.dist)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "WeightProfile({0})".format(self.as_list())


def zero_code(ctx, n):
    """ The zero code of length n """
    return LinearCode(ctx, n)


def full_space(ctx, n):
    """ The whole space F^n """
    return LinearCode(ctx, n, [[1 if i == j else 0 for i in range(n)] for j in range(n)])


def all_ones(n):
    """ The all-ones vector """
    return [1] * n


def inner_product(left, right, ctx):
    """ Standard bilinear form sum(u_i v_i) """
    total = 0
    for u, v in zip(left, right):
        total ^= ctx.mul(u, v)
    return total


def elementary_symmetric(vector, ctx):
    """
    First and second elementary symmetric functions of the entries of a vector.
    :return: (sum c_i, sum_{i<j} c_i c_j)
    """
    first, second = 0, 0
    for entry in vector:
        second ^= ctx.mul(first, entry)
        first ^= entry
    return first, second


def dual(code):
    """ The dual code with respect to sum(c_i v_i) """
    if code.k == 0:
        return full_space(code.ctx, code.n)
    return LinearCode(code.ctx, code.n, field_nullspace(code.gens, code.n, code.ctx))


def is_self_orthogonal(code):
    """ C is contained in its dual """
    return all(inner_product(left, right, code.ctx) == 0
               for left, right in itertools.combinations_with_replacement(code.gens, 2))


def is_self_dual(code):
    """ C equals its dual """
    return 2 * code.k == code.n and is_self_orthogonal(code)


def _xor_rows(left, right):
    return [a ^ b for a, b in zip(left, right)]


def is_doubly_even(code, basis=None, exhaustive_limit=EXHAUSTIVE_PHI_LIMIT):
    """
    Decides whether every codeword is annihilated by the first two elementary symmetric
    functions. Small codes are checked by phi on every codeword (phi vanishes on the code
    iff it is doubly-even); larger codes by the generator rows and their pairwise sums.
    :param code: A LinearCode.
    :param basis: Self-complementary basis over GF(2) defining phi, the pinned one by default.
    :param exhaustive_limit: Largest code size checked exhaustively.
    :return: DoublyEvenResult(holds, witness codeword or None, method)
    """
    if code.k == 0:
        return DoublyEvenResult(True, None, "phi")
    if code.size <= exhaustive_limit and code.q <= 256:
        basis = basis or default_basis(code.ctx.degree)
        witness = _phi_witness(code, basis)
        return DoublyEvenResult(witness is None, witness, "phi")

    for row in code.gens:
        if elementary_symmetric(row, code.ctx) != (0, 0):
            return DoublyEvenResult(False, list(row), "generators")
    for left, right in itertools.combinations(code.gens, 2):
        word = _xor_rows(left, right)
        if elementary_symmetric(word, code.ctx) != (0, 0):
            return DoublyEvenResult(False, word, "generators")
    return DoublyEvenResult(True, None, "generators")


def _check_budget(code, budget):
    if code.size > budget:
        raise BudgetExceededException("Enumerating {0} needs {1} codewords, budget is {2}".format(
            code, code.size, budget))


def _split(code):
    """ Number of generator rows handled by the inner table """
    per_row = max(1, INNER_BLOCK_BITS // code.ctx.degree)
    return min(code.k, per_row)


def _inner_table(ctx, n, rows):
    # lexicographic over the rows' coefficients, first row slowest
    table = numpy.zeros((1, n), dtype=numpy.uint8)
    mul = ctx.mul_table
    for row in reversed(rows):
        row_array = numpy.array(row, dtype=numpy.uint8)
        table = numpy.concatenate([table ^ mul[coefficient][row_array] for coefficient in range(ctx.order)])
    return table


def _prefix(ctx, n, outer_rows, index):
    prefix = numpy.zeros(n, dtype=numpy.uint8)
    mul = ctx.mul_table
    for row in reversed(outer_rows):
        index, digit = divmod(index, ctx.order)
        if digit:
            prefix ^= mul[digit][row]
    return prefix


def _blocks(ctx, n, gens, start=0, stop=None):
    """ Yields blocks of codewords in lexicographic message order """
    split = min(len(gens), max(1, INNER_BLOCK_BITS // ctx.degree))
    outer_rows = [numpy.array(row, dtype=numpy.uint8) for row in gens[:len(gens) - split]]
    table = _inner_table(ctx, n, gens[len(gens) - split:])
    stop = ctx.order ** len(outer_rows) if stop is None else stop
    for index in range(start, stop):
        yield table ^ _prefix(ctx, n, outer_rows, index)


def codeword_blocks(code, budget=DEFAULT_CODEWORD_BUDGET):
    """
    All codewords as numpy uint8 blocks, in lexicographic order of their messages.
    :param code: A LinearCode over a field with at most 256 elements.
    :param budget: Largest number of codewords allowed.
    """
    _check_budget(code, budget)
    return _blocks(code.ctx, code.n, code.gens)


def codewords(code, budget=DEFAULT_CODEWORD_BUDGET):
    """ All codewords as lists, in lexicographic order of their messages """
    for block in codeword_blocks(code, budget):
        for word in block.tolist():
            yield word


def _phi_witness(code, basis):
    phi_table = numpy.array(basis.phi_table, dtype=numpy.int64)
    for block in codeword_blocks(code):
        residues = phi_table[block].sum(axis=1) % 4
        failing = numpy.flatnonzero(residues)
        if failing.size:
            return block[failing[0]].tolist()
    return None


def _composition_base(n):
    return n + 1


def _count_range(task):
    """ Worker: reduce the codewords of one outer range to weight or composition counts """
    degree, n, gens, start, stop, mode = task
    ctx = get_field(degree)
    base = _composition_base(n)
    key_space = base ** (ctx.order - 1)
    weights = numpy.zeros(n + 1, dtype=numpy.int64)
    compositions = numpy.zeros(key_space, dtype=numpy.int64) if key_space <= BINCOUNT_KEY_LIMIT else None
    counter = collections.Counter()
    for block in _blocks(ctx, n, gens, start, stop):
        if mode == "weights":
            weights += numpy.bincount(numpy.count_nonzero(block, axis=1), minlength=n + 1)
            continue
        keys = numpy.zeros(block.shape[0], dtype=numpy.int64)
        for symbol in range(1, ctx.order):
            keys = keys * base + numpy.count_nonzero(block == symbol, axis=1)
        if compositions is not None:
            compositions += numpy.bincount(keys, minlength=key_space)
        else:
            values, counts = numpy.unique(keys, return_counts=True)
            counter.update(dict(zip(values.tolist(), counts.tolist())))
    if mode == "weights":
        return weights
    if compositions is not None:
        nonzero = numpy.flatnonzero(compositions)
        return collections.Counter(dict(zip(nonzero.tolist(), compositions[nonzero].tolist())))
    return counter


def _reduce_codewords(code, mode, budget, workers):
    _check_budget(code, budget)
    split = _split(code)
    outer = code.q ** (code.k - split)
    gens = [list(row) for row in code.gens]
    if workers and workers > 1 and code.size >= PARALLEL_THRESHOLD and outer > 1:
        step = int(math.ceil(outer / float(workers * 4)))
        tasks = [(code.ctx.degree, code.n, gens, start, min(start + step, outer), mode)
                 for start in range(0, outer, step)]
        logger.debug("Enumerating %s codewords of %s in %s tasks on %s workers",
                     code.size, code, len(tasks), workers)
        with ProcessPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(_count_range, tasks))
    else:
        logger.debug("Enumerating %s codewords of %s in-process", code.size, code)
        partials = [_count_range((code.ctx.degree, code.n, gens, 0, outer, mode))]

    if mode == "weights":
        return functools.reduce(lambda left, right: left + right, partials)
    total = collections.Counter()
    for partial in partials:
        total.update(partial)
    return total


def weight_profile(code, budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """
    Exact Hamming weight distribution by enumeration.
    :param code: A LinearCode.
    :param budget: Largest number of codewords allowed, BudgetExceededException above it.
    :param workers: Number of processes to spread the enumeration over.
    :return: WeightProfile
    """
    counts = _reduce_codewords(code, "weights", budget, workers)
    return WeightProfile(code.n, dict(enumerate(counts.tolist())))


def min_distance(code, budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """ Least weight of a nonzero codeword """
    return weight_profile(code, budget, workers).min_distance()


def composition_counts(code, budget=DEFAULT_CODEWORD_BUDGET, workers=1):
    """
    Number of codewords with each composition.
    :return: dict mapping (count of symbol 0, count of symbol 1, ...) to multiplicity.
    """
    base = _composition_base(code.n)
    counts = {}
    for key, multiplicity in _reduce_codewords(code, "composition", budget, workers).items():
        composition = []
        for _ in range(code.q - 1):
            key, digit = divmod(key, base)
            composition.append(digit)
        composition.reverse()
        counts[tuple([code.n - sum(composition)] + composition)] = multiplicity
    return counts


def extended_qr(ctx, p):
    """
    The extended quadratic-residue code of length p + 1 over ctx.
    The generator polynomial is the product of (X - zeta^a) over the nonzero squares a
    mod p, with zeta = g^((2^k - 1)/p) for the least primitive element g of GF(2^k) and
    k = lcm(f, order of 2 mod p). The parity coordinate is appended last.
    :param ctx: Base field.
    :param p: An odd prime.
    :return: LinearCode of dimension (p + 1)/2.
    """
    if p < 3 or not isprime(p):
        raise CodeConstructionException("{0} is not an odd prime".format(p))
    if p % 8 in (3, 5) and ctx.degree % 2:
        raise CodeConstructionException(
            "p = {0} is +-3 mod 8, which needs a field of even degree, got {1}".format(p, ctx.name))

    order = n_order(2, p)
    ext_degree = ctx.degree * order // math.gcd(ctx.degree, order)
    embedding = get_embedding(ctx.degree, ext_degree)
    ext = embedding.ext
    zeta = ext.power(primitive_element(ext), (ext.order - 1) // p)

    squares = sorted({(a * a) % p for a in range(1, p)})
    generator = [1]
    for exponent in squares:
        root = ext.power(zeta, exponent)
        # multiply by (X + root), coefficients lowest degree first
        shifted = [0] + generator
        scaled = [ext.mul(root, c) for c in generator] + [0]
        generator = [a ^ b for a, b in zip(shifted, scaled)]
    try:
        generator = [embedding.restrict(c) for c in generator]
    except FieldArithmeticException:
        raise CodeConstructionException("Generator polynomial of QR({0}, {1}) is not over {0}".format(
            ctx.name, p))

    rows = []
    for shift in range(p - len(generator) + 1):
        row = [0] * shift + generator + [0] * (p - shift - len(generator))
        parity = 0
        for entry in row:
            parity ^= entry
        rows.append(row + [parity])
    code = LinearCode(ctx, p + 1, rows)
    logger.info("Constructed extended QR code over %s for p = %s: %s", ctx.name, p, code)
    return code


@functools.lru_cache(maxsize=None)
def qr_code(degree, p):
    """ Cached extended QR code over GF(2^degree) """
    return extended_qr(get_field(degree), p)


def named_code(name):
    """ One of the corpus codes by name (Q4, Q8, ..., H8, G24, QR32) """
    try:
        degree, p = QR_CORPUS[name]
    except KeyError:
        raise CodeConstructionException("Unknown code: {0}".format(name))
    return qr_code(degree, p)


def expand_vector(vector, basis):
    """ Concatenated coordinates of each entry over the basis """
    expanded = []
    for entry in vector:
        expanded.extend(basis.coordinates(entry))
    return expanded


def subfield_expand(code, subctx, basis=None):
    """
    The length e*n code over the subfield obtained by expanding every coordinate over a
    self-complementary basis of the field over the subfield.
    """
    ctx = code.ctx
    if basis is None:
        basis = find_sc_basis(ctx, get_embedding(subctx.degree, ctx.degree))
    if basis.ctx != ctx or basis.sub != subctx:
        raise CodeConstructionException("Basis {0} does not expand {1} over {2}".format(
            basis, ctx.name, subctx.name))
    rows = []
    for row in code.gens:
        for b in basis.values:
            rows.append(expand_vector([ctx.mul(b, entry) for entry in row], basis))
    return LinearCode(subctx, code.n * len(basis.values), rows)


def rational_subcode(code, subctx):
    """
    Codewords with every entry in the subfield, as a code over the subfield.
    Writes a codeword as sum mu_jt b_t G_j with mu over the subfield and solves
    Tr((c_i^q' + c_i) b_s) = 0 for all coordinates i and basis elements b_s.
    """
    ctx = code.ctx
    if subctx == ctx:
        return code
    embedding = get_embedding(subctx.degree, ctx.degree)
    basis = find_sc_basis(ctx, embedding)
    unknowns = []
    for row in code.gens:
        for b in basis.values:
            unknowns.append([ctx.mul(b, entry) for entry in row])

    equations = []
    for i in range(code.n):
        for b in basis.values:
            equations.append([
                embedding.restrict(embedding.relative_trace(
                    ctx.mul(ctx.frobenius(word[i], subctx.degree) ^ word[i], b)))
                for word in unknowns
            ])
    rows = []
    for solution in field_nullspace(equations, len(unknowns), subctx):
        word = [0] * code.n
        for mu, vector in zip(solution, unknowns):
            if mu:
                scale = embedding.embed(mu)
                word = [w ^ ctx.mul(scale, v) for w, v in zip(word, vector)]
        rows.append([embedding.restrict(entry) for entry in word])
    return LinearCode(subctx, code.n, rows)


def tensor_extend(code, ctx):
    """ F (x) C for a code C over a subfield of ctx """
    embedding = get_embedding(code.ctx.degree, ctx.degree)
    return LinearCode(ctx, code.n, [[embedding.embed(entry) for entry in row] for row in code.gens])


def frobenius_image(code, k=1):
    """ Entry-wise image of the code under a -> a^(2^k) """
    ctx = code.ctx
    return LinearCode(ctx, code.n, [[ctx.frobenius(entry, k) for entry in row] for row in code.gens])


def shorten(code, positions):
    """ Codewords vanishing on positions, with those coordinates deleted """
    positions = sorted(set(positions))
    if any(not 0 <= position < code.n for position in positions):
        raise CodeConstructionException("Positions {0} out of range for length {1}".format(positions, code.n))
    if not positions:
        return code
    system = [[row[position] for row in code.gens] for position in positions]
    kept = [i for i in range(code.n) if i not in set(positions)]
    rows = []
    for coefficients in field_nullspace(system, code.k, code.ctx) if code.k else []:
        word = code.combination(coefficients)
        rows.append([word[i] for i in kept])
    return LinearCode(code.ctx, len(kept), rows)


def adjoin(code, vector):
    """ span(C and v); the dimension must grow """
    if code.contains(vector):
        raise CodeConstructionException("{0} already lies in {1}".format(vector, code))
    return LinearCode(code.ctx, code.n, list(code.gens) + [list(vector)])


def krawtchouk(j, i, n, q):
    """ K_j(i) for length n over an alphabet of size q """
    return sum((-1) ** s * (q - 1) ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s)
               for s in range(j + 1))


def macwilliams_transform(profile, q, k):
    """
    Weight distribution of the dual: B_j = q^-k sum_i A_i K_j(i).
    :param profile: WeightProfile of a code of dimension k over an alphabet of size q.
    """
    size = q ** k
    dist = {}
    for j in range(profile.n + 1):
        value = Fraction(sum(count * krawtchouk(j, weight, profile.n, q)
                             for weight, count in profile.dist.items()), size)
        if value.denominator != 1 or value < 0:
            raise CodeConstructionException("{0} is not the weight profile of a code of dimension {1}".format(
                profile, k))
        dist[j] = int(value)
    return WeightProfile(profile.n, dist)


@functools.lru_cache(maxsize=None)
def construct_shortened_q20(budget=DEFAULT_CODEWORD_BUDGET):
    """
    Builds a doubly-even self-dual [16, 8, 6] code over F4 from Q20: shorten on four
    coordinates (subsets in lexicographic order), adjoin the all-ones vector, then adjoin
    weight-8 binary words of the dual (ascending lexicographic order); the first
    candidate that is doubly-even, self-dual and has minimum distance 6 is returned.
    :return: ShortenedConstruction
    """
    q20 = named_code("Q20")
    binary = get_field(1)
    ones = all_ones(16)
    tried = 0
    for positions in itertools.combinations(range(q20.n), 4):
        short = shorten(q20, positions)
        if short.k != q20.k - 4 or short.contains(ones):
            continue
        base = adjoin(short, ones)
        binary_dual = rational_subcode(dual(base), binary)
        words = sorted(tuple(word) for word in codewords(binary_dual, budget) if sum(word) == 8)
        for word in words:
            if base.contains(word):
                continue
            tried += 1
            candidate = adjoin(base, word)
            if not is_self_dual(candidate) or not is_doubly_even(candidate).holds:
                continue
            if min_distance(candidate, budget) != 6:
                continue
            logger.info("Shortened Q20 on %s and adjoined %s after %s candidates", positions, word, tried)
            return ShortenedConstruction(candidate, positions, list(word), tried)
    raise CodeConstructionException("No doubly-even self-dual [16, 8, 6] code found from Q20")
