"""Defines the acceptance criteria checked by a reproduction run"""
import collections
import logging

from abc import ABCMeta, abstractmethod

from cliffweil.codes import (
    is_doubly_even,
    is_self_dual,
    min_distance,
    named_code,
    subfield_expand,
    weight_profile,
)
from cliffweil.cwg import (
    clifford_weil_generators,
    expected_order,
    is_invariant,
    known_molien_coefficients,
    multiply_by_denominator,
    verify_structure,
    F8_DENOMINATOR,
    KNOWN_MOLIEN_SERIES,
)
from cliffweil.gf import default_basis, get_field
from cliffweil.invariants import (
    NEGATIVE_COEFF,
    NOT_POWER_OF_TWO,
    check_independence,
    extremal_search,
    product_span_report,
    reproduce_table,
    table_distances,
    unique_extremal_enumerator,
)

logger = logging.getLogger(__name__)

TAG_CODES = "codes"
TAG_GROUP = "group"
TAG_MOLIEN = "molien"
TAG_INVARIANTS = "invariants"
TAG_EXTREMAL = "extremal"
TAG_BIG = "big"

DOUBLY_EVEN_CORPUS = ("Q4", "H8", "Q8", "Q12", "Q20", "Q24", "G24")

EXPECTED_DISTANCES = collections.OrderedDict([("Q4", 3), ("Q8", 4), ("Q12", 6), ("Q20", 8), ("Q24", 8)])

EXPECTED_TABLE = collections.OrderedDict([(4, 3), (8, 4), (12, 6), (16, 6), (20, 8), (24, 8)])

SPAN_DEGREES = (8, 12, 16, 20, 24)


class AcceptanceCriterion(metaclass=ABCMeta):
    """Abstract class defining one reproducible check"""

    def __init__(self, name, tags=None):
        self.name = name
        self.tags = tuple(tags or ())

    # pylint: disable=unused-argument
    @abstractmethod
    def execute(self, context):
        """
        Runs the check.
        :param context: The Reproduction providing configuration and shared computations.
        :return: Result dictionary with the criterion name, a passed flag and details.
        """
        pass

    def match(self, only_tags):
        """
        Convenience function for checking whether the criterion is selected
        :param only_tags: Tags requested on the command line, empty for all.
        :return: True if no tags were requested or the criterion carries one of them.
        """
        return not only_tags or any(tag in self.tags for tag in only_tags)

    def _result(self, passed, details):
        return {"criterion": self.name, "passed": bool(passed), "details": details}

    def __repr__(self):
        return str({"type": self.__class__.__name__, "name": self.name, "tags": list(self.tags)})


class QrDoublyEvenCriterion(AcceptanceCriterion):
    """The extended QR codes of the corpus are doubly-even and self-dual"""

    def __init__(self):
        super(QrDoublyEvenCriterion, self).__init__("qr_doubly_even", [TAG_CODES])

    def execute(self, context):
        details = collections.OrderedDict()
        for name in DOUBLY_EVEN_CORPUS:
            code = named_code(name)
            doubly_even = is_doubly_even(code)
            details[name] = {"self_dual": is_self_dual(code), "doubly_even": doubly_even.holds,
                             "method": doubly_even.method}
        return self._result(all(entry["self_dual"] and entry["doubly_even"] for entry in details.values()),
                            details)


class MinimumDistanceCriterion(AcceptanceCriterion):
    """Minimum distances of the F4 corpus"""

    def __init__(self):
        super(MinimumDistanceCriterion, self).__init__("min_distances", [TAG_CODES])

    def execute(self, context):
        config = context.config
        found = collections.OrderedDict(
            (name, min_distance(named_code(name), config.codeword_budget, config.workers))
            for name in EXPECTED_DISTANCES)
        return self._result(found == EXPECTED_DISTANCES, {"expected": EXPECTED_DISTANCES, "found": found})


class InvarianceCriterion(AcceptanceCriterion):
    """Complete weight enumerators of the corpus are invariant under the matching generators"""

    def __init__(self):
        super(InvarianceCriterion, self).__init__("invariance", [TAG_CODES, TAG_GROUP])

    def execute(self, context):
        details = collections.OrderedDict()
        for name in DOUBLY_EVEN_CORPUS:
            code = named_code(name)
            gens = clifford_weil_generators(code.ctx, default_basis(code.ctx.degree))
            details[name] = is_invariant(context.enumerator(name), gens)
        return self._result(all(details.values()), details)


class GroupOrderCriterion(AcceptanceCriterion):
    """Orders of G1, G2 and G2 with Galois from the closure"""

    CASES = ((1, False), (2, False), (2, True))

    def __init__(self):
        super(GroupOrderCriterion, self).__init__("group_orders", [TAG_GROUP])

    def execute(self, context):
        details = collections.OrderedDict()
        for degree, with_galois in self.CASES:
            label = "F{0}{1}".format(2 ** degree, "+galois" if with_galois else "")
            details[label] = {"order": context.group(degree, with_galois).order,
                              "expected": expected_order(degree, with_galois)}
        return self._result(all(entry["order"] == entry["expected"] for entry in details.values()), details)


class StructureCriterion(AcceptanceCriterion):
    """Structure checks for f = 1 and f = 2"""

    def __init__(self):
        super(StructureCriterion, self).__init__("structure", [TAG_GROUP])

    def execute(self, context):
        reports = collections.OrderedDict(
            (get_field(degree).name, verify_structure(context.group(degree), degree)) for degree in (1, 2))
        return self._result(all(report["passed"] for report in reports.values()), {"reports": reports})


class _MolienCriterion(AcceptanceCriterion):
    """Molien series of one group against its closed form"""

    def __init__(self, name, degree, max_degree, tags):
        super(_MolienCriterion, self).__init__(name, tags)
        self.degree = degree
        self.max_degree = max_degree

    def execute(self, context):
        series = context.molien(self.degree, False, self.max_degree)
        expected = known_molien_coefficients(self.degree, self.max_degree)
        mismatches = [degree for degree, (found, wanted) in enumerate(zip(series.coeffs, expected))
                      if found != wanted]
        return self._result(not mismatches, {
            "order": series.order,
            "coeffs": [str(value) for value in series.coeffs],
            "mismatched_degrees": mismatches,
        })


class MolienG2Criterion(_MolienCriterion):
    """Molien series of G2 through degree 40"""

    def __init__(self):
        super(MolienG2Criterion, self).__init__("molien_g2", 2, 40, [TAG_MOLIEN, TAG_GROUP])


class MolienG1Criterion(_MolienCriterion):
    """Molien series of G1 through degree 32"""

    def __init__(self):
        super(MolienG1Criterion, self).__init__("molien_g1", 1, 32, [TAG_MOLIEN, TAG_GROUP])


class IndependenceCriterion(AcceptanceCriterion):
    """The four generator enumerators are algebraically independent"""

    def __init__(self):
        super(IndependenceCriterion, self).__init__("independence", [TAG_INVARIANTS])

    def execute(self, context):
        report = check_independence([context.enumerator(name) for name in ("Q4", "Q8", "Q12", "Q20")])
        return self._result(report["rank"] == 4, report)


class ProductSpanCriterion(AcceptanceCriterion):
    """Products of the generator enumerators span the invariants up to degree 24"""

    def __init__(self):
        super(ProductSpanCriterion, self).__init__("product_span", [TAG_INVARIANTS])

    def execute(self, context):
        config = context.config
        reports = [product_span_report(degree, config.codeword_budget, config.workers)
                   for degree in SPAN_DEGREES]
        return self._result(all(report["holds"] for report in reports), {"reports": reports})


class GaloisGapCriterion(AcceptanceCriterion):
    """At degree 40 the invariants of G2 exceed those of G2 with Galois by one"""

    def __init__(self):
        super(GaloisGapCriterion, self).__init__("p40", [TAG_MOLIEN, TAG_GROUP])

    def execute(self, context):
        plain = context.molien(2, False, 40).coeffs
        galois = context.molien(2, True, 40).coeffs
        gaps = {str(degree): plain[degree] - galois[degree]
                for degree in range(41) if plain[degree] != galois[degree]}
        return self._result(gaps == {"40": 1},
                            {"gaps": gaps, "dim_40": plain[40], "dim_40_galois": galois[40]})


class ExtremalObstructionCriterion(AcceptanceCriterion):
    """(16, 7) fails by a negative coefficient and (24, 9) by the power of two condition"""

    CASES = ((16, 7, NEGATIVE_COEFF), (24, 9, NOT_POWER_OF_TWO))

    def __init__(self):
        super(ExtremalObstructionCriterion, self).__init__("extremal_obstructions", [TAG_EXTREMAL])

    def execute(self, context):
        details = []
        passed = True
        for n, d, code in self.CASES:
            report = extremal_search(n, d, context.config.degree_cap)
            ok = not report.feasible and code in report.obstruction_codes
            passed = passed and ok
            details.append({"n": n, "d": d, "expected": code, "report": report.to_dict(), "ok": ok})
        return self._result(passed, {"cases": details})


class TableCriterion(AcceptanceCriterion):
    """The n to d table with verified witnesses, and the length 16 witness expanding to QR32"""

    def __init__(self):
        super(TableCriterion, self).__init__("table", [TAG_EXTREMAL, TAG_CODES])

    def execute(self, context):
        config = context.config
        rows = reproduce_table(config.codeword_budget, config.workers, config.degree_cap)
        distances = table_distances(rows)
        witness = context.shortened_construction().code
        expanded = subfield_expand(witness, get_field(1))
        target = weight_profile(named_code("QR32"), config.codeword_budget, config.workers)
        expansion_matches = weight_profile(expanded, config.codeword_budget, config.workers) == target
        witness_ok = is_self_dual(witness) and is_doubly_even(witness).holds
        passed = distances == EXPECTED_TABLE and all(row["verified"] for row in rows)
        return self._result(passed and expansion_matches and witness_ok, {
            "rows": rows,
            "expected": {str(n): d for n, d in EXPECTED_TABLE.items()},
            "s16_self_dual_doubly_even": witness_ok,
            "s16_expansion_matches_qr32": expansion_matches,
        })


class UniquenessCriterion(AcceptanceCriterion):
    """At n = 8 and n = 12 the distance conditions pin down the enumerator"""

    CASES = ((8, 4, "Q8"), (12, 6, "Q12"))

    def __init__(self):
        super(UniquenessCriterion, self).__init__("uniqueness", [TAG_INVARIANTS, TAG_EXTREMAL])

    def execute(self, context):
        details = collections.OrderedDict()
        for n, d, name in self.CASES:
            solution = unique_extremal_enumerator(n, d)
            details[name] = solution is not None and solution == context.enumerator(name)
        return self._result(all(details.values()), details)


class MolienG3Criterion(AcceptanceCriterion):
    """Numerator of the Molien series of G3 after multiplying out the denominator"""

    MAX_DEGREE = 32

    def __init__(self):
        super(MolienG3Criterion, self).__init__("molien_g3", [TAG_MOLIEN, TAG_GROUP, TAG_BIG])

    def execute(self, context):
        series = context.molien(3, False, self.MAX_DEGREE)
        numerator = multiply_by_denominator(series.coeffs, F8_DENOMINATOR)
        known, _ = KNOWN_MOLIEN_SERIES[(3, False)]
        expected = [known.get(degree, 0) for degree in range(self.MAX_DEGREE + 1)]
        return self._result(numerator == expected, {
            "order": series.order,
            "numerator": [str(value) for value in numerator],
        })


def default_criteria():
    """ Every acceptance criterion, in reporting order """
    return [
        QrDoublyEvenCriterion(),
        MinimumDistanceCriterion(),
        InvarianceCriterion(),
        GroupOrderCriterion(),
        StructureCriterion(),
        MolienG2Criterion(),
        MolienG1Criterion(),
        IndependenceCriterion(),
        ProductSpanCriterion(),
        GaloisGapCriterion(),
        ExtremalObstructionCriterion(),
        TableCriterion(),
        UniquenessCriterion(),
        MolienG3Criterion(),
    ]
