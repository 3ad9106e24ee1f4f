"""
Runs the acceptance criteria and writes one JSON report per criterion, a summary and a
metadata file carrying the wall-clock information, so the report payloads are
byte-identical between runs.
"""
import datetime
import json
import logging
import os

from dateutil.tz import tzutc

from cliffweil.codes import construct_shortened_q20, named_code
from cliffweil.criteria import TAG_BIG, default_criteria
from cliffweil.cwg import clifford_weil_group, molien
from cliffweil.exceptions import (
    BudgetExceededException,
    CodeConstructionException,
    FieldArithmeticException,
    GroupClosureException,
    InvariantComputationException,
)
from cliffweil.poly import cwe
from cliffweil.version import __version__

logger = logging.getLogger(__name__)

SCHEMA = "cliffweil/1"

CRITERION_ERRORS = (
    BudgetExceededException,
    CodeConstructionException,
    FieldArithmeticException,
    GroupClosureException,
    InvariantComputationException,
)


def dump_json(payload):
    """ Canonical JSON text of a payload, stamped with the schema version """
    document = dict(payload)
    document["schema"] = SCHEMA
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


class Reproduction(object):
    """
    Executes a selection of acceptance criteria, sharing the expensive intermediate
    results (closed groups, Molien series, enumerators) between them.
    """

    def __init__(self, config, criteria=None, only_tags=None, big=False):
        self.config = config
        self.only_tags = list(only_tags or [])
        self.big = big
        self._criteria = criteria
        self._groups = {}
        self._series = {}
        self._enumerators = {}
        self._shortened = None

    @property
    def criteria(self):
        """ Lazily builds the default criteria """
        if self._criteria is None:
            self._criteria = default_criteria()
        return self._criteria

    def group(self, degree, with_galois=False):
        """ Closed Clifford-Weil group, cached per run """
        if (degree, with_galois) not in self._groups:
            self._groups[(degree, with_galois)] = clifford_weil_group(
                degree, with_galois, self.config.group_cap_for(degree))
        return self._groups[(degree, with_galois)]

    def molien(self, degree, with_galois, max_degree):
        """ Molien series, cached per run and reused for smaller degrees """
        cached = self._series.get((degree, with_galois))
        if cached is None or cached.max_degree < max_degree:
            cached = molien(self.group(degree, with_galois), max_degree)
            self._series[(degree, with_galois)] = cached
        if cached.max_degree == max_degree:
            return cached
        return cached._replace(max_degree=max_degree, coeffs=cached.coeffs[:max_degree + 1])

    def enumerator(self, name):
        """ Complete weight enumerator of a corpus code """
        if name not in self._enumerators:
            self._enumerators[name] = cwe(named_code(name), self.config.codeword_budget, self.config.workers)
        return self._enumerators[name]

    def shortened_construction(self):
        """ The length 16 code built from Q20 """
        if self._shortened is None:
            self._shortened = construct_shortened_q20(self.config.codeword_budget)
        return self._shortened

    def selected(self):
        """ Criteria matching the requested tags; big ones only when asked for """
        return [criterion for criterion in self.criteria
                if criterion.match(self.only_tags) and (self.big or TAG_BIG not in criterion.tags)]

    def run(self):
        """ Executes the selected criteria, recording failures instead of stopping """
        results = []
        for criterion in self.selected():
            logger.info("Running criterion: %s", criterion)
            try:
                result = criterion.execute(self)
            except CRITERION_ERRORS as exc:
                logger.exception("Unable to execute criterion: %s", criterion)
                result = {"criterion": criterion.name, "passed": False, "details": {"error": str(exc)}}
            if result["passed"]:
                logger.info("Criterion passed: %s", criterion.name)
            else:
                logger.warning("Criterion failed: %s", criterion.name)
            results.append(result)
        return results


def summarize(results):
    """ Summary payload: per criterion pass flags, overall flag, first failure """
    failures = [result["criterion"] for result in results if not result["passed"]]
    return {
        "criteria": [{"criterion": result["criterion"], "passed": result["passed"]} for result in results],
        "passed": not failures,
        "first_failure": failures[0] if failures else None,
    }


def write_reports(results, output_dir, started, finished):
    """
    Writes <criterion>.json for every result, summary.json and metadata.json.
    :param started: Aware datetime of the start of the run.
    :param finished: Aware datetime of the end of the run.
    :return: Paths written.
    """
    if not os.path.isdir(output_dir):
        os.makedirs(output_dir)
    paths = []
    documents = [(result["criterion"], result) for result in results]
    documents.append(("summary", summarize(results)))
    for name, payload in documents:
        path = os.path.join(output_dir, "{0}.json".format(name))
        with open(path, "w") as handle:
            handle.write(dump_json(payload))
        paths.append(path)

    metadata = {
        "version": __version__,
        "started": started.isoformat(),
        "finished": finished.isoformat(),
        "criteria": len(results),
    }
    path = os.path.join(output_dir, "metadata.json")
    with open(path, "w") as handle:
        handle.write(dump_json(metadata))
    paths.append(path)
    logger.info("Wrote %s report files to %s", len(paths), output_dir)
    return paths


def now():
    """ Current time in UTC """
    return datetime.datetime.now(tzutc())
