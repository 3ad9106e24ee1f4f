"""
Run configuration for cliffweil: resource budgets, output format and parallelism,
read from the environment and overridden from the command line.
"""
import logging
import os

from cliffweil.exceptions import ConfigurationException

logger = logging.getLogger(__name__)

ENV_BUDGETS = "CLIFFWEIL_BUDGETS"
ENV_WORKERS = "CLIFFWEIL_WORKERS"
ENV_FORMAT = "CLIFFWEIL_FORMAT"

DEFAULT_CODEWORD_BUDGET = 2 ** 32
DEFAULT_DEGREE_CAP = 40
DEFAULT_TERM_CAP = 10 ** 7
SMALL_FIELD_GROUP_CAP = 10 ** 4
F8_GROUP_CAP = 3 * 10 ** 5

OUTPUT_FORMATS = ("json", "text")

# budget tag -> RunConfig attribute
BUDGET_KEYS = {
    "codewords": "codeword_budget",
    "group_cap": "group_cap",
    "degree_cap": "degree_cap",
    "term_cap": "term_cap",
}


def group_cap_for(degree):
    """
    Default closure cap for the Clifford-Weil group over GF(2^degree)
    :param degree: The field degree f.
    :return: Maximal number of group elements the closure may produce.
    """
    return SMALL_FIELD_GROUP_CAP if degree <= 2 else F8_GROUP_CAP


def budget_tags_to_dict(budget_tags):
    """
    Converts a list of "key:value" budget tags into a dictionary
    :param budget_tags: Iterable of strings such as "codewords:65536", may be None.
    :return: Dictionary of tag names to (string) values.
    """
    try:
        return dict(entry.strip().split(':', 1) for entry in budget_tags or [] if entry.strip())
    except ValueError:
        raise ConfigurationException("Budget tags must look like key:value, got {0}".format(budget_tags))


def _parse_positive_int(name, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigurationException("{0} must be an integer, got {1!r}".format(name, value))
    if number <= 0:
        raise ConfigurationException("{0} must be positive, got {1}".format(name, number))
    return number


def budget_overrides(budget_tags, source="budget"):
    """
    Parses "key:value" budget tags into RunConfig settings
    :param budget_tags: Iterable of strings such as "codewords:65536".
    :param source: Name used in error messages.
    :return: Dictionary of RunConfig attribute names to positive integers.
    """
    settings = {}
    for key, value in budget_tags_to_dict(budget_tags).items():
        if key not in BUDGET_KEYS:
            raise ConfigurationException("Unknown budget in {0}: {1}".format(source, key))
        settings[BUDGET_KEYS[key]] = _parse_positive_int(key, value)
    return settings


class RunConfig(object):
    """Resource budgets and presentation options shared by every command"""

    def __init__(self, output_format="json", codeword_budget=DEFAULT_CODEWORD_BUDGET,
                 group_cap=None, degree_cap=DEFAULT_DEGREE_CAP, term_cap=DEFAULT_TERM_CAP,
                 workers=None, output_dir=None):
        if output_format not in OUTPUT_FORMATS:
            raise ConfigurationException("Unknown output format: {0}".format(output_format))
        self.output_format = output_format
        self.codeword_budget = codeword_budget
        self.group_cap = group_cap
        self.degree_cap = degree_cap
        self.term_cap = term_cap
        self.workers = workers if workers is not None else (os.cpu_count() or 1)
        self.output_dir = output_dir

    def group_cap_for(self, degree):
        """ Explicit group cap if one was configured, otherwise the per-field default """
        return self.group_cap if self.group_cap is not None else group_cap_for(degree)

    def as_dict(self):
        """ Plain dictionary view, used for logging and reports """
        return {
            "output_format": self.output_format,
            "codeword_budget": self.codeword_budget,
            "group_cap": self.group_cap,
            "degree_cap": self.degree_cap,
            "term_cap": self.term_cap,
            "workers": self.workers,
            "output_dir": self.output_dir,
        }

    def __repr__(self):
        return str(self.as_dict())


def load_run_config(environ=None, overrides=None):
    """
    Builds the run configuration. Explicit overrides beat environment variables,
    which beat the defaults.
    :param environ: Mapping to read the CLIFFWEIL_* variables from, defaults to os.environ.
    :param overrides: Mapping of RunConfig attribute names to values; None values are ignored.
    :return: A RunConfig.
    """
    environ = os.environ if environ is None else environ
    settings = {}

    raw_budgets = environ.get(ENV_BUDGETS)
    if raw_budgets:
        settings.update(budget_overrides(raw_budgets.split(","), ENV_BUDGETS))

    if environ.get(ENV_WORKERS):
        settings["workers"] = _parse_positive_int(ENV_WORKERS, environ[ENV_WORKERS])

    if environ.get(ENV_FORMAT):
        settings["output_format"] = environ[ENV_FORMAT]

    for key, value in (overrides or {}).items():
        if value is not None:
            settings[key] = value

    config = RunConfig(**settings)
    logger.debug("Run configuration: %s", config)
    return config
