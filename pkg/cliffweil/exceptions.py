"""Class for storing exceptions for cliffweil"""


class FieldArithmeticException(Exception):
    """Raised when a finite field or one of its elements is used inconsistently"""


class CodeConstructionException(Exception):
    """Raised when a code cannot be built from the given data"""


class BudgetExceededException(Exception):
    """Raised when a computation would exceed one of the configured budgets"""


class GroupClosureException(Exception):
    """Raised when a matrix group cannot be generated from the given matrices"""


class InvariantComputationException(Exception):
    """Raised when an invariant space or extremality search cannot be carried out"""


class ConfigurationException(Exception):
    """Raised when the run configuration is malformed"""
