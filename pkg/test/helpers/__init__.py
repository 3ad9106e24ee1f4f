"""
Helper functions for tests
"""
import json
import os
import tempfile

from cliffweil.poly import SparsePoly


def poly(nvars, mapping):
    """ SparsePoly from {exponent tuple: coefficient} """
    return SparsePoly.from_exponents(nvars, mapping)


def variables(nvars):
    """ The variables x_0 ... x_{nvars-1} """
    return [SparsePoly.variable(nvars, index) for index in range(nvars)]


def write_json(payload, directory=None):
    """ Writes a payload to a temporary JSON file and returns its path """
    handle, path = tempfile.mkstemp(suffix=".json", dir=directory)
    with os.fdopen(handle, "w") as stream:
        json.dump(payload, stream)
    return path


# x0^4 + x1^4 + x_w^4 + x_w2^4 + 12 x0 x1 x_w x_w2
Q4_CWE_TERMS = {
    (4, 0, 0, 0): 1,
    (0, 4, 0, 0): 1,
    (0, 0, 4, 0): 1,
    (0, 0, 0, 4): 1,
    (1, 1, 1, 1): 12,
}

# Extended Hamming [8, 4, 4]
H8_CWE_TERMS = {(8, 0): 1, (4, 4): 14, (0, 8): 1}
