"""Deck hypomorphisms, Tutte-style determinant checks and solid angles of simplicial cones.

Matrices are numpy arrays. Functions that produce reports return dicts with
the same keys as the ``reconlab`` command-line tool.
"""

import functools
import json

from . import _core
from ._core import (
    ReconlabError,
    factor_presentation,
    find_hypomorphism,
    graph6_decode,
    graph6_encode,
    lambda0_search,
    t_of_lambda,
)

__version__ = _core.__version__


def _report(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    return wrapper


verify_hypomorphism = _report(_core.verify_hypomorphism)
verify_tutte_identity = _report(_core.verify_tutte_identity)
verify_lambda_constancy = _report(_core.verify_lambda_constancy)
verify_lowest_eigenspaces = _report(_core.verify_lowest_eigenspaces)
verify_t_agreement = _report(_core.verify_t_agreement)
angle_fraction = _report(_core.angle_fraction)
run_geometry_suite = _report(_core.run_geometry_suite)

__all__ = [
    "ReconlabError",
    "angle_fraction",
    "factor_presentation",
    "find_hypomorphism",
    "graph6_decode",
    "graph6_encode",
    "lambda0_search",
    "run_geometry_suite",
    "t_of_lambda",
    "verify_hypomorphism",
    "verify_lambda_constancy",
    "verify_lowest_eigenspaces",
    "verify_t_agreement",
    "verify_tutte_identity",
]
