"""Python front end to the C++ library; inputs and reports are JSON."""

import json

from . import _core
from ._core import InvalidInput, PreconditionViolation, Unsupported, schema_version

__all__ = ["analyze", "critical", "verify", "gaudin", "InvalidInput", "PreconditionViolation", "Unsupported",
           "schema_version"]


def _encode(problem):
    return problem if isinstance(problem, str) else json.dumps(problem)


def _call(fn, problem, **options):
    text, code = fn(_encode(problem), **options)
    return json.loads(text), code


def analyze(arrangement):
    """Returns (report, exit_code) for an arrangement given as a dict or JSON string."""
    return _call(_core.analyze, arrangement)


def critical(arrangement, **options):
    return _call(_core.critical, arrangement, **options)


def verify(arrangement, **options):
    return _call(_core.verify, arrangement, **options)


def gaudin(problem, **options):
    return _call(_core.gaudin, problem, **options)
