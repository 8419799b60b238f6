"""Python access to the sdcert exact-arithmetic routines.

Rational arguments are accepted as ints or "p/q" strings. Structured results
are returned as plain dicts and lists.
"""

import json

from . import _core
from ._core import BudgetExceeded, VerificationError, critical_values, resolve_threads

__all__ = [
    "BudgetExceeded",
    "VerificationError",
    "critical_values",
    "cover_scan",
    "detect_sliding",
    "exact_s",
    "exact_s_naive",
    "pell",
    "residual_scan",
    "resolve_threads",
    "seven_gap",
    "trapezoid",
    "verify",
    "witness",
]


def exact_s(q):
    return json.loads(_core.exact_s(q))


def exact_s_naive(q):
    return json.loads(_core.exact_s_naive(q))


def detect_sliding(q):
    return json.loads(_core.detect_sliding(q))


def witness(q, eps="1/17", mode="reduction"):
    return json.loads(_core.witness(q, str(eps), mode))


def verify(certificate):
    if not isinstance(certificate, str):
        certificate = json.dumps(certificate)
    return _core.verify(certificate)


def seven_gap():
    return _core.seven_gap()


def pell(count):
    return json.loads(_core.pell(count))


def trapezoid(o, a, b, w):
    lhs, rhs, equal = _core.trapezoid(tuple(o), tuple(a), tuple(b), tuple(w))
    return {"lhs": lhs, "rhs": json.loads(rhs), "equal": equal}


def cover_scan(x_max, eps="1/17", threads=0):
    return json.loads(_core.cover_scan(x_max, str(eps), threads))


def residual_scan(qs, threads=0):
    return json.loads(_core.residual_scan([str(q) for q in qs], threads))
