"""L-functions of locally constant sheaves over finite fields, in K_1 of truncated power series."""

import json as _json
from fractions import Fraction

from . import _core
from ._core import NclError

__all__ = ["NclError", "error_code", "point_counts", "closed_points", "zeta", "l_function", "verify", "k1", "report_version"]

report_version = _core.report_version


def error_code(err):
    """The error kind of an NclError, e.g. "PNotInvertible"."""
    return str(err).split(":", 1)[0]


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def point_counts(scheme, q=0, n=6):
    """N_1..N_n for "builtin:NAME" (with q) or a scheme dict/JSON."""
    return list(_core.point_counts(_text(scheme), q, n))


def closed_points(scheme, q=0, max_deg=3):
    return _json.loads(_core.closed_points(_text(scheme), q, max_deg))


def zeta(counts, num_deg=None, den_deg=None):
    """Rational Z(T) from point counts; returns (num, den, pretty) with Fraction coefficients low-to-high."""
    if (num_deg is None) != (den_deg is None):
        raise ValueError("give both degree bounds or neither")
    out = _json.loads(_core.zeta_reconstruct(list(counts), -1 if num_deg is None else num_deg,
                                             -1 if den_deg is None else den_deg))
    return [Fraction(c) for c in out["num"]], [Fraction(c) for c in out["den"]], out["pretty"]


def l_function(job, m=0):
    """Report dict for the Euler product of a job (dict, JSON text or path)."""
    return _json.loads(_core.l_function(_text(job), m))


def verify(job, m=0, methods=()):
    return _json.loads(_core.verify(_text(job), m, list(methods)))


def k1(ring, matrix):
    return _json.loads(_core.k1(_text(ring), _text(matrix)))
