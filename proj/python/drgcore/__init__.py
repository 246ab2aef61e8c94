"""Exact intersection-array engine for distance-regular graphs."""

import json

from . import _core
from ._core import InfeasibleError, InternalError, ParseError, PreconditionError, UnsupportedError

__all__ = [
    "analyze",
    "triples",
    "enumerate_arrays",
    "build_named",
    "recognize",
    "hom",
    "table",
    "ParseError",
    "PreconditionError",
    "InfeasibleError",
    "UnsupportedError",
    "InternalError",
]


def analyze(array, alpha_range="exclusive"):
    """Feasibility report, spectrum and core verdict for an array like "{6,5,2;1,1,3}"."""
    return json.loads(_core.analyze(array, alpha_range))


def triples(array, e, alpha_range="exclusive"):
    """Witness triples (alpha, beta, gamma) for image diameter e."""
    return _core.triples(array, e, alpha_range)


def enumerate_arrays(diameter, max_k, family="all", jobs=0, alpha_range="exclusive"):
    return [json.loads(s) for s in _core.enumerate(diameter, max_k, family, jobs, alpha_range)]


def build_named(spec):
    """graph6 string for a named family such as "kneser(7,3)"."""
    return _core.build_named(spec)


def recognize(graph, format="graph6"):
    """Intersection array of a graph6 / edge-list / "named:..." graph, or None."""
    return _core.recognize(graph, format)


def hom(x, y, format="graph6", retraction=False, onto=False, timeout=None):
    """Returns (status, map) with status "FOUND", "NONE" or "UNKNOWN"."""
    return _core.hom(x, y, format, retraction, onto, timeout)


def table(records, format="markdown"):
    """Render enumeration records (dicts) as markdown, csv or json-lines."""
    text = "\n".join(json.dumps(r) for r in records)
    return _core.table(text, format)
