"""JSON encodings of laws, isomorphisms and series.

Ring elements are written as strings in the expression language; indices,
exponents and bounds are plain integers.
"""

from __future__ import annotations

import json

from .expr import parse_expr
from .ftl import FTL, StrictIso
from .rings import ring_from_tag
from .series import TruncSeries


class FormatError(ValueError):
    pass


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    v = obj[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise FormatError(f"field {key!r} must be an integer")
    if kind is not int and not isinstance(v, kind):
        raise FormatError(f"field {key!r} must be of type {kind.__name__}")
    return v


def _ring(obj):
    try:
        return ring_from_tag(_require(obj, "ring", str))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None


def ftl_to_json(F: FTL) -> dict:
    ring = F.ring
    coeffs = [{"l": l, "i": i, "j": j, "k": k, "c": ring.fmt(F.coeff(l, i, j, k))}
              for (l, i, j, k) in F.representatives()]
    return {"ring": ring.tag, "degree_bound": F.degree_bound, "exact": F.exact, "coeffs": coeffs}


def ftl_from_json(obj) -> FTL:
    ring = _ring(obj)
    exact = obj.get("exact", True)
    if not isinstance(exact, bool):
        raise FormatError("field 'exact' must be a boolean")
    precision = None
    if not exact:
        precision = _require(obj, "degree_bound", int)
    table = {}
    for entry in _require(obj, "coeffs", list):
        key = tuple(_require(entry, n, int) for n in ("l", "i", "j", "k"))
        c = parse_expr(_require(entry, "c", str), ring)
        if key in table and table[key] != c:
            raise FormatError(f"conflicting entries for {key}")
        table[key] = c
    return FTL(ring, table, precision)


def iso_to_json(theta: StrictIso) -> dict:
    ring = theta.ring
    s = theta.theta
    return {"ring": ring.tag, "bound": s.bound,
            "coeffs": [{"k": k, "c": ring.fmt(c)} for (k,), c in s.items()]}


def iso_from_json(obj) -> StrictIso:
    ring = _ring(obj)
    bound = obj.get("bound")
    if bound is not None and (isinstance(bound, bool) or not isinstance(bound, int)):
        raise FormatError("field 'bound' must be an integer or null")
    terms = {}
    for entry in _require(obj, "coeffs", list):
        terms[(_require(entry, "k", int),)] = parse_expr(_require(entry, "c", str), ring)
    return StrictIso(TruncSeries(ring, ("x",), terms, bound), strict=False)


def series_to_json(f: TruncSeries) -> dict:
    ring = f.ring
    return {"ring": ring.tag, "vars": list(f.vars), "weights": list(f.weights), "bound": f.bound,
            "terms": [{"exps": list(e), "c": ring.fmt(c)} for e, c in f.items()]}


def series_from_json(obj) -> TruncSeries:
    ring = _ring(obj)
    vars = _require(obj, "vars", list)
    weights = obj.get("weights")
    terms = {}
    for entry in _require(obj, "terms", list):
        terms[tuple(_require(entry, "exps", list))] = parse_expr(_require(entry, "c", str), ring)
    return TruncSeries(ring, vars, terms, obj.get("bound"), weights)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


__all__ = ["FormatError", "ftl_to_json", "ftl_from_json", "iso_to_json", "iso_from_json",
           "series_to_json", "series_from_json", "dumps"]
