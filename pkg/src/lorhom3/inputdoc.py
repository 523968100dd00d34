"""Parsing and emission of the JSON input documents.

Rationals travel as integers or "p/q" strings so that no float ever
contaminates the exact core; floats in exact fields are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .exactlin import vec
from .liealg import LieAlgebra, validate
from .metric import InvariantMetric
from .isotropy import HomogeneousModel


class InputError(ValueError):
    """Malformed input document; the message names the failing field."""


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError("%s: boolean is not a rational" % where)
    if isinstance(value, float):
        raise InputError("%s: floats are rejected in exact fields; write the "
                         "value as an integer or 'p/q' string" % where)
    try:
        q = Fraction(value)
    except (ValueError, TypeError) as exc:
        raise InputError("%s: cannot parse rational %r (%s)" % (where, value, exc))
    except ZeroDivisionError:
        raise InputError("%s: zero denominator in %r" % (where, value))
    return q


def _split_pair_key(key: str, names: list, where: str):
    if "," in key:
        a, b = key.split(",", 1)
        a, b = a.strip(), b.strip()
        if a in names and b in names:
            return names.index(a), names.index(b)
        raise InputError("%s: unknown basis names in %r" % (where, key))
    hits = []
    for a in names:
        if key.startswith(a) and key[len(a):] in names:
            hits.append((names.index(a), names.index(key[len(a):])))
    if len(hits) == 1:
        return hits[0]
    if not hits:
        raise InputError("%s: metric key %r does not split into two basis names "
                         "%s" % (where, key, names))
    raise InputError("%s: metric key %r is ambiguous; use 'A,B'" % (where, key))


def parse_document(doc: dict):
    """Returns (algebra, metric, model-or-None)."""
    if not isinstance(doc, dict):
        raise InputError("document root must be a JSON object")
    dim = doc.get("dimension")
    if dim not in (3, 4):
        raise InputError("dimension: must be 3 or 4, got %r" % (dim,))
    names = doc.get("basis")
    if not isinstance(names, list) or len(names) != dim:
        raise InputError("basis: need %d names" % dim)
    names = [str(x) for x in names]
    if len(set(names)) != dim:
        raise InputError("basis: names must be distinct")

    brackets = {}
    for k, item in enumerate(doc.get("brackets", [])):
        where = "brackets[%d]" % k
        on = item.get("on")
        if not isinstance(on, list) or len(on) != 2:
            raise InputError("%s.on: need two basis names" % where)
        try:
            i, j = names.index(on[0]), names.index(on[1])
        except ValueError:
            raise InputError("%s.on: unknown basis name in %r" % (where, on))
        if i == j:
            raise InputError("%s.on: repeated basis name" % where)
        out = [Fraction(0)] * dim
        for name, val in (item.get("result") or {}).items():
            if name not in names:
                raise InputError("%s.result: unknown basis name %r" % (where, name))
            out[names.index(name)] = parse_rational(val, "%s.result[%s]" % (where, name))
        if i < j:
            key, vecout = (i, j), out
        else:
            key, vecout = (j, i), [-x for x in out]
        if key in brackets:
            raise InputError("%s: duplicate bracket for %s" % (where, on))
        brackets[key] = vecout

    algebra = LieAlgebra(dim, brackets, names)

    gram = [[Fraction(0)] * dim for _ in range(dim)]
    seen = set()
    for key, val in (doc.get("metric") or {}).items():
        i, j = _split_pair_key(str(key), names, "metric")
        q = parse_rational(val, "metric[%s]" % key)
        pair = (min(i, j), max(i, j))
        if pair in seen and gram[i][j] != q:
            raise InputError("metric[%s]: conflicting duplicate entry" % key)
        gram[i][j] = gram[j][i] = q
        seen.add(pair)
    metric = InvariantMetric(gram)

    model = None
    mblock = doc.get("model")
    if dim == 4:
        if not isinstance(mblock, dict):
            raise InputError("model: 4-dimensional documents need a model block "
                             "naming the isotropy direction")
        iso_name = mblock.get("isotropy")
        if iso_name not in names:
            raise InputError("model.isotropy: unknown basis name %r" % (iso_name,))
        iso_idx = names.index(iso_name)
        quotient = [i for i in range(4) if i != iso_idx]
        qgram = [[gram[a][b] for b in quotient] for a in quotient]
        params = {k: parse_rational(v, "model.parameters[%s]" % k)
                  for k, v in (mblock.get("parameters") or {}).items()}
        model = HomogeneousModel(
            name=str(doc.get("name", "input")),
            algebra=algebra,
            iso_vector=algebra.basis_vector(iso_idx),
            quotient_vectors=[algebra.basis_vector(i) for i in quotient],
            induced_metric=InvariantMetric(qgram),
            parameters=params,
        )
    elif mblock is not None:
        raise InputError("model: block only applies to dimension 4")
    return algebra, metric, model


def load_document(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InputError("%s:%d: invalid JSON (%s)" % (path, exc.lineno, exc.msg))
    return parse_document(doc)


def emit_document(algebra: LieAlgebra, metric: InvariantMetric,
                  model: Optional[HomogeneousModel] = None) -> dict:
    """Inverse of parse_document up to semantic identity."""
    names = algebra.basis_names
    brackets = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            w = algebra.c[i][j]
            if any(x != 0 for x in w):
                brackets.append({
                    "on": [names[i], names[j]],
                    "result": {names[k]: format_rational(w[k])
                               for k in range(algebra.dim) if w[k] != 0},
                })
    gram = {}
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            if metric.gram[i][j] != 0:
                gram["%s,%s" % (names[i], names[j])] = format_rational(metric.gram[i][j])
    doc = {"dimension": algebra.dim, "basis": list(names),
           "brackets": brackets, "metric": gram}
    if model is not None:
        iso_idx = next(i for i in range(algebra.dim)
                       if list(model.iso_vector) == algebra.basis_vector(i))
        doc["model"] = {"isotropy": names[iso_idx],
                        "parameters": {k: format_rational(v)
                                       for k, v in model.parameters.items()}}
    return doc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)
