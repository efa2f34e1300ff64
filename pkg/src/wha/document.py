"""The ``.wha.json`` document format.

A document is a UTF-8 JSON object::

    {
      "format": "wha",
      "version": 1,
      "name": "Q[Z2]",
      "field": {"kind": "Q"},            # or {"kind": "GF", "p": 7}, {"kind": "C"}
      "dim": 2,
      "labels": ["e", "g"],
      "mult": [[i, j, k, "coeff"], ...],  # b_i b_j = sum_k coeff b_k
      "unit": ["1", "0"],
      "comult": [[k, i, j, "coeff"], ...],
      "counit": ["1", "1"],
      "antipode": [["1", "0"], ["0", "1"]],  # column j is S(b_j)
      "star": [[...]],                     # optional
      "whm": [{"name": ..., "dim": m,
               "action": [[i, p, q, "coeff"], ...],
               "coaction": [[k, j, a, "coeff"], ...]}],  # optional
      "report": {...}                      # optional, written by the CLI
    }

Coefficients are strings so exact values survive the round trip.
Unknown top-level sections are rejected.
"""
from __future__ import annotations

import json
import re

import numpy as np

from .core import WeakHopfAlgebra
from .errors import ParseError
from .examples import SeparableAlgebraInput
from .linear_core import Field

FORMAT = "wha"
VERSION = 1
REQUIRED = ("format", "version", "field", "dim", "mult", "unit", "comult", "counit", "antipode")
OPTIONAL = ("name", "labels", "star", "whm", "report")


# --------------------------------------------------------------------------
# locating values in the source text


_WS = re.compile(r"[\s,:]*")


def _line(text, pos):
    return text.count("\n", 0, pos) + 1


def _locate(text, path):
    """Line of the value at ``path`` (keys and indices) in ``text``; None if unknown."""
    dec = json.JSONDecoder()
    pos = _WS.match(text, 0).end()
    try:
        for step in path:
            if text[pos] == "{":
                pos += 1
                while True:
                    pos = _WS.match(text, pos).end()
                    if text[pos] == "}":
                        return None
                    key, pos = dec.raw_decode(text, pos)
                    pos = _WS.match(text, pos).end()
                    if key == step:
                        break
                    _, pos = dec.raw_decode(text, pos)
            elif text[pos] == "[":
                pos += 1
                for _ in range(step):
                    pos = _WS.match(text, pos).end()
                    _, pos = dec.raw_decode(text, pos)
                pos = _WS.match(text, pos).end()
            else:
                return None
        return _line(text, pos)
    except (IndexError, ValueError, TypeError):
        return None


class _Context:
    def __init__(self, text):
        self.text = text

    def error(self, message, *path):
        return ParseError(message, _locate(self.text, path) if path else None)


# --------------------------------------------------------------------------
# field and values


def parse_field(spec, tol=None) -> Field:
    """``{"kind": ...}`` or a short string "Q", "C", "GF(7)", "GF7".

    ``tol`` overrides the tolerance of the complex field.
    """
    if isinstance(spec, str):
        s = spec.strip().upper()
        m = re.fullmatch(r"GF\(?(\d+)\)?", s)
        if m:
            return Field.gf(int(m.group(1)))
        spec = {"kind": s}
    if not isinstance(spec, dict):
        raise ValueError("field must be an object")
    unknown = set(spec) - {"kind", "p", "tol"}
    if unknown:
        raise ValueError(f"unknown field keys {sorted(unknown)}")
    kind = spec.get("kind")
    if kind == "Q":
        return Field.rationals()
    if kind == "GF":
        p = spec.get("p")
        if not isinstance(p, int):
            raise ValueError("GF field needs an integer 'p'")
        return Field.gf(p)
    if kind == "C":
        return Field.complex(tol if tol is not None else float(spec.get("tol", 1e-9)))
    raise ValueError(f"unknown field kind {kind!r}")


def field_spec(F: Field) -> dict:
    if F.kind == "GF":
        return {"kind": "GF", "p": F.p}
    return {"kind": F.kind}


def _value(F, ctx, v, *path):
    if not isinstance(v, str):
        raise ctx.error(f"coefficient must be a string, got {v!r}", *path)
    try:
        return F.parse(v)
    except ValueError as exc:
        raise ctx.error(str(exc), *path) from None


def _int(ctx, v, name, *path):
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ctx.error(f"{name} must be a non-negative integer", *path)
    return v


def _sparse(F, ctx, entries, shape, name, *path):
    if not isinstance(entries, list):
        raise ctx.error(f"'{name}' must be a list of entries", *path)
    out = F.zeros(shape)
    seen = set()
    for e, entry in enumerate(entries):
        where = (*path, e)
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise ctx.error(f"{name} entry {e} must be [{', '.join('ijk'[:len(shape)])}, coeff]",
                            *where)
        idx = tuple(entry[:-1])
        for i, n in zip(idx, shape):
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
                raise ctx.error(f"{name} entry {e}: index {i!r} out of range 0..{n - 1}", *where)
        if idx in seen:
            raise ctx.error(f"{name} entry {e}: duplicate index {list(idx)}", *where)
        seen.add(idx)
        out[idx] = _value(F, ctx, entry[-1], *where, len(shape))
    return out


def _dense(F, ctx, rows, shape, name, *path):
    if len(shape) == 1:
        if not isinstance(rows, list) or len(rows) != shape[0]:
            raise ctx.error(f"'{name}' must have length {shape[0]}", *path)
        return F.array([_value(F, ctx, v, *path, i) for i, v in enumerate(rows)])
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise ctx.error(f"'{name}' must have {shape[0]} rows", *path)
    out = F.zeros(shape)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise ctx.error(f"'{name}' row {i} must have {shape[1]} entries", *path, i)
        for j, v in enumerate(row):
            out[i, j] = _value(F, ctx, v, *path, i, j)
    return out


def _load(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object", 1)
    return data


def _header(data, ctx, kind=FORMAT, required=REQUIRED, optional=OPTIONAL, tol=None):
    unknown = [k for k in data if k not in required and k not in optional]
    if unknown:
        raise ctx.error(f"unknown section {unknown[0]!r}", unknown[0])
    for k in required:
        if k not in data:
            raise ParseError(f"missing required section {k!r}")
    if data["format"] != kind:
        raise ctx.error(f"format must be {kind!r}", "format")
    if data["version"] != VERSION:
        raise ctx.error(f"unsupported version {data['version']!r}", "version")
    try:
        F = parse_field(data["field"], tol)
    except ValueError as exc:
        raise ctx.error(str(exc), "field") from None
    n = _int(ctx, data["dim"], "dim", "dim")
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n
                               or not all(isinstance(x, str) for x in labels)):
        raise ctx.error(f"'labels' must be {n} strings", "labels")
    return F, n, labels


# --------------------------------------------------------------------------
# weak Hopf algebra documents


class Document:
    """A parsed document: the algebra, weak Hopf modules and any report."""

    def __init__(self, algebra, modules=(), report=None):
        self.algebra = algebra
        self.modules = list(modules)
        self.report = report


def parse_document(text: str, tol=None) -> Document:
    from .hopf_modules import RightWHM

    ctx = _Context(text)
    data = _load(text)
    F, n, labels = _header(data, ctx, tol=tol)
    mult = _sparse(F, ctx, data["mult"], (n, n, n), "mult", "mult")
    comult = _sparse(F, ctx, data["comult"], (n, n, n), "comult", "comult")
    unit = _dense(F, ctx, data["unit"], (n,), "unit", "unit")
    counit = _dense(F, ctx, data["counit"], (n,), "counit", "counit")
    antipode = _dense(F, ctx, data["antipode"], (n, n), "antipode", "antipode")
    star = None
    if "star" in data:
        if F.kind == "GF":
            raise ctx.error("star structures need the field Q or C", "star")
        star = _dense(F, ctx, data["star"], (n, n), "star", "star")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ctx.error("'name' must be a string", "name")
    A = WeakHopfAlgebra(F, mult, unit, comult, counit, antipode, star, labels, name)
    modules = []
    whm = data.get("whm", [])
    if not isinstance(whm, list):
        raise ctx.error("'whm' must be a list", "whm")
    for w, sec in enumerate(whm):
        if not isinstance(sec, dict):
            raise ctx.error("module section must be an object", "whm", w)
        bad = set(sec) - {"name", "dim", "action", "coaction"}
        if bad:
            raise ctx.error(f"unknown module key {sorted(bad)[0]!r}", "whm", w)
        for key in ("dim", "action", "coaction"):
            if key not in sec:
                raise ctx.error(f"module section missing {key!r}", "whm", w)
        m = _int(ctx, sec["dim"], "module dim", "whm", w, "dim")
        act = _sparse(F, ctx, sec["action"], (n, m, m), "action", "whm", w, "action")
        co = _sparse(F, ctx, sec["coaction"], (m, m, n), "coaction", "whm", w, "coaction")
        modules.append(RightWHM(A, act, co, name=sec.get("name", "")))
    report = data.get("report")
    return Document(A, modules, report)


def parse(text: str, tol=None) -> WeakHopfAlgebra:
    return parse_document(text, tol).algebra


def read(path, tol=None) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), tol)


def _fmt(F, v):
    return F.format(v)


def _sparse_lines(F, T, indent):
    idx = np.argwhere(F.nonzero_mask(T))
    rows = [json.dumps([*map(int, i), _fmt(F, T[tuple(i)])]) for i in idx]
    if not rows:
        return "[]"
    pad = " " * indent
    return "[\n" + ",\n".join(pad + "  " + r for r in rows) + "\n" + pad + "]"


def _dense_lines(F, M, indent):
    if M.ndim == 1:
        return json.dumps([_fmt(F, v) for v in M])
    pad = " " * indent
    rows = [json.dumps([_fmt(F, v) for v in row]) for row in M]
    if not rows:
        return "[]"
    return "[\n" + ",\n".join(pad + "  " + r for r in rows) + "\n" + pad + "]"


def emit(A: WeakHopfAlgebra, modules=(), report=None) -> str:
    """Canonical document text: fixed key order, sorted sparse entries."""
    F = A.F
    parts = [
        ("format", json.dumps(FORMAT)),
        ("version", json.dumps(VERSION)),
        ("name", json.dumps(A.name)),
        ("field", json.dumps(field_spec(F))),
        ("dim", json.dumps(A.dim)),
        ("labels", json.dumps(list(A.labels))),
        ("mult", _sparse_lines(F, A.mult, 2)),
        ("unit", _dense_lines(F, A.unit, 2)),
        ("comult", _sparse_lines(F, A.comult, 2)),
        ("counit", _dense_lines(F, A.counit, 2)),
        ("antipode", _dense_lines(F, A.antipode, 2)),
    ]
    if A.star is not None:
        parts.append(("star", _dense_lines(F, A.star, 2)))
    if modules:
        secs = []
        for M in modules:
            secs.append("    {\n"
                        f'      "name": {json.dumps(M.name)},\n'
                        f'      "dim": {M.dim},\n'
                        f'      "action": {_sparse_lines(F, M.action, 6)},\n'
                        f'      "coaction": {_sparse_lines(F, M.coaction, 6)}\n'
                        "    }")
        parts.append(("whm", "[\n" + ",\n".join(secs) + "\n  ]"))
    if report is not None:
        parts.append(("report", json.dumps(report, indent=2).replace("\n", "\n  ")))
    body = ",\n".join(f"  {json.dumps(k)}: {v}" for k, v in parts)
    return "{\n" + body + "\n}\n"


def write(path, A: WeakHopfAlgebra, modules=(), report=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(A, modules, report))


# --------------------------------------------------------------------------
# inputs for the algebra-and-functional construction


def parse_algebra(text: str, tol=None) -> SeparableAlgebraInput:
    """An algebra file: ``format`` "algebra", field, dim, labels, mult, unit, optional star.

    The functional defaults to zero until one is attached with
    :func:`parse_functional`.
    """
    ctx = _Context(text)
    data = _load(text)
    F, n, labels = _header(data, ctx, kind="algebra",
                           required=("format", "version", "field", "dim", "mult", "unit"),
                           optional=("name", "labels", "star"), tol=tol)
    mult = _sparse(F, ctx, data["mult"], (n, n, n), "mult", "mult")
    unit = _dense(F, ctx, data["unit"], (n,), "unit", "unit")
    star = _dense(F, ctx, data["star"], (n, n), "star", "star") if "star" in data else None
    return SeparableAlgebraInput(F, mult, unit, F.zeros(n), star, labels,
                                 data.get("name", "B"))


def parse_functional(text: str, F: Field, n: int):
    """A functional file: ``{"format": "functional", "version": 1, "values": [...]}``."""
    ctx = _Context(text)
    data = _load(text)
    unknown = set(data) - {"format", "version", "values"}
    if unknown:
        k = sorted(unknown)[0]
        raise ctx.error(f"unknown section {k!r}", k)
    if data.get("format") != "functional":
        raise ctx.error("format must be 'functional'", "format")
    if data.get("version") != VERSION:
        raise ctx.error(f"unsupported version {data.get('version')!r}", "version")
    if "values" not in data:
        raise ParseError("missing required section 'values'")
    return _dense(F, ctx, data["values"], (n,), "values", "values")


def emit_algebra(B: SeparableAlgebraInput) -> str:
    F = B.field
    parts = [("format", '"algebra"'), ("version", json.dumps(VERSION)),
             ("name", json.dumps(B.name)), ("field", json.dumps(field_spec(F))),
             ("dim", json.dumps(B.dim)), ("labels", json.dumps(list(B.labels))),
             ("mult", _sparse_lines(F, B.mult, 2)), ("unit", _dense_lines(F, B.unit, 2))]
    if B.star is not None:
        parts.append(("star", _dense_lines(F, B.star, 2)))
    body = ",\n".join(f"  {json.dumps(k)}: {v}" for k, v in parts)
    return "{\n" + body + "\n}\n"


def emit_functional(F: Field, values) -> str:
    return json.dumps({"format": "functional", "version": VERSION,
                       "values": [F.format(v) for v in F.array(values)]}, indent=2) + "\n"
