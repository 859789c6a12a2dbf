"""JSON formats for algebras, elements and reports.

Scalars are exact strings ``"p/q"``; indices are 0-based. Emitting is
canonical (sorted keys, sorted triples, fixed indentation), so
``emit(parse(emit(x)))`` reproduces ``emit(x)`` byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from . import __version__
from .bialgebra import Bialgebra, FormatError, Tensor
from .lie.algebra import LieAlgebra
from .linalg import Matrix
from .report import Report, jsonable

SCHEMA_VERSION = 1


def scalar(text: Any) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise FormatError(f"scalars must be strings 'p/q' or integers, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad scalar {text!r}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------


def _triples(d: Mapping[tuple, Mapping], width: int) -> list:
    out = []
    for key, v in d.items():
        for k, c in v.items():
            row = list(key) + list(k if isinstance(k, tuple) else (k,))
            out.append(row + [str(c)])
    out.sort(key=lambda r: tuple(r[:width]))
    return out


def bialgebra_to_json(b: Bialgebra) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "bialgebra",
        "name": b.name,
        "description": b.description,
        "dim": b.dim,
        "basis_names": list(b.basis_names),
        "unit": sorted([[i, str(c)] for i, c in b.unit.items()]),
        "counit": [str(c) for c in b.counit],
        "mult": _triples({k: v for k, v in b.mult.items()}, 3),
        "comult": _triples({(i,): t for i, t in b.comult.items()}, 3),
    }
    if b.antipode is not None:
        out["antipode"] = sorted([[r, c, str(v)] for r, row in b.antipode.entries.items() for c, v in row.items()])
    return out


def lie_to_json(g: LieAlgebra) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "lie_algebra",
        "name": g.name,
        "description": g.description,
        "dim": g.dim,
        "basis_names": list(g.basis_names),
        "brackets": _triples({k: v for k, v in g.brackets.items() if k[0] < k[1]}, 3),
    }


def algebra_to_json(a: Bialgebra | LieAlgebra) -> dict:
    return bialgebra_to_json(a) if isinstance(a, Bialgebra) else lie_to_json(a)


def _require(obj: Mapping, key: str, kind: type | tuple):
    if key not in obj:
        raise FormatError(f"missing field {key!r}")
    v = obj[key]
    if not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise FormatError(f"field {key!r} has the wrong type")
    return v


def _index(x, dim: int) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < dim:
        raise FormatError(f"index {x!r} out of range 0..{dim - 1}")
    return x


def _rows(obj: Mapping, key: str, width: int, dim: int) -> list[tuple]:
    rows = obj.get(key, [])
    if not isinstance(rows, list):
        raise FormatError(f"field {key!r} must be a list")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != width + 1:
            raise FormatError(f"entry {r!r} of {key!r} must have {width} indices and a scalar")
        out.append(tuple(_index(i, dim) for i in r[:width]) + (scalar(r[width]),))
    return out


def algebra_from_json(obj: Any) -> Bialgebra | LieAlgebra:
    if not isinstance(obj, dict):
        raise FormatError("an algebra file must hold a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {version!r}")
    kind = _require(obj, "kind", str)
    dim = _require(obj, "dim", int)
    if dim < 1:
        raise FormatError("dim must be positive")
    names = tuple(_require(obj, "basis_names", list))
    if not all(isinstance(n, str) for n in names) or len(set(names)) != len(names):
        raise FormatError("basis_names must be distinct strings")
    meta = {"name": obj.get("name", ""), "description": obj.get("description", "")}
    if kind == "lie_algebra":
        brackets: dict = {}
        for i, j, k, c in _rows(obj, "brackets", 3, dim):
            brackets.setdefault((i, j), {})[k] = brackets.get((i, j), {}).get(k, 0) + c
        return LieAlgebra(dim, names, brackets, **meta)
    if kind != "bialgebra":
        raise FormatError(f"unknown kind {kind!r}")
    mult: dict = {}
    for i, j, k, c in _rows(obj, "mult", 3, dim):
        mult.setdefault((i, j), {})[k] = mult.get((i, j), {}).get(k, 0) + c
    comult: dict = {}
    for i, j, k, c in _rows(obj, "comult", 3, dim):
        comult.setdefault(i, {})[(j, k)] = comult.get(i, {}).get((j, k), 0) + c
    unit = {i: c for i, c in _rows(obj, "unit", 1, dim)}
    counit = _require(obj, "counit", list)
    if len(counit) != dim:
        raise FormatError("counit length differs from dim")
    antipode = None
    if "antipode" in obj:
        entries: dict = {}
        for r, c, v in _rows(obj, "antipode", 2, dim):
            entries.setdefault(r, {})[c] = v
        antipode = Matrix(dim, dim, entries)
    return Bialgebra(dim, names, mult, unit, comult, tuple(scalar(c) for c in counit), antipode, **meta)


def emit_algebra(a: Bialgebra | LieAlgebra) -> str:
    return dumps(algebra_to_json(a))


def parse_algebra(text: str) -> Bialgebra | LieAlgebra:
    return algebra_from_json(loads(text))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


def _resolve(x, names: Sequence[str]) -> int:
    if isinstance(x, str):
        if x not in names:
            raise FormatError(f"unknown basis element {x!r}")
        return names.index(x)
    return _index(x, len(names))


def tensor_from_json(obj: Any, names: Sequence[str], degree: int | None = None) -> Tensor:
    """``{"degree": n, "coords": [[[i1..in], "c"], ...]}`` or just the coordinate list.

    Indices may be basis names.
    """
    if isinstance(obj, dict):
        degree = _require(obj, "degree", int) if degree is None else degree
        obj = _require(obj, "coords", list)
    if not isinstance(obj, list):
        raise FormatError("a tensor must be a list of [indices, scalar] pairs")
    coords: dict = {}
    for entry in obj:
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], list):
            raise FormatError(f"bad tensor entry {entry!r}")
        key = tuple(_resolve(x, names) for x in entry[0])
        if degree is None:
            degree = len(key)
        if len(key) != degree:
            raise FormatError(f"entry {entry!r} does not have degree {degree}")
        coords[key] = coords.get(key, 0) + scalar(entry[1])
    return Tensor(degree or 0, coords)


def tensor_to_json(t: Tensor) -> dict:
    return {"degree": t.degree, "coords": t.to_json()}


def monomial_from_names(factors: Sequence[str], names: Sequence[str]) -> tuple[int, ...]:
    alpha = [0] * len(names)
    for f in factors:
        alpha[_resolve(f, names)] += 1
    return tuple(alpha)


def polynomial_tensor_from_json(obj: Any, names: Sequence[str]) -> dict:
    """``[[["x"], ["y"], "1"], ...]``: pairs of monomials (lists of generator names) with a scalar."""
    if not isinstance(obj, list):
        raise FormatError("φ must be a list of [monomial, monomial, scalar] entries")
    out: dict = {}
    for entry in obj:
        if not isinstance(entry, list) or len(entry) != 3 or not all(isinstance(m, list) for m in entry[:2]):
            raise FormatError(f"bad φ entry {entry!r}")
        key = (monomial_from_names(entry[0], names), monomial_from_names(entry[1], names))
        out[key] = out.get(key, 0) + scalar(entry[2])
    return out


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def report_document(command: Sequence[str], input_text: str, reports: Sequence[Report], results: Mapping[str, Any]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": list(command),
        "input_digest": digest(input_text),
        "ok": all(r.ok for r in reports),
        "verdicts": [r.to_dict() for r in reports],
        "results": jsonable(dict(results)),
    }
