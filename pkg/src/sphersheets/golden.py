"""Loading of the per-type table files shipped in ``sphersheets/data``.

Rows are templates: integer fields are small arithmetic expressions in the rank
``n`` and the table parameters, and a row may carry a ``range`` over which it is
repeated.  Expansion happens at load time.
"""

from __future__ import annotations

import ast
import json
import math
import operator
import re
from dataclasses import dataclass, field
from functools import cache
from importlib import resources
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1


class GoldenError(ValueError):
    """Malformed table file or expression."""


class GoldenMissingError(LookupError):
    """No table file covers the requested type and rank."""


# expressions ----------------------------------------------------------------------------

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_COMPARE = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}
_FUNCTIONS = {"gcd": math.gcd, "min": min, "max": max}


def evaluate(expr: str | int, env: dict[str, int]) -> int:
    """Evaluate an integer expression over ``env`` (no attribute access, no calls except gcd/min/max)."""
    if isinstance(expr, bool):
        raise GoldenError("booleans are not expressions")
    if isinstance(expr, int):
        return expr
    try:
        tree = ast.parse(str(expr), mode="eval")
    except SyntaxError as exc:
        raise GoldenError(f"cannot parse {expr!r}") from exc
    return _eval(tree.body, env, expr)


def _eval(node: ast.AST, env: dict[str, int], src) -> Any:
    match node:
        case ast.Constant(value=int() as v) if not isinstance(v, bool):
            return v
        case ast.Name(id=name):
            if name not in env:
                raise GoldenError(f"unknown name {name!r} in {src!r}")
            return env[name]
        case ast.UnaryOp(op=ast.USub(), operand=x):
            return -_eval(x, env, src)
        case ast.UnaryOp(op=ast.Not(), operand=x):
            return not _eval(x, env, src)
        case ast.BinOp(left=a, op=op, right=b) if type(op) in _BINARY:
            return _BINARY[type(op)](_eval(a, env, src), _eval(b, env, src))
        case ast.BoolOp(op=op, values=vals):
            results = [_eval(v, env, src) for v in vals]
            return all(results) if isinstance(op, ast.And) else any(results)
        case ast.Compare(left=a, ops=ops, comparators=rest):
            left = _eval(a, env, src)
            for op, b in zip(ops, rest):
                if type(op) not in _COMPARE:
                    raise GoldenError(f"unsupported comparison in {src!r}")
                right = _eval(b, env, src)
                if not _COMPARE[type(op)](left, right):
                    return False
                left = right
            return True
        case ast.Call(func=ast.Name(id=fname), args=args, keywords=[]) if fname in _FUNCTIONS:
            return _FUNCTIONS[fname](*(_eval(x, env, src) for x in args))
    raise GoldenError(f"unsupported syntax in {src!r}")


_BRACED = re.compile(r"\{([^{}]*)\}")


def render(template: str, env: dict[str, int]) -> str:
    """Replace ``{expr}`` by its value when ``expr`` mentions a variable of ``env``.

    Juxtaposition such as ``2n`` or ``2(n-l)`` is read as multiplication.
    Braces without variables (``{1}``) are left alone.
    """

    def sub(m: re.Match) -> str:
        body = m.group(1)
        names = set(re.findall(r"[A-Za-z_]\w*", body))
        if not names or not names <= env.keys():
            return m.group(0)
        expr = re.sub(r"(\d)\s*([A-Za-z(])", r"\1*\2", body)
        try:
            return str(evaluate(expr, env))
        except GoldenError:
            return m.group(0)

    return _BRACED.sub(sub, template)


# expanded rows ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenOrbit:
    """``kind`` is ``trivial``, ``partition``, ``label`` or ``factors``."""

    kind: str
    partition: tuple[tuple[int, int], ...] = ()
    marker: str | None = None
    label: str | None = None
    factors: tuple[tuple[tuple[int, int], ...] | None, ...] = ()


@dataclass(frozen=True)
class GoldenMember:
    twists: tuple[str, ...] | str  # a list of names or a keyword like "Z(G)"
    anchor: str | int  # "1" or a sigma node
    orbit: GoldenOrbit
    reason: str | None = None


@dataclass(frozen=True)
class GoldenErratum:
    field: str
    printed: str
    corrected: str
    note: str


@dataclass(frozen=True)
class GoldenRow:
    index: int
    tau: str
    kind: str
    node: int | None
    coset: str | None
    orbit: GoldenOrbit
    family_node: int | None
    excluded: str | None
    isolated: tuple[GoldenMember, ...]
    split_off: tuple[GoldenMember, ...]
    printed_induced: tuple[tuple[str, GoldenOrbit], ...]
    errata: tuple[GoldenErratum, ...]
    generators: tuple[tuple[int, ...], ...]
    congruences: tuple[tuple[tuple[int, ...], int], ...]
    d: int | None
    env: tuple[tuple[str, int], ...] = field(default=())


@dataclass(frozen=True)
class GoldenTable:
    type_label: str
    rank: int
    caption: str
    source: str
    has_d_column: bool
    rows: tuple[GoldenRow, ...]


def _pairs(spec, env) -> tuple[tuple[int, int], ...]:
    return tuple((evaluate(v, env), evaluate(m, env)) for v, m in spec)


def _orbit(spec, env) -> GoldenOrbit:
    if spec == "trivial":
        return GoldenOrbit("trivial")
    if "partition" in spec:
        return GoldenOrbit("partition", partition=_pairs(spec["partition"], env), marker=spec.get("marker"))
    if "label" in spec:
        return GoldenOrbit("label", label=spec["label"])
    if "factors" in spec:
        return GoldenOrbit("factors", factors=tuple(None if f == "1" else _pairs(f, env) for f in spec["factors"]))
    raise GoldenError(f"cannot read orbit {spec!r}")


def _member(spec, env) -> GoldenMember:
    twists = spec["twists"]
    twists = twists if isinstance(twists, str) else tuple(twists)
    anchor = spec["anchor"]
    anchor = "1" if anchor == "1" else evaluate(anchor["sigma"], env)
    return GoldenMember(twists, anchor, _orbit(spec["orbit"], env), spec.get("reason"))


def _indices(spec, env) -> list[int]:
    if "indices" in spec:
        return [evaluate(e, env) for e in spec["indices"]]
    var, lo, hi = spec["range"]
    return [evaluate(spec["index"], {**env, var: i}) for i in range(evaluate(lo, env), evaluate(hi, env) + 1)]


def _monoid(spec, env, rank: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[tuple[int, ...], int], ...]]:
    gens = []
    for term in spec["terms"]:
        if "range" in term:
            var, lo, hi = term["range"]
            envs = [{**env, var: i} for i in range(evaluate(lo, env), evaluate(hi, env) + 1)]
        else:
            envs = [env]
        for e in envs:
            w = [0] * rank
            for idx, coeff in term["weight"].items():
                i = evaluate(idx, e)
                if not 1 <= i <= rank:
                    raise GoldenError(f"weight index {i} out of range")
                w[i - 1] += evaluate(coeff, e)
            gens.append(tuple(w))
    congs = []
    for c in spec.get("congruences", []):
        congs.append((tuple(sorted(_indices(c["sum"], env))), int(c["modulus"])))
    return tuple(gens), tuple(congs)


def _expand_row(index: int, row: dict, env: dict[str, int], rank: int) -> GoldenRow:
    datum = row["datum"]
    members = row.get("members", {})
    family = members.get("family")
    gens, congs = _monoid(row["lambda"], env, rank)
    return GoldenRow(
        index=index,
        tau=render(row["tau"], env),
        kind=datum["kind"],
        node=evaluate(datum["node"], env) if "node" in datum else None,
        coset=datum.get("coset"),
        orbit=_orbit(datum.get("orbit", "trivial"), env),
        family_node=evaluate(family["node"], env) if family else None,
        excluded=family["excluded"] if family else None,
        isolated=tuple(_member(m, env) for m in members.get("isolated", [])),
        split_off=tuple(_member(m, env) for m in members.get("split_off", [])),
        printed_induced=tuple((p["at"], _orbit(p["orbit"], env)) for p in row.get("printed_induced", [])),
        errata=tuple(
            GoldenErratum(e["field"], e["printed"], render(e["corrected"], env), e.get("note", ""))
            for e in row.get("errata", [])
        ),
        generators=gens,
        congruences=congs,
        d=None if row.get("d") is None else evaluate(row["d"], env),
        env=tuple(sorted(env.items())),
    )


def expand(document: dict, type_label: str, rank: int, source: str = "<memory>") -> GoldenTable:
    if document.get("schema_version") != SCHEMA_VERSION:
        raise GoldenError(f"{source}: unsupported schema version {document.get('schema_version')!r}")
    if document["type"] != type_label:
        raise GoldenError(f"{source}: table is for type {document['type']}")
    env = {"n": rank}
    if not evaluate(document["applies"], env):
        raise GoldenError(f"{source}: table does not apply to rank {rank}")
    for name, expr in document.get("parameters", {}).items():
        env[name] = evaluate(expr, env)
    rows = []
    for row in document["rows"]:
        if "range" in row:
            var, lo, hi = row["range"]
            envs = [{**env, var: i} for i in range(evaluate(lo, env), evaluate(hi, env) + 1)]
        else:
            envs = [env]
        for e in envs:
            if "when" in row and not evaluate(row["when"], e):
                continue
            rows.append(_expand_row(len(rows), row, e, rank))
    return GoldenTable(type_label, rank, document["caption"], source, bool(document["has_d_column"]), tuple(rows))


# files ---------------------------------------------------------------------------------------


def _data_files() -> list[tuple[str, str]]:
    root = resources.files("sphersheets") / "data"
    return sorted((p.name, p.read_text(encoding="utf-8")) for p in root.iterdir() if p.name.endswith(".json"))


@cache
def _documents() -> tuple[tuple[str, str], ...]:
    return tuple(_data_files())


def load_document(path: str | Path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise GoldenMissingError(f"no table file at {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GoldenError(f"{path}: {exc}") from None


def _pick(candidates, type_label: str, rank: int) -> GoldenTable:
    found = []
    for name, doc in candidates:
        if doc.get("type") != type_label:
            continue
        if evaluate(doc["applies"], {"n": rank}):
            found.append((name, doc))
    if not found:
        raise GoldenMissingError(f"no table covers {type_label}{rank}")
    if len(found) > 1:
        raise GoldenError(f"several tables cover {type_label}{rank}: {[n for n, _ in found]}")
    name, doc = found[0]
    return expand(doc, type_label, rank, name)


@cache
def load_table(type_label: str, rank: int) -> GoldenTable:
    """The shipped table covering ``(type_label, rank)``."""
    return _pick(((name, json.loads(text)) for name, text in _documents()), type_label, rank)


def load_table_from(path: str | Path, type_label: str, rank: int) -> GoldenTable:
    """Like :func:`load_table` but reading a file or a directory of files."""
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.json"))
        if not files:
            raise GoldenMissingError(f"no table files in {path}")
        return _pick(((f.name, load_document(f)) for f in files), type_label, rank)
    return _pick([(path.name, load_document(path))], type_label, rank)


def shipped_documents() -> list[tuple[str, dict]]:
    return [(name, json.loads(text)) for name, text in _documents()]


__all__ = [
    "SCHEMA_VERSION",
    "GoldenError",
    "GoldenMissingError",
    "GoldenOrbit",
    "GoldenMember",
    "GoldenErratum",
    "GoldenRow",
    "GoldenTable",
    "evaluate",
    "render",
    "expand",
    "load_document",
    "load_table",
    "load_table_from",
    "shipped_documents",
]
