"""Command-line front end: catalogs, verification, the symmetric-group oracle and conjugacy queries."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

from . import sheetcat, symoracle
from .golden import GoldenError, GoldenMissingError
from .orbitcalc import partitions_of
from .pseudolevi import sigma_element
from .rootcore import RootSystemError, build_root_system
from .torus import RationalCoweight, points_conjugate

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MISSING = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# catalog documents ------------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRow:
    index: int
    tau: str
    kind: str
    pseudo_levi: str
    coset: str
    orbit: str
    family: str | None
    members: tuple[str, ...]
    weight_monoid: str
    generators: tuple[tuple[int, ...], ...]
    congruences: tuple[tuple[tuple[int, ...], int], ...]
    d: int | None


@dataclass(frozen=True)
class CatalogDocument:
    schema_version: int
    type: str
    rank: int
    caption: str
    source: str
    rows: tuple[CatalogRow, ...]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "CatalogDocument":
        rows = tuple(
            CatalogRow(
                **{
                    **r,
                    "members": tuple(r["members"]),
                    "generators": tuple(tuple(g) for g in r["generators"]),
                    "congruences": tuple((tuple(s), m) for s, m in r["congruences"]),
                }
            )
            for r in data["rows"]
        )
        return cls(data["schema_version"], data["type"], data["rank"], data["caption"], data["source"], rows)

    @classmethod
    def from_json(cls, text: str) -> "CatalogDocument":
        return cls.from_dict(json.loads(text))


def _coset_text(fam: sheetcat.SheetFamily) -> str:
    if fam.kind == "levi":
        return f"Z(L_{fam.node})" + ("°" if fam.golden_row.coset == "Z°" else "")
    if fam.kind == "pseudo":
        return f"{{sigma_{fam.node}}}"
    if fam.kind == "central":
        return fam.tau
    return "{1}"


def _row(fam: sheetcat.SheetFamily, with_d: bool) -> CatalogRow:
    family = None
    if fam.members.family is not None:
        f = fam.members.family
        family = f"exp(zeta omega_{f.node}), zeta not in {f.excluded}"
    monoid = sheetcat.weight_monoid(fam)
    return CatalogRow(
        index=fam.index,
        tau=fam.tau,
        kind=fam.kind,
        pseudo_levi=fam.datum.pseudo_levi.type_string(),
        coset=_coset_text(fam),
        orbit="x".join(fam.datum.orbit),
        family=family,
        members=tuple(m.text() for m in fam.members.isolated),
        weight_monoid=monoid.describe(),
        generators=monoid.generators,
        congruences=monoid.congruences,
        d=fam.d if with_d else None,
    )


def catalog_document(type_label: str, rank: int, include_central: bool = False) -> CatalogDocument:
    cat = sheetcat.catalog(type_label, rank)
    rows = [_row(f, True) for f in cat.families]
    if include_central:
        rows += [_row(f, False) for f in cat.central]
    return CatalogDocument(SCHEMA_VERSION, type_label, rank, cat.table.caption, cat.table.source, tuple(rows))


_CSV_FIELDS = ("index", "tau", "kind", "pseudo_levi", "coset", "orbit", "family", "members", "weight_monoid", "d")


def render_csv(doc: CatalogDocument) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_CSV_FIELDS)
    for r in doc.rows:
        values = asdict(r)
        values["members"] = "; ".join(r.members)
        writer.writerow(["" if values[k] is None else values[k] for k in _CSV_FIELDS])
    return out.getvalue()


def render_md(doc: CatalogDocument) -> str:
    lines = [
        f"**{doc.caption}**",
        "",
        "| τ | members | Λ(O) | d |",
        "|---|---|---|---|",
    ]
    for r in doc.rows:
        members = list(r.members)
        if r.family is not None:
            members.insert(0, r.family)
        lines.append(f"| {r.tau} | {'; '.join(members)} | {r.weight_monoid} | {'' if r.d is None else r.d} |")
    return "\n".join(lines) + "\n"


# element specs -------------------------------------------------------------------------------------


def parse_element(rs, spec: str) -> RationalCoweight:
    """``0``, ``sigma:k``, a twist name, or comma-separated coordinates, joined by ``+``."""
    total = RationalCoweight.zero(rs.rank)
    for term in spec.replace(" ", "").split("+"):
        if not term:
            raise UsageError(f"empty term in {spec!r}")
        if term == "0":
            continue
        if term.startswith("sigma:"):
            try:
                k = int(term.split(":", 1)[1])
            except ValueError:
                raise UsageError(f"bad sigma index in {term!r}") from None
            if not 1 <= k <= rs.rank:
                raise UsageError(f"sigma index {k} out of range")
            total = total + sigma_element(rs, k)
        elif "," in term or term[0].isdigit() or term[0] == "-" and term[1:2].isdigit():
            try:
                coords = [Fraction(c) for c in term.split(",")]
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad coordinates {term!r}") from None
            if len(coords) != rs.rank:
                raise UsageError(f"expected {rs.rank} coordinates, got {len(coords)}")
            total = total + RationalCoweight(tuple(coords))
        else:
            try:
                total = total + RationalCoweight.of(sheetcat.twist_vector(rs, term))
            except sheetcat.CatalogError as exc:
                raise UsageError(str(exc)) from None
    return total


# commands ---------------------------------------------------------------------------------------


def _root_system(type_label: str, rank: int):
    if type_label == "B" and rank == 2:
        raise UsageError("B2 is not catalogued separately; use --type C --rank 2")
    try:
        return build_root_system(type_label, rank)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_catalog(args, out) -> int:
    _root_system(args.type, args.rank)
    if args.format == "json":
        out.write(catalog_document(args.type, args.rank).to_json())
    elif args.format == "csv":
        out.write(render_csv(catalog_document(args.type, args.rank, include_central=True)))
    else:
        out.write(render_md(catalog_document(args.type, args.rank)))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.all:
        if args.type or args.rank:
            raise UsageError("--all takes no --type/--rank")
        targets = sheetcat.supported_ranks()
    else:
        if not args.type or args.rank is None:
            raise UsageError("give --type and --rank, or --all")
        targets = [(args.type, args.rank)]
    worst = EXIT_OK
    summary = []
    for t, n in targets:
        _root_system(t, n)
        report = sheetcat.verify(t, n, args.golden)
        out.write(report.text() + "\n")
        summary.append(f"{t}{n}: {report.status}")
        if not report.ok:
            worst = EXIT_FAIL
    if len(targets) > 1:
        out.write("== summary: " + ", ".join(summary) + "\n")
    return worst


def _label(p) -> str:
    return p.compact()


def cmd_oracle(args, out) -> int:
    n = args.n
    classes = partitions_of(n)
    ok = True
    if args.what == "kostka":
        matrix = symoracle.kostka_matrix(n)
        out.write("K[f][d]  rows f, columns d: " + " ".join(_label(p) for p in classes) + "\n")
        for f, row in zip(classes, matrix):
            out.write(f"{_label(f)}: " + " ".join(str(v) for v in row) + "\n")
        agree = all(
            symoracle.kostka_by_characters(f, d) == matrix[i][j]
            for i, f in enumerate(classes)
            for j, d in enumerate(classes)
        )
        tri = symoracle.is_unitriangular(n)
        out.write(f"unitriangular: {'yes' if tri else 'no'}\n")
        out.write(f"tableaux and characters agree: {'yes' if agree else 'no'}\n")
        ok = tri and agree
    elif args.what == "characters":
        table = symoracle.character_table(n)
        # columns start at the identity class
        out.write("classes: " + " ".join(_label(p) for p in reversed(classes)) + "\n")
        for lam, chi in zip(classes, table):
            out.write(f"{_label(lam)}: " + " ".join(str(v) for v in reversed(chi.values)) + "\n")
        ortho = all(a.inner(b) == int(i == j) for i, a in enumerate(table) for j, b in enumerate(table))
        out.write(f"orthonormal: {'yes' if ortho else 'no'}\n")
        ok = ortho
    else:
        pairs = 0
        for d, f in combinations(classes, 2):
            w = symoracle.separation_witness(d, f)
            out.write(f"{_label(d)} vs {_label(f)}: witness {_label(w)}\n")
            pairs += 1
        out.write(f"separated pairs: {pairs}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_conjugacy(args, out) -> int:
    rs = _root_system(args.type, args.rank)
    x = parse_element(rs, args.x)
    y = parse_element(rs, args.y)
    out.write(("yes" if points_conjugate(rs, x, y) else "no") + "\n")
    return EXIT_OK


# entry point -----------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sphersheets", description="Spherical birational sheets of simple groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="print the catalog of one type")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")

    p = sub.add_parser("verify", help="recompute catalogs and diff them against the tables")
    p.add_argument("--type")
    p.add_argument("--rank", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--golden", help="table file or directory to use instead of the shipped data")

    p = sub.add_parser("oracle", help="symmetric-group checks")
    p.add_argument("what", choices=("kostka", "characters", "separation"))
    p.add_argument("--n", required=True, type=int)

    p = sub.add_parser("conjugacy", help="are two torus elements conjugate")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--x", required=True, help="e.g. sigma:2+zn, 0, or 1/2,0,0")
    p.add_argument("--y", required=True)
    return parser


_COMMANDS = {"catalog": cmd_catalog, "verify": cmd_verify, "oracle": cmd_oracle, "conjugacy": cmd_conjugacy}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except GoldenMissingError as exc:
        err.write(f"missing data: {exc}\n")
        return EXIT_MISSING
    except (GoldenError, sheetcat.CatalogError, symoracle.SymOracleError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
