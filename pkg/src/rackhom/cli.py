"""Batch command line front end.

Reads one JSON rack description, runs one command, writes one report to
stdout.  Exit codes: 0 success, 1 verification mismatch, 2 any error.  The
error names ParseError, ValidationError, InfiniteOrbits and DegreeTooLarge
printed on stderr are stable interface, as are all field names below.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Any

from .chains import DEFAULT_BASIS_CAP, DegreeTooLarge
from .closed_forms import betti, e2_rank, poincare_series
from .cycles import basis_recipes, independence_certificate
from .homology import homology_table
from .racks import (
    EmptySpec,
    FiniteRack,
    InfiniteOrbits,
    NotBijective,
    NotPermutation,
    NotSelfDistributive,
    PermutationSpec,
    as_permutation,
    orbit_decomposition,
    validate_rack,
)


class ParseError(ValueError):
    """The input document is malformed or violates the schema."""


class ValidationError(ValueError):
    """The described rack fails the axioms or preconditions of the command."""


@dataclass
class RackDescription:
    """Parsed input document: either an explicit table or a permutation
    given by its cycles plus a count of free orbits."""

    kind: str
    table: list[list[int]] | None = None
    cycles: list[list[int]] | None = None
    free_orbits: int = 0

    @classmethod
    def from_document(cls, doc: Any) -> "RackDescription":
        if not isinstance(doc, dict):
            raise ParseError("input must be a JSON object")
        kind = doc.get("kind")
        if kind == "table":
            if set(doc) != {"kind", "table"}:
                raise ParseError('table kind takes exactly the fields "kind" and "table"')
            table = doc["table"]
            if (
                not isinstance(table, list)
                or not table
                or not all(
                    isinstance(row, list) and all(isinstance(v, int) for v in row)
                    for row in table
                )
            ):
                raise ParseError('"table" must be a nonempty list of integer lists')
            return cls(kind="table", table=table)
        if kind == "permutation":
            if not set(doc) <= {"kind", "cycles", "free_orbits"} or "cycles" not in doc:
                raise ParseError(
                    'permutation kind takes "cycles" and optionally "free_orbits"'
                )
            cycles = doc["cycles"]
            if not isinstance(cycles, list) or not all(
                isinstance(cycle, list)
                and cycle
                and all(isinstance(v, int) for v in cycle)
                for cycle in cycles
            ):
                raise ParseError('"cycles" must be a list of nonempty integer lists')
            free = doc.get("free_orbits", 0)
            if not isinstance(free, int) or free < 0:
                raise ParseError('"free_orbits" must be a nonnegative integer')
            seen = [v for cycle in cycles for v in cycle]
            if sorted(seen) != list(range(len(seen))):
                raise ParseError("cycle entries must be exactly the ids 0..n-1")
            if not cycles and free == 0:
                raise ParseError("empty permutation: no cycles and no free orbits")
            return cls(kind="permutation", cycles=cycles, free_orbits=free)
        raise ParseError('"kind" must be "table" or "permutation"')

    def canonical(self) -> dict[str, Any]:
        if self.kind == "table":
            return {"kind": "table", "table": self.table}
        return {
            "kind": "permutation",
            "cycles": self.cycles,
            "free_orbits": self.free_orbits,
        }

    def finite_rack(self) -> FiniteRack:
        """Realize as a finite rack; brute-force commands come through here."""
        if self.kind == "table":
            return validate_rack(self.table)
        if self.free_orbits > 0:
            raise InfiniteOrbits("free orbits admit no finite realization")
        n = sum(len(cycle) for cycle in self.cycles)
        phi = [0] * n
        for cycle in self.cycles:
            for i, v in enumerate(cycle):
                phi[v] = cycle[(i + 1) % len(cycle)]
        row = tuple(phi)
        return FiniteRack(tuple(row for _ in range(n)))

    def spec(self) -> PermutationSpec:
        """Orbit data; closed-form commands come through here."""
        if self.kind == "table":
            return PermutationSpec.from_rack(validate_rack(self.table))
        return PermutationSpec(
            tuple(len(cycle) for cycle in self.cycles), self.free_orbits
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rackhom",
        description="Integral rack homology: brute force and closed forms.",
    )
    parser.add_argument(
        "command",
        choices=["validate", "homology", "betti", "e2", "cycles", "verify"],
    )
    parser.add_argument("--input", required=True, help="path to a rack description (JSON)")
    parser.add_argument("--max-degree", type=int, default=4, dest="max_degree")
    parser.add_argument("--terms", type=int, default=8)
    parser.add_argument(
        "--format",
        choices=["table", "csv", "json"],
        default="table",
        dest="output_format",
    )
    parser.add_argument("--basis-cap", type=int, default=DEFAULT_BASIS_CAP, dest="basis_cap")
    return parser


def load_description(path: str) -> RackDescription:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return RackDescription.from_document(doc)


def _error_name(exc: Exception) -> str | None:
    if isinstance(exc, ParseError):
        return "ParseError"
    if isinstance(
        exc, (ValidationError, NotBijective, NotSelfDistributive, NotPermutation, EmptySpec)
    ):
        return "ValidationError"
    if isinstance(exc, InfiniteOrbits):
        return "InfiniteOrbits"
    if isinstance(exc, DegreeTooLarge):
        return "DegreeTooLarge"
    return None


@dataclass
class Row:
    degree: int
    free_rank: int | None = None
    torsion: tuple[int, ...] | None = None
    closed_form: int | None = None
    e2_total: int | None = None
    bn_size: int | None = None
    certificate_rank: int | None = None
    independent: bool | None = None
    recipes: list[str] | None = None


@dataclass
class Report:
    description: RackDescription
    rows: list[Row]
    status: str = "ok"
    series: list[int] | None = None
    e2_page: list[tuple[int, int, int]] | None = None  # (p, q, rank)
    summary: dict[str, Any] | None = None  # validate command only


def _e2_total(spec: PermutationSpec, n: int) -> int:
    return sum(e2_rank(spec, p, n - p) for p in range(n + 1))


def run_validate(description: RackDescription, args: argparse.Namespace) -> Report:
    summary: dict[str, Any]
    if description.kind == "table":
        rack = validate_rack(description.table)
        phi = as_permutation(rack)
        summary = {
            "size": rack.size,
            "is_permutation": phi is not None,
        }
        if phi is not None:
            orbits = orbit_decomposition(phi).orbits
            summary["orbits"] = [list(orbit) for orbit in orbits]
    else:
        spec = description.spec()
        summary = {
            "size": sum(len(cycle) for cycle in description.cycles),
            "is_permutation": True,
            "orbits": [list(cycle) for cycle in description.cycles],
            "free_orbits": description.free_orbits,
            "r": spec.r,
            "r_fin": spec.r_fin,
        }
    return Report(description, rows=[], summary=summary)


def run_homology(description: RackDescription, args: argparse.Namespace) -> Report:
    rack = description.finite_rack()
    groups = homology_table(rack, args.max_degree, args.basis_cap)
    rows = [
        Row(degree=n, free_rank=group.free_rank, torsion=group.torsion)
        for n, group in enumerate(groups)
    ]
    return Report(description, rows)


def run_betti(description: RackDescription, args: argparse.Namespace) -> Report:
    spec = description.spec()
    rows = [
        Row(degree=n, closed_form=betti(spec, n)) for n in range(args.max_degree + 1)
    ]
    series = list(poincare_series(spec, args.terms).coefficients)
    series += [0] * (args.terms - len(series))
    return Report(description, rows, series=series)


def run_e2(description: RackDescription, args: argparse.Namespace) -> Report:
    spec = description.spec()
    rows = [
        Row(degree=n, e2_total=_e2_total(spec, n)) for n in range(args.max_degree + 1)
    ]
    page = [
        (p, q, e2_rank(spec, p, q))
        for q in range(args.max_degree + 1)
        for p in range(args.max_degree + 1 - q)
    ]
    return Report(description, rows, e2_page=page)


def run_cycles(description: RackDescription, args: argparse.Namespace) -> Report:
    rack = description.finite_rack()
    rows = []
    for n in range(args.max_degree + 1):
        recipes = basis_recipes(rack, n, args.basis_cap)
        rank, independent = independence_certificate(
            rack, [recipe.evaluate() for recipe in recipes]
        )
        rows.append(
            Row(
                degree=n,
                bn_size=len(recipes),
                certificate_rank=rank,
                independent=independent,
                recipes=[recipe.describe() for recipe in recipes],
            )
        )
    return Report(description, rows)


def run_verify(description: RackDescription, args: argparse.Namespace) -> Report:
    rack = description.finite_rack()
    spec = description.spec()
    groups = homology_table(rack, args.max_degree, args.basis_cap)
    rows = []
    all_match = True
    for n, group in enumerate(groups):
        closed = betti(spec, n)
        e2_total = _e2_total(spec, n)
        recipes = basis_recipes(rack, n, args.basis_cap)
        rank, independent = independence_certificate(
            rack, [recipe.evaluate() for recipe in recipes]
        )
        match = (
            group.free_rank == closed == e2_total == len(recipes) == rank
            and independent
            and not group.torsion
        )
        all_match = all_match and match
        rows.append(
            Row(
                degree=n,
                free_rank=group.free_rank,
                torsion=group.torsion,
                closed_form=closed,
                e2_total=e2_total,
                bn_size=len(recipes),
                certificate_rank=rank,
                independent=independent,
            )
        )
    return Report(description, rows, status="ok" if all_match else "mismatch")


_RUNNERS = {
    "validate": run_validate,
    "homology": run_homology,
    "betti": run_betti,
    "e2": run_e2,
    "cycles": run_cycles,
    "verify": run_verify,
}


def emit_json(report: Report) -> str:
    results = []
    for row in report.rows:
        item: dict[str, Any] = {
            "degree": row.degree,
            "free_rank": row.free_rank,
            "torsion": list(row.torsion) if row.torsion is not None else None,
            "closed_form": row.closed_form,
            "e2_total": row.e2_total,
        }
        if row.bn_size is not None:
            item["bn_size"] = row.bn_size
            item["certificate_rank"] = row.certificate_rank
            item["independent"] = row.independent
        if row.recipes is not None:
            item["recipes"] = row.recipes
        results.append(item)
    document: dict[str, Any] = {
        "rack": report.description.canonical(),
        "results": results,
        "status": report.status,
    }
    if report.summary is not None:
        document["summary"] = report.summary
    if report.series is not None:
        document["poincare_series"] = report.series
    if report.e2_page is not None:
        document["e2_page"] = [
            {"p": p, "q": q, "rank": rank} for p, q, rank in report.e2_page
        ]
    return json.dumps(document, indent=2)


def emit_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if report.summary is not None:
        writer.writerow(["field", "value"])
        for key, value in report.summary.items():
            writer.writerow([key, json.dumps(value) if isinstance(value, list) else value])
        return buffer.getvalue()
    writer.writerow(
        ["degree", "free_rank", "torsion", "closed_form_rank", "e2_total", "bn_size"]
    )
    for row in report.rows:
        writer.writerow(
            [
                row.degree,
                "" if row.free_rank is None else row.free_rank,
                "" if row.torsion is None else ";".join(map(str, row.torsion)),
                "" if row.closed_form is None else row.closed_form,
                "" if row.e2_total is None else row.e2_total,
                "" if row.bn_size is None else row.bn_size,
            ]
        )
    return buffer.getvalue()


def emit_table(report: Report) -> str:
    lines = []
    if report.summary is not None:
        for key, value in report.summary.items():
            lines.append(f"{key}: {value}")
        lines.append(f"status: {report.status}")
        return "\n".join(lines) + "\n"
    header = ("degree", "free_rank", "torsion", "closed_form", "e2_total", "bn_size")
    widths = [len(h) for h in header]
    table_rows = []
    for row in report.rows:
        cells = (
            str(row.degree),
            "-" if row.free_rank is None else str(row.free_rank),
            "-"
            if row.torsion is None
            else (";".join(map(str, row.torsion)) or "none"),
            "-" if row.closed_form is None else str(row.closed_form),
            "-" if row.e2_total is None else str(row.e2_total),
            "-" if row.bn_size is None else str(row.bn_size),
        )
        widths = [max(w, len(c)) for w, c in zip(widths, cells)]
        table_rows.append(cells)
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for cells in table_rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    for row in report.rows:
        if row.recipes is not None:
            joined = ", ".join(row.recipes)
            lines.append(f"B_{row.degree}: {joined}")
    if report.series is not None:
        lines.append("poincare_series: " + ", ".join(map(str, report.series)))
    if report.e2_page is not None:
        lines.append("e2_page (p, q, rank):")
        for p, q, rank in report.e2_page:
            if rank:
                lines.append(f"  ({p}, {q}): {rank}")
    lines.append(f"status: {report.status}")
    return "\n".join(lines) + "\n"


_EMITTERS = {"json": emit_json, "csv": emit_csv, "table": emit_table}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_degree < 0:
        print("ParseError: --max-degree must be nonnegative", file=sys.stderr)
        return 2
    if args.terms < 1 or args.basis_cap < 1:
        print("ParseError: --terms and --basis-cap must be positive", file=sys.stderr)
        return 2
    try:
        description = load_description(args.input)
        report = _RUNNERS[args.command](description, args)
    except Exception as exc:  # noqa: BLE001 - mapped to stable names below
        name = _error_name(exc)
        if name is None:
            raise
        print(f"{name}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_EMITTERS[args.output_format](report))
    return 1 if report.status == "mismatch" else 0
