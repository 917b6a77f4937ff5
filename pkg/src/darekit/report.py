"""Aggregation of classified results into plot-ready report views.

Three views mirror the corpus-level result charts: exclusionary comments
per project, per attribute, and a project-by-attribute heatmap over the
top projects. A multi-label comment counts once per project and once per
attribute it carries, which is why attribute totals can exceed the
number of exclusionary comments.

Exports are bit-stable: fixed column order, LF line endings, UTF-8
without BOM.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import UnwritablePathError
from .taxonomy import AttributeId


@dataclass(frozen=True)
class ResultRecord:
    """One results.jsonl line reduced to what aggregation needs."""

    project_id: str
    message_id: str
    offensive: bool
    attributes: tuple[AttributeId, ...]

    @property
    def exclusionary(self) -> bool:
        return self.offensive and bool(self.attributes)


def load_results(path: str | Path) -> list[ResultRecord]:
    """Parse a results.jsonl file written by the pipeline."""
    records: list[ResultRecord] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            raw = json.loads(line)
            records.append(
                ResultRecord(
                    project_id=raw["project_id"],
                    message_id=raw["message_id"],
                    offensive=bool(raw["offensive"]),
                    attributes=tuple(
                        AttributeId.from_wire(label["attribute"])
                        for label in raw.get("labels", [])
                    ),
                )
            )
    return records


@dataclass(frozen=True)
class ProjectCounts:
    project_id: str
    count: int


@dataclass(frozen=True)
class ProjectReport:
    """Per-project exclusionary comment counts, descending."""

    entries: tuple[ProjectCounts, ...]
    projects_with_offences: int
    total_projects: int

    @property
    def percentage(self) -> float:
        if self.total_projects == 0:
            return 0.0
        return 100.0 * self.projects_with_offences / self.total_projects


@dataclass(frozen=True)
class AttributeCounts:
    attribute: AttributeId
    count: int


@dataclass(frozen=True)
class HeatmapCell:
    project_id: str
    attribute: AttributeId
    count: int


@dataclass(frozen=True)
class Heatmap:
    """Counts for every (top-k project, attribute) pair, zeros included."""

    projects: tuple[str, ...]
    cells: tuple[HeatmapCell, ...]
    distinct_attributes: tuple[tuple[str, int], ...]


def offences_per_project(
    records: list[ResultRecord], total_projects: int | None = None
) -> ProjectReport:
    """Exclusionary comments per project, descending, ties by project_id.

    total_projects defaults to the distinct projects present in the
    records; pass the pipeline's projects_seen counter when the results
    file holds offensive records only.
    """
    counts: dict[str, int] = {}
    seen: set[str] = set()
    for record in records:
        seen.add(record.project_id)
        if record.exclusionary:
            counts[record.project_id] = counts.get(record.project_id, 0) + 1
    entries = tuple(
        ProjectCounts(project_id=pid, count=c)
        for pid, c in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    )
    return ProjectReport(
        entries=entries,
        projects_with_offences=len(counts),
        total_projects=len(seen) if total_projects is None else total_projects,
    )


def offences_per_attribute(records: list[ResultRecord]) -> list[AttributeCounts]:
    """Exclusionary (comment, attribute) pairs per attribute, fixed order, zeros kept."""
    counts = {attr: 0 for attr in AttributeId}
    for record in records:
        if not record.exclusionary:
            continue
        for attr in set(record.attributes):
            counts[attr] += 1
    return [AttributeCounts(attribute=a, count=counts[a]) for a in AttributeId]


def attribute_project_heatmap(records: list[ResultRecord], top_k: int) -> Heatmap:
    """Per-attribute counts for the top_k projects of offences_per_project."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    order = offences_per_project(records).entries
    projects = tuple(entry.project_id for entry in order[:top_k])
    chosen = set(projects)
    counts: dict[tuple[str, AttributeId], int] = {}
    for record in records:
        if not record.exclusionary or record.project_id not in chosen:
            continue
        for attr in set(record.attributes):
            key = (record.project_id, attr)
            counts[key] = counts.get(key, 0) + 1
    cells = tuple(
        HeatmapCell(project_id=pid, attribute=attr, count=counts.get((pid, attr), 0))
        for pid in projects
        for attr in AttributeId
    )
    distinct = tuple(
        (pid, sum(1 for attr in AttributeId if counts.get((pid, attr), 0) > 0))
        for pid in projects
    )
    return Heatmap(projects=projects, cells=cells, distinct_attributes=distinct)


def project_report_to_dict(report: ProjectReport) -> dict:
    return {
        "view": "projects",
        "entries": [
            {"project_id": e.project_id, "count": e.count} for e in report.entries
        ],
        "projects_with_offences": report.projects_with_offences,
        "total_projects": report.total_projects,
        "percentage": report.percentage,
    }


def attribute_counts_to_dict(counts: list[AttributeCounts]) -> dict:
    return {
        "view": "attributes",
        "entries": [
            {"attribute": c.attribute.value, "count": c.count} for c in counts
        ],
    }


def heatmap_to_dict(heatmap: Heatmap) -> dict:
    return {
        "view": "heatmap",
        "projects": list(heatmap.projects),
        "cells": [
            {
                "project_id": c.project_id,
                "attribute": c.attribute.value,
                "count": c.count,
            }
            for c in heatmap.cells
        ],
        "distinct_attributes": [
            {"project_id": pid, "attributes": n}
            for pid, n in heatmap.distinct_attributes
        ],
    }


def export_report(
    report: ProjectReport | list[AttributeCounts] | Heatmap,
    format: str,
    path: str | Path,
) -> None:
    """Write a view as CSV or JSON; both forms re-read losslessly.

    CSV headers are fixed: "project_id,count", "attribute,count", or
    "project_id,attribute,count" depending on the view.
    """
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if format == "json":
                json.dump(_to_dict(report), fh, ensure_ascii=False, indent=2)
                fh.write("\n")
            elif format == "csv":
                writer = csv.writer(fh, lineterminator="\n")
                for row in _csv_rows(report):
                    writer.writerow(row)
            else:
                raise ValueError(f"unknown export format: {format!r}")
    except OSError as exc:
        raise UnwritablePathError(f"cannot write report: {exc}") from exc


def _to_dict(report) -> dict:
    if isinstance(report, ProjectReport):
        return project_report_to_dict(report)
    if isinstance(report, Heatmap):
        return heatmap_to_dict(report)
    return attribute_counts_to_dict(report)


def _csv_rows(report):
    if isinstance(report, ProjectReport):
        yield ["project_id", "count"]
        for entry in report.entries:
            yield [entry.project_id, entry.count]
    elif isinstance(report, Heatmap):
        yield ["project_id", "attribute", "count"]
        for cell in report.cells:
            yield [cell.project_id, cell.attribute.value, cell.count]
    else:
        yield ["attribute", "count"]
        for entry in report:
            yield [entry.attribute.value, entry.count]


def load_exported(path: str | Path) -> dict | list[dict]:
    """Re-read an exported report: JSON as written, CSV as a list of row dicts."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith(("{", "[")):
        return json.loads(text)
    rows = list(csv.DictReader(text.splitlines()))
    return rows
