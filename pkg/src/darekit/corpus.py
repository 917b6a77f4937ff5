"""Corpus ingestion and the batch classification pipeline.

Sources are JSONL or CSV files read as streams, so corpora far larger
than memory ingest fine. Malformed records are skipped with a diagnostic
rather than aborting the run; only I/O-level failures end a run early,
and such runs are marked incomplete in their summary.

Pipeline output is deterministic for a given (source, config) pair:
results are sorted by (project_id, message_id), files use LF endings,
and the summary carries content-derived hashes instead of timestamps.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .classify import classified_to_record, classify_comment
from .config import AppConfig, FieldMap
from .detect import Comment
from .errors import SchemaMismatchError, UnreadableSourceError
from .lexicon import build_matchers, load_manifest


class CorpusFormat(enum.Enum):
    JSONL = "jsonl"
    CSV = "csv"


@dataclass(frozen=True)
class CorpusSource:
    """A corpus file plus the mapping from its fields to Comment fields."""

    path: Path
    format: CorpusFormat
    fields: FieldMap = FieldMap()

    @classmethod
    def from_path(cls, path: str | Path, fields: FieldMap | None = None) -> "CorpusSource":
        """Infer the format from the file extension (.csv vs anything else)."""
        path = Path(path)
        fmt = CorpusFormat.CSV if path.suffix.lower() == ".csv" else CorpusFormat.JSONL
        return cls(path=path, format=fmt, fields=fields or FieldMap())


@dataclass(frozen=True)
class IngestDiagnostic:
    """Why one source record was skipped. line 0 flags a whole-run abort."""

    line: int
    reason: str


def _record_to_comment(record: dict, fields: FieldMap) -> tuple[Comment | None, str | None]:
    project_id = record.get(fields.project_id) or fields.default_project_id
    message_id = record.get(fields.message_id)
    text = record.get(fields.text)
    if not project_id or not isinstance(project_id, str):
        return None, f"missing or empty field {fields.project_id!r}"
    if not message_id or not isinstance(message_id, str):
        return None, f"missing or empty field {fields.message_id!r}"
    if not isinstance(text, str):
        return None, f"missing or non-string field {fields.text!r}"
    author = record.get(fields.author_hash) if fields.author_hash else None
    timestamp = record.get(fields.timestamp) if fields.timestamp else None
    return (
        Comment(
            project_id=project_id,
            message_id=message_id,
            text=text,
            author_hash=author if isinstance(author, str) else "",
            timestamp=timestamp if isinstance(timestamp, str) else None,
        ),
        None,
    )


def ingest(
    source: CorpusSource, diagnostics: list[IngestDiagnostic] | None = None
) -> Iterator[Comment]:
    """Yield Comments in file order, collecting skip diagnostics.

    Raises UnreadableSourceError when the file cannot be opened or
    decoded, and SchemaMismatchError when a CSV header lacks a mapped
    column. Per-record problems never raise; they append to
    ``diagnostics`` and the record is skipped.
    """
    if diagnostics is None:
        diagnostics = []
    try:
        fh = open(source.path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise UnreadableSourceError(f"cannot open corpus source: {exc}") from exc
    with fh:
        try:
            if source.format is CorpusFormat.CSV:
                yield from _ingest_csv(fh, source.fields, diagnostics)
            else:
                yield from _ingest_jsonl(fh, source.fields, diagnostics)
        except UnicodeDecodeError as exc:
            raise UnreadableSourceError(f"corpus source is not UTF-8: {exc}") from exc


def _ingest_jsonl(fh, fields: FieldMap, diagnostics: list[IngestDiagnostic]) -> Iterator[Comment]:
    for line_no, line in enumerate(fh, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            diagnostics.append(IngestDiagnostic(line_no, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(record, dict):
            diagnostics.append(IngestDiagnostic(line_no, "record is not a JSON object"))
            continue
        comment, reason = _record_to_comment(record, fields)
        if comment is None:
            diagnostics.append(IngestDiagnostic(line_no, reason))
        else:
            yield comment


def _ingest_csv(fh, fields: FieldMap, diagnostics: list[IngestDiagnostic]) -> Iterator[Comment]:
    reader = csv.DictReader(fh)
    header = reader.fieldnames or []
    required = [fields.message_id, fields.text]
    if fields.default_project_id is None:
        required.insert(0, fields.project_id)
    missing = [name for name in required if name not in header]
    if missing:
        raise SchemaMismatchError(
            f"CSV header lacks mapped column(s): {', '.join(missing)}"
        )
    for record in reader:
        comment, reason = _record_to_comment(record, fields)
        if comment is None:
            diagnostics.append(IngestDiagnostic(reader.line_num, reason))
        else:
            yield comment


@dataclass(frozen=True)
class PipelineRun:
    """Summary of one batch run; counters obey exclusionary <= offensive <= read."""

    run_id: str
    config_hash: str
    comments_read: int
    offensive: int
    exclusionary: int
    skipped: int
    projects_seen: int
    complete: bool
    results_path: Path
    summary_path: Path
    diagnostics: tuple[IngestDiagnostic, ...]

    def __post_init__(self) -> None:
        if not (0 <= self.exclusionary <= self.offensive <= self.comments_read):
            raise ValueError("counter invariant violated")

    def counters(self) -> dict:
        return {
            "comments_read": self.comments_read,
            "offensive": self.offensive,
            "exclusionary": self.exclusionary,
            "skipped": self.skipped,
            "projects_seen": self.projects_seen,
        }


def config_digest(config: AppConfig) -> str:
    """Hash of everything that influences classification output.

    Covers the manifest file, every lexicon file it names, and the
    filter/field settings, so any content change yields a new digest.
    """
    h = hashlib.sha256()
    manifest_path = Path(config.manifest_path)
    manifest_bytes = manifest_path.read_bytes()
    h.update(manifest_bytes)
    entries = json.loads(manifest_bytes.decode("utf-8"))
    for lexicon_id in sorted(entries):
        h.update(lexicon_id.encode("utf-8"))
        h.update((manifest_path.parent / entries[lexicon_id]["path"]).read_bytes())
    h.update(repr(config.filter).encode("utf-8"))
    h.update(repr(config.fields).encode("utf-8"))
    return h.hexdigest()


def run_pipeline(
    source: CorpusSource,
    config: AppConfig,
    out_dir: str | Path,
    include_all: bool = False,
) -> PipelineRun:
    """Classify a whole corpus and persist results + summary.

    Writes ``results.jsonl`` (offensive records only, or everything with
    include_all) and ``summary.json`` into out_dir. A mid-stream source
    failure stops reading but still writes what was classified, with
    complete=false in the summary.
    """
    lexicons = load_manifest(config.manifest_path)
    bundle = build_matchers(lexicons)
    config_hash = config_digest(config)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    diagnostics: list[IngestDiagnostic] = []
    records: list[dict] = []
    comments_read = offensive = exclusionary = 0
    projects: set[str] = set()
    complete = True
    try:
        for comment in ingest(source, diagnostics):
            comments_read += 1
            projects.add(comment.project_id)
            classified = classify_comment(
                comment,
                bundle.profanity,
                bundle.attributes,
                bundle.gazetteers,
                config.filter,
            )
            if classified.detection.offensive:
                offensive += 1
                if classified.socially_exclusionary:
                    exclusionary += 1
            if include_all or classified.detection.offensive:
                records.append(classified_to_record(classified))
    except UnreadableSourceError as exc:
        complete = False
        diagnostics.append(IngestDiagnostic(0, f"run aborted: {exc}"))

    records.sort(key=lambda r: (r["project_id"], r["message_id"]))
    results_path = out_dir / "results.jsonl"
    results_payload = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
    with open(results_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(results_payload)

    results_hash = hashlib.sha256(results_payload.encode("utf-8")).hexdigest()
    run_id = hashlib.sha256(
        f"{config_hash}:{results_hash}:{comments_read}:{len(diagnostics)}".encode("utf-8")
    ).hexdigest()[:12]

    summary_path = out_dir / "summary.json"
    run = PipelineRun(
        run_id=run_id,
        config_hash=config_hash,
        comments_read=comments_read,
        offensive=offensive,
        exclusionary=exclusionary,
        skipped=len(diagnostics),
        projects_seen=len(projects),
        complete=complete,
        results_path=results_path,
        summary_path=summary_path,
        diagnostics=tuple(diagnostics),
    )
    summary = {
        "run_id": run.run_id,
        "config_hash": run.config_hash,
        "complete": run.complete,
        "counters": run.counters(),
        "results": results_path.name,
        "diagnostics": [{"line": d.line, "reason": d.reason} for d in diagnostics],
    }
    with open(summary_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    return run
