"""Application configuration shared by the CLI and the HTTP service.

Config files are TOML or JSON (chosen by extension). Every key is
optional; omitted keys fall back to defaults that point at the bundled
lexicons, so `darekit check` works out of the box.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .detect import FilterConfig
from .lexicon import bundled_manifest_path


@dataclass(frozen=True)
class FieldMap:
    """Names of the corpus columns/keys that feed Comment fields.

    default_project_id covers single-project exports that carry no
    project column at all.
    """

    project_id: str = "project_id"
    message_id: str = "message_id"
    text: str = "text"
    author_hash: str | None = "author_hash"
    timestamp: str | None = "timestamp"
    default_project_id: str | None = None


@dataclass(frozen=True)
class AppConfig:
    """Resolved configuration; paths are absolute once loaded."""

    manifest_path: Path
    filter: FilterConfig = field(default_factory=FilterConfig)
    fields: FieldMap = field(default_factory=FieldMap)
    strategy: str = "mask"
    max_text_length: int = 10_000
    runs_dir: Path | None = None
    cors_origins: tuple[str, ...] = ("*",)
    host: str = "127.0.0.1"
    port: int = 8000


def default_config() -> AppConfig:
    return AppConfig(manifest_path=bundled_manifest_path())


def load_config(path: str | Path | None) -> AppConfig:
    """Read TOML/JSON config; None yields the defaults.

    Raises FileNotFoundError or ValueError on unusable files.
    """
    if path is None:
        return default_config()
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    if path.suffix.lower() == ".json":
        data = json.loads(path.read_text(encoding="utf-8"))
    else:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config root must be a table/object")
    return _from_dict(data, base_dir=path.parent)


def _from_dict(data: dict, base_dir: Path) -> AppConfig:
    def resolve(p: str) -> Path:
        candidate = Path(p)
        return candidate if candidate.is_absolute() else (base_dir / candidate)

    manifest = (
        resolve(data["manifest"]) if "manifest" in data else bundled_manifest_path()
    )
    filter_cfg = FilterConfig(**data.get("filter", {}))
    fields = FieldMap(**data.get("fields", {}))
    runs_dir = resolve(data["runs_dir"]) if "runs_dir" in data else None
    service = data.get("service", {})
    return AppConfig(
        manifest_path=manifest,
        filter=filter_cfg,
        fields=fields,
        strategy=data.get("strategy", "mask"),
        max_text_length=int(service.get("max_text_length", 10_000)),
        runs_dir=runs_dir,
        cors_origins=tuple(service.get("cors_origins", ["*"])),
        host=service.get("host", "127.0.0.1"),
        port=int(service.get("port", 8000)),
    )
