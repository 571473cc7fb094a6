"""Strict JSON loading shared by the file formats.

Every format rejects unknown keys so that typos fail loudly instead of
being silently ignored.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import SchemaError


def load_json_object(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    return obj


def require_keys(obj: dict, required: tuple[str, ...], context: str) -> None:
    """Check that obj has exactly the required keys, no more, no fewer."""
    missing = [key for key in required if key not in obj]
    if missing:
        raise SchemaError(f"{context}: missing key(s) {', '.join(missing)}")
    unknown = [key for key in obj if key not in required]
    if unknown:
        raise SchemaError(f"{context}: unknown key(s) {', '.join(unknown)}")


def name_list(value: object, context: str) -> tuple[str, ...]:
    """Validate a JSON array of distinct nonempty strings."""
    if not isinstance(value, list) or not all(
        isinstance(x, str) and x for x in value
    ):
        raise SchemaError(f"{context}: expected an array of nonempty strings")
    if len(set(value)) != len(value):
        raise SchemaError(f"{context}: names must be distinct")
    if not value:
        raise SchemaError(f"{context}: need at least one name")
    return tuple(value)


def dump_json(obj: dict, path: str | Path | None) -> str:
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
