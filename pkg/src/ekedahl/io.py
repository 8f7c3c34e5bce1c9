"""Group files and window-sum files."""

from __future__ import annotations

import json
from pathlib import Path

from .abelian import L0AbElement
from .errors import BadFormat, ValidationError, ValidationFailed
from .groups import FiniteGroup, group_from_permutations, group_from_table

GROUP_FORMATS = ("group-table-v1", "group-perms-v1")


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BadFormat(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadFormat(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def group_from_json(data, source="<input>") -> FiniteGroup:
    if not isinstance(data, dict):
        raise BadFormat(f"{source}: expected a JSON object")
    fmt = data.get("format")
    if fmt not in GROUP_FORMATS:
        raise BadFormat(f"{source}: unknown format tag {fmt!r}; expected one of {GROUP_FORMATS}")
    try:
        if fmt == "group-table-v1":
            if "table" not in data:
                raise ValidationFailed(f"{source}: missing field 'table'")
            return group_from_table(data["table"], data.get("names"))
        if "generators" not in data:
            raise ValidationFailed(f"{source}: missing field 'generators'")
        return group_from_permutations(data["generators"], data.get("degree"))
    except ValidationFailed:
        raise
    except (ValidationError, TypeError) as exc:
        field = "table" if fmt == "group-table-v1" else "generators"
        raise ValidationFailed(f"{source}: field {field!r}: {exc}") from exc


def parse_group_file(path) -> FiniteGroup:
    """Validated group from a ``group-table-v1`` or ``group-perms-v1`` file."""
    return group_from_json(_load_json(path), str(path))


def write_group_file(G: FiniteGroup, path) -> None:
    Path(path).write_text(json.dumps(G.to_json()))


def parse_window_sums(path) -> dict[int, L0AbElement]:
    """``{"k": "Z + Z/2", ...}``, optionally wrapped as ``{"format": "window-sums-v1", "sums": {...}}``."""
    data = _load_json(path)
    if isinstance(data, dict) and "sums" in data:
        data = data["sums"]
    if not isinstance(data, dict):
        raise BadFormat(f"{path}: expected an object mapping k to L0(Ab) classes")
    out = {}
    for k, v in data.items():
        try:
            out[int(k)] = L0AbElement.parse(str(v))
        except ValueError as exc:
            raise ValidationFailed(f"{path}: entry {k!r}: {exc}") from exc
    return out
