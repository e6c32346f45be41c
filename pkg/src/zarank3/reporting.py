"""Input parsing and JSON reports shared by the CLI."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from . import builtins
from .forms import SosDecomposition
from .graph import AugmentedGraph, GraphError


class InputError(Exception):
    """Unreadable or malformed input (maps to exit status 2)."""


class ReportKind(str, enum.Enum):
    VERIFY = "Verify"
    CERTIFY = "Certify"
    SEARCH = "Search"
    EXPAND = "Expand"


@dataclass
class Report:
    kind: ReportKind
    payload: dict
    paper_citations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "payload": self.payload, "citations": list(self.paper_citations)}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(ReportKind(d["kind"]), d["payload"], d.get("citations", []))


Source = Union[AugmentedGraph, SosDecomposition]


def load_source(spec: str) -> tuple[str | None, Source]:
    """Resolve ``builtin:<id>`` or a JSON file holding a graph or a decomposition.

    Returns the builtin id (or None) and the parsed object.
    """
    if spec.startswith("builtin:"):
        gid = spec.split(":", 1)[1]
        if gid not in builtins.GRAPHS:
            raise InputError(f"unknown builtin {gid!r}; choose from {', '.join(builtins.BUILTIN_IDS)}")
        return gid, builtins.GRAPHS[gid]()
    try:
        text = Path(spec).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    return None, parse_text(text, spec)


def parse_text(text: str, name: str = "<input>") -> Source:
    try:
        data: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{name}: expected a JSON object")
    try:
        if "forms" in data:
            return SosDecomposition.from_dict(data)
        return AugmentedGraph.from_dict(data)
    except (GraphError, ValueError) as exc:
        raise InputError(f"{name}: {exc}") from None
