"""Machine-readable reports: deterministic JSON with exact rationals as strings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, is_dataclass

from gmpy2 import mpq

from .poly import Poly, VectorField, format_field

__all__ = ["Report", "jsonable", "load_report"]

TOOL_VERSION = "0.1.0"


def _rational(c) -> str | int:
    c = mpq(c)
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def jsonable(obj):
    """Plain JSON structure for results: polynomials print, rationals become ints or "p/q"."""
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else ("inf" if obj > 0 else "-inf" if obj < 0 else "nan")
    if type(obj).__name__ == "mpq":
        return _rational(obj)
    if isinstance(obj, Poly):
        return str(obj)
    if isinstance(obj, VectorField):
        return format_field(obj)
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "item"):  # numpy scalars
        return jsonable(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    seed: int | None = None
    tool_version: str = TOOL_VERSION
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "results": jsonable(self.results),
            "seed": self.seed,
            "tool_version": self.tool_version,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(d["command"], d["inputs"], d["results"], d.get("seed"),
                   d.get("tool_version", TOOL_VERSION), list(d.get("notes", [])))

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())


def load_report(path) -> Report:
    with open(path) as fh:
        return Report.from_json(fh.read())
