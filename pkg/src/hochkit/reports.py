"""Deterministic tabular reports with a machine-readable JSON copy.

Identical inputs produce byte-identical text: rows are emitted in the order
given (pipelines sort them), JSON uses sorted keys, and no timestamps or
environment data appear anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    claim: str
    parameters: dict
    columns: tuple
    rows: list
    passed: bool | None = None
    notes: list = field(default_factory=list)

    def verdict(self) -> str:
        if self.passed is None:
            return "REPORT"
        return "PASS" if self.passed else "FAIL"

    def to_text(self) -> str:
        lines = [f"# {self.title}", f"claim: {self.claim}"]
        for k in sorted(self.parameters):
            lines.append(f"param {k}: {_plain(self.parameters[k])}")
        widths = [len(str(c)) for c in self.columns]
        str_rows = [[_plain(v) for v in row] for row in self.rows]
        for row in str_rows:
            for i, v in enumerate(row):
                widths[i] = max(widths[i], len(v))
        header = "  ".join(str(c).ljust(widths[i]) for i, c in enumerate(self.columns))
        lines.append(header)
        lines.append("-" * len(header))
        for row in str_rows:
            lines.append("  ".join(v.ljust(widths[i]) for i, v in enumerate(row)))
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"result: {self.verdict()}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "title": self.title,
            "claim": self.claim,
            "parameters": self.parameters,
            "columns": list(self.columns),
            "rows": [[_jsonable(v) for v in row] for row in self.rows],
            "notes": list(self.notes),
            "result": self.verdict(),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _plain(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)
