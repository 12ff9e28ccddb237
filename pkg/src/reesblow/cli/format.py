"""Rendering output records as text or JSON Lines."""

from __future__ import annotations

import json

from .session import SCHEMA, OutputRecord


def format_output(record: OutputRecord, mode: str = "text") -> str:
    if mode == "json":
        obj = {"schema": SCHEMA, "line": record.line, "command": record.command, "status": record.status,
               "result": record.payload}
        if record.timing is not None:
            obj["timing"] = record.timing
        return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))
    lines = [f"> {record.command}"] + record.text
    if record.timing is not None:
        lines.append(f"({record.timing:.6f} s)")
    return "\n".join(lines)
