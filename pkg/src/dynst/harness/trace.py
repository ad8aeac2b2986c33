"""Terminal update traces stored as JSON Lines."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from dynst.errors import ParseError, SequenceError

OPS = ("add", "remove")


@dataclass(frozen=True)
class Op:
    op: str
    v: int


def parse_trace(text: str, n: int | None = None) -> list[Op]:
    trace = []
    live: set[int] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: {exc.msg}") from None
        if not isinstance(rec, dict) or set(rec) != {"op", "v"}:
            raise ParseError(f"line {lineno}: expected keys op and v")
        op, v = rec["op"], rec["v"]
        if op not in OPS:
            raise ParseError(f"line {lineno}: unknown op {op!r}")
        if not isinstance(v, int) or isinstance(v, bool) or v < 0 or (n is not None and v >= n):
            raise ParseError(f"line {lineno}: bad vertex {v!r}")
        if op == "add":
            if v in live:
                raise SequenceError(f"line {lineno}: {v} is already a terminal")
            live.add(v)
        else:
            if v not in live:
                raise SequenceError(f"line {lineno}: {v} is not a terminal")
            live.discard(v)
        trace.append(Op(op, v))
    return trace


def read_trace(path, n: int | None = None) -> list[Op]:
    return parse_trace(Path(path).read_text(), n)


def serialize_trace(trace: list[Op]) -> str:
    return "".join(json.dumps({"op": o.op, "v": o.v}, separators=(",", ":")) + "\n" for o in trace)
