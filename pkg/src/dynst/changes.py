"""Change-log records shared by the reference schemes and the engines."""
from __future__ import annotations

from dataclasses import asdict, dataclass

# "drop" records a vertex leaving the tree before its reconnection edges
KINDS = ("connect", "replace", "reconnect", "mark", "unmark", "drop")


@dataclass(frozen=True)
class Change:
    kind: str
    u: int
    v: int = -1
    weight: float = 0.0
    level: int | None = None
    # endpoints and weight of the edge that left the tree, for replacements
    old: tuple[int, int, float] | None = None

    def to_dict(self) -> dict:
        out = {k: val for k, val in asdict(self).items() if val is not None}
        if self.old is not None:
            out["old"] = list(self.old)
        return out
