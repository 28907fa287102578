"""Outcomes returned by every SCF engine."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union


@dataclass(frozen=True)
class Holds:
    """No fusion found; ``bound`` is the exhausted search bound, not a proof."""

    bound: int

    def to_json(self) -> dict:
        return {"outcome": "holds", "bound": self.bound}


@dataclass(frozen=True)
class Fails:
    """SCF fails; ``witness`` certifies two elements fused by the inclusion."""

    witness: Any

    def to_json(self) -> dict:
        return {"outcome": "fails", **self.witness.to_json()}


ScfVerdict = Union[Holds, Fails]
