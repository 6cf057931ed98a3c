"""Structured theorem verdicts and their JSON-lines encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

HOLDS = "holds"
DEGENERATE = "degenerate-branch"
NOT_APPLICABLE = "not-applicable"
VIOLATED = "violated"
VERDICTS = (HOLDS, DEGENERATE, NOT_APPLICABLE, VIOLATED)


@dataclass
class TheoremReport:
    theorem: str
    ambient: str
    inputs: list
    dims: dict
    bound: int | None
    verdict: str
    certificate: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "ambient": self.ambient,
            "inputs": list(self.inputs),
            "dims": dict(self.dims),
            "bound": self.bound,
            "verdict": self.verdict,
            "certificate": self.certificate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=False)

    @classmethod
    def from_json(cls, line: str) -> "TheoremReport":
        return cls(**json.loads(line))


def verdict_for(ok: bool) -> str:
    return HOLDS if ok else VIOLATED
