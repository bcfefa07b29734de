"""Verdict-plus-evidence records returned by every orthogonality check."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np


class Verdict(str, Enum):
    ORTHOGONAL = "orthogonal"
    NOT_ORTHOGONAL = "not_orthogonal"


@dataclass
class OrthCertificate:
    """Outcome of a Birkhoff-James orthogonality check.

    ``witness`` is level dependent: a vector ``y0`` for matrices, a pair
    ``(x0, y0)`` for bilinear forms, a pair of grid points ``(u1, u2)`` for
    sampled functions and a pair of unit vectors for operators.  Refutations
    carry ``lambda_star`` with ``min_value = ||x + lambda_star * y||`` instead.
    """

    verdict: Verdict
    level: str
    witness: Any = None
    lambda_star: Optional[float] = None
    min_value: Optional[float] = None
    degenerate: bool = False
    residuals: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def orthogonal(self) -> bool:
        return self.verdict is Verdict.ORTHOGONAL

    def __bool__(self) -> bool:
        return self.orthogonal

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "level": self.level,
            "degenerate": self.degenerate,
            "witness": _plain(self.witness),
            "lambda_star": _plain(self.lambda_star),
            "min_value": _plain(self.min_value),
            "residuals": {k: _plain(v) for k, v in self.residuals.items()},
            "details": {k: _plain(v) for k, v in self.details.items()},
            "notes": list(self.notes),
        }


def _plain(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")
