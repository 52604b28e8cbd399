"""Deterministic JSON reports."""

from __future__ import annotations

import hashlib
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import __version__
from .orders import OrderVerdict


def _plain(obj):
    """Recursively convert to JSON-safe builtins; non-finite floats become strings."""
    if isinstance(obj, OrderVerdict):
        return _plain(obj.to_dict())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest(obj) -> str:
    """sha256 of the canonical JSON encoding."""
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


@dataclass
class Report:
    command: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    solver_outputs: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def inputs_digest(self) -> str:
        return digest(self.inputs)

    @contextmanager
    def timed(self, phase: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[phase] = round(1000.0 * (time.perf_counter() - t0), 3)

    def to_dict(self, with_timings: bool = True) -> dict:
        d = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "verdicts": _plain(self.verdicts),
            "solver_outputs": _plain(self.solver_outputs),
            "tool_version": self.tool_version,
        }
        if with_timings:
            d["timings_ms"] = dict(self.timings)
        return d

    def to_json(self, with_timings: bool = True) -> str:
        return json.dumps(self.to_dict(with_timings), sort_keys=True, indent=2, allow_nan=False) + "\n"
