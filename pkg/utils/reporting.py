# Versch Forge - Verschiebung Equations Toolkit
# Copyright (C) 2025 Versch Forge Project
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""Run reports, canonical JSON and seeded randomness."""

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import numpy as np

__version__ = "0.1.0"

STATUS_OK = "ok"
STATUS_FAILED = "failed"
STATUS_ERROR = "error"


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def canonical_json(data):
    """Sorted keys, compact separators, trailing newline."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=_default) + "\n"


def pretty_json(data):
    return json.dumps(data, sort_keys=True, indent=2, default=_default) + "\n"


@dataclass
class Report:
    """One command run, serialisable byte-for-byte."""

    command: str
    field: Optional[str] = None
    inputs: dict = dc_field(default_factory=dict)
    outputs: dict = dc_field(default_factory=dict)
    certificates: dict = dc_field(default_factory=dict)
    seed: Optional[int] = None
    status: str = STATUS_OK
    version: str = __version__
    wall_time: Optional[float] = None

    def to_dict(self, timing=False):
        data = {
            "command": self.command,
            "field": self.field,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "certificates": self.certificates,
            "seed": self.seed,
            "status": self.status,
            "version": self.version,
        }
        if timing and self.wall_time is not None:
            data["wall_time"] = round(self.wall_time, 3)
        return data

    def to_json(self, timing=False):
        return canonical_json(self.to_dict(timing=timing))


def error_report(command, error, seed=None):
    """Report for a failed run; error is a VerschError or a plain message."""
    details = error.to_dict() if hasattr(error, "to_dict") else {"error": "usage_error", "message": str(error)}
    return Report(command=command, outputs=details, seed=seed, status=STATUS_ERROR)


def make_rng(seed=0):
    """numpy Generator on PCG64."""
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed, count):
    """Independent generators for sub-tasks, reproducible from one seed."""
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(count)]
