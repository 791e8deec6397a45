"""DropConnect-style mask schedules from spanning designs.

Each row of a spanning design matrix reshapes (row-major by left point) into
one v1 x v2 binary connection mask.  Spanning guarantees no mask has a zero
row or zero column, so no unit of either layer is ever fully disconnected,
and stacking all masks edge-wise reproduces the design's replication counts.

Serialization: JSON ({"v1", "v2", "masks": [[[0/1 ...] ...] ...]}) or a flat
binary layout with a 3 x uint32 little-endian header (N, v1, v2) followed by
N*v1*v2 row-major mask bytes.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .analyzer import check_sbbd, is_spanning
from .design_core import DesignMatrix, FormatError, SbbdError


class SpanningViolation(SbbdError):
    """Mask export refused: some mask would drop an entire row or column."""


@dataclass(frozen=True)
class MaskSchedule:
    v1: int
    v2: int
    masks: np.ndarray = field(repr=False)  # (N, v1, v2) of 0/1

    def __post_init__(self):
        m = np.ascontiguousarray(self.masks, dtype=np.uint8)
        m.flags.writeable = False
        object.__setattr__(self, "masks", m)

    @property
    def n_masks(self) -> int:
        return self.masks.shape[0]


def export_masks(x: DesignMatrix) -> MaskSchedule:
    """Reshape each design row into a v1 x v2 mask; refuse non-spanning input."""
    check_sbbd(x)
    if not is_spanning(x):
        raise SpanningViolation(
            "design does not satisfy the spanning condition; masks would"
            " disconnect a unit"
        )
    return MaskSchedule(x.v1, x.v2, x.matrix.reshape(x.n_rows, x.v1, x.v2))


def schedule_to_json(schedule: MaskSchedule) -> str:
    return json.dumps(
        {
            "v1": schedule.v1,
            "v2": schedule.v2,
            "masks": schedule.masks.tolist(),
        }
    )


def schedule_to_bytes(schedule: MaskSchedule) -> bytes:
    header = struct.pack(
        "<III", schedule.n_masks, schedule.v1, schedule.v2
    )
    return header + schedule.masks.tobytes()


def schedule_from_bytes(data: bytes) -> MaskSchedule:
    if len(data) < 12:
        raise FormatError("mask blob shorter than its 12-byte header")
    n, v1, v2 = struct.unpack("<III", data[:12])
    body = np.frombuffer(data[12:], dtype=np.uint8)
    if body.size != n * v1 * v2:
        raise FormatError(
            f"mask blob body has {body.size} bytes, expected {n * v1 * v2}"
        )
    return MaskSchedule(v1, v2, body.reshape(n, v1, v2).copy())
