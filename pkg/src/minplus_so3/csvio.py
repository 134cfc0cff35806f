"""CSV contract for per-step run logs.

Full matrices are logged row-major so every metric and figure can be
recomputed offline.  Floats are written with shortest round-trip repr, which
makes repeated runs byte-identical and parsing lossless.
"""

from __future__ import annotations

import io

import numpy as np

from .simulate import StepRecord

_MATRIX_FIELDS = ("rhat", "rtrue", "y")

CSV_HEADER = "t,meas_noise,tracking_error,value,term_count," + ",".join(
    f"{name}_{i}{j}" for name in _MATRIX_FIELDS for i in range(3) for j in range(3)
)


def _fmt(x: float) -> str:
    return repr(float(x))


def render_csv(records: list[StepRecord]) -> bytes:
    """Serialize records to the exact CSV wire format (LF newlines)."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for rec in records:
        cells = [_fmt(rec.t), _fmt(rec.meas_noise), _fmt(rec.tracking_error), _fmt(rec.value), str(rec.term_count)]
        for mat in (rec.r_hat, rec.r_true, rec.y):
            cells.extend(_fmt(v) for v in np.asarray(mat, dtype=float).reshape(9))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue().encode("ascii")


def parse_csv(data: bytes | str) -> list[StepRecord]:
    """Read the wire format back into step records (for round-trip checks)."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or mismatched CSV header")
    records = []
    for row, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != 32:
            raise ValueError(f"row {row}: expected 32 columns, got {len(cells)}")
        mats = [np.array([float(c) for c in cells[5 + 9 * k : 14 + 9 * k]]).reshape(3, 3) for k in range(3)]
        records.append(
            StepRecord(
                t=float(cells[0]),
                meas_noise=float(cells[1]),
                tracking_error=float(cells[2]),
                value=float(cells[3]),
                term_count=int(cells[4]),
                r_hat=mats[0],
                r_true=mats[1],
                y=mats[2],
            )
        )
    return records
