"""Dater trajectories: checking reports, periodic unrolling and rendering."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import matrix as tm
from .dioid import format_scalar, parse_scalar
from .errors import DimensionMismatchError, UnsupportedFormatError

CONSTRAINTS = ("A0", "B0", "A1", "B1", "nondecreasing")


@dataclass(frozen=True)
class Violation:
    index: object  # k for a P-TEG, the prefix (tuple of modes) for an SLDI
    constraint: str
    row: int
    lhs: object
    rhs: object

    def __str__(self):
        return (
            f"{self.constraint} violated at {self.index!r}, row {self.row}: "
            f"{format_scalar(self.lhs)} > {format_scalar(self.rhs)}"
        )


@dataclass(frozen=True)
class TrajectoryReport:
    violation: Violation | None = None

    @property
    def passed(self) -> bool:
        return self.violation is None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self):
        return self.passed

    def as_dict(self) -> dict:
        if self.passed:
            return {"status": "pass"}
        v = self.violation
        index = v.index
        if isinstance(index, tuple):
            index = prefix_label(index)
        return {
            "status": "fail",
            "violation": {
                "index": index,
                "constraint": v.constraint,
                "row": v.row,
                "lhs": format_scalar(v.lhs),
                "rhs": format_scalar(v.rhs),
            },
        }


def _vec(x) -> np.ndarray:
    x = np.asarray(x)
    return x.reshape(-1, 1)


def _first_greater(lhs: np.ndarray, rhs: np.ndarray):
    for i in range(lhs.shape[0]):
        if lhs[i] > rhs[i]:
            return i
    return None


def check_within(index, x, A0, B0) -> Violation | None:
    """``A0 x <= x <= B0 (dual x) x`` for a single dater."""
    col = _vec(x)
    flat = col[:, 0]
    lower = tm.mat_otimes(A0, col)[:, 0]
    row = _first_greater(lower, flat)
    if row is not None:
        return Violation(index, "A0", row, lower[row], flat[row])
    upper = tm.mat_dual_otimes(B0, col)[:, 0]
    row = _first_greater(flat, upper)
    if row is not None:
        return Violation(index, "B0", row, flat[row], upper[row])
    return None


def check_transition(index, x, x_next, A1, B1) -> Violation | None:
    """``A1 x <= x_next <= B1 (dual x) x``."""
    col = _vec(x)
    nxt = np.asarray(x_next).reshape(-1)
    lower = tm.mat_otimes(A1, col)[:, 0]
    row = _first_greater(lower, nxt)
    if row is not None:
        return Violation(index, "A1", row, lower[row], nxt[row])
    upper = tm.mat_dual_otimes(B1, col)[:, 0]
    row = _first_greater(nxt, upper)
    if row is not None:
        return Violation(index, "B1", row, nxt[row], upper[row])
    return None


def check_nondecreasing(index, x, x_later) -> Violation | None:
    x = np.asarray(x).reshape(-1)
    x_later = np.asarray(x_later).reshape(-1)
    row = _first_greater(x, x_later)
    if row is not None:
        return Violation(index, "nondecreasing", row, x[row], x_later[row])
    return None


# --------------------------------------------------------------------------
# unrolling
# --------------------------------------------------------------------------


def prefix_label(prefix: Sequence[str]) -> str:
    """Row label of a schedule prefix: modes joined by dots, '' when empty."""
    return ".".join(prefix)


def parse_prefix_label(label: str) -> tuple:
    return tuple(label.split(".")) if label else ()


def unroll(sldi, schedule, x0, lam, K: int) -> dict:
    """Daters of all prefixes ``v^k v_1..v_h`` (k <= K, h < |v|) of a
    v-periodic trajectory with period ``lam``.

    ``x0`` is the stacked dater (length ``|v| * n``) of the first repetition.
    Keys are prefixes as tuples of mode names, in schedule order.
    """
    v = tuple(schedule)
    n = sldi.n
    x0 = np.asarray(x0).reshape(-1)
    if x0.shape[0] != len(v) * n:
        raise DimensionMismatchError(f"stacked dater has length {x0.shape[0]}, expected {len(v) * n}")
    blocks = x0.reshape(len(v), n)
    out = {}
    for k in range(K + 1):
        shift = k * lam
        for h in range(len(v)):
            out[v * k + v[:h]] = blocks[h] + shift
    return out


def periodic_trajectory(x0, lam, K: int) -> np.ndarray:
    """Rows ``x(k) = x0 + k * lam`` for ``k = 0..K``."""
    x0 = np.asarray(x0).reshape(-1)
    return np.stack([x0 + k * lam for k in range(K + 1)]) if K >= 0 else x0[:0]


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------


def _rows(traj):
    if isinstance(traj, Mapping):
        for key, x in traj.items():
            label = prefix_label(key) if isinstance(key, tuple) else str(key)
            yield label, np.asarray(x).reshape(-1)
    else:
        for k, x in enumerate(traj):
            yield str(k), np.asarray(x).reshape(-1)


def render(traj, events: Sequence[str], fmt: str = "csv") -> str:
    """Render a trajectory as CSV or an aligned text table.

    ``traj`` is a mapping from prefixes (or any labels) to daters, or a
    sequence of daters labelled by their index.
    """
    header = ["prefix", *events]
    rows = [[label, *(format_scalar(v) for v in x)] for label, x in _rows(traj)]
    for row in rows:
        if len(row) != len(header):
            raise DimensionMismatchError(f"row {row[0]!r} has {len(row) - 1} values for {len(events)} events")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "table":
        widths = [max(len(r[c]) for r in [header, *rows]) for c in range(len(header))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in [header, *rows]]
        return "\n".join(lines) + "\n"
    raise UnsupportedFormatError(f"unsupported format {fmt!r}; use 'csv' or 'table'")


def parse_csv(text: str, exact: bool = False):
    """Inverse of ``render(..., fmt="csv")``: returns ``(events, trajectory)``
    with prefixes as tuple keys."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise UnsupportedFormatError("empty trajectory file") from None
    events = header[1:]
    out = {}
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise DimensionMismatchError(f"row {row[0]!r} has {len(row) - 1} values for {len(events)} events")
        values = [parse_scalar(v, exact=exact) for v in row[1:]]
        out[parse_prefix_label(row[0])] = np.array(values, dtype=object if exact else float)
    return events, out
