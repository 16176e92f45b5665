"""Single-robot processing networks as switched P-time event graphs.

A cell has an input station ``S0``, processing stations ``S1..Sm`` and an
output station ``S(m+1)``. Each part type (mode) is described by the
residence windows at the stations it visits and by the cyclic sequence of
robot transports ``(i, j)``: unload ``Si``, carry, load ``Sj``.

Events are ``t0`` (unload input), ``t<s>in`` / ``t<s>out`` (load / unload
station s) and ``t<m+1>`` (load output). Per mode the net contains:

* a transport place ``unload(i) -> load(j)`` with window ``[loaded(i, j), +inf]``;
* a residence place ``load(s) -> unload(s)`` with the station window, marked
  when the station is unloaded before it is reloaded within the cycle;
* an empty-move place from each load to the next unload with window
  ``[empty(j, i'), +inf]``, the one closing the cycle being marked.

Switching is handled by augmentation: events a mode never fires carry their
dater over (``A1_ii = B1_ii = 0``), and with two part types the final empty
move of one mode is routed to the first unload of the other via an ``A1``
override.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping

from .modelio import FORMAT_TAG, FORMAT_VERSION, dumps_document, scalar_to_json, to_matrix_form


@dataclass(frozen=True)
class PartType:
    windows: Mapping  # station -> (lo, hi)
    operations: tuple  # robot transports (from_station, to_station) in cycle order
    loaded_travel: Callable  # (i, j) -> time to carry a part of this type


def event_names(stations: int) -> list:
    names = ["t0"]
    for s in range(1, stations + 1):
        names += [f"t{s}in", f"t{s}out"]
    return names + [f"t{stations + 1}"]


def _unload(s: int, stations: int) -> str:
    return "t0" if s == 0 else f"t{s}out"


def _load(s: int, stations: int) -> str:
    return f"t{stations + 1}" if s == stations + 1 else f"t{s}in"


def _place(src, dst, marking, lo, hi, label):
    return {"from": src, "to": dst, "marking": marking, "window": [scalar_to_json(lo), scalar_to_json(hi)], "label": label}


def part_places(part: PartType, stations: int, empty_travel: Callable) -> list:
    ops = tuple(part.operations)
    if not ops:
        raise ValueError("a part type needs at least one robot operation")
    inf = float("inf")
    places = []
    for i, j in ops:
        places.append(
            _place(_unload(i, stations), _load(j, stations), 0, part.loaded_travel(i, j), inf, f"carry S{i}->S{j}")
        )
    for s, (lo, hi) in sorted(part.windows.items()):
        loaded_at = [k for k, (_, j) in enumerate(ops) if j == s]
        unloaded_at = [k for k, (i, _) in enumerate(ops) if i == s]
        if len(loaded_at) != 1 or len(unloaded_at) != 1:
            raise ValueError(f"station S{s} must be loaded and unloaded exactly once per cycle")
        marking = 1 if unloaded_at[0] < loaded_at[0] else 0
        places.append(_place(_load(s, stations), _unload(s, stations), marking, lo, hi, f"process S{s}"))
    for k, (_, j) in enumerate(ops):
        nxt = ops[(k + 1) % len(ops)][0]
        marking = 1 if k == len(ops) - 1 else 0
        places.append(
            _place(_load(j, stations), _unload(nxt, stations), marking, empty_travel(j, nxt), inf, f"move S{j}->S{nxt}")
        )
    return places


def robot_cell_document(
    stations: int,
    parts: Mapping[str, PartType],
    empty_travel: Callable,
    schedules: Mapping | None = None,
    description: str | None = None,
) -> dict:
    """Net-form model document of the cell, one mode per part type."""
    events = event_names(stations)
    modes = {}
    for name, part in parts.items():
        places = part_places(part, stations, empty_travel)
        used = {p["from"] for p in places} | {p["to"] for p in places}
        mode = {"places": places}
        idle = [e for e in events if e not in used]
        if idle:
            mode["carry_over"] = idle
        modes[name] = mode
    if len(parts) == 2:
        (za, pa), (zb, pb) = parts.items()
        for (z, part), other in (((za, pa), pb), ((zb, pb), pa)):
            last = part.operations[-1][1]
            first = other.operations[0][0]
            modes[z]["overrides"] = [
                {
                    "matrix": "A1",
                    "row": _unload(first, stations),
                    "col": _load(last, stations),
                    "value": scalar_to_json(empty_travel(last, first)),
                }
            ]
    elif len(parts) > 2:
        raise ValueError("mode-switch robot moves are only determined for two part types")
    doc = {"format": FORMAT_TAG, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc["events"] = events
    doc["modes"] = modes
    if schedules:
        doc["schedules"] = {k: list(v) for k, v in schedules.items()}
    return doc


def network5_document() -> dict:
    """Five-station, two-product cell: travel |i-j|, loaded +1 (a) / +2 (b)."""

    def travel(i, j):
        return abs(i - j)

    parts = {
        "a": PartType(
            windows={1: (10, 15), 3: (40, 140), 5: (20, 30)},
            operations=((3, 5), (0, 1), (5, 6), (1, 3)),
            loaded_travel=lambda i, j: travel(i, j) + 1,
        ),
        "b": PartType(
            windows={1: (10, 20), 2: (50, 150), 4: (30, 150), 5: (20, 30)},
            operations=((4, 5), (2, 1), (5, 6), (0, 2), (1, 4)),
            loaded_travel=lambda i, j: travel(i, j) + 2,
        ),
    }
    return robot_cell_document(
        5,
        parts,
        travel,
        schedules={"ab": ["a", "b"]},
        description="single-robot processing network, 5 stations, part types a and b",
    )


def write_network5(directory) -> tuple:
    """Write the net-form and matrix-form files; returns their paths."""
    directory = Path(directory)
    net = network5_document()
    net_path = directory / "network5_net.model"
    mat_path = directory / "network5.model"
    net_path.write_text(dumps_document(net))
    mat_path.write_text(dumps_document(to_matrix_form(net)))
    return net_path, mat_path


if __name__ == "__main__":
    for path in write_network5(sys.argv[1] if len(sys.argv) > 1 else "."):
        print(path)
