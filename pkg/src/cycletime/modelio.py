"""Model files (JSON) and machine-readable results.

A model document looks like::

    {
      "format": "cycletime-model",
      "version": 1,
      "events": ["t1", "t2"],
      "modes": {
        "a": {"places": [{"from": "t1", "to": "t2", "marking": 0, "window": [0, "+inf"]}]},
        "b": {"matrices": {"A0": [[...]], "A1": [[...]], "B0": [[...]], "B1": [[...]]}},
        "c": {"places": [...], "carry_over": ["t2"],
              "overrides": [{"matrix": "A1", "row": "t2", "col": "t1", "value": 3}]}
      },
      "schedules": {"ab": ["a", "b"]}
    }

Each mode is given either as a net (``places``) or by its characteristic
matrices. ``carry_over`` and ``overrides`` are applied on top of either
form to obtain the switched system; the plain form is what a single-mode
P-TEG analysis sees. Scalars are JSON numbers or the strings ``"-inf"``,
``"+inf"``, ``"p/q"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import matrix as tm
from .dioid import NEG_INF, POS_INF, format_scalar, normalize, parse_scalar
from .errors import CycleTimeError, ModelParseError, ModelValidationError, UnsupportedFormatError
from .ncp import CycleTimeSet
from .pteg import Place, Pteg, PtegNet, compile_net
from .sldi import Sldi, validate_schedule
from .trajectory import TrajectoryReport

FORMAT_TAG = "cycletime-model"
FORMAT_VERSION = 1
MATRIX_NAMES = ("A0", "A1", "B0", "B1")

_scalar = {"oneOf": [{"type": "number"}, {"type": "string"}]}
_matrix = {"type": "array", "items": {"type": "array", "items": _scalar}}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["version", "events", "modes"],
    "properties": {
        "format": {"const": FORMAT_TAG},
        "version": {"const": FORMAT_VERSION},
        "description": {"type": "string"},
        "events": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "modes": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {
                "type": "object",
                "properties": {
                    "places": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["from", "to", "marking", "window"],
                            "properties": {
                                "from": {"type": "string"},
                                "to": {"type": "string"},
                                "marking": {"enum": [0, 1]},
                                "window": {"type": "array", "items": _scalar, "minItems": 2, "maxItems": 2},
                                "label": {"type": "string"},
                            },
                            "additionalProperties": False,
                        },
                    },
                    "matrices": {
                        "type": "object",
                        "required": list(MATRIX_NAMES),
                        "properties": {name: _matrix for name in MATRIX_NAMES},
                        "additionalProperties": False,
                    },
                    "carry_over": {"type": "array", "items": {"type": "string"}},
                    "overrides": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["matrix", "row", "col", "value"],
                            "properties": {
                                "matrix": {"enum": list(MATRIX_NAMES)},
                                "row": {"type": "string"},
                                "col": {"type": "string"},
                                "value": _scalar,
                            },
                            "additionalProperties": False,
                        },
                    },
                },
                "oneOf": [{"required": ["places"]}, {"required": ["matrices"]}],
                "additionalProperties": False,
            },
        },
        "schedules": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        },
    },
    "additionalProperties": False,
}


@dataclass(frozen=True, eq=False)
class Model:
    """A loaded model: the switched system plus the plain per-mode P-TEGs."""

    sldi: Sldi
    ptegs: dict
    schedules: dict = field(default_factory=dict)

    @property
    def events(self) -> tuple:
        return self.sldi.events


# --------------------------------------------------------------------------
# loading
# --------------------------------------------------------------------------


def bundled_models() -> list:
    root = resources.files("cycletime") / "models"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".model"))


def resolve_model_path(path) -> Path:
    """``path`` itself if it exists, otherwise the bundled model of that name."""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    bundled = resources.files("cycletime") / "models" / candidate.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no such model file: {path}")


def parse_document(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def load_model(path, exact: bool = False) -> Model:
    return model_from_document(parse_document(resolve_model_path(path).read_text()), exact=exact)


def model_from_document(doc: dict, exact: bool = False) -> Model:
    try:
        jsonschema.validate(doc, MODEL_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ModelValidationError(f"{where}: {exc.message}") from None
    events = tuple(doc["events"])
    if len(set(events)) != len(events):
        raise ModelValidationError("duplicate event names")
    index = {e: i for i, e in enumerate(events)}
    ptegs, switched = {}, {}
    for name, entry in doc["modes"].items():
        try:
            base = _mode_matrices(entry, events, exact)
            ptegs[name] = base
            switched[name] = _augment(base, entry, index, exact)
        except CycleTimeError as exc:
            raise ModelValidationError(f"mode {name!r}: {exc}") from None
    sldi = Sldi(switched, events)
    schedules = {}
    for name, schedule in doc.get("schedules", {}).items():
        try:
            validate_schedule(schedule, sldi.alphabet)
        except CycleTimeError as exc:
            raise ModelValidationError(f"schedule {name!r}: {exc}") from None
        schedules[name] = tuple(schedule)
    return Model(sldi, ptegs, schedules)


def _mode_matrices(entry: dict, events: tuple, exact: bool) -> Pteg:
    if "places" in entry:
        places = [
            Place(
                p["from"],
                p["to"],
                p["marking"],
                parse_scalar(p["window"][0], exact=exact),
                parse_scalar(p["window"][1], exact=exact),
            )
            for p in entry["places"]
        ]
        return compile_net(PtegNet(events, places), exact=exact)
    mats = []
    for name in MATRIX_NAMES:
        M = tm.matrix(entry["matrices"][name], exact=exact)
        if M.shape != (len(events), len(events)):
            raise ModelValidationError(f"{name} has shape {M.shape}, expected {len(events)}x{len(events)}")
        mats.append(M)
    return Pteg(*mats, events)


def _augment(base: Pteg, entry: dict, index: dict, exact: bool) -> Pteg:
    """Apply carry-over loops ``A1_ii = B1_ii = 0`` and explicit entry overrides."""
    if not entry.get("carry_over") and not entry.get("overrides"):
        return base
    mats = {name: np.array(getattr(base, name), copy=True) for name in MATRIX_NAMES}
    zero = parse_scalar(0, exact=exact)
    for event in entry.get("carry_over", ()):
        if event not in index:
            raise ModelValidationError(f"carry_over refers to unknown event {event!r}")
        i = index[event]
        mats["A1"][i, i] = zero
        mats["B1"][i, i] = zero
    for o in entry.get("overrides", ()):
        for key in ("row", "col"):
            if o[key] not in index:
                raise ModelValidationError(f"override refers to unknown event {o[key]!r}")
        mats[o["matrix"]][index[o["row"]], index[o["col"]]] = parse_scalar(o["value"], exact=exact)
    return Pteg(*(mats[name] for name in MATRIX_NAMES), base.transitions)


# --------------------------------------------------------------------------
# writing
# --------------------------------------------------------------------------


def scalar_to_json(a):
    """JSON value of a scalar: numbers stay numbers, infinities and
    non-integral rationals become strings."""
    if a == NEG_INF or a == POS_INF:
        return format_scalar(a)
    a = normalize(a)
    if isinstance(a, (int, float)):
        return a
    return format_scalar(a)


def matrix_to_json(M) -> list:
    return [[scalar_to_json(x) for x in row] for row in M]


def to_matrix_form(doc: dict) -> dict:
    """Rewrite a model document so that every mode is given by matrices.

    Augmentation (``carry_over``, ``overrides``) is kept as is, so the
    result loads to the same model.
    """
    model_from_document(doc)  # validate first
    events = tuple(doc["events"])
    modes = {}
    for name, entry in doc["modes"].items():
        base = _mode_matrices(entry, events, exact=True)
        mode = {"matrices": {m: matrix_to_json(getattr(base, m)) for m in MATRIX_NAMES}}
        for key in ("carry_over", "overrides"):
            if key in entry:
                mode[key] = entry[key]
        modes[name] = mode
    return {key: modes if key == "modes" else value for key, value in doc.items()}


def model_to_document(model: Model, description: str | None = None) -> dict:
    """Matrix-form document of the switched system (augmentation folded in)."""
    doc = {"format": FORMAT_TAG, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc["events"] = list(model.events)
    doc["modes"] = {
        name: {"matrices": {m: matrix_to_json(getattr(g, m)) for m in MATRIX_NAMES}}
        for name, g in model.sldi.modes.items()
    }
    if model.schedules:
        doc["schedules"] = {name: list(v) for name, v in model.schedules.items()}
    return doc


def dumps_document(doc: dict) -> str:
    """Stable JSON text with flat lists and small objects kept on one line."""
    return _dumps(doc, 0) + "\n"


def _dumps(value, depth: int) -> str:
    flat = json.dumps(value)
    simple = not isinstance(value, (list, dict)) or all(
        not isinstance(v, (list, dict)) for v in (value.values() if isinstance(value, dict) else value)
    )
    if simple:
        return flat
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        items = [f"{inner}{json.dumps(k)}: {_dumps(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    items = [f"{inner}{_dumps(v, depth + 1)}" for v in value]
    return "[\n" + ",\n".join(items) + f"\n{pad}]"


def result_to_dict(result) -> dict:
    if isinstance(result, CycleTimeSet):
        if result.is_empty:
            return {"empty": True}
        return {"lo": scalar_to_json(result.lo), "hi": scalar_to_json(result.hi)}
    if isinstance(result, TrajectoryReport):
        return result.as_dict()
    raise TypeError(f"cannot emit {type(result).__name__}")


def emit_result(result, fmt: str = "json") -> str:
    """Stable machine-readable rendering of a cycle-time set or a report."""
    if fmt != "json":
        raise UnsupportedFormatError(f"unsupported result format {fmt!r}")
    return json.dumps(result_to_dict(result), separators=(", ", ": "))
