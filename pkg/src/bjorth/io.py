"""Reading vectors, matrices and sampled functions; deterministic JSON output."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .norms import NormSpec
from .sampled import SampledFunction, infer_adjacency

SCHEMA = "bjorth/1"


class InputError(ValueError):
    """Unreadable or ill-shaped input.  ``field`` names the offending option."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _load(field: str, source) -> object:
    """Parse ``source`` as inline JSON, a .json file or a headerless CSV file."""
    text = str(source).strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(field, f"invalid JSON literal ({exc.msg})") from None
    path = Path(text)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise InputError(field, f"cannot read {text!r} ({exc.strerror or exc})") from None
    if path.suffix.lower() == ".json" or raw.lstrip().startswith(("[", "{")):
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(field, f"invalid JSON in {text!r} ({exc.msg})") from None
    rows = [r for r in csv.reader(raw.splitlines()) if r and any(c.strip() for c in r)]
    try:
        return [[float(c) for c in r] for r in rows]
    except ValueError:
        raise InputError(field, f"non-numeric entry in CSV file {text!r}") from None


def _array(field: str, data, ndim: int) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise InputError(field, "expected a rectangular array of numbers") from None
    if ndim == 1 and arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if ndim == 2 and arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != ndim or arr.size == 0:
        raise InputError(field, f"expected a {'vector' if ndim == 1 else 'matrix'}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(field, "contains non-finite entries")
    return arr


def read_vector(field: str, source) -> np.ndarray:
    return _array(field, _load(field, source), 1)


def read_matrix(field: str, source) -> np.ndarray:
    return _array(field, _load(field, source), 2)


def read_sampled(field: str, source, space_text: str | None = None, grid=None,
                 grid_dim: int = 1, adjacency=None, identify_antipodes: bool = False):
    """A sampled function from JSON ``{"grid", "values", "adjacency"?, "antipodes"?}``
    or from CSV whose first ``grid_dim`` columns are coordinates.

    ``grid`` (a separate coordinate file) takes the CSV entirely as values.
    """
    from .norms import parse_norm

    data = _load(field, source)
    antipodes = None
    if isinstance(data, dict):
        if "values" not in data:
            raise InputError(field, "JSON object needs a 'values' entry")
        values = _array(f"{field}.values", data["values"], 2) if np.ndim(data["values"]) > 1 \
            else _array(f"{field}.values", data["values"], 1)[:, None]
        if "grid" in data:
            pts = np.asarray(data["grid"], dtype=float)
            grid_arr = pts[:, None] if pts.ndim == 1 else pts
        elif grid is not None:
            grid_arr = grid
        else:
            raise InputError(field, "JSON object needs a 'grid' entry or --grid")
        if adjacency is None and "adjacency" in data:
            adjacency = data["adjacency"]
        if data.get("antipodes") is not None:
            antipodes = np.asarray(data["antipodes"], dtype=int)
    else:
        table = _array(field, data, 2)
        if grid is not None:
            grid_arr, values = grid, table
        else:
            if table.shape[1] <= grid_dim:
                raise InputError(field, f"need {grid_dim} coordinate column(s) plus values, "
                                        f"got {table.shape[1]} column(s)")
            grid_arr, values = table[:, :grid_dim], table[:, grid_dim:]
    grid_arr = np.asarray(grid_arr, dtype=float)
    if grid_arr.ndim == 1:
        grid_arr = grid_arr[:, None]
    if len(grid_arr) != len(values):
        raise InputError(field, f"{len(values)} value rows for {len(grid_arr)} grid points")
    try:
        space = parse_norm(space_text or "l2", values.shape[1])
    except ValueError as exc:
        raise InputError("--norm", str(exc)) from None
    try:
        if adjacency is None:
            adj = infer_adjacency(grid_arr)
        else:
            adj = np.asarray(adjacency, dtype=int).reshape(-1, 2)
        if identify_antipodes and antipodes is None:
            raise InputError(field, "antipodal identification needs an 'antipodes' entry")
        return SampledFunction(grid_arr, values, adj, space, antipodes)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(field, str(exc)) from None


def read_grid(field: str, source) -> np.ndarray:
    data = _load(field, source)
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        return arr
    if arr.ndim == 2 and arr.shape[0] == 1:
        return arr.reshape(-1, 1)
    if arr.ndim == 1:
        return arr[:, None]
    if arr.ndim != 2:
        raise InputError(field, f"expected grid points as rows, got shape {arr.shape}")
    return arr


def read_adjacency(field: str, source) -> np.ndarray:
    data = _load(field, source)
    arr = np.asarray(data)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=int)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError(field, f"expected an edge list of index pairs, got shape {arr.shape}")
    return arr.astype(int)


def _fmt(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x + 0.0, ".17g")  # + 0.0 turns -0 into 0


def _encode(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if hasattr(obj, "value"):
        return json.dumps(obj.value)
    return json.dumps(str(obj))


def dumps(payload: dict) -> str:
    """JSON with the schema tag first, keys in insertion order and 17-digit floats."""
    body = {"schema": SCHEMA}
    body.update(payload)
    return _encode(body) + "\n"


def profile_csv(lams, values) -> str:
    lines = ["lambda,norm"]
    lines += [f"{format(float(a), '.17g')},{format(float(b), '.17g')}" for a, b in zip(lams, values)]
    return "\n".join(lines) + "\n"
