"""JSON file formats and report encoding.

Tensor files::

    {"m": 2, "n": 2, "entries": [[[1, 1, 1, 1], 1.0, 0.0], ...]}

with 1-based indices, i-block first. Curvature files hold ``n``, the metric
``g`` (n x n) and ``R`` (4-deep, ``R[i][k][j][l]``); AHZ files hold ``g4``,
``h2`` and optionally ``hv2``, ``hv4``, ``hv3``, ``hab2``. Complex numbers
inside those arrays are ``[re, im]`` pairs or plain reals.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .curvature import AHZComponents, CurvatureData
from .errors import FormatError
from .tensor import ComplexTensor, build


def tensor_to_dict(A: ComplexTensor) -> dict:
    entries = [[[k + 1 for k in key], value.real, value.imag] for key, value in A.entries.items()]
    return {"m": A.m, "n": A.n, "entries": entries}


def tensor_from_dict(data: dict) -> ComplexTensor:
    try:
        m, n = int(data["m"]), int(data["n"])
        items = [(tuple(key), complex(float(re_), float(im))) for key, re_, im in data["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed tensor description: {exc}") from exc
    return build(m, n, items)


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_tensor(path) -> ComplexTensor:
    return tensor_from_dict(_load_json(path))


def save_tensor(A: ComplexTensor, path) -> None:
    Path(path).write_text(dumps(tensor_to_dict(A)) + "\n")


def _complex_array(value, shape: tuple) -> np.ndarray:
    """Decode nested lists whose leaves are [re, im] pairs or reals."""
    arr = np.asarray(value, dtype=float)
    if arr.shape == shape + (2,):
        out = arr[..., 0] + 1j * arr[..., 1]
    elif arr.shape == shape:
        out = arr.astype(complex)
    else:
        raise FormatError(f"array of shape {arr.shape} does not match {shape} (with optional [re, im] leaves)")
    return out


def _encode_array(arr: np.ndarray):
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def curvature_from_dict(data: dict) -> CurvatureData:
    try:
        n = int(data["n"])
        g = _complex_array(data["g"], (n, n))
        R = _complex_array(data["R"], (n,) * 4)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed curvature description: {exc}") from exc
    return CurvatureData(R, g)


def curvature_to_dict(data: CurvatureData) -> dict:
    return {"n": data.n, "g": _encode_array(data.g), "R": _encode_array(data.R)}


def load_curvature(path) -> CurvatureData:
    return curvature_from_dict(_load_json(path))


def ahz_from_dict(data: dict) -> AHZComponents:
    try:
        n, r = int(data["n"]), int(data["r"])
        shapes = {"g4": (n,) * 4, "h2": (r, r), "hv2": (n, n), "hv4": (n,) * 4,
                  "hv3": (r, n, n, n), "hab2": (r, r, n, n)}
        blocks = {name: _complex_array(data[name], shape) for name, shape in shapes.items() if name in data}
        return AHZComponents(**blocks)
    except KeyError as exc:
        raise FormatError(f"missing AHZ block {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed AHZ description: {exc}") from exc


def ahz_to_dict(c: AHZComponents) -> dict:
    out = {"n": c.n, "r": c.r}
    for name in ("g4", "h2", "hv2", "hv4", "hv3", "hab2"):
        out[name] = _encode_array(getattr(c, name))
    return out


def load_ahz(path) -> AHZComponents:
    return ahz_from_dict(_load_json(path))


def parse_complex(token: str) -> complex:
    """Parse ``a+bi`` style literals (``i`` or ``j`` as imaginary unit)."""
    text = token.strip().replace(" ", "").replace("i", "j")
    if text in ("j", "+j"):
        return 1j
    if text == "-j":
        return -1j
    text = re.sub(r"(^|[+-])j", r"\g<1>1j", text)
    try:
        return complex(text)
    except ValueError as exc:
        raise FormatError(f"cannot parse complex number {token!r}") from exc


def parse_vector(text: str) -> np.ndarray:
    """Comma separated literals, or a path to a JSON list of numbers / [re, im] pairs."""
    path = Path(text)
    if path.suffix == ".json" and path.exists():
        data = _load_json(path)
        return np.array([complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in data])
    return np.array([parse_complex(tok) for tok in text.split(",")])


def to_jsonable(obj):
    """Recursively convert library objects to JSON-ready values.

    Complex numbers become ``{"re": ..., "im": ...}``; arrays become lists.
    """
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, Fraction)):
        return float(obj) + 0.0          # folds -0.0 into 0.0
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real) + 0.0, "im": float(obj.imag) + 0.0}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(to_jsonable(obj), indent=indent, sort_keys=False, allow_nan=False)
