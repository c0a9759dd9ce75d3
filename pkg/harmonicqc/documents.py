"""
Map document module for harmonicqc.

This module reads and writes the JSON documents that declare a harmonic map.
Complex numbers are [re, im] pairs and coefficients are [index, re, im]
triples, for example:

    {
      "kind": "exterior",
      "label": "worked example",
      "alpha": [1.0, 0.0],
      "beta": [0.0, -0.16666666666666666],
      "A": [0.0, 0.25],
      "coefficients": {"a": [[4, 0.0, -0.125]], "b": []}
    }
"""

import json
import math
import logging
import pathlib
from dataclasses import dataclass
from typing import Dict, Any, List, Optional, Union

from .harmonic_core import InteriorMap, ExteriorMap, HarmonicMap, HarmonicMapError
from .config import get_presets

logger = logging.getLogger('harmonicqc')

KINDS = ("interior", "exterior")

class DocumentError(ValueError):
    """
    Raised when a map document cannot be parsed or validated.

    Attributes:
        field: Path of the offending field, e.g. "coefficients.a[1]"
        line, column: Position of a JSON syntax error
    """
    def __init__(self, message: str, field: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.field = field
        self.line = line
        self.column = column
        location = ""
        if field is not None:
            location = f" (field {field})"
        elif line is not None:
            location = f" (line {line}, column {column})"
        super().__init__(f"{message}{location}")

@dataclass(frozen=True)
class MapDocument:
    """A validated map together with its optional strongly-starlike order and label."""
    map: HarmonicMap
    order: Optional[float] = None
    label: Optional[str] = None

    @property
    def kind(self) -> str:
        return self.map.kind

def _number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"expected a number, got {value!r}", field=field)
    if not math.isfinite(value):
        raise DocumentError("number must be finite", field=field)
    return float(value)

def _complex(value: Any, field: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise DocumentError("expected a [re, im] pair", field=field)
    return complex(_number(value[0], f"{field}[0]"), _number(value[1], f"{field}[1]"))

def _triples(value: Any, field: str) -> List[tuple]:
    if not isinstance(value, list):
        raise DocumentError("expected a list of [index, re, im] triples", field=field)
    pairs = []
    for i, item in enumerate(value):
        path = f"{field}[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise DocumentError("expected an [index, re, im] triple", field=path)
        index = item[0]
        if isinstance(index, bool) or not isinstance(index, int):
            raise DocumentError(f"index must be an integer, got {index!r}", field=f"{path}[0]")
        pairs.append((index, complex(_number(item[1], f"{path}[1]"), _number(item[2], f"{path}[2]"))))
    return pairs

def parse_document(data: Any) -> MapDocument:
    """
    Validate a decoded JSON object and build its map.

    Raises:
        DocumentError: On any structural or mathematical problem, naming the field
    """
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object", field="$")

    kind = data.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}", field="kind")

    coefficients = data.get("coefficients", {})
    if not isinstance(coefficients, dict):
        raise DocumentError("expected an object with 'a' and 'b' lists", field="coefficients")
    unknown = set(coefficients) - {"a", "b"}
    if unknown:
        raise DocumentError(f"unknown coefficient parts {sorted(unknown)}", field="coefficients")
    a = _triples(coefficients.get("a", []), "coefficients.a")
    b = _triples(coefficients.get("b", []), "coefficients.b")

    order = data.get("order")
    if order is not None:
        order = _number(order, "order")
        if not 0.0 < order < 1.0:
            raise DocumentError(f"order must lie in (0, 1), got {order}", field="order")

    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError("label must be a string", field="label")

    try:
        if kind == "interior":
            extra = {"alpha", "beta", "A"} & set(data)
            if extra:
                raise DocumentError("interior maps take no alpha, beta or A", field=sorted(extra)[0])
            harmonic_map: HarmonicMap = InteriorMap(a=a, b=b)
        else:
            harmonic_map = ExteriorMap(
                alpha=_complex(data.get("alpha", [1.0, 0.0]), "alpha"),
                beta=_complex(data.get("beta", [0.0, 0.0]), "beta"),
                a=a,
                b=b,
                A=_complex(data.get("A", [0.0, 0.0]), "A"),
            )
    except HarmonicMapError as e:
        message = str(e)
        field = f"coefficients.{message[0]}" if message.startswith(("a:", "b:")) else "beta"
        raise DocumentError(message, field=field) from e

    return MapDocument(map=harmonic_map, order=order, label=label)

def loads(text: str) -> MapDocument:
    """
    Parse a document from JSON text.

    Raises:
        DocumentError: With line and column for JSON syntax errors
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e
    return parse_document(data)

def load_document(path: Union[str, pathlib.Path]) -> MapDocument:
    """
    Read and parse a document file.

    Raises:
        DocumentError: If the file cannot be read or parsed
    """
    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from e
    logger.info(f"Loaded map document: {path}")
    return loads(text)

def load_preset(name: str) -> MapDocument:
    """
    Parse one of the bundled documents by preset name.

    Raises:
        DocumentError: If the preset is unknown or invalid
    """
    presets = get_presets()
    if name not in presets:
        available = ", ".join(sorted(presets)) or "none"
        raise DocumentError(f"unknown preset '{name}' (available: {available})")
    return parse_document(presets[name])

def _pair(value: complex) -> List[float]:
    return [value.real, value.imag]

def to_dict(document: MapDocument) -> Dict[str, Any]:
    """Stable-order JSON object for a document."""
    f = document.map
    data: Dict[str, Any] = {"kind": f.kind}
    if document.label is not None:
        data["label"] = document.label
    if document.order is not None:
        data["order"] = document.order
    if isinstance(f, ExteriorMap):
        data["alpha"] = _pair(f.alpha)
        data["beta"] = _pair(f.beta)
        data["A"] = _pair(f.A)
    data["coefficients"] = {
        "a": [[n, c.real, c.imag] for n, c in f.a],
        "b": [[n, c.real, c.imag] for n, c in f.b],
    }
    return data

def dumps(document: MapDocument) -> str:
    return json.dumps(to_dict(document), indent=2) + "\n"

def save_document(document: MapDocument, path: Union[str, pathlib.Path]) -> None:
    """
    Write a document as JSON.

    Raises:
        DocumentError: If the file cannot be written
    """
    path = pathlib.Path(path)
    try:
        path.write_text(dumps(document), encoding='utf-8')
    except OSError as e:
        raise DocumentError(f"cannot write {path}: {e.strerror}") from e
    logger.info(f"Map document saved: {path}")
