"""JSON exchange formats for complexes, metrics, points and witnesses.

Complex file:   {"vertices": ["a", ...], "maximal_simplices": [["a","b"], ...]}
Metric file:    {"type": "word"}
             or {"type": "explicit", "order": [...], "matrix": [[...], ...],
                 "A": ..., "B": ..., "C": ...}   (constants optional)
Point literal:  {"a": 0.25, "b": 0.75}
Probe slots:    [{"ray": ["a","b",...]}, {"point": {"a": 1.0}}, ...]
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .complexes import BarycentricPoint, SimplicialComplex, build_complex, make_point
from .errors import InvalidParameters
from .pathmetric import PathWitness
from .probes import Slot, make_ray
from .vertexmetrics import VertexMetric, validate_vertex_metric, word_vertex_metric


def complex_to_dict(K: SimplicialComplex) -> dict:
    return {
        "vertices": list(K.vertices),
        "maximal_simplices": [list(s) for s in K.maximal_simplices],
    }


def complex_from_dict(data: dict) -> SimplicialComplex:
    try:
        return build_complex(data["vertices"], data["maximal_simplices"])
    except KeyError as exc:
        raise InvalidParameters(f"complex file missing key {exc}") from exc


def load_complex(path: str | Path) -> SimplicialComplex:
    return complex_from_dict(json.loads(Path(path).read_text()))


def save_complex(K: SimplicialComplex, path: str | Path) -> None:
    Path(path).write_text(json.dumps(complex_to_dict(K), indent=2) + "\n")


def metric_from_spec(K: SimplicialComplex, spec: Any) -> VertexMetric:
    """Build a vertex metric from "word", a dict, or a JSON file path."""
    if isinstance(spec, VertexMetric):
        return spec
    if isinstance(spec, (str, Path)):
        if str(spec) == "word":
            return word_vertex_metric(K)
        spec = json.loads(Path(spec).read_text())
    if not isinstance(spec, dict):
        raise InvalidParameters(f"cannot interpret metric spec {spec!r}")
    kind = spec.get("type", "explicit")
    if kind == "word":
        return word_vertex_metric(K)
    if kind != "explicit":
        raise InvalidParameters(f"unknown metric type {kind!r}")
    try:
        order = tuple(spec["order"])
        matrix = np.asarray(spec["matrix"], dtype=float)
    except KeyError as exc:
        raise InvalidParameters(f"metric file missing key {exc}") from exc
    return validate_vertex_metric(
        K,
        matrix,
        order,
        C=spec.get("C"),
        A=spec.get("A"),
        B=spec.get("B"),
    )


def point_from_json(K: SimplicialComplex, text: Any) -> BarycentricPoint:
    data = json.loads(text) if isinstance(text, str) else text
    if not isinstance(data, dict):
        raise InvalidParameters(f"point literal must be a JSON object, got {data!r}")
    return make_point(K, {str(k): float(v) for k, v in data.items()})


def point_to_dict(x: BarycentricPoint) -> dict:
    return {v: w for v, w in x.items}


def witness_to_dict(w: PathWitness) -> dict:
    return {
        "length": w.length,
        "points": [point_to_dict(p) for p in w.points],
        "carriers": [list(c) for c in w.carriers],
    }


def slots_from_json(K: SimplicialComplex, text: Any) -> list[Slot]:
    data = json.loads(text) if isinstance(text, str) else text
    if not isinstance(data, list):
        raise InvalidParameters("slots must be a JSON array")
    slots: list[Slot] = []
    for entry in data:
        if "ray" in entry:
            slots.append(make_ray(K, entry["ray"]))
        elif "point" in entry:
            slots.append(point_from_json(K, entry["point"]))
        else:
            raise InvalidParameters(f"slot {entry!r} needs a 'ray' or 'point' key")
    return slots
