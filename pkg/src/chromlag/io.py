"""JSON documents for graphs, phases and reports.

Graph document::

    {"darts": 12, "alpha": [...], "sigma": [...], "face_labels": {"0": "z0", ...}}

Phase document::

    {"kernel_classes": [[...], ...], "lift_classes": [[...], ...],
     "framing": [[...], ...], "signs": [1, -1]}

Rationals are written as ``"p/q"`` strings so nothing is lost in transit.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .homlattice import PhaseFraming
from .ribbon import GraphError, RibbonGraph


class DocumentError(ValueError):
    pass


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def graph_to_dict(graph: RibbonGraph) -> dict:
    doc = {"darts": graph.dart_count, "alpha": list(graph.alpha), "sigma": list(graph.sigma)}
    if graph.face_labels:
        doc["face_labels"] = {str(k): v for k, v in sorted(graph.face_labels.items())}
    return doc


def graph_from_dict(doc: dict) -> RibbonGraph:
    try:
        n = int(doc["darts"])
        alpha = [int(x) for x in doc["alpha"]]
        sigma = [int(x) for x in doc["sigma"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"graph document needs integer 'darts', 'alpha', 'sigma': {exc}") from None
    labels = {int(k): str(v) for k, v in doc.get("face_labels", {}).items()}
    return RibbonGraph(n, alpha, sigma, labels)


def phase_to_dict(pf: PhaseFraming) -> dict:
    doc = {
        "kernel_classes": [list(c) for c in pf.kernel_classes],
        "lift_classes": [list(c) for c in pf.lift_classes],
        "framing": [list(r) for r in pf.framing],
    }
    if pf.signs is not None:
        doc["signs"] = list(pf.signs)
    return doc


def phase_from_dict(doc: dict) -> PhaseFraming:
    try:
        return PhaseFraming(doc["kernel_classes"], doc["lift_classes"], doc["framing"], doc.get("signs"))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"phase document is malformed: {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _read(path: Union[str, Path]) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None


def load_graph(path) -> RibbonGraph:
    return graph_from_dict(_read(path))


def save_graph(graph: RibbonGraph, path) -> None:
    Path(path).write_text(dumps(graph_to_dict(graph)))


def load_phase(path) -> PhaseFraming:
    return phase_from_dict(_read(path))


def save_phase(pf: PhaseFraming, path) -> None:
    Path(path).write_text(dumps(phase_to_dict(pf)))


__all__ = [
    "DocumentError", "GraphError", "frac_str", "dumps",
    "graph_to_dict", "graph_from_dict", "load_graph", "save_graph",
    "phase_to_dict", "phase_from_dict", "load_phase", "save_phase",
]
