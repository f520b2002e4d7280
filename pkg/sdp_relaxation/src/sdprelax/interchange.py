"""Reading of functional interchange documents and writing of bound results.

The functional document is the JSON form produced by `magiccert
export-functional`: {"m", "edges", "coeffs", "classical_bound", "name"}.
Validation here is deliberately independent of that package; the schema is
the contract, not the code.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

FUNCTIONAL_KEYS = {"m", "edges", "coeffs", "classical_bound", "name"}


@dataclass(frozen=True)
class FunctionalDoc:
    """Validated edge functional: coefficients on unordered vertex pairs."""

    m: int
    coefficients: dict[tuple[int, int], float]
    classical_bound: float
    name: str


def _edge(pair: Sequence, m: int) -> tuple[int, int]:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"edge {pair!r} is not a pair")
    i, j = pair
    if not isinstance(i, int) or not isinstance(j, int) or isinstance(i, bool) or isinstance(j, bool):
        raise ValueError(f"edge {pair!r} must hold integers")
    if i == j:
        raise ValueError(f"edge {pair!r} is a self-loop")
    if not (1 <= i <= m and 1 <= j <= m):
        raise ValueError(f"edge {pair!r} leaves the vertex range 1..{m}")
    return (i, j) if i < j else (j, i)


def functional_from_doc(doc: Mapping) -> FunctionalDoc:
    if not isinstance(doc, Mapping):
        raise ValueError("functional document must be a JSON object")
    if set(doc) != FUNCTIONAL_KEYS:
        raise ValueError(f"functional document must have exactly the keys {sorted(FUNCTIONAL_KEYS)}")
    m = doc["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise ValueError("m must be an integer >= 2")
    edges = doc["edges"]
    coeffs = doc["coeffs"]
    if not isinstance(edges, list) or not isinstance(coeffs, list):
        raise ValueError("edges and coeffs must be lists")
    if len(edges) != len(coeffs):
        raise ValueError("coeffs and edges must have equal length")
    if not edges:
        raise ValueError("functional has no edges")
    coefficients: dict[tuple[int, int], float] = {}
    for pair, c in zip(edges, coeffs):
        e = _edge(pair, m)
        if e in coefficients:
            raise ValueError(f"edge {list(e)} appears twice")
        c = float(c)
        if not math.isfinite(c):
            raise ValueError(f"coefficient for edge {list(e)} is not finite")
        coefficients[e] = c
    bound = float(doc["classical_bound"])
    if not math.isfinite(bound):
        raise ValueError("classical_bound is not finite")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ValueError("name must be a non-empty string")
    return FunctionalDoc(m=m, coefficients=coefficients, classical_bound=bound, name=name)


def load_functional(path: str) -> FunctionalDoc:
    with open(path, encoding="utf-8") as fh:
        return functional_from_doc(json.load(fh))
