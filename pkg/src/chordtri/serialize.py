"""JSON shapes for systems, decomposition trees and reports.

Polynomials are written as canonical strings; every document carries
``"schema": 1``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .decompose import DecompositionResult, DecompositionTree, TriangularSystem
from .errors import ContractError
from .field import field_from_spec
from .parsing import parse_poly
from .poly import PolyRing, format_poly

SCHEMA = 1


def field_to_json(field) -> object:
    return "QQ" if field.characteristic == 0 else field.characteristic


def ring_to_json(ring: PolyRing) -> dict:
    return {"variables": list(ring.names), "field": field_to_json(ring.field)}


def ring_from_json(doc: dict) -> PolyRing:
    return PolyRing(doc["variables"], field_from_spec(doc.get("field", "QQ")))


def system_to_json(S: TriangularSystem) -> dict:
    return {"T": [format_poly(f) for f in S.T], "U": [format_poly(g) for g in S.U]}


def system_from_json(doc: dict, ring: PolyRing) -> TriangularSystem:
    T = tuple(sorted((parse_poly(s, ring) for s in doc["T"]), key=lambda f: f.lv))
    U = tuple(parse_poly(s, ring) for s in doc["U"])
    return TriangularSystem(T, U)


def tree_to_json(tree: DecompositionTree) -> dict:
    nodes = []
    for e in tree:
        nodes.append({
            "id": e.id, "parent": e.parent, "label": e.label, "k": e.node.k,
            "dead": e.dead,
            "P": sorted(format_poly(f) for f in e.node.P),
            "Q": sorted(format_poly(f) for f in e.node.Q),
        })
    return {"nodes": nodes, "outputs": list(tree.outputs)}


def decomposition_to_json(result: DecompositionResult, F=None, extra: Optional[dict] = None,
                          include_tree: bool = True) -> dict:
    doc = {
        "schema": SCHEMA,
        "kind": "decomposition",
        "algorithm": result.algorithm,
        "ring": ring_to_json(result.ring),
        "systems": [system_to_json(S) for S in result.systems],
    }
    if F is not None:
        doc["input"] = [format_poly(f.to_ring(result.ring)) for f in F]
    if include_tree:
        doc["tree"] = tree_to_json(result.tree)
    if extra:
        doc.update(extra)
    return doc


def load_decomposition(doc: dict):
    """Return ``(input polynomials or None, systems, ring, algorithm)``."""
    if doc.get("schema") != SCHEMA:
        raise ContractError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("kind") != "decomposition":
        raise ContractError("document is not a decomposition")
    ring = ring_from_json(doc["ring"])
    systems = [system_from_json(s, ring) for s in doc["systems"]]
    F = [parse_poly(s, ring) for s in doc["input"]] if "input" in doc else None
    return F, systems, ring, doc.get("algorithm")


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def dumps(doc: dict, indent: Optional[int] = 2) -> str:
    return json.dumps(doc, indent=indent, default=_default)
