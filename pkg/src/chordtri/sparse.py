"""Ordering selection from chordal structure, then decomposition."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .decompose import DEFAULT_MAX_NODES, DecompositionTree, decompose
from .errors import DomainError
from .graph import associated_graph, chordal_completion, is_peo, mcs_peo, variable_sparsity
from .poly import PolyRing, VarTable

DEFAULT_S0 = Fraction(3, 10)


@dataclass
class SparseDecompositionReport:
    chosen_ordering: VarTable
    ordering_source: str  # "peo", "completion" or "random"
    used_completion: bool
    sparsity: Fraction
    threshold: Fraction
    systems: list
    tree: DecompositionTree
    ring: PolyRing
    algorithm: str

    @property
    def sparse(self) -> bool:
        return self.ordering_source != "random"


def choose_ordering(F: Iterable, s0=DEFAULT_S0, seed: int = 0):
    """Pick an ascending variable ordering for ``F``.

    Returns ``(names, source, used_completion, sparsity)``. Variables of the
    ring that do not occur in ``F`` are placed below the others.
    """
    F = list(F)
    if not F:
        raise DomainError("empty system")
    ring = F[0].ring
    G = associated_graph(F)
    if not G.vertices:
        raise DomainError("system has empty support")
    s_v = variable_sparsity(G)
    absent = [v for v in range(ring.n) if v not in G.vertices]
    if s_v < Fraction(s0):
        order = mcs_peo(G)
        used = order is None
        if used:
            H, order = chordal_completion(G)
            if not is_peo(H, order):
                raise DomainError("chordal completion produced an invalid ordering")
        source = "completion" if used else "peo"
    else:
        order = sorted(G.vertices)
        random.Random(seed).shuffle(order)
        used, source = False, "random"
    names = [ring.names[v] for v in absent + list(order)]
    return names, source, used, s_v


def sparse_decompose(F: Iterable, s0=DEFAULT_S0, algorithm: str = "regser", seed: int = 0,
                     max_nodes: int = DEFAULT_MAX_NODES,
                     time_limit: Optional[float] = None) -> SparseDecompositionReport:
    """Decompose with a PEO-based ordering when the input is sparse enough.

    Below the sparsity threshold ``s0`` the ordering is a perfect elimination
    ordering of the associated graph, or of a chordal completion when the graph
    is not chordal; otherwise a random ordering drawn from ``seed``. The input
    is re-indexed to the ordering. The systems live in that re-indexed ring
    (``report.ring``), which has the same variable names as the input, since
    triangularity is only meaningful relative to the ordering used.
    """
    F = list(F)
    names, source, used, s_v = choose_ordering(F, s0, seed)
    ring = F[0].ring
    work = ring.reordered(names)
    res = decompose([f.to_ring(work) for f in F], algorithm, ring=work, max_nodes=max_nodes,
                    time_limit=time_limit)
    return SparseDecompositionReport(VarTable(tuple(names)), source, used, s_v, Fraction(s0),
                                     res.systems, res.tree, work, algorithm)


def peo_ordering(F: Iterable) -> tuple:
    """``(names, used_completion)``: a verified PEO of ``G(F)`` or of a chordal completion."""
    F = list(F)
    names, source, used, _ = choose_ordering(F, s0=Fraction(2), seed=0)
    return names, used


def random_ordering(F: Iterable, seed: int) -> list:
    F = list(F)
    return choose_ordering(F, s0=Fraction(-1), seed=seed)[0]


def natural_key(name: str) -> tuple:
    """Sort key placing x2 before x10."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", name) if t)


def resolve_orderings(F: Iterable, spec: str, s0=DEFAULT_S0, seed: int = 0) -> list:
    """Expand an ordering spec into ``[(label, ascending names), ...]``.

    ``spec`` is a comma-separated list whose items are ``natural`` (names
    sorted with numeric suffixes compared as numbers), ``peo``, ``auto``
    (threshold rule), ``random`` or ``random:<k>`` (seeds ``seed .. seed+k-1``),
    or, when it names every variable, an explicit ascending ordering.
    """
    F = list(F)
    ring = F[0].ring
    items = [s.strip() for s in str(spec).split(",") if s.strip()]
    if items and all(s in ring.names for s in items):
        if sorted(items) != sorted(ring.names):
            missing = sorted(set(ring.names) - set(items))
            raise DomainError(f"explicit ordering misses variables {missing}")
        return [("explicit", items)]
    out = []
    for item in items:
        if item == "natural":
            out.append(("natural", sorted(ring.names, key=natural_key)))
        elif item == "peo":
            out.append(("peo", peo_ordering(F)[0]))
        elif item == "auto":
            names, source, _, _ = choose_ordering(F, s0, seed)
            out.append((f"auto:{source}", names))
        elif item == "random" or item.startswith("random:"):
            k = int(item.split(":", 1)[1]) if ":" in item else 1
            if k < 1:
                raise DomainError("random:<k> needs k >= 1")
            out.extend((f"random:{seed + j}", random_ordering(F, seed + j)) for j in range(k))
        else:
            raise DomainError(f"unknown ordering item {item!r}")
    if not out:
        raise DomainError("empty ordering spec")
    return out
