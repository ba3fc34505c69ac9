"""Associated graphs of polynomial sets, chordality and variable sparsity.

Vertices are ring variable indices. An ordering is a list of vertices from
smallest to greatest; it is a perfect elimination ordering when the smaller
neighbours of every vertex form a clique.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class AssociatedGraph:
    """Undirected graph on variable indices, optionally edge-weighted."""

    vertices: frozenset
    edges: frozenset  # of (i, j) with i < j
    weights: Optional[dict] = field(default=None, compare=False, hash=False)
    names: Optional[tuple] = field(default=None, compare=False, hash=False)

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable, weights=None, names=None):
        es = frozenset((min(a, b), max(a, b)) for a, b in edges)
        if any(a == b for a, b in es):
            raise ValueError("self-loops are not allowed")
        vs = frozenset(vertices) | frozenset(v for e in es for v in e)
        return cls(vs, es, weights, names)

    @property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def neighbors(self, v) -> list:
        return sorted(self.adjacency[v])

    def has_edge(self, a, b) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def __len__(self):
        return len(self.vertices)

    def label(self, v) -> str:
        return self.names[v] if self.names else f"v{v}"


def associated_graph(polys: Iterable, weighted: bool = False) -> AssociatedGraph:
    """Graph on the support of ``polys``; an edge joins variables sharing a polynomial."""
    verts = set()
    counts: dict = {}
    names = None
    for P in polys:
        names = P.ring.names
        s = sorted(P.support)
        verts.update(s)
        for e in combinations(s, 2):
            counts[e] = counts.get(e, 0) + 1
    return AssociatedGraph(frozenset(verts), frozenset(counts),
                           dict(counts) if weighted else None, names)


def is_subgraph(A: AssociatedGraph, B: AssociatedGraph) -> bool:
    return A.vertices <= B.vertices and A.edges <= B.edges


def is_peo(G: AssociatedGraph, order: Sequence[int]) -> bool:
    """Check that the smaller neighbours of every vertex form a clique."""
    if sorted(order) != sorted(G.vertices):
        return False
    pos = {v: i for i, v in enumerate(order)}
    adj = G.adjacency
    for v in order:
        lower = [u for u in adj[v] if pos[u] < pos[v]]
        for a, b in combinations(lower, 2):
            if not G.has_edge(a, b):
                return False
    return True


def mcs_order(G: AssociatedGraph) -> list:
    """Maximum cardinality search visit order, ties to the smallest vertex."""
    adj = G.adjacency
    weight = {v: 0 for v in G.vertices}
    order = []
    left = set(G.vertices)
    while left:
        v = min(left, key=lambda u: (-weight[u], u))
        order.append(v)
        left.discard(v)
        for u in adj[v]:
            if u in left:
                weight[u] += 1
    return order


def mcs_peo(G: AssociatedGraph) -> Optional[list]:
    """A perfect elimination ordering (ascending) if ``G`` is chordal, else ``None``.

    The visit order of maximum cardinality search is a candidate; it is kept
    only after the explicit clique check passes.
    """
    order = mcs_order(G)
    return order if is_peo(G, order) else None


def is_chordal(G: AssociatedGraph) -> bool:
    return mcs_peo(G) is not None


def chordal_completion(G: AssociatedGraph):
    """Elimination game with greedy minimum degree; returns ``(G', ordering)``.

    The vertex eliminated first becomes the greatest variable. Ties go to the
    smallest vertex index. A chordal input is returned unchanged with its
    maximum cardinality search ordering, since minimum degree alone may pick
    a non-simplicial vertex.
    """
    peo = mcs_peo(G)
    if peo is not None:
        return G, peo
    adj = {v: set(ns) for v, ns in G.adjacency.items()}
    fill = set(G.edges)
    eliminated = []
    left = set(G.vertices)
    while left:
        v = min(left, key=lambda u: (len(adj[u]), u))
        nbrs = sorted(adj[v])
        for a, b in combinations(nbrs, 2):
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                fill.add((a, b))
        for u in nbrs:
            adj[u].discard(v)
        del adj[v]
        left.discard(v)
        eliminated.append(v)
    H = AssociatedGraph(G.vertices, frozenset(fill), None, G.names)
    order = eliminated[::-1]
    if not is_peo(H, order):
        raise RuntimeError("elimination game produced a non-PEO ordering")
    return H, order


def variable_sparsity(polys) -> Fraction:
    """``|E| / C(|V|, 2)`` of the associated graph; 1 when fewer than two vertices."""
    G = polys if isinstance(polys, AssociatedGraph) else associated_graph(polys)
    n = len(G.vertices)
    if n < 2:
        return Fraction(1)
    return Fraction(len(G.edges), n * (n - 1) // 2)


def weighted_variable_sparsity(polys) -> Fraction:
    """Sum of edge multiplicities over ``#F * C(|V|, 2)``."""
    polys = list(polys)
    if not polys:
        return Fraction(0)
    G = associated_graph(polys, weighted=True)
    n = len(G.vertices)
    if n < 2:
        return Fraction(1)
    return Fraction(sum(G.weights.values()), len(polys) * (n * (n - 1) // 2))


def to_dot(G: AssociatedGraph, name: str = "G") -> str:
    """DOT text with vertices in index order and weights as edge labels."""
    lines = [f"graph {name} {{"]
    for v in sorted(G.vertices):
        lines.append(f'  "{G.label(v)}";')
    for a, b in sorted(G.edges):
        attr = ""
        if G.weights is not None:
            attr = f' [label="{G.weights[(a, b)]}"]'
        lines.append(f'  "{G.label(a)}" -- "{G.label(b)}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
