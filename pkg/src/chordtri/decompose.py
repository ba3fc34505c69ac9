"""Top-down triangular decomposition.

A node ``(P, Q, k)`` holds equations ``P``, inequations ``Q`` and the level
``k`` still to be processed; level ``k`` is ring variable ``k - 1`` and level
0 holds constants. Every level above ``k`` carries at most one equation.

Three splitting strategies are provided:

* ``wang``   -- pseudo-division by a polynomial of minimal degree, with a
  branch for its initial vanishing;
* ``srs``    -- subresultant regular subchains of two level-``k`` equations;
* ``regser`` -- ``srs`` plus the treatment of inequations needed for regular
  systems.

Initials, tails and pseudo-divisions inside the level-``k`` step are always
taken with respect to ``x_k``.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .budget import checkpoint, time_budget
from .elimination import initial_and_tail, pseudo_divide, regular_subchain
from .errors import ContractError, DomainError, ResourceError
from .poly import Polynomial

log = logging.getLogger(__name__)

ALGORITHMS = ("wang", "srs", "regser")
DEFAULT_MAX_NODES = 10**6


def plevel(F: Polynomial) -> int:
    """Level of a polynomial: 1 + index of its leading variable, 0 for constants."""
    return F.lv + 1


def level_part(P: Iterable[Polynomial], k: int) -> list:
    """``P^(k)``: members whose leading variable is level ``k``, canonically sorted."""
    return sorted((F for F in P if F.lv + 1 == k), key=_canon)


def level(P: Iterable[Polynomial]) -> int:
    """Smallest ``i`` such that every level above ``i`` holds at most one polynomial."""
    counts: dict = {}
    for F in P:
        k = F.lv + 1
        if k:
            counts[k] = counts.get(k, 0) + 1
    crowded = [k for k, c in counts.items() if c > 1]
    return max(crowded) if crowded else 0


def _canon(F: Polynomial):
    return F.sort_key()


def selection_key(F: Polynomial, k: int):
    """Order for "a polynomial with minimal degree in x_k".

    Minimal degree first. Among equal degrees the polynomial whose tail has
    the lowest total degree wins, since the tail is what pseudo-division
    multiplies into the other members; then the one with more terms in its
    initial, then fewer terms overall, then the canonical term-list order.
    """
    I, tl, d = initial_and_tail(F, k)
    return (d, tl.total_degree(), -len(I), len(F), _canon(F))


def select_min(polys: Sequence[Polynomial], k: int) -> Polynomial:
    return min(polys, key=lambda F: selection_key(F, k))


def select_max(polys: Sequence[Polynomial], k: int) -> Polynomial:
    """Element of maximal ``x_k``-degree, remaining ties as in :func:`selection_key`."""
    return min(polys, key=lambda F: (-F.degree(k),) + selection_key(F, k)[1:])


@dataclass(frozen=True)
class Node:
    """Worklist element ``(P, Q, k)``."""

    P: frozenset
    Q: frozenset
    k: int

    def part(self, k: Optional[int] = None) -> list:
        return level_part(self.P, self.k if k is None else k)

    def qpart(self, k: Optional[int] = None) -> list:
        return level_part(self.Q, self.k if k is None else k)

    @property
    def inconsistent(self) -> bool:
        """True when the zero set is empty for a syntactic reason."""
        return (any(F.is_constant and not F.is_zero for F in self.P)
                or any(F.is_zero for F in self.Q)
                or bool(self.P & self.Q))


def make_node(P: Iterable[Polynomial], Q: Iterable[Polynomial], k: int) -> Node:
    """Normalise: drop zero equations and nonzero constant inequations, then
    simplify monomial factors of members at levels up to ``k``.

    The simplifications keep the zero set: an inequation ``m * G`` with ``m``
    a monomial becomes the variables of ``m`` together with ``G``; an equation
    that is a monomial becomes the product of its variables; an equation
    ``m * G`` becomes ``G`` once every variable of ``m`` is an inequation.
    Supports only shrink, and levels above ``k`` are left alone.
    """
    Q = set(F for F in Q if F.is_zero or not F.is_constant)
    extra = set()
    for F in list(Q):
        if F.is_zero or F.lv + 1 > k:
            continue
        m = _monomial_content(F)
        if any(m):
            Q.discard(F)
            extra |= {F.ring.var(i) for i, d in enumerate(m) if d}
            G = _divide_monomial(F, m)
            if not G.is_constant:
                extra.add(G)
    Q |= extra
    nonzero_vars = {F.lv for F in Q if not F.is_zero and len(F) == 1 and F.total_degree() == 1}
    outP = set()
    for F in P:
        if F.is_zero:
            continue
        if F.lv + 1 <= k and not F.is_constant:
            m = _monomial_content(F)
            if len(F) == 1:
                F = _radical_monomial(F)
            elif any(m) and all(i in nonzero_vars for i, d in enumerate(m) if d):
                F = _divide_monomial(F, m)
        outP.add(F)
    return Node(frozenset(outP), frozenset(Q), k)


def _monomial_content(F: Polynomial) -> tuple:
    exps = list(F.term_dict)
    return tuple(min(col) for col in zip(*exps)) if exps else ()


def _divide_monomial(F: Polynomial, m: tuple) -> Polynomial:
    return Polynomial(F.ring, {tuple(a - b for a, b in zip(e, m)): c
                               for e, c in F.term_dict.items()})


def _radical_monomial(F: Polynomial) -> Polynomial:
    (e, _), = F.term_dict.items()
    return Polynomial(F.ring, {tuple(1 if d else 0 for d in e): 1})


@dataclass(frozen=True)
class TriangularSystem:
    """Equations ``T`` with strictly increasing leading variables and inequations ``U``."""

    T: tuple
    U: tuple

    def __post_init__(self):
        lvs = [F.lv for F in self.T]
        if any(l < 0 for l in lvs):
            raise DomainError("triangular set members must be non-constant")
        if any(a >= b for a, b in zip(lvs, lvs[1:])):
            raise DomainError("leading variables must strictly increase")

    @classmethod
    def from_node(cls, node: Node) -> "TriangularSystem":
        T = tuple(sorted((F for F in node.P if not F.is_zero), key=lambda F: F.lv))
        U = tuple(sorted(node.Q, key=_canon))
        return cls(T, U)

    @property
    def polys(self) -> list:
        return list(self.T) + list(self.U)

    def __iter__(self):
        return iter((self.T, self.U))


@dataclass(frozen=True)
class TreeEvent:
    id: int
    parent: Optional[int]
    label: str
    node: Node
    dead: bool = False


@dataclass
class DecompositionTree:
    """Append-only log of every node generated during a decomposition."""

    events: list = field(default_factory=list)
    outputs: list = field(default_factory=list)  # event ids that yielded systems

    def add(self, parent, label, node, dead=False) -> int:
        ev = TreeEvent(len(self.events), parent, label, node, dead)
        self.events.append(ev)
        return ev.id

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def children(self, eid: int) -> list:
        return [e for e in self.events if e.parent == eid]


# -- splitting steps -------------------------------------------------------

def split_wang(node: Node):
    """Wang's split at level ``k``: ``(left, right)``; ``right`` is ``None``
    when the initial of the chosen polynomial is a nonzero constant."""
    k = node.k
    Pk = node.part()
    if len(Pk) <= 1:
        raise ContractError("split_wang needs at least two equations at the current level")
    v = k - 1
    T = select_min(Pk, v)
    I, R, _ = initial_and_tail(T, v)
    right = None
    if not I.is_constant:
        right = make_node((node.P - {T}) | {I, R}, node.Q, k)
    rems = [pseudo_divide(F, T, v)[1] for F in Pk if F != T]
    left = make_node((node.P - set(Pk)) | {T} | set(rems), node.Q | {I}, k)
    return left, right


def split_srs(node: Node):
    """Subresultant split: ``(right, branches)`` with ``branches[i-2]`` the
    child built from ``H_i``."""
    k = node.k
    Pk = node.part()
    if len(Pk) <= 1:
        raise ContractError("split_srs needs at least two equations at the current level")
    v = k - 1
    T2 = select_min(Pk, v)
    I2, R2, _ = initial_and_tail(T2, v)
    right = None
    if not I2.is_constant:
        right = make_node((node.P - {T2}) | {I2, R2}, node.Q, k)
    T1 = select_max([F for F in Pk if F != T2], v)
    H = regular_subchain(T1, T2, v)
    inis = [initial_and_tail(h, v)[0] for h in H]
    base = node.P - {T1, T2}
    r = len(H)
    branches = []
    for i in range(r - 1):
        P_i = base | {H[i]} | set(inis[i + 1:])
        branches.append(make_node(P_i, node.Q | {I2, inis[i]}, k))
    if v in H[-1].support:
        branches.append(make_node(base | {H[-1]}, node.Q | {I2, inis[-1]}, k))
    # an x_k-free last member is its own initial: that branch is empty
    return right, branches


def split_regser(node: Node):
    """Inequation handling once at most one equation is left at level ``k``.

    Returns a list of ``(label, child)`` pairs.
    """
    k = node.k
    v = k - 1
    Pk = node.part()
    Qk = node.qpart()
    if len(Pk) > 1:
        raise ContractError("split_regser needs at most one equation at the current level")
    if not Qk:
        return [("advance", make_node(node.P, node.Q, k - 1))]
    out = []
    if len(Pk) == 1:
        T2 = Pk[0]
        T1 = Qk[0]
        I2, R2, _ = initial_and_tail(T2, v)
        Q = node.Q
        if not I2.is_constant and I2 not in Q:
            # gcd specialisation needs ini(T2) != 0; split off the other case first
            out.append(("init-split", make_node((node.P - {T2}) | {I2, R2}, Q, k)))
            Q = Q | {I2}
        if T1.degree(v) >= T2.degree(v):
            H = regular_subchain(T1, T2, v)
        else:
            H = regular_subchain(T2, T1, v)
        inis = [initial_and_tail(h, v)[0] for h in H]
        base = node.P - {T2}
        r = len(H)
        for i in range(r - 1):
            P_i = base | {pseudo_divide(T2, H[i], v)[0]} | set(inis[i + 1:])
            out.append((f"reg-{i + 2}", make_node(P_i, Q | {inis[i]}, k)))
        Hr = H[-1]
        if v in Hr.support:
            Q_r = Q | {inis[-1]}
        else:
            Q_r = (Q - {T1}) | {inis[-1]}
        P_r = base | {pseudo_divide(T2, Hr, v)[0]}
        out.append((f"reg-{r + 1}", make_node(P_r, Q_r, k)))
        return out
    inis = []
    for Qe in Qk:
        I, R, _ = initial_and_tail(Qe, v)
        inis.append(I)
        out.append(("ineq-split", make_node(node.P | {I}, (node.Q - {Qe}) | {R}, k)))
    out.append(("advance", make_node(node.P, node.Q | set(inis), k - 1)))
    return out


def _expand(node: Node, algorithm: str):
    """Children of ``node`` as ``(label, child)`` pairs."""
    Pk = node.part()
    if len(Pk) > 1:
        if algorithm == "wang":
            left, right = split_wang(node)
            kids = [("right", right)] if right is not None else []
            return kids + [("left", left)]
        right, branches = split_srs(node)
        kids = [("right", right)] if right is not None else []
        return kids + [(f"srs-{i + 2}", b) for i, b in enumerate(branches)]
    if algorithm == "regser":
        return split_regser(node)
    return [("advance", make_node(node.P, node.Q, node.k - 1))]


# -- driver ----------------------------------------------------------------

_SIDE_BRANCHES = frozenset({"right", "init-split", "ineq-split"})


@dataclass
class DecompositionResult:
    systems: list
    tree: DecompositionTree
    ring: object
    algorithm: str

    def __iter__(self):
        return iter((self.systems, self.tree))


def _drive(pending: deque, tree: DecompositionTree, algorithm: str, max_nodes: int,
           record: bool) -> list:
    # Pending nodes are taken first in, first out; from each one the main
    # child is followed down to level 0 while side children join the queue.
    created = len(pending)
    systems = []
    while pending:
        eid, node = pending.popleft()
        while node.k > 0:
            checkpoint()
            main = None
            for label, child in _expand(node, algorithm):
                created += 1
                if created > max_nodes:
                    raise ResourceError(f"decomposition exceeded {max_nodes} nodes")
                dead = child.inconsistent
                cid = tree.add(eid, label, child, dead) if record else -1
                if dead:
                    continue
                if main is None and label not in _SIDE_BRANCHES:
                    main = (cid, child)
                else:
                    pending.append((cid, child))
            if main is None:
                break
            eid, node = main
        else:
            S = TriangularSystem.from_node(node)
            if _evidently_empty(S):
                log.debug("dropping output %d: reduces to a nonzero constant", eid)
                continue
            systems.append(S)
            tree.outputs.append(eid)
    return systems


def _evidently_empty(S: TriangularSystem) -> bool:
    # Substitute the variables fixed by linear members with constant initial
    # into the later members; a nonzero constant means there is no zero. Other
    # members are left alone since successive pseudo-division swells quickly.
    fixing = []
    for T in S.T:
        r = T
        for v, L in reversed(fixing):
            if r.is_constant:
                break
            if r.degree(v) > 0:
                r = pseudo_divide(r, L, v)[1]
        if r.is_constant and not r.is_zero:
            return True
        if T.degree(T.lv) == 1 and initial_and_tail(T, T.lv)[0].is_constant:
            fixing.append((T.lv, T))
    return False


def decompose(F: Iterable[Polynomial], algorithm: str = "wang", ring=None,
              max_nodes: int = DEFAULT_MAX_NODES, record: bool = True,
              time_limit: Optional[float] = None) -> DecompositionResult:
    """Decompose ``F`` into triangular systems with the chosen algorithm.

    The variable ordering is the ordering of ``ring`` (default: the ring of the
    polynomials); map the input with :meth:`Polynomial.to_ring` to change it.
    ``Zero(F)`` equals the union of ``Zero(T / U)`` over the returned systems.

    Exceeding ``max_nodes`` or ``time_limit`` (seconds) raises
    :class:`ResourceError` whose ``tree`` attribute holds the nodes generated
    so far.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    F = list(F)
    if ring is None:
        if not F:
            raise DomainError("cannot infer the ring of an empty system")
        ring = F[0].ring
    F = [f.to_ring(ring) for f in F]
    tree = DecompositionTree()
    root = make_node(F, (), ring.n)
    rid = tree.add(None, "root", root, root.inconsistent) if record else -1
    pending = deque() if root.inconsistent else deque([(rid, root)])
    try:
        with time_budget(time_limit):
            systems = _drive(pending, tree, algorithm, max_nodes, record)
    except ResourceError as exc:
        exc.tree = tree
        raise
    log.debug("%s: %d nodes, %d systems", algorithm, len(tree), len(systems))
    return DecompositionResult(systems, tree, ring, algorithm)


# -- generic reduction chain -------------------------------------------------

def prs_reducer(level_set: Sequence[Polynomial], v: int):
    """Reduce a level set to one polynomial by repeated pseudo-division.

    Returns ``(T, R)`` with ``T`` the survivor and ``R`` the nonzero remainders
    free of ``x_v``.
    """
    S = list(level_set)
    R = []
    while len(S) > 1:
        T = select_min(S, v)
        nxt = [T]
        for F in S:
            if F is T or F == T:
                continue
            rem = pseudo_divide(F, T, v)[1]
            if rem.is_zero:
                continue
            if rem.degree(v) > 0:
                nxt.append(rem)
            else:
                R.append(rem)
        S = nxt
    return S[0], R


def reduce_chain(P: Iterable[Polynomial], reducer: Callable = prs_reducer, n: Optional[int] = None) -> list:
    """Snapshots of successive reduction w.r.t. ``x_n, ..., x_1``.

    Element ``0`` is the result after reducing level ``n``, the last element
    the fully reduced set. ``reducer(level_set, v)`` returns ``(T, R)``.
    """
    P = [f for f in P]
    if n is None:
        n = P[0].ring.n if P else 0
    current = set(f for f in P if not f.is_zero)
    snaps = []
    for k in range(n, 0, -1):
        Sk = [f for f in current if f.lv + 1 == k]
        if len(Sk) > 1:
            T, R = reducer(sorted(Sk, key=_canon), k - 1)
            if any(r.degree(k - 1) > 0 for r in R):
                raise DomainError("reducer returned remainders still involving the level variable")
            current = (current - set(Sk)) | {T} | set(r for r in R if not r.is_zero)
        snaps.append(frozenset(current))
    return snaps
