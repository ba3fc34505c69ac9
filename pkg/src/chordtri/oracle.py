"""Brute-force zero-set oracle over small prime fields.

Zero sets are enumerated over the full grid ``GF(p)^n``. A decomposition is
checked by running the chosen algorithm natively over ``GF(p)`` and comparing
``Zero(F)`` with the union of ``Zero(T / U)`` over the returned systems.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .decompose import TriangularSystem, decompose
from .errors import DomainError, ResourceError
from .field import PrimeField
from .poly import Polynomial, PolyRing

log = logging.getLogger(__name__)

DEFAULT_PRIMES = (5, 7, 11, 13)
DEFAULT_POINT_CAP = 10**7


@dataclass(frozen=True)
class PointSet:
    """Sorted distinct ``n``-tuples over ``0..p-1``."""

    p: int
    n: int
    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt):
        return tuple(pt) in self._lookup

    @property
    def _lookup(self) -> frozenset:
        return frozenset(self.points)

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return _pointset(self.p, self.n, set(self.points) | set(other.points))

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return _pointset(self.p, self.n, set(self.points) & set(other.points))

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return _pointset(self.p, self.n, set(self.points) - set(other.points))

    def _check(self, other):
        if (self.p, self.n) != (other.p, other.n):
            raise DomainError("point sets live in different spaces")


def _pointset(p, n, pts) -> PointSet:
    return PointSet(p, n, tuple(sorted(tuple(int(c) for c in pt) for pt in pts)))


def _grid(p: int, n: int, cap: int) -> np.ndarray:
    size = p ** n
    if size > cap:
        raise ResourceError(f"{p}^{n} = {size} points exceeds the enumeration cap {cap}")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = np.meshgrid(*([np.arange(p, dtype=np.int64)] * n), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def _field_of(polys: Sequence[Polynomial], p: int) -> None:
    for F in polys:
        if F.field.characteristic != p:
            raise DomainError(f"polynomial {F} is not over GF({p})")


def _values(F: Polynomial, grid: np.ndarray, powers: list, p: int) -> np.ndarray:
    out = np.zeros(grid.shape[0], dtype=np.int64)
    for e, c in F.term_dict.items():
        term = np.full(grid.shape[0], int(c) % p, dtype=np.int64)
        for i, d in enumerate(e):
            if d:
                term = term * powers[i][d] % p
        out = (out + term) % p
    return out


class _Evaluator:
    """Caches the grid and coordinate powers for repeated evaluation."""

    def __init__(self, p: int, n: int, cap: int = DEFAULT_POINT_CAP):
        self.p, self.n = p, n
        self.grid = _grid(p, n, cap)
        self._powers = [{} for _ in range(n)]

    def powers(self, F: Polynomial) -> list:
        for e in F.term_dict:
            for i, d in enumerate(e):
                if d and d not in self._powers[i]:
                    self._powers[i][d] = pow_mod(self.grid[:, i], d, self.p)
        return self._powers

    def values(self, F: Polynomial) -> np.ndarray:
        return _values(F, self.grid, self.powers(F), self.p)

    def mask(self, eqs: Iterable[Polynomial], ineqs: Iterable[Polynomial] = ()) -> np.ndarray:
        m = np.ones(self.grid.shape[0], dtype=bool)
        for F in eqs:
            if F.is_zero:
                continue
            m &= self.values(F) == 0
        for G in ineqs:
            if G.is_zero:
                return np.zeros_like(m)
            m &= self.values(G) != 0
        return m

    def pointset(self, mask: np.ndarray) -> PointSet:
        return PointSet(self.p, self.n, tuple(map(tuple, self.grid[mask].tolist())))


def pow_mod(a: np.ndarray, d: int, p: int) -> np.ndarray:
    out = np.ones_like(a)
    base = a % p
    while d:
        if d & 1:
            out = out * base % p
        base = base * base % p
        d >>= 1
    return out


def enumerate_zeros(F: Iterable[Polynomial], p: int, n: Optional[int] = None,
                    cap: int = DEFAULT_POINT_CAP) -> PointSet:
    """Common zeros of ``F`` in ``GF(p)^n``; coordinates in ring variable order."""
    F = list(F)
    _field_of(F, p)
    if n is None:
        if not F:
            raise DomainError("dimension is required for an empty system")
        n = F[0].ring.n
    ev = _Evaluator(p, n, cap)
    return ev.pointset(ev.mask(F))


def zeros_of_system(S: TriangularSystem, p: int, n: Optional[int] = None,
                    cap: int = DEFAULT_POINT_CAP) -> PointSet:
    """``Zero(T / U)``: zeros of ``T`` where no member of ``U`` vanishes."""
    polys = S.polys
    _field_of(polys, p)
    if n is None:
        if not polys:
            raise DomainError("dimension is required for an empty system")
        n = polys[0].ring.n
    ev = _Evaluator(p, n, cap)
    return ev.pointset(ev.mask(S.T, S.U))


@dataclass
class PrimeCheck:
    p: int
    status: str  # "pass", "fail" or "skipped"
    systems: int = 0
    zeros: int = 0
    missing: list = field(default_factory=list)  # zeros of F not covered
    extra: list = field(default_factory=list)    # covered points that are not zeros
    reason: str = ""

    def to_dict(self) -> dict:
        return {"p": self.p, "status": self.status, "systems": self.systems,
                "zeros": self.zeros, "missing": [list(x) for x in self.missing],
                "extra": [list(x) for x in self.extra], "reason": self.reason}


@dataclass
class VerificationReport:
    algorithm: str
    checks: list

    @property
    def status(self) -> str:
        ran = [c for c in self.checks if c.status != "skipped"]
        if not ran:
            return "inconclusive"
        return "pass" if all(c.status == "pass" for c in ran) else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"algorithm": self.algorithm, "status": self.status,
                "primes": [c.to_dict() for c in self.checks]}


def reduce_mod(F: Iterable[Polynomial], p: int, ring: Optional[PolyRing] = None) -> list:
    """Map polynomials to ``GF(p)``; raises ``ZeroDivisionError`` on a bad denominator."""
    F = list(F)
    if ring is None:
        ring = F[0].ring
    target = ring.with_field(PrimeField(p))
    return [f.to_ring(target) for f in F]


def check_systems(F: Sequence[Polynomial], systems: Sequence[TriangularSystem], p: int,
                  cap: int = DEFAULT_POINT_CAP, max_witnesses: int = 20) -> PrimeCheck:
    """Compare ``Zero(F)`` with the union of the systems' zeros, all over ``GF(p)``."""
    F = list(F)
    polys = F + [g for S in systems for g in S.polys]
    _field_of(polys, p)
    n = polys[0].ring.n if polys else 0
    ev = _Evaluator(p, n, cap)
    zero_f = ev.mask(F)
    covered = np.zeros_like(zero_f)
    for S in systems:
        covered |= ev.mask(S.T, S.U)
    missing = ev.grid[zero_f & ~covered][:max_witnesses].tolist()
    extra = ev.grid[covered & ~zero_f][:max_witnesses].tolist()
    ok = not missing and not extra
    return PrimeCheck(p, "pass" if ok else "fail", len(systems), int(zero_f.sum()),
                      [tuple(x) for x in missing], [tuple(x) for x in extra])


def verify_decomposition(F: Iterable[Polynomial], algorithm: str = "wang",
                         primes: Sequence[int] = DEFAULT_PRIMES, ring: Optional[PolyRing] = None,
                         cap: int = DEFAULT_POINT_CAP,
                         mutate: Optional[Callable[[list], list]] = None,
                         max_nodes: Optional[int] = None) -> VerificationReport:
    """Run ``algorithm`` natively over each ``GF(p)`` and check the zero relation.

    ``ring`` fixes the variable ordering (default: the ring of ``F``). A prime
    dividing a coefficient denominator is skipped with a warning. ``mutate``
    transforms the computed system list before checking and exists for
    mutation tests of the oracle itself.
    """
    F = list(F)
    if ring is None:
        if not F:
            raise DomainError("cannot infer the ring of an empty system")
        ring = F[0].ring
    checks = []
    for p in primes:
        try:
            Fp = reduce_mod(F, p, ring)
        except ZeroDivisionError as exc:
            warnings.warn(f"skipping p={p}: {exc}", RuntimeWarning, stacklevel=2)
            checks.append(PrimeCheck(p, "skipped", reason=str(exc)))
            continue
        ring_p = ring.with_field(PrimeField(p))
        kwargs = {} if max_nodes is None else {"max_nodes": max_nodes}
        systems = decompose(Fp, algorithm, ring=ring_p, record=False, **kwargs).systems
        if mutate is not None:
            systems = mutate(list(systems))
        check = check_systems(Fp, systems, p, cap)
        log.debug("p=%d %s: %s", p, algorithm, check.status)
        checks.append(check)
    return VerificationReport(algorithm, checks)
