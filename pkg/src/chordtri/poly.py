"""Sparse exact multivariate polynomials.

A :class:`PolyRing` fixes the variables and the coefficient field. Variable
``i`` of a ring is the ``i``-th smallest in the ordering, so ``x_0 < x_1 <
... < x_{n-1}`` always holds physically; changing the ordering means mapping
polynomials into a re-indexed ring (:meth:`Polynomial.to_ring`).

Polynomials are immutable. Terms live in a dict ``{exponent tuple: coeff}``
without zero coefficients; the canonical term list is sorted in descending
lexicographic order comparing the greatest variable first.
"""
from __future__ import annotations

import heapq

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .field import QQ, CoefficientField


@dataclass(frozen=True)
class VarTable:
    """Variable names plus the ordering used for elimination.

    ``names`` keeps the caller's naming order; ``ordering`` is a permutation
    with ``names[ordering[0]] < names[ordering[1]] < ...``.
    """

    names: tuple
    ordering: tuple = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        ordering = tuple(range(len(names))) if self.ordering is None else tuple(self.ordering)
        if sorted(ordering) != list(range(len(names))):
            raise ValueError(f"ordering {ordering} is not a permutation of 0..{len(names) - 1}")
        object.__setattr__(self, "ordering", ordering)

    @classmethod
    def ascending(cls, names: Sequence[str]) -> "VarTable":
        return cls(tuple(names))

    @property
    def sorted_names(self) -> tuple:
        """Names from smallest to greatest variable."""
        return tuple(self.names[i] for i in self.ordering)

    def __len__(self):
        return len(self.names)


class PolyRing:
    """Polynomial ring ``K[x_0, ..., x_{n-1}]`` with ``x_0 < ... < x_{n-1}``."""

    __slots__ = ("names", "field", "n", "_index", "_hash")

    def __init__(self, names: Sequence[str], field: CoefficientField = QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.field = field
        self.n = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._hash = hash((self.names, self.field))

    @classmethod
    def from_vartable(cls, table: VarTable, field: CoefficientField = QQ) -> "PolyRing":
        return cls(table.sorted_names, field)

    @property
    def vartable(self) -> VarTable:
        return VarTable(self.names)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.n:
                raise DomainError(f"variable index {var} out of range")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise DomainError(f"unknown variable {var!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.n: c})

    def var(self, v) -> "Polynomial":
        i = self.index(v)
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.n)]

    def from_terms(self, terms: Iterable) -> "Polynomial":
        """Build from ``(exponents, coeff)`` pairs, merging duplicates."""
        f = self.field
        out: dict = {}
        for exps, c in terms:
            exps = tuple(exps)
            if len(exps) != self.n:
                raise ValueError(f"exponent vector {exps} has wrong length")
            c = f.convert(c)
            out[exps] = f.reduce(out.get(exps, 0) + c)
        return Polynomial(self, {e: c for e, c in out.items() if c != 0})

    def with_field(self, field: CoefficientField) -> "PolyRing":
        return PolyRing(self.names, field)

    def reordered(self, ascending_names: Sequence[str]) -> "PolyRing":
        if sorted(ascending_names) != sorted(self.names):
            raise DomainError("new ordering must list exactly the ring variables")
        return PolyRing(ascending_names, self.field)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field == other.field)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.field!r})"


class Polynomial:
    """Immutable sparse polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "_terms", "_hash", "_lv", "_sorted", "_supp")

    def __init__(self, ring: PolyRing, terms: dict):
        # terms must already be normalised (no zeros, reduced coefficients)
        self.ring = ring
        self._terms = terms
        self._hash = None
        self._lv = None
        self._sorted = None
        self._supp = None

    # -- accessors ---------------------------------------------------------
    @property
    def field(self) -> CoefficientField:
        return self.ring.field

    @property
    def term_dict(self) -> dict:
        return self._terms

    @property
    def terms(self) -> list:
        """Canonical term list, descending lex with the greatest variable first."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: t[0][::-1], reverse=True)
        return self._sorted

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return self.lv < 0

    @property
    def constant_value(self):
        if not self.is_constant:
            raise DomainError("polynomial is not constant")
        return self._terms.get((0,) * self.ring.n, 0)

    @property
    def lv(self) -> int:
        """Index of the leading (greatest) variable, ``-1`` for constants."""
        if self._lv is None:
            best = -1
            for e in self._terms:
                for i in range(len(e) - 1, best, -1):
                    if e[i]:
                        best = i
                        break
            self._lv = best
        return self._lv

    def degree(self, k: int) -> int:
        """Degree in variable ``k``; ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        return max(e[k] for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    @property
    def support(self) -> frozenset:
        if self._supp is None:
            s = set()
            for e in self._terms:
                s.update(i for i, d in enumerate(e) if d)
            self._supp = frozenset(s)
        return self._supp

    def coefficients(self, k: int) -> dict:
        """Split as ``sum_d c_d * x_k^d``; returns ``{d: c_d}`` with ``x_k``-free ``c_d``."""
        parts: dict = {}
        for e, c in self._terms.items():
            d = e[k]
            if d:
                e = e[:k] + (0,) + e[k + 1:]
            parts.setdefault(d, {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in parts.items()}

    def coeff(self, k: int, d: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            if e[k] == d:
                out[e[:k] + (0,) + e[k + 1:]] = c
        return Polynomial(self.ring, out)

    def lc(self, k: int) -> "Polynomial":
        """Leading coefficient w.r.t. ``x_k``; an ``x_k``-free input is its own."""
        d = self.degree(k)
        if d <= 0:
            return self
        return self.coeff(k, d)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DomainError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        red = self.field.reduce
        for e, c in b.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return Polynomial(self.ring, {e: red(-c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        red = self.field.reduce
        for e, c in other._terms.items():
            v = red(out.get(e, 0) - c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        red = self.field.reduce
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        res = {}
        for e, c in out.items():
            c = red(c)
            if c:
                res[e] = c
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.convert(c)
        if c == 0:
            return self.ring.zero()
        red = f.reduce
        return Polynomial(self.ring, {e: red(v * c) for e, v in self._terms.items()})

    def mul_var_power(self, k: int, d: int) -> "Polynomial":
        """Multiply by ``x_k^d``."""
        if d == 0:
            return self
        out = {}
        for e, c in self._terms.items():
            out[e[:k] + (e[k] + d,) + e[k + 1:]] = c
        return Polynomial(self.ring, out)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises :class:`DomainError` otherwise."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        lead_e, lead_c = other.terms[0]
        rem = dict(self._terms)
        # max-heap on the canonical key, entries invalidated lazily
        heap = [tuple(-x for x in reversed(e)) for e in rem]
        heapq.heapify(heap)
        quot = {}
        other_items = [(oe, oc) for oe, oc in other._terms.items() if oe != lead_e]
        while heap:
            e_max = tuple(-x for x in reversed(heapq.heappop(heap)))
            c = rem.pop(e_max, None)
            if c is None:
                continue
            qe = tuple(x - y for x, y in zip(e_max, lead_e))
            if min(qe) < 0:
                raise DomainError("division is not exact")
            qc = f.div(c, lead_c)
            quot[qe] = qc
            for oe, oc in other_items:
                e = tuple(x + y for x, y in zip(qe, oe))
                old = rem.get(e)
                v = f.reduce((old or 0) - qc * oc)
                if v:
                    if old is None:
                        heapq.heappush(heap, tuple(-x for x in reversed(e)))
                    rem[e] = v
                elif old is not None:
                    del rem[e]
        return Polynomial(self.ring, quot)

    # -- evaluation / conversion -------------------------------------------
    def evaluate(self, point: Sequence):
        """Value at a full point given in ring variable order."""
        f = self.field
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, d in zip(point, e):
                if d:
                    v = v * x ** d
            total += v
        return f.reduce(total) if f.characteristic == 0 else total % f.characteristic

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in ``ring`` (same variable names, any order, any field)."""
        if ring == self.ring:
            return self
        try:
            perm = [self.ring.names.index(name) for name in ring.names]
        except ValueError:
            # target ring may be larger; missing variables must not occur
            perm = [self.ring._index.get(name, -1) for name in ring.names]
        present = set(p for p in perm if p >= 0)
        if any(i not in present for i in self.support):
            raise DomainError("target ring lacks a variable of the polynomial")
        out = {}
        conv = ring.field.convert
        red = ring.field.reduce
        for e, c in self._terms.items():
            ne = tuple(e[p] if p >= 0 else 0 for p in perm)
            v = red(out.get(ne, 0) + conv(c))
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return Polynomial(ring, out)

    def sort_key(self) -> tuple:
        """Key realising the canonical term-list order between polynomials."""
        f = self.field
        if f.characteristic:
            return tuple((e[::-1], f.signed(c)) for e, c in self.terms)
        return tuple((e[::-1], c) for e, c in self.terms)

    # -- protocol --------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _format_coeff(field, c) -> str:
    if field.characteristic:
        c = field.signed(c)
    return str(c)


def format_poly(poly: Polynomial) -> str:
    """Canonical text form, re-readable by :func:`chordtri.parsing.parse_poly`."""
    if poly.is_zero:
        return "0"
    names = poly.ring.names
    field = poly.field
    pieces = []
    for e, c in poly.terms:
        if field.characteristic:
            c = field.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            names[i] if d == 1 else f"{names[i]}^{d}"
            for i, d in enumerate(e) if d)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        pieces.append((neg, body))
    first_neg, first = pieces[0]
    out = ("-" if first_neg else "") + first
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
