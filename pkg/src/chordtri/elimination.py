"""Elimination primitives: initials, pseudo-division, resultants, subresultants.

Variables are passed as ring indices. Pseudo-division fixes the exponent of
the divisor's leading coefficient to ``s = max(deg(F) - deg(G) + 1, 0)``.
A divisor free of the elimination variable follows the degree-0 convention
``prem = 0``, ``pquo = F`` (the identity then holds with ``s = 1``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional

from .budget import checkpoint
from .errors import DomainError
from .poly import Polynomial


@dataclass(frozen=True)
class LeadingParts:
    lv: int
    ini: Polynomial
    tail: Polynomial
    ldeg: int


def leading_parts(F: Polynomial) -> LeadingParts:
    """Split ``F = ini * x_lv^ldeg + tail`` with respect to its leading variable."""
    k = F.lv
    if k < 0:
        raise DomainError("leading variable of a constant polynomial is undefined")
    return LeadingParts(k, *initial_and_tail(F, k)[:2], F.degree(k))


def initial_and_tail(F: Polynomial, k: int):
    """Leading coefficient and tail of ``F`` viewed as a polynomial in ``x_k``.

    A polynomial without ``x_k`` is its own initial with tail zero.
    """
    d = F.degree(k)
    if d <= 0:
        return F, F.ring.zero(), 0
    head, rest = {}, {}
    for e, c in F.term_dict.items():
        if e[k] == d:
            head[e[:k] + (0,) + e[k + 1:]] = c
        else:
            rest[e] = c
    return Polynomial(F.ring, head), Polynomial(F.ring, rest), d


def ini(F: Polynomial, k: Optional[int] = None) -> Polynomial:
    return initial_and_tail(F, F.lv if k is None else k)[0]


def tail(F: Polynomial, k: Optional[int] = None) -> Polynomial:
    return initial_and_tail(F, F.lv if k is None else k)[1]


def support(F) -> frozenset:
    """Variable support of a polynomial or the union over a collection."""
    if isinstance(F, Polynomial):
        return F.support
    out = set()
    for f in F:
        out |= f.support
    return frozenset(out)


def _from_univariate(coeffs: dict, k: int, ring) -> Polynomial:
    out = {}
    for d, c in coeffs.items():
        for e, v in c.term_dict.items():
            out[e[:k] + (d,) + e[k + 1:]] = v
    return Polynomial(ring, out)


def pseudo_divide(F: Polynomial, G: Polynomial, k: int):
    """Return ``(pquo, prem, s)`` with ``lc(G)^s F = pquo*G + prem``."""
    if G.is_zero:
        raise DomainError("pseudo-division by the zero polynomial")
    ring = F.ring
    l = G.degree(k)
    if l == 0:
        return F, ring.zero(), 1
    m = F.degree(k)
    if m < l:
        return ring.zero(), F, 0
    s = m - l + 1
    gc = G.coefficients(k)
    b = gc[l]
    rem = F.coefficients(k)
    quo: dict = {}
    steps = 0
    deg = m
    while deg >= l:
        checkpoint()
        c = rem[deg]
        shift = deg - l
        # quo := b*quo + c*x^shift ; rem := b*rem - c*x^shift*G
        quo = {d: q * b for d, q in quo.items()}
        quo[shift] = quo[shift] + c if shift in quo else c
        new = {}
        for d, r in rem.items():
            if d != deg:
                new[d] = r * b
        for d, g in gc.items():
            if d == l:
                continue
            t = d + shift
            v = new[t] - c * g if t in new else -(c * g)
            new[t] = v
        rem = {d: r for d, r in new.items() if not r.is_zero}
        steps += 1
        deg = max(rem) if rem else -1
    if steps < s:
        factor = b ** (s - steps)
        rem = {d: r * factor for d, r in rem.items()}
        quo = {d: q * factor for d, q in quo.items()}
    quo = {d: q for d, q in quo.items() if not q.is_zero}
    return _from_univariate(quo, k, ring), _from_univariate(rem, k, ring), s


def prem(F: Polynomial, G: Polynomial, k: int) -> Polynomial:
    """Pseudo-remainder of ``F`` by ``G`` with respect to ``x_k``."""
    return pseudo_divide(F, G, k)[1]


def pquo(F: Polynomial, G: Polynomial, k: int) -> Polynomial:
    """Pseudo-quotient of ``F`` by ``G`` with respect to ``x_k``."""
    return pseudo_divide(F, G, k)[0]


def bareiss_det(matrix: list) -> Polynomial:
    """Fraction-free determinant of a square matrix of polynomials.

    Divisions in the elimination are exact in the polynomial ring.
    """
    n = len(matrix)
    if n == 0:
        raise DomainError("determinant of an empty matrix")
    ring = matrix[0][0].ring
    M = [list(row) for row in matrix]
    sign = 1
    prev = ring.one()
    for c in range(n - 1):
        checkpoint()
        if M[c][c].is_zero:
            for r in range(c + 1, n):
                if not M[r][c].is_zero:
                    M[c], M[r] = M[r], M[c]
                    sign = -sign
                    break
            else:
                return ring.zero()
        piv = M[c][c]
        for i in range(c + 1, n):
            mic = M[i][c]
            row_i = M[i]
            row_c = M[c]
            for j in range(c + 1, n):
                num = row_i[j] * piv - mic * row_c[j]
                row_i[j] = num if prev == 1 or num.is_zero else num.exact_div(prev)
            row_i[c] = ring.zero()
        prev = piv
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def _coeff_list(F: Polynomial, k: int, deg: int) -> list:
    parts = F.coefficients(k)
    zero = F.ring.zero()
    return [parts.get(deg - i, zero) for i in range(deg + 1)]


def sylvester_matrix(F: Polynomial, G: Polynomial, k: int) -> list:
    """Sylvester matrix of ``F`` and ``G`` in ``x_k``; ``l`` rows of F then ``m`` rows of G."""
    m, l = F.degree(k), G.degree(k)
    N = m + l
    zero = F.ring.zero()
    a = _coeff_list(F, k, m)
    b = _coeff_list(G, k, l)
    rows = []
    for r in range(l):
        rows.append([zero] * r + a + [zero] * (N - m - 1 - r))
    for r in range(m):
        rows.append([zero] * r + b + [zero] * (N - l - 1 - r))
    return rows


def sylvester_resultant(F: Polynomial, G: Polynomial, k: int) -> Polynomial:
    """Determinant of the Sylvester matrix of ``F`` and ``G`` w.r.t. ``x_k``."""
    if k not in F.support or k not in G.support:
        raise DomainError("resultant variable must occur in both polynomials")
    return bareiss_det(sylvester_matrix(F, G, k))


@dataclass
class SubresultantChain:
    """Subresultants ``S_j`` (``j = mu-1, ..., 0``) of ``F`` and ``G`` in ``x_k``."""

    F: Polynomial
    G: Polynomial
    var: int
    chain: list = field(default_factory=list)
    regular_indices: list = field(default_factory=list)

    def __getitem__(self, j: int) -> Polynomial:
        for idx, S in self.chain:
            if idx == j:
                return S
        raise KeyError(j)


def _minor_rows(syl: list, m: int, l: int, j: int) -> list:
    # drop the last j rows of each coefficient block
    return syl[: l - j] + syl[l: l + m - j]


def subresultant(F: Polynomial, G: Polynomial, k: int, j: int, syl=None) -> Polynomial:
    """The ``j``-th subresultant ``sum_i det(M_ij) x_k^i``.

    The sum is evaluated as one determinant: the kept coefficient columns of
    the Sylvester rows plus a last column holding each row's polynomial
    ``x_k^r F`` or ``x_k^r G``. Column operations turn that column into the
    ``M_ij`` columns, so by multilinearity it equals the sum of the minors.

    For ``j >= deg(G)`` (possible only when ``deg(F) > deg(G) + 1``) the
    determinantal polynomial degenerates to ``lc(G)^(m-l-1) * G`` at ``j = l``
    and to zero above.
    """
    m, l = F.degree(k), G.degree(k)
    if j >= l:
        if j == l and m > l:
            return G.lc(k) ** (m - l - 1) * G
        return F.ring.zero()
    if syl is None:
        syl = sylvester_matrix(F, G, k)
    rows = _minor_rows(syl, m, l, j)
    N = m + l
    width = N - 2 * j - 1
    polys = ([F.mul_var_power(k, l - j - 1 - r) for r in range(l - j)]
             + [G.mul_var_power(k, m - j - 1 - r) for r in range(m - j)])
    matrix = [row[:width] + [P] for row, P in zip(rows, polys)]
    return bareiss_det(matrix)


def subresultant_by_minors(F: Polynomial, G: Polynomial, k: int, j: int) -> Polynomial:
    """Same value as :func:`subresultant`, one determinant per minor ``M_ij``."""
    m, l = F.degree(k), G.degree(k)
    if j >= l:
        return subresultant(F, G, k, j)
    syl = sylvester_matrix(F, G, k)
    rows = _minor_rows(syl, m, l, j)
    N = m + l
    keep = list(range(N - 2 * j - 1))
    result = F.ring.zero()
    for i in range(j + 1):
        col = N - i - j - 1
        minor = [[row[c] for c in keep] + [row[col]] for row in rows]
        d = bareiss_det(minor)
        if not d.is_zero:
            result = result + d.mul_var_power(k, i)
    return result


CHAIN_METHODS = ("recurrence", "determinant")


def subresultant_chain(F: Polynomial, G: Polynomial, k: int,
                       method: str = "recurrence") -> SubresultantChain:
    """Subresultant chain of ``F`` and ``G`` with respect to ``x_k``.

    Requires ``deg(F, x_k) >= deg(G, x_k) >= 1``. Both methods return the
    determinantal subresultants: ``"determinant"`` evaluates one determinant
    per index, ``"recurrence"`` uses the pseudo-remainder recurrence with
    exact divisions and is much cheaper at higher degrees.
    """
    m, l = F.degree(k), G.degree(k)
    if l < 1:
        raise DomainError("second polynomial must involve the chain variable")
    if m < l:
        raise DomainError(f"degree {m} of the first polynomial is below {l}")
    if method not in CHAIN_METHODS:
        raise ValueError(f"unknown chain method {method!r}")
    mu = m - 1 if m > l else l
    out = SubresultantChain(F, G, k)
    if method == "determinant":
        syl = sylvester_matrix(F, G, k)
        values = {j: subresultant(F, G, k, j, syl) for j in range(mu)}
    else:
        values = _chain_by_recurrence(F, G, k)
        if m > l:
            values[l] = subresultant(F, G, k, l)
    zero = F.ring.zero()
    for j in range(mu - 1, -1, -1):
        S = values.get(j, zero)
        out.chain.append((j, S))
        if not S.is_zero and S.degree(k) == j:
            out.regular_indices.append(j)
    return out


def _chain_by_recurrence(F: Polynomial, G: Polynomial, k: int) -> dict:
    """Nonzero subresultants of index below ``deg(G)``, keyed by index.

    With ``S_d`` regular and ``S_{d-1}`` of degree ``e``: the indices strictly
    between ``e`` and ``d - 1`` vanish, ``S_e = lc(S_{d-1})^(d-e-1) S_{d-1} /
    s_d^(d-e-1)`` and ``S_{e-1} = prem(S_d, -S_{d-1}) / (s_d^(d-e) lc(S_d))``,
    where ``s_d`` is the principal coefficient of ``S_d``.
    """
    p, q = F.degree(k), G.degree(k)
    out = {}
    s = G.lc(k) ** (p - q)
    A = G
    B = prem(F, G, k)
    if (p - q + 1) % 2:
        B = -B
    while not B.is_zero:
        checkpoint()
        d, e = A.degree(k), B.degree(k)
        out[d - 1] = B
        delta = d - e
        if delta > 1:
            C = (B.lc(k) ** (delta - 1) * B).exact_div(s ** (delta - 1))
            out[e] = C
        else:
            C = B
        if e == 0:
            break
        B = prem(A, -B, k).exact_div(s ** delta * A.lc(k))
        A = C
        s = A.lc(k)
    return out


def srs(T1: Polynomial, T2: Polynomial, k: int) -> list:
    """Regular subresultants ``S_{d_1}, ..., S_{d_r}`` with ``d_1 > ... > d_r``."""
    chain = subresultant_chain(T1, T2, k)
    return [chain[j] for j in chain.regular_indices]


def regular_subchain(T1: Polynomial, T2: Polynomial, k: int) -> list:
    """``T2`` followed by the regular subresultants of index below ``deg(T2)``.

    This is the sequence ``H_2, ..., H_r`` consumed by the splitting steps:
    branch ``i`` covers the points where the gcd of the specialised pair is
    ``H_i``. ``T2`` itself covers the case that it divides ``T1``.
    """
    l = T2.degree(k)
    return [T2] + [S for S in srs(T1, T2, k) if S.degree(k) < l]


def content_normalize(F: Polynomial) -> Polynomial:
    """Scale ``F`` to a primitive form with positive leading coefficient (rationals)
    or monic (prime fields). Optional, never applied by default."""
    if F.is_zero:
        return F
    f = F.field
    lead = F.terms[0][1]
    if f.characteristic:
        return F.scale(f.inv(lead))
    nums, dens = [], []
    for _, c in F.terms:
        c = Fraction(c)
        nums.append(c.numerator)
        dens.append(c.denominator)
    g = 0
    for x in nums:
        g = gcd(g, x)
    L = 1
    for d in dens:
        L = lcm(L, d)
    factor = Fraction(L, g)
    if lead < 0:
        factor = -factor
    return F.scale(factor)


def prem_set(polys: Iterable[Polynomial], T: Polynomial, k: int) -> list:
    return [prem(P, T, k) for P in polys]
