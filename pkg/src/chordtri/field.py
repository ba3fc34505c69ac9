"""Coefficient fields: exact rationals and prime fields GF(p).

Field elements are plain Python numbers so that polynomial arithmetic can use
the native operators and only normalise afterwards. Rationals are ``int`` when
integral and :class:`fractions.Fraction` otherwise; GF(p) elements are ``int``
in ``range(p)``.
"""
from __future__ import annotations

from fractions import Fraction


class CoefficientField:
    """Common interface of the supported coefficient fields."""

    characteristic = 0

    def reduce(self, x):
        raise NotImplementedError

    def convert(self, x):
        """Map an int or Fraction into the field."""
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def mul(self, a, b):
        return self.reduce(a * b)

    def neg(self, a):
        return self.reduce(-a)

    def is_zero(self, a):
        return a == 0

    def format(self, c):
        return str(c)


class RationalField(CoefficientField):
    """The field of rational numbers, elements kept in lowest terms."""

    characteristic = 0

    def reduce(self, x):
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def convert(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return self.reduce(x)
        raise TypeError(f"cannot convert {x!r} to a rational")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(Fraction(1) / x)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if type(a) is int and type(b) is int:
            q, r = divmod(a, b)
            if r == 0:
                return q
            return Fraction(a, b)
        return self.reduce(Fraction(a) / b)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(CoefficientField):
    """GF(p) for an odd prime ``p < 2**31``."""

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or p >= 2**31 or p % 2 == 0 or not _is_prime(p):
            raise ValueError(f"modulus must be an odd prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p

    def reduce(self, x):
        return x % self.p

    def convert(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator {x.denominator} vanishes modulo {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def format(self, c):
        # symmetric representative reads better: p-1 prints as -1
        return str(c - self.p if c > self.p // 2 else c)

    def signed(self, c):
        return c - self.p if c > self.p // 2 else c

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


QQ = RationalField()


def field_from_spec(spec) -> CoefficientField:
    """Build a field from ``None``/``"QQ"``/``0`` (rationals) or a prime."""
    if spec is None or spec == 0 or (isinstance(spec, str) and spec.upper() in ("QQ", "Q")):
        return QQ
    if isinstance(spec, CoefficientField):
        return spec
    if isinstance(spec, str):
        s = spec.strip().upper()
        if s.startswith("GF(") and s.endswith(")"):
            s = s[3:-1]
        return PrimeField(int(s))
    return PrimeField(int(spec))
