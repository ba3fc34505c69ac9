"""Shared constructors for the test modules."""
from fractions import Fraction

import sympy

from chordtri.field import QQ, PrimeField
from chordtri.parsing import parse_poly, parse_system
from chordtri.poly import PolyRing

X4 = ["x1", "x2", "x3", "x4"]
X5 = ["x1", "x2", "x3", "x4", "x5"]

ILLUSTRATIVE = "x2+x1+2; (x2+2)*x3+x1; (x3+x2)*x4+x3-1; x4+x2"
# chordal set P and non-chordal Q of the associated-graph example
EXAMPLE_P = "x2+x1; x3+x1; x4^2+x2; x4^3+x3; x5+x2; x5+x3+x2"
EXAMPLE_Q = "x2+x1; x3+x1; x4^2+x2; x4^3+x3; x5+x2; x3"


def field_of(p=None):
    return PrimeField(p) if p else QQ


def ring_of(names, p=None):
    return PolyRing(names, field_of(p))


def polys(src, names, p=None):
    return parse_system(src, names, field=field_of(p))[0]


def poly(src, ring):
    return parse_poly(src, ring)


def to_sympy(f, syms=None):
    """The same polynomial as a sympy expression over symbols named like the ring."""
    if syms is None:
        syms = sympy.symbols(list(f.ring.names))
    expr = sympy.Integer(0)
    for e, c in f.term_dict.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, d in zip(syms, e):
            term *= s ** d
        expr += term
    return expr
