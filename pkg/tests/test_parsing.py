from fractions import Fraction

import pytest

from chordtri.errors import ParseError
from chordtri.families import gen_family
from chordtri.field import PrimeField
from chordtri.parsing import format_system, parse_poly, parse_system
from chordtri.poly import format_poly
from helpers import EXAMPLE_P, EXAMPLE_Q, ILLUSTRATIVE, X4, ring_of

CORPUS = [
    ILLUSTRATIVE,
    EXAMPLE_P,
    EXAMPLE_Q,
    "x2+x1; x3+x1; -x2*x4+x3; x5+x2",
    "x1+x2; x1+x3; x2+x3; x4^3+x1; x3*x4^2+x3+x4",
    "x1*x2*x3*x4*x5*x6-1; x1^2+x2; x2^2+x3; x3^2+x4; x4^2+x5; x5^2+x6",
    "x1^2 - 1/2",
    "-(x1 - 3)^3 + 2/3*x2*(x1 + x2)^2",
    format_system(gen_family("lattice", 16)),
]


def test_prefix_of_illustrative_system():
    F, ring = parse_system("x2+x1+2; (x2+2)*x3+x1")
    assert len(F) == 2
    assert set(ring.names) == {"x1", "x2", "x3"}


def test_first_appearance_ordering():
    _, ring = parse_system("y*z + x; z")
    assert ring.names == ("y", "z", "x")


def test_exact_rational_coefficient():
    F, ring = parse_system("x1^2 - 1/2")
    assert F[0].term_dict[(0,)] == Fraction(-1, 2)


def test_trailing_operator_reports_end_of_input():
    with pytest.raises(ParseError) as info:
        parse_system("x1 + ")
    assert "end of input" in str(info.value)


def test_error_position_on_second_line():
    with pytest.raises(ParseError) as info:
        parse_system("x1 + 1;\nx2 $ 3")
    assert (info.value.line, info.value.column) == (2, 4)


@pytest.mark.parametrize("src", ["2x1", "x1 x2", "x1(x2+1)", "(x1)(x2)"])
def test_juxtaposition_rejected(src):
    with pytest.raises(ParseError):
        parse_system(src)


@pytest.mark.parametrize("src", ["x1^-1", "x1/x2", "1/0", "x1^", ";", "(x1"])
def test_malformed_rejected(src):
    with pytest.raises(ParseError):
        parse_system(src)


def test_comments_and_trailing_semicolon():
    F, _ = parse_system("# header\nx1 + 1; # first\nx2;\n")
    assert len(F) == 2


def test_explicit_ordering_may_add_variables():
    F, ring = parse_system("x2 + 1", ["x1", "x2", "x3"])
    assert ring.names == ("x1", "x2", "x3")
    assert F[0].lv == 1


def test_explicit_ordering_must_cover_text():
    with pytest.raises(ParseError):
        parse_system("x2 + x4", ["x1", "x2"])


def test_parse_poly_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("x9", ring_of(X4))


def test_prime_field_parse():
    F, _ = parse_system("1/2*x1 + 6", field=PrimeField(7))
    # symmetric residues: 4 prints as -3, 6 as -1
    assert format_poly(F[0]) == "-3*x1 - 1"


@pytest.mark.parametrize("src", CORPUS)
def test_round_trip(src):
    F, ring = parse_system(src)
    text = format_system(F)
    G, _ = parse_system(text, list(ring.names))
    assert G == F
    assert format_system(G) == text
