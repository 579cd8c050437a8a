from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from homspace.bipoly import (BiPoly, BoundsError, from_json, inv_truncated, mul, parse, power, to_json,
                             to_lines, to_text)

coeffs = st.one_of(st.integers(-20, 20), st.fractions(min_value=-20, max_value=20, max_denominator=6))
polys = st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 4)), coeffs, max_size=6).map(BiPoly)


def to_sympy(p):
    s, t = sp.symbols("s t")
    return sum((sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c) * s ** i * t ** j
               for (i, j), c in p.items()), s, t


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + BiPoly.zero() == a
    assert a * BiPoly.one() == a
    assert a - a == BiPoly.zero()


@given(polys, polys)
def test_product_matches_sympy(a, b):
    pa, s, t = to_sympy(a)
    pb, _, _ = to_sympy(b)
    pc, _, _ = to_sympy(a * b)
    assert sp.expand(pa * pb - pc) == 0


@given(polys)
def test_text_round_trip(a):
    assert parse(to_text(a)) == a
    assert parse("\n".join(to_lines(a))) == a if a else True


@given(polys)
def test_json_round_trip(a):
    assert from_json(to_json(a)) == a
    b = a.with_bounds((6, 4))
    assert from_json(to_json(b)).bounds == (6, 4)


@given(polys, st.integers(0, 8), st.integers(0, 5))
def test_truncated_inverse(a, smax, tmax):
    a = a + (1 - a.coefficient(0, 0))  # make the constant term 1
    inv = inv_truncated(a, smax, tmax)
    assert mul(a, inv, (smax, tmax)) == BiPoly.one((smax, tmax))


@given(polys, st.integers(0, 4))
def test_power_is_repeated_product(a, m):
    b = BiPoly.one()
    for _ in range(m):
        b = b * a
    assert power(a, m) == b


def test_canonical_text():
    p = BiPoly({(12, 2): 1, (10, 1): 1, (2, 1): 1, (0, 0): 1})
    assert to_text(p) == "s^12*t^2 + s^10*t + s^2*t + 1"
    assert to_text(BiPoly.zero()) == "0"
    assert to_text(BiPoly({(2, 0): -1, (0, 0): Fraction(1, 2)})) == "-s^2 + 1/2"


def test_parse_forms():
    assert parse("20*s^18*t^3 - s^2 + 3") == BiPoly({(18, 3): 20, (2, 0): -1, (0, 0): 3})
    assert parse("s*t\n2*t^2") == BiPoly({(1, 1): 1, (0, 2): 2})


def test_bounds_truncate_and_conflict():
    a = BiPoly({(3, 0): 1, (1, 1): 2}, bounds=(2, 2))
    assert a.terms == {(1, 1): 2}
    with pytest.raises(BoundsError):
        a + BiPoly.one((4, 4))
    with pytest.raises(BoundsError):
        BiPoly({}, bounds=(-1, 0))


def test_integrality_and_exactness():
    a = BiPoly({(0, 0): Fraction(4, 2)})
    assert a.is_integral() and isinstance(a.coefficient(0, 0), int)
    with pytest.raises(TypeError):
        BiPoly({(0, 0): 0.5})


def test_inverse_needs_unit_constant():
    with pytest.raises(ZeroDivisionError):
        inv_truncated(BiPoly({(1, 0): 1}), 3, 3)
