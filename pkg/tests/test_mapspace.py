import pytest
import sympy as sp

from homspace.bipoly import to_text
from homspace.mapspace import (bg_generator_degrees, free_algebra_series, full_generator_table,
                               full_mapspace_hilbert_series, h_generator_table, h_hilbert_series)
from homspace.molien import hom_bounds
from homspace.weyl import LieType

F4, E6, E7, E8 = (LieType.parse(n) for n in ("F4", "E6", "E7", "E8"))


def sympy_h_coefficient(t, m, i, j):
    """Coefficient of the free graded-commutative algebra series, expanded by sympy."""
    s, u = sp.symbols("s u")
    expr = 1
    for g in h_generator_table(t, m).entries:
        mono = s ** g.s_deg * u ** g.t_deg
        f = (1 + mono) if g.odd else sum(mono ** k for k in range(i // max(g.s_deg, 1) + j // g.t_deg + 2))
        expr = sp.expand(expr * f ** g.mult)
        expr = sum(c * s ** a * u ** b for (a, b), c in sp.Poly(expr, s, u).terms() if a <= i and b <= j)
    return sp.Poly(expr, s, u).coeff_monomial(s ** i * u ** j)


def test_generator_tables():
    assert bg_generator_degrees(F4) == [4, 12, 16, 24]
    tab = h_generator_table(F4, 3)
    assert tab.count() == 27
    assert all(g.s_deg >= 0 and g.t_deg >= 1 for g in tab.entries)
    doc = tab.to_json()
    assert doc["entries"][0] == [2, 1, "odd", 3]
    full = full_generator_table(LieType.parse("G2"), 2)
    assert full.count() == 6


def test_full_table_includes_negative_weight_classes():
    # |z| = 4 over three factors: bidegree (0, 1) classes appear only in the full table
    full = full_generator_table(LieType.parse("A1"), 3)
    assert any((g.s_deg, g.t_deg) == (0, 1) for g in full.entries)
    assert not any((g.s_deg, g.t_deg) == (0, 1) for g in h_generator_table(LieType.parse("A1"), 3).entries)


def test_su2_single_factor():
    t = LieType.parse("A1")
    assert to_text(full_mapspace_hilbert_series(t, 1)) == "s^2*t + 1"
    assert to_text(h_hilbert_series(h_generator_table(t, 1))) == "s^2*t + 1"


@pytest.mark.parametrize("t,i,j,expected", [
    (F4, 18, 3, 19), (F4, 6, 3, 2), (F4, 14, 5, 81), (F4, 16, 4, 48),
    (E6, 10, 4, 36), (E6, 12, 3, 10), (E7, 6, 3, 2), (E7, 18, 3, 37), (E8, 30, 3, 19),
], ids=str)
def test_h_coefficients_against_sympy(t, i, j, expected):
    series = h_hilbert_series(h_generator_table(t, 3), hom_bounds(t, 3))
    assert series.coefficient(i, j) == expected
    assert sympy_h_coefficient(t, 3, i, j) == expected


def test_even_generators_are_polynomial():
    t = LieType.parse("A1")
    tab = h_generator_table(t, 2)
    # (0, 2) is an even class: its powers all survive truncation
    series = free_algebra_series(tab, (0, 8))
    assert [series.coefficient(0, 2 * k) for k in range(5)] == [1, 1, 1, 1, 1]


def test_negative_m_rejected():
    with pytest.raises(ValueError):
        h_generator_table(F4, -1)
