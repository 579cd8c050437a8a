import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from homspace.weyl import (CharPolyHistogram, LieType, WeylError, cache_path, cartan_matrix, char_poly,
                           check_cartan, classical_degrees, enumerate_group, group_order, histogram,
                           histogram_bruteforce, histogram_classical, histogram_exceptional,
                           is_self_reciprocal, load_histogram, num_positive_roots, save_histogram,
                           simple_reflections, topological_degrees, transversal_chain)

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "B4", "D5", "G2"]
ALL = [LieType(f, r) for f in "ABCD" for r in range(1, 7) if not (f == "D" and r < 2)] + [
    LieType.parse(n) for n in ("G2", "F4", "E6", "E7", "E8")]


def test_parse_and_validation():
    assert LieType.parse("e8") == LieType("E", 8)
    for bad in ("X3", "E9", "G3", "F5", "A0", "E", "D1"):
        with pytest.raises(ValueError):
            LieType.parse(bad)


def test_degrees_and_orders():
    assert topological_degrees(LieType.parse("G2")) == [4, 12]
    assert group_order(LieType.parse("E8")) == 696729600
    assert group_order(LieType.parse("E7")) == 2903040
    assert group_order(LieType.parse("F4")) == 1152
    assert num_positive_roots(LieType.parse("E8")) == 120
    for t in ALL:
        # the product of degrees is |W|; their sum minus rank counts positive roots
        assert sum(classical_degrees(t)) - t.rank == num_positive_roots(t)


@pytest.mark.parametrize("t", ALL, ids=str)
def test_cartan_matrices_are_valid(t):
    a = cartan_matrix(t)
    check_cartan(a)
    # symmetrizable with positive definite symmetrization: det > 0
    assert round(np.linalg.det(a.astype(float))) > 0


@pytest.mark.parametrize("name", SMALL + ["F4"])
def test_reflections_generate_group_of_right_order(name):
    t = LieType.parse(name)
    gens = simple_reflections(cartan_matrix(t))
    for s in gens:
        assert np.array_equal(s @ s, np.eye(t.rank, dtype=np.int64))
    assert len(enumerate_group(gens)) == group_order(t)


def test_enumeration_limit():
    with pytest.raises(MemoryError):
        enumerate_group(simple_reflections(cartan_matrix(LieType.parse("F4"))), limit=100)


@given(st.lists(st.integers(0, 3), max_size=12))
def test_char_poly_matches_sympy(word):
    gens = simple_reflections(cartan_matrix(LieType.parse("F4")))
    w = np.eye(4, dtype=np.int64)
    for i in word:
        w = gens[i] @ w
    lam = sp.symbols("lam")
    expected = sp.Poly(sp.Matrix(w.tolist()).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    assert char_poly(w) == tuple(int(c) for c in expected)
    assert is_self_reciprocal(char_poly(w))


@pytest.mark.parametrize("name", SMALL)
def test_classical_histogram_matches_bruteforce(name):
    t = LieType.parse(name)
    if t.family == "G":
        assert histogram(t) == histogram_bruteforce(t)
    else:
        assert histogram_classical(t) == histogram_bruteforce(t)


@pytest.mark.parametrize("name", ["G2", "F4"])
def test_exceptional_enumeration_matches_bruteforce(name):
    t = LieType.parse(name)
    assert histogram_exceptional(t) == histogram_bruteforce(t)


def test_e6_full_and_half_traces_agree():
    t = LieType.parse("E6")
    full = histogram_exceptional(t, full_traces=True)
    assert histogram_exceptional(t, full_traces=False) == full
    assert full == histogram_bruteforce(t, limit=60000)


def test_transversal_chain_factorizes_group():
    for name in ("G2", "F4", "E6", "E7", "E8"):
        t = LieType.parse(name)
        assert math.prod(transversal_chain(t).sizes) == group_order(t)
    assert transversal_chain(LieType.parse("E8")).sizes == [240, 56, 27, 16, 10, 3, 2, 2]
    # the chain lists distinct elements
    elems = {w.tobytes() for w in transversal_chain(LieType.parse("F4")).elements()}
    assert len(elems) == 1152


@pytest.mark.parametrize("t", [t for t in ALL if str(t) != "E8"], ids=str)
def test_histograms_are_self_reciprocal(t):
    h = histogram(t)
    assert sum(h.entries.values()) == group_order(t)
    assert all(is_self_reciprocal(c) for c in h.entries)


def test_histogram_validation():
    t = LieType.parse("A1")
    with pytest.raises(WeylError):
        CharPolyHistogram(t, {(-1, 0, 1): 1}, 2)
    with pytest.raises(WeylError):
        CharPolyHistogram(t, {(1, -2, 1): 2}, 2)


def test_cache_round_trip(tmp_path):
    t = LieType.parse("G2")
    h = histogram(t)
    path = cache_path(t, tmp_path)
    save_histogram(h, path)
    assert load_histogram(path) == h
    doc = path.read_text().replace('"convention_hash": "', '"convention_hash": "x')
    path.write_text(doc)
    with pytest.raises(WeylError):
        load_histogram(path)


def test_cache_used_for_e7(tmp_path, monkeypatch):
    t = LieType.parse("E7")
    h = histogram(t, cache_dir=tmp_path)
    assert cache_path(t, tmp_path).exists()
    monkeypatch.setattr("homspace.weyl.histogram_exceptional", lambda *a, **k: pytest.fail("recomputed"))
    assert histogram(t, cache_dir=tmp_path) == h


def test_g2_histogram_has_five_char_polys():
    # rotations by k*60 degrees and six reflections of the dihedral group of order 12
    h = histogram(LieType("G", 2))
    assert h.entries == {(1, -2, 1): 1, (1, 2, 1): 1, (1, -1, 1): 2, (1, 1, 1): 2, (-1, 0, 1): 6}
