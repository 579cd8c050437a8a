import pytest

from homspace.bipoly import BiPoly
from homspace.molien import HomSeries, hom_series
from homspace.surjcheck import (NECESSARY_CONDITION_PASSES, NOT_SURJECTIVE, SurjectivityReport, Violation,
                                check, classify, compare, expected_surjective)
from homspace.weyl import LieType

F4, G2 = LieType.parse("F4"), LieType.parse("G2")


def fake_hom(coeffs, bounds=(4, 2)):
    return HomSeries(G2, 1, BiPoly(coeffs, bounds), bounds[0], bounds[1], 12)


def test_compare_detects_and_orders_violations():
    hom = fake_hom({(0, 0): 1, (2, 1): 3, (4, 1): 2, (2, 2): 5})
    h = BiPoly({(0, 0): 1, (2, 1): 2, (4, 1): 2, (2, 2): 1}, (4, 2))
    r = compare(G2, 1, hom, h)
    assert [v.as_list() for v in r.violations] == [[2, 1, 3, 2], [2, 2, 5, 1]]
    assert r.witness.as_list() == [2, 1, 3, 2]
    assert r.verdict == NOT_SURJECTIVE


def test_compare_requires_matching_bounds():
    with pytest.raises(ValueError):
        compare(G2, 1, fake_hom({(0, 0): 1}), BiPoly({(0, 0): 1}, (6, 2)))


def test_no_violation_is_only_evidence():
    r = check(G2, 3)
    assert r.verdict == NECESSARY_CONDITION_PASSES
    assert "not a proof" in r.text()


def test_f4_report():
    r = check(F4, 3)
    assert r.to_json() == {"type": "F4", "m": 3, "verdict": NOT_SURJECTIVE,
                           "violations": [[14, 5, 84, 81], [16, 4, 51, 48], [18, 3, 20, 19]]}
    assert "proved" in r.text()


def test_violation_must_exceed():
    with pytest.raises(ValueError):
        SurjectivityReport(G2, 3, (Violation(2, 1, 1, 1),))


def test_expected_classification():
    yes = ["A1", "A5", "B3", "C4", "G2", "D2", "D3"]
    no = ["D4", "D6", "F4", "E6", "E7", "E8"]
    assert all(expected_surjective(LieType.parse(n)) for n in yes)
    assert not any(expected_surjective(LieType.parse(n)) for n in no)


def test_classify_combines_factors():
    c = classify([F4, G2], 3)
    assert not c.surjective and c.consistent
    doc = c.to_json()
    assert [f["witness"] for f in doc["factors"]] == [[18, 3, 20, 19], None]
    assert classify([G2, LieType.parse("A2")], 3).surjective
    with pytest.raises(ValueError):
        classify([G2], 2)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "C2", "G2"])
def test_small_m_passes(name):
    t = LieType.parse(name)
    for m in (1, 2):
        assert not check(t, m).violations, (name, m)
    assert hom_series(t, 1).coefficient(0, 0) == 1


# reference witness per exceptional type at m=3
REFERENCE_WITNESS = {"F4": [18, 3, 20, 19], "E6": [10, 4, 39, 36], "E7": [6, 3, 2, 1]}


@pytest.mark.parametrize("name", ["F4", "E6"])
def test_reference_witness_is_a_violation(name):
    r = check(LieType.parse(name), 3)
    assert REFERENCE_WITNESS[name] in [v.as_list() for v in r.violations]
    # the reported witness is (j, i)-minimal, so it never comes after the reference one
    w = r.witness
    i, j = REFERENCE_WITNESS[name][:2]
    assert (w.j, w.i) <= (j, i)


def test_f4_minimal_witness_is_reference():
    assert check(LieType.parse("F4"), 3).witness.as_list() == REFERENCE_WITNESS["F4"]


@pytest.mark.xfail(strict=True, reason="H has coefficient 2 at s^6*t^3 for E7, so (6,3) is no violation")
def test_e7_reference_witness():
    r = check(LieType.parse("E7"), 3)
    assert REFERENCE_WITNESS["E7"] in [v.as_list() for v in r.violations]
