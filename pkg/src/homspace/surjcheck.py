"""Coefficient domination test for the map H*(map_*) -> H*(Hom).

If the map is onto, it factors through the subalgebra H(G, m), so every
coefficient a_{i,j} of the Hom series is at most the coefficient b_{i,j} of
the H series.  A single a_{i,j} > b_{i,j} therefore proves the map is not
onto; no violations only means this test found no obstruction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .mapspace import h_generator_table, h_hilbert_series
from .molien import HomSeries, hom_series
from .weyl import LieType

NOT_SURJECTIVE = "NOT_SURJECTIVE"
NECESSARY_CONDITION_PASSES = "NECESSARY_CONDITION_PASSES"


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    hom_coeff: int
    h_coeff: int

    def as_list(self):
        return [self.i, self.j, self.hom_coeff, self.h_coeff]


@dataclass(frozen=True)
class SurjectivityReport:
    lie_type: LieType
    m: int
    violations: tuple = field(default=())

    def __post_init__(self):
        for v in self.violations:
            if not v.hom_coeff > v.h_coeff:
                raise ValueError(f"not a violation: {v}")

    @property
    def verdict(self):
        return NOT_SURJECTIVE if self.violations else NECESSARY_CONDITION_PASSES

    @property
    def witness(self):
        """Violation with lexicographically smallest (j, i), or None."""
        if not self.violations:
            return None
        return min(self.violations, key=lambda v: (v.j, v.i))

    def to_json(self):
        return {
            "type": str(self.lie_type),
            "m": self.m,
            "verdict": self.verdict,
            "violations": [v.as_list() for v in self.violations],
        }

    def text(self):
        head = f"{self.lie_type}, m={self.m}: "
        if self.violations:
            w = self.witness
            return (head + f"not surjective (proved): coefficient of s^{w.i}*t^{w.j} is "
                    f"{w.hom_coeff} in P(Hom) but {w.h_coeff} in P(H); "
                    f"{len(self.violations)} violation(s) in total")
        return head + ("no coefficient violations; the necessary condition holds "
                       "(this is evidence, not a proof of surjectivity)")


def compare(t: LieType, m: int, hom: HomSeries, h) -> SurjectivityReport:
    hb = getattr(h, "bounds", None)
    if hb is not None and tuple(hb) != tuple(hom.bounds):
        raise ValueError(f"bound mismatch: Hom series {hom.bounds}, H series {tuple(hb)}")
    out = []
    for i, j in sorted(hom.series.support() | h.support()):
        a = hom.series.coefficient(i, j)
        b = h.coefficient(i, j)
        if a > b:
            out.append(Violation(i, j, a, b))
    return SurjectivityReport(t, m, tuple(out))


def check(t: LieType, m: int, **kw) -> SurjectivityReport:
    hom = hom_series(t, m, **kw)
    h = h_hilbert_series(h_generator_table(t, m), hom.bounds)
    return compare(t, m, hom, h)


# -- classification ------------------------------------------------------------

def expected_surjective(t: LieType) -> bool:
    """Known answer for m >= 3: SU(n), Sp(n), Spin(2n+1) and G2 only."""
    if t.family in "ABC" or t.family == "G":
        return True
    if t.family == "D":
        # D2 = A1 x A1 and D3 = A3 behave like the unitary groups
        return t.rank <= 3
    return False


@dataclass(frozen=True)
class FactorVerdict:
    lie_type: LieType
    expected: bool
    report: SurjectivityReport

    @property
    def consistent(self):
        # a violation contradicts an expected surjection
        return not (self.expected and self.report.violations)

    def to_json(self):
        w = self.report.witness
        return {
            "type": str(self.lie_type),
            "surjective": self.expected,
            "computed_verdict": self.report.verdict,
            "witness": w.as_list() if w else None,
            "consistent": self.consistent,
        }


@dataclass(frozen=True)
class Classification:
    m: int
    factors: tuple

    @property
    def surjective(self):
        return all(f.expected for f in self.factors)

    @property
    def consistent(self):
        return all(f.consistent for f in self.factors)

    def to_json(self):
        return {
            "m": self.m,
            "surjective": self.surjective,
            "consistent": self.consistent,
            "factors": [f.to_json() for f in self.factors],
        }


def classify(factors, m: int, **kw) -> Classification:
    """Factorwise verdict for a product of simple factors.

    The product is onto iff every factor is.  Each factor carries the known
    answer together with the computed coefficient evidence.
    """
    if m < 3:
        raise ValueError("classification is only stated for m >= 3")
    out = []
    for t in factors:
        out.append(FactorVerdict(t, expected_surjective(t), check(t, m, **kw)))
    return Classification(m, tuple(out))
