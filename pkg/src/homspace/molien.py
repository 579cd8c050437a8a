"""Bigraded Poincare series of Hom(Z^m, G)_0 as a Weyl-group Molien sum.

    P(s, t) = 1/|W| * prod_i (1 - s^{d_i}) * sum_w det(1 + t w)^m / det(1 - s^2 w)

with d_i the degrees of the polynomial generators of H*(BG; Q), i.e. twice
the classical invariant degrees.  The summand only depends on the
characteristic polynomial of w, so the sum runs over a histogram.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly, inv_truncated, mul, power
from .weyl import CharPolyHistogram, LieType, histogram, num_positive_roots, topological_degrees


class SeriesError(ArithmeticError):
    """A computed series is not a valid dimension table."""


@dataclass(frozen=True)
class HomSeriesRequest:
    lie_type: LieType
    m: int
    degrees: tuple

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if len(self.degrees) != self.lie_type.rank:
            raise ValueError("need one degree per rank")

    @classmethod
    def for_type(cls, t: LieType, m: int) -> "HomSeriesRequest":
        return cls(t, m, tuple(topological_degrees(t)))


@dataclass(frozen=True)
class HomSeries:
    lie_type: LieType
    m: int
    series: BiPoly
    s_max: int
    t_max: int
    group_order: int

    @property
    def bounds(self):
        return (self.s_max, self.t_max)

    def coefficient(self, i, j):
        return self.series.coefficient(i, j)


def hom_bounds(t: LieType, m: int) -> tuple[int, int]:
    """(S_max, T_max) = (dim G/T, m * rank): the top bidegree of the series."""
    return 2 * num_positive_roots(t), m * t.rank


def elementary_symmetric(c) -> list[int]:
    """e_0..e_r of the eigenvalues of w, from its monic char poly c_0..c_r."""
    r = len(c) - 1
    return [(-1) ** k * c[r - k] for k in range(r + 1)]


def numerator_from_charpoly(c, m: int, bounds=None) -> BiPoly:
    """det(1 + t w)^m."""
    det = BiPoly.univariate_t(elementary_symmetric(c))
    return power(det, m, bounds)


def denominator_from_charpoly(c, bounds=None) -> BiPoly:
    """det(1 - s^2 w)."""
    e = elementary_symmetric(c)
    return BiPoly.univariate_s([(-1) ** k * ek for k, ek in enumerate(e)], step=2, bounds=bounds)


def check_dimension_table(p: BiPoly, what: str = "series") -> None:
    for (i, j), c in p.items():
        if not isinstance(c, int):
            raise SeriesError(f"{what}: non-integer coefficient {c} at s^{i} t^{j}")
        if c < 0:
            raise SeriesError(f"{what}: negative coefficient {c} at s^{i} t^{j}")
    if p.coefficient(0, 0) != 1:
        raise SeriesError(f"{what}: constant term is {p.coefficient(0, 0)}, expected 1")


def _molien_sum(req: HomSeriesRequest, hist: CharPolyHistogram, big, twist: bool) -> BiPoly:
    r = req.lie_type.rank
    total = BiPoly.zero(big)
    for c, count in hist.items():
        if twist:
            # det(w) = (-1)^r c_0
            count = count * (-1) ** r * c[0]
        num = numerator_from_charpoly(c, req.m, big)
        den = inv_truncated(denominator_from_charpoly(c), *big)
        total = total + mul(num, den, big).scale(count)
    factor = BiPoly.one(big)
    for d in req.degrees:
        factor = mul(factor, BiPoly({(0, 0): 1, (d, 0): -1}), big)
    return mul(total, factor, big).scale(Fraction(1, hist.group_order))


def _terminate(series: BiPoly, bounds) -> BiPoly:
    s_max, t_max = bounds
    outside = [(i, j) for i, j in series.support() if i > s_max or j > t_max]
    if outside:
        raise SeriesError(f"series does not terminate at the expected bounds: {sorted(outside)[:5]}")
    return series.with_bounds(bounds)


def hom_poincare_series(req: HomSeriesRequest, hist: CharPolyHistogram,
                        trunc_slack: int = 0) -> HomSeries:
    """Evaluate the Molien sum exactly over the histogram.

    With ``trunc_slack`` > 0 the sum is evaluated with both bounds enlarged by
    that amount, and any term beyond the nominal bounds raises
    :class:`SeriesError` (the result must be a polynomial).
    """
    t = req.lie_type
    if hist.lie_type != t:
        raise ValueError(f"histogram is for {hist.lie_type}, request is for {t}")
    s_max, t_max = hom_bounds(t, req.m)
    big = (s_max + trunc_slack, t_max + trunc_slack)
    series = _terminate(_molien_sum(req, hist, big, twist=False), (s_max, t_max))
    check_dimension_table(series, f"P(Hom(Z^{req.m}, {t}))")
    return HomSeries(t, req.m, series, s_max, t_max, hist.group_order)


def det_isotypic_series(t: LieType, m: int, **kw) -> BiPoly:
    """Bigraded multiplicities of the sign character det(w) in H*(G/T x T^m)."""
    req = HomSeriesRequest.for_type(t, m)
    bounds = hom_bounds(t, m)
    series = _terminate(_molien_sum(req, histogram(t, **kw), bounds, twist=True), bounds)
    for (i, j), c in series.items():
        if not isinstance(c, int) or c < 0:
            raise SeriesError(f"det-isotypic series: bad coefficient {c} at s^{i} t^{j}")
    return series


def hom_series(t: LieType, m: int, **kw) -> HomSeries:
    """Convenience wrapper: fetch the histogram and evaluate."""
    slack = kw.pop("trunc_slack", 0)
    return hom_poincare_series(HomSeriesRequest.for_type(t, m), histogram(t, **kw), slack)


def duality_defects(h: HomSeries, partner: BiPoly | None = None) -> list[tuple]:
    """Points where a_{i,j} != b_{S_max-i, T_max-j}, with b = ``partner`` or ``h`` itself.

    The top class of G/T x T^m transforms by det(w)^(m+1), so the invariants
    are self-dual for odd m and dual to the det-isotypic part for even m.
    """
    b_ser = h.series if partner is None else partner
    pts = h.series.support() | {(h.s_max - i, h.t_max - j) for i, j in b_ser.support()}
    out = []
    for i, j in sorted(pts):
        a = h.coefficient(i, j)
        b = b_ser.coefficient(h.s_max - i, h.t_max - j)
        if a != b:
            out.append((i, j, a, b))
    return out


def duality_partner(h: HomSeries, **kw) -> BiPoly:
    return h.series if h.m % 2 else det_isotypic_series(h.lie_type, h.m, **kw)


def molien_univariate(hist: CharPolyHistogram, order: int) -> list[Fraction]:
    """(1/|W|) sum_w 1/det(1 - q w) as a power series in q up to q^order."""
    total = [Fraction(0)] * (order + 1)
    for c, count in hist.items():
        e = elementary_symmetric(c)
        den = [(-1) ** k * ek for k, ek in enumerate(e)]
        inv = [0] * (order + 1)
        inv[0] = 1
        for n in range(1, order + 1):
            inv[n] = -sum(den[k] * inv[n - k] for k in range(1, min(n, len(den) - 1) + 1))
        for n in range(order + 1):
            total[n] += count * inv[n]
    return [x / hist.group_order for x in total]


def exterior_average(hist: CharPolyHistogram) -> list[Fraction]:
    """(1/|W|) sum_w det(1 + t w), coefficient list in t."""
    r = hist.lie_type.rank
    total = [0] * (r + 1)
    for c, count in hist.items():
        for k, ek in enumerate(elementary_symmetric(c)):
            total[k] += count * ek
    return [Fraction(x, hist.group_order) for x in total]
