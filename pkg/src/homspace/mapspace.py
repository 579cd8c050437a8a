"""Generators and Poincare series of the based mapping space map_*(BZ^m, BG)_0.

Its rational cohomology is free graded-commutative on classes z_{i,I}, one
for each polynomial generator z_i of H*(BG) and each nonempty I in {1..m}
with |z_i| > |I|.  The bidegree of z_{i,I} is (|z_i| - 2|I|, |I|) when
|z_i| >= 2|I| and (0, |z_i| - |I|) otherwise.  The subalgebra H(G, m) keeps
only the generators with |z_i| >= 2|I|.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bipoly import BiPoly, inv_truncated, mul, power
from .molien import hom_bounds
from .weyl import LieType, topological_degrees


@dataclass(frozen=True)
class Generator:
    s_deg: int
    t_deg: int
    mult: int
    source: tuple = ()  # (|z_i|, |I|)

    @property
    def degree(self):
        return self.s_deg + self.t_deg

    @property
    def odd(self):
        return self.degree % 2 == 1


@dataclass(frozen=True)
class GeneratorTable:
    lie_type: LieType
    m: int
    entries: tuple

    def count(self):
        return sum(g.mult for g in self.entries)

    def to_json(self):
        return {
            "type": str(self.lie_type),
            "m": self.m,
            "entries": [[g.s_deg, g.t_deg, "odd" if g.odd else "even", g.mult] for g in self.entries],
        }


def bg_generator_degrees(t: LieType) -> list[int]:
    return topological_degrees(t)


def h_generator_table(t: LieType, m: int) -> GeneratorTable:
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = []
    for z in bg_generator_degrees(t):
        for k in range(1, min(m, z // 2) + 1):
            out.append(Generator(z - 2 * k, k, comb(m, k), (z, k)))
    return GeneratorTable(t, m, tuple(out))


def full_generator_table(t: LieType, m: int) -> GeneratorTable:
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = []
    for z in bg_generator_degrees(t):
        for k in range(1, min(m, z - 1) + 1):
            if z >= 2 * k:
                out.append(Generator(z - 2 * k, k, comb(m, k), (z, k)))
            else:
                out.append(Generator(0, z - k, comb(m, k), (z, k)))
    return GeneratorTable(t, m, tuple(out))


def free_algebra_series(tab: GeneratorTable, bounds) -> BiPoly:
    """Poincare series of the free graded-commutative algebra on ``tab``.

    Odd generators contribute exterior factors (1 + s^a t^b), even ones
    polynomial factors 1/(1 - s^a t^b), truncated to ``bounds``.
    """
    s_max, t_max = bounds
    out = BiPoly.one(bounds)
    for g in tab.entries:
        if g.odd:
            factor = BiPoly({(0, 0): 1, (g.s_deg, g.t_deg): 1}, bounds)
        else:
            factor = inv_truncated(BiPoly({(0, 0): 1, (g.s_deg, g.t_deg): -1}), s_max, t_max)
        out = mul(out, power(factor, g.mult, bounds), bounds)
    return out


def h_hilbert_series(tab: GeneratorTable, bounds=None) -> BiPoly:
    if bounds is None:
        bounds = hom_bounds(tab.lie_type, tab.m)
    return free_algebra_series(tab, bounds)


def full_mapspace_hilbert_series(t: LieType, m: int, bounds=None) -> BiPoly:
    if bounds is None:
        bounds = hom_bounds(t, m)
    return free_algebra_series(full_generator_table(t, m), bounds)
