"""Exact sparse polynomials and truncated power series in two variables s, t.

A :class:`BiPoly` maps exponent pairs (i, j) to exact rationals (stored as
``int`` whenever the value is integral, ``Fraction`` otherwise).  Optional
bounds (S_max, T_max) turn it into a truncated power series: every term with
i > S_max or j > T_max is discarded.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational


class BoundsError(ValueError):
    pass


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"inexact coefficient {c!r}")


class BiPoly:
    __slots__ = ("_terms", "bounds", "_hash")

    def __init__(self, terms=None, bounds=None):
        if bounds is not None:
            bounds = (int(bounds[0]), int(bounds[1]))
            if min(bounds) < 0:
                raise BoundsError("bounds must be nonnegative")
        out = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if bounds is not None and (i > bounds[0] or j > bounds[1]):
                continue
            c = _norm(c)
            if c:
                out[(int(i), int(j))] = c
        self._terms = out
        self.bounds = bounds
        self._hash = None

    @classmethod
    def _raw(cls, terms, bounds):
        # trusted constructor: terms already normalized, nonzero and in bounds
        p = cls.__new__(cls)
        p._terms = terms
        p.bounds = bounds
        p._hash = None
        return p

    @classmethod
    def one(cls, bounds=None):
        return cls({(0, 0): 1}, bounds)

    @classmethod
    def zero(cls, bounds=None):
        return cls({}, bounds)

    @classmethod
    def monomial(cls, i, j, c=1, bounds=None):
        return cls({(i, j): c}, bounds)

    @classmethod
    def univariate_s(cls, coeffs, step=1, bounds=None):
        """sum_k coeffs[k] * s^(step*k)."""
        return cls({(step * k, 0): c for k, c in enumerate(coeffs)}, bounds)

    @classmethod
    def univariate_t(cls, coeffs, bounds=None):
        return cls({(0, k): c for k, c in enumerate(coeffs)}, bounds)

    # -- access -------------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, i, j):
        return self._terms.get((i, j), 0)

    def __getitem__(self, ij):
        return self._terms.get(tuple(ij), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def support(self):
        return set(self._terms)

    def is_integral(self):
        return all(isinstance(c, int) for c in self._terms.values())

    def max_degrees(self):
        if not self._terms:
            return (0, 0)
        return (max(i for i, _ in self._terms), max(j for _, j in self._terms))

    def with_bounds(self, bounds):
        return BiPoly(self._terms, bounds)

    # -- arithmetic ---------------------------------------------------------

    def _join_bounds(self, other):
        a, b = self.bounds, other.bounds
        if a is None:
            return b
        if b is None or a == b:
            return a
        raise BoundsError(f"incompatible bounds {a} and {b}")

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly({(0, 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self._terms.items()}, self.bounds)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, m):
        return power(self, m)

    def scale(self, c):
        c = _norm(c)
        if not c:
            return BiPoly.zero(self.bounds)
        return BiPoly._raw({k: _norm(v * c) for k, v in self._terms.items()}, self.bounds)

    def __truediv__(self, c):
        if isinstance(c, BiPoly):
            raise TypeError("use inv_truncated for series division")
        return self.scale(Fraction(1) / Fraction(c))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly({(0, 0): other})
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        b = f", bounds={self.bounds}" if self.bounds else ""
        return f"BiPoly({to_text(self)!r}{b})"

    def __str__(self):
        return to_text(self)


def add(a: BiPoly, b: BiPoly) -> BiPoly:
    bounds = a._join_bounds(b)
    out = dict(a._terms)
    for k, c in b._terms.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = _norm(v)
        else:
            out.pop(k, None)
    if bounds is not None and (a.bounds is None or b.bounds is None):
        # one operand was unbounded: drop its out-of-range terms
        return BiPoly(out, bounds)
    return BiPoly._raw(out, bounds)


def mul(a: BiPoly, b: BiPoly, bounds=None) -> BiPoly:
    """Product, truncated to ``bounds`` (or the operands' common bounds)."""
    if bounds is None:
        bounds = a._join_bounds(b)
    smax, tmax = bounds if bounds is not None else (None, None)
    out = {}
    bt = list(b._terms.items())
    for (i1, j1), c1 in a._terms.items():
        for (i2, j2), c2 in bt:
            i, j = i1 + i2, j1 + j2
            if smax is not None and (i > smax or j > tmax):
                continue
            out[(i, j)] = out.get((i, j), 0) + c1 * c2
    return BiPoly._raw({k: _norm(v) for k, v in out.items() if v}, bounds)


def power(a: BiPoly, m: int, bounds=None) -> BiPoly:
    if m < 0:
        raise ValueError("negative power; use inv_truncated")
    bounds = bounds if bounds is not None else a.bounds
    result = BiPoly.one(bounds)
    base = a if bounds is None else a.with_bounds(bounds)
    while m:
        if m & 1:
            result = mul(result, base, bounds)
        m >>= 1
        if m:
            base = mul(base, base, bounds)
    return result


def inv_truncated(a: BiPoly, s_max: int, t_max: int) -> BiPoly:
    """The series b with a*b = 1 modulo s^(s_max+1), t^(t_max+1)."""
    c0 = a.coefficient(0, 0)
    if not c0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = Fraction(1) / Fraction(c0)
    rest = [(k, c) for k, c in a._terms.items() if k != (0, 0) and k[0] <= s_max and k[1] <= t_max]
    out = {}
    for j in range(t_max + 1):
        for i in range(s_max + 1):
            if i == 0 and j == 0:
                acc = 1
            else:
                acc = 0
                for (k, l), c in rest:
                    if k <= i and l <= j:
                        v = out.get((i - k, j - l))
                        if v:
                            acc -= c * v
            if acc:
                out[(i, j)] = _norm(acc * inv0)
    return BiPoly._raw(out, (s_max, t_max))


def coefficient(a: BiPoly, i: int, j: int):
    return a.coefficient(i, j)


# -- text and JSON forms ------------------------------------------------------

def sort_key(ij):
    i, j = ij
    return (-j, -i)


def _monomial_text(i, j):
    parts = []
    if i:
        parts.append("s" if i == 1 else f"s^{i}")
    if j:
        parts.append("t" if j == 1 else f"t^{j}")
    return "*".join(parts)


def term_text(i, j, c) -> str:
    """One signed term, e.g. ``20*s^18*t^3`` or ``-s^2``."""
    mono = _monomial_text(i, j)
    sign = "-" if c < 0 else ""
    mag = abs(c)
    if not mono:
        return f"{sign}{mag}"
    if mag == 1:
        return f"{sign}{mono}"
    return f"{sign}{mag}*{mono}"


def to_text(p: BiPoly) -> str:
    """Canonical form: terms ordered by t-degree then s-degree, descending."""
    keys = sorted(p._terms, key=sort_key)
    if not keys:
        return "0"
    out = []
    for n, k in enumerate(keys):
        t = term_text(k[0], k[1], p._terms[k])
        if n == 0:
            out.append(t)
        elif t.startswith("-"):
            out.append(" - " + t[1:])
        else:
            out.append(" + " + t)
    return "".join(out)


def to_lines(p: BiPoly) -> list[str]:
    return [term_text(k[0], k[1], p._terms[k]) for k in sorted(p._terms, key=sort_key)]


def _parse_term(text: str):
    body = text.replace(" ", "")
    if not body:
        raise ValueError("empty term")
    coef_part, mono = re.match(r"^(\d+(?:/\d+)?)?\*?(.*)$", body).groups()
    c = Fraction(coef_part) if coef_part else Fraction(1)
    i = j = 0
    if mono:
        for factor in mono.split("*"):
            m = re.fullmatch(r"([st])(?:\^(\d+))?", factor)
            if not m:
                raise ValueError(f"cannot parse term {text!r}")
            e = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "s":
                i += e
            else:
                j += e
    elif not coef_part:
        raise ValueError(f"cannot parse term {text!r}")
    return (i, j), c


def parse(text: str, bounds=None) -> BiPoly:
    """Inverse of :func:`to_text`; also accepts one term per line."""
    text = text.strip()
    if text == "0":
        return BiPoly.zero(bounds)
    tokens = re.split(r"\s*([+-])\s*|\n+", text)
    out = {}
    sign = 1
    for tok in tokens:
        if tok is None or tok == "":
            continue
        if tok == "+":
            continue
        if tok == "-":
            sign = -sign
            continue
        k, c = _parse_term(tok)
        out[k] = out.get(k, 0) + sign * c
        sign = 1
    return BiPoly(out, bounds)


def to_json(p: BiPoly) -> dict:
    doc = {"terms": [[i, j, str(Fraction(p._terms[(i, j)]))]
                     for i, j in sorted(p._terms, key=sort_key)]}
    if p.bounds is not None:
        doc["bounds"] = list(p.bounds)
    return doc


def from_json(doc: dict) -> BiPoly:
    bounds = tuple(doc["bounds"]) if doc.get("bounds") is not None else None
    return BiPoly({(int(i), int(j)): Fraction(c) for i, j, c in doc["terms"]}, bounds)
