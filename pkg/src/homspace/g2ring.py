"""The ring K(m) = Q[x,y,w]/J (x) (tensor_j Lambda(a_j, b_j, g_j)/K_j) with its D6 action.

J = (x+y+w, x^2+y^2+w^2, x^6+y^6+w^6) and K_j = (a_j + b_j + g_j), where
a, b, g stand for alpha, beta, gamma.  Elements are kept in the normal form

    x^i y^e * c_1 ... c_m,    0 <= i <= 5, e in {0, 1}, c_j in {1, a_j, b_j, a_j b_j},

obtained from w -> -x-y, g_j -> -a_j-b_j, y^2 -> -x^2-xy, x^6 -> 0.  The
polynomial part is indexed by p = 2*i + e and the exterior part by a code
tuple with 0 = 1, 1 = a_j, 2 = b_j, 3 = a_j b_j.  Exterior letters are
ordered a_1, b_1, a_2, b_2, ...

D6 = S3 x {+-1}: a permutation of {x, y, w} applied simultaneously to every
(a_j, b_j, g_j), and the central element multiplying every letter by -1.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .bipoly import BiPoly
from .linalg import Echelon, integer_rank, kernel

POLY_DIM = 12
EXT_DEG = (0, 1, 1, 2)
# product of single-factor codes: (sign, code) or None when it vanishes
_EXT_MUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
    (1, 2): (1, 3), (2, 1): (-1, 3),
}
M_MAX = 6


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# -- polynomial part ----------------------------------------------------------

def poly_index(i: int, e: int) -> int:
    return 2 * i + e


def poly_exponents(p: int) -> tuple[int, int]:
    return p // 2, p % 2


def poly_degree(p: int) -> int:
    return p // 2 + p % 2


@lru_cache(maxsize=None)
def reduce_xy(a: int, b: int) -> tuple:
    """Normal form of x^a y^b as ((p, coeff), ...)."""
    if a >= 6:
        return ()
    if b <= 1:
        return ((poly_index(a, b), 1),)
    out = Counter()
    # y^2 = -x^2 - xy
    for p, c in reduce_xy(a + 2, b - 2):
        out[p] -= c
    for p, c in reduce_xy(a + 1, b - 1):
        out[p] -= c
    return tuple(sorted((p, c) for p, c in out.items() if c))


@lru_cache(maxsize=None)
def reduce_xyw(a: int, b: int, c: int) -> tuple:
    """Normal form of x^a y^b w^c, with w = -x - y."""
    out = Counter()
    sign = (-1) ** c
    for k in range(c + 1):
        for p, v in reduce_xy(a + k, b + c - k):
            out[p] += sign * comb(c, k) * v
    return tuple(sorted((p, v) for p, v in out.items() if v))


def _build_poly_mul():
    table = {}
    for p1 in range(POLY_DIM):
        for p2 in range(POLY_DIM):
            i1, e1 = poly_exponents(p1)
            i2, e2 = poly_exponents(p2)
            table[(p1, p2)] = reduce_xy(i1 + i2, e1 + e2)
    return table


POLY_MUL = _build_poly_mul()


def ext_sign_product(ca: tuple, cb: tuple):
    """(sign, codes) of the product of two exterior monomials, or None."""
    sign = 0
    out = []
    deg_b_before = 0
    for j in range(len(ca)):
        a, b = ca[j], cb[j]
        r = _EXT_MUL.get((a, b))
        if r is None:
            return None
        # b-letters of earlier factors must pass the a-letters of this factor
        sign += EXT_DEG[a] * deg_b_before
        if r[0] < 0:
            sign += 1
        deg_b_before += EXT_DEG[b]
        out.append(r[1])
    return (-1 if sign % 2 else 1), tuple(out)


# -- elements -------------------------------------------------------------------

class KElement:
    """Exact element of K(m): a map (p, codes) -> rational."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms = {k: _norm(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, m):
        return cls(m, {(0, (0,) * m): 1})

    @classmethod
    def monomial(cls, m, p, codes, c=1):
        return cls(m, {(p, tuple(codes)): c})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, KElement) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def _check(self, other):
        if self.m != other.m:
            raise ValueError(f"elements of K({self.m}) and K({other.m}) do not mix")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return KElement(self.m, out)

    def __neg__(self):
        return KElement(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return KElement(self.m, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        out = KElement.one(self.m)
        for _ in range(n):
            out = out * self
        return out

    def bidegrees(self):
        return {monomial_bidegree(k) for k in self.terms}

    def homogeneous_part(self, i, j):
        return KElement(self.m, {k: c for k, c in self.terms.items() if monomial_bidegree(k) == (i, j)})

    def __repr__(self):
        return f"KElement(m={self.m}, {to_text(self)})"

    def __str__(self):
        return to_text(self)


def monomial_bidegree(key) -> tuple[int, int]:
    p, codes = key
    return 2 * poly_degree(p), sum(EXT_DEG[c] for c in codes)


def monomial_slice(key) -> tuple[int, tuple]:
    """(poly degree, per-factor exterior degrees)."""
    p, codes = key
    return poly_degree(p), tuple(EXT_DEG[c] for c in codes)


def mul(a: KElement, b: KElement) -> KElement:
    a._check(b)
    out = {}
    for (pa, ca), x in a.terms.items():
        for (pb, cb), y in b.terms.items():
            poly = POLY_MUL[(pa, pb)]
            if not poly:
                continue
            ext = ext_sign_product(ca, cb)
            if ext is None:
                continue
            sign, codes = ext
            xy = sign * x * y
            for p, v in poly:
                k = (p, codes)
                out[k] = out.get(k, 0) + xy * v
    return KElement(a.m, out)


# -- generators of the ring ----------------------------------------------------------

def x_elem(m):
    return KElement(m, {(poly_index(1, 0), (0,) * m): 1})


def y_elem(m):
    return KElement(m, {(poly_index(0, 1), (0,) * m): 1})


def w_elem(m):
    return -(x_elem(m) + y_elem(m))


def _ext_letter(m, j, code):
    if not 1 <= j <= m:
        raise ValueError(f"factor index {j} outside 1..{m}")
    codes = [0] * m
    codes[j - 1] = code
    return KElement(m, {(0, tuple(codes)): 1})


def alpha(m, j):
    return _ext_letter(m, j, 1)


def beta(m, j):
    return _ext_letter(m, j, 2)


def gamma(m, j):
    return -(alpha(m, j) + beta(m, j))


# -- raw expressions and the rewriter ---------------------------------------------------

@dataclass(frozen=True)
class RawTerm:
    """c * x^a y^b w^c' * (word of exterior letters), letters ('a'|'b'|'g', j)."""

    coeff: Fraction
    xyw: tuple
    word: tuple


class RawExpr:
    """Unreduced expression in x, y, w and the exterior letters.

    Multiplication concatenates words and adds exponents; nothing is
    simplified until :func:`normalize`.
    """

    def __init__(self, m, terms=()):
        self.m = m
        self.terms = tuple(terms)

    @classmethod
    def letter(cls, m, name, j=None):
        if name in "xyw":
            e = tuple(int(name == v) for v in "xyw")
            return cls(m, [RawTerm(Fraction(1), e, ())])
        if name not in "abg" or j is None:
            raise ValueError(f"unknown letter {name!r}")
        return cls(m, [RawTerm(Fraction(1), (0, 0, 0), ((name, j),))])

    @classmethod
    def const(cls, m, c):
        return cls(m, [RawTerm(Fraction(c), (0, 0, 0), ())])

    def __add__(self, other):
        return RawExpr(self.m, self.terms + other.terms)

    def __neg__(self):
        return RawExpr(self.m, [RawTerm(-t.coeff, t.xyw, t.word) for t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RawExpr(self.m, [RawTerm(t.coeff * other, t.xyw, t.word) for t in self.terms])
        out = []
        for s in self.terms:
            for t in other.terms:
                out.append(RawTerm(s.coeff * t.coeff,
                                   tuple(u + v for u, v in zip(s.xyw, t.xyw)),
                                   s.word + t.word))
        return RawExpr(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = RawExpr.const(self.m, 1)
        for _ in range(n):
            out = out * self
        return out


def _sort_word(word):
    """Koszul sign and sorted word, or (0, None) if a letter repeats."""
    order = {"a": 0, "b": 1}
    keys = [(j, order[l]) for l, j in word]
    if len(set(keys)) != len(keys):
        return 0, None
    inversions = sum(1 for i in range(len(keys)) for k in range(i + 1, len(keys)) if keys[i] > keys[k])
    return (-1) ** inversions, sorted(keys)


def normalize(expr: RawExpr) -> KElement:
    m = expr.m
    out = {}
    for t in expr.terms:
        if not t.coeff:
            continue
        poly = reduce_xyw(*t.xyw)
        if not poly:
            continue
        # g_j -> -a_j - b_j
        choices = [(("a", j), ("b", j)) if l == "g" else ((l, j),) for l, j in t.word]
        for pick in itertools.product(*choices):
            sign = (-1) ** sum(1 for l, _ in t.word if l == "g")
            s, keys = _sort_word(pick)
            if not s:
                continue
            codes = [0] * m
            for j, l in keys:
                if not 1 <= j <= m:
                    raise ValueError(f"factor index {j} outside 1..{m}")
                codes[j - 1] |= 1 << l
            codes = tuple(codes)
            for p, v in poly:
                k = (p, codes)
                out[k] = out.get(k, 0) + sign * s * t.coeff * v
    return KElement(m, out)


def to_raw(a: KElement) -> RawExpr:
    out = []
    for (p, codes), c in a.terms.items():
        i, e = poly_exponents(p)
        word = []
        for j, code in enumerate(codes, start=1):
            if code & 1:
                word.append(("a", j))
            if code & 2:
                word.append(("b", j))
        out.append(RawTerm(Fraction(c), (i, e, 0), tuple(word)))
    return RawExpr(a.m, out)


# -- the D6 action -------------------------------------------------------------------------

LETTERS = "xyw"
EXT_LETTERS = "abg"


@dataclass(frozen=True)
class D6Element:
    """sign * (permutation of x, y, w); perm[i] is the image of letter i."""

    perm: tuple
    sign: int = 1

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2] or self.sign not in (1, -1):
            raise ValueError(f"not an element of D6: {self}")

    def __matmul__(self, other):
        """Composition: (g @ h)(v) = g(h(v))."""
        return D6Element(tuple(self.perm[other.perm[i]] for i in range(3)), self.sign * other.sign)

    def __pow__(self, n):
        out = IDENTITY
        for _ in range(n):
            out = out @ self
        return out

    def __str__(self):
        images = ",".join(f"{LETTERS[i]}->{'-' if self.sign < 0 else ''}{LETTERS[self.perm[i]]}"
                          for i in range(3))
        return f"[{images}]"


IDENTITY = D6Element((0, 1, 2), 1)
ROTATION = D6Element((1, 2, 0), -1)  # a: x->-y, y->-w, w->-x; order 6
REFLECTION = D6Element((1, 0, 2), 1)  # b: x<->y


def d6_elements() -> list[D6Element]:
    return [D6Element(p, s) for s in (1, -1) for p in itertools.permutations(range(3))]


def _letter_image(i: int, perm: tuple):
    """Image of letter i (x/a, y/b or w/g) as {index: coeff} over {x, y} or {a, b}."""
    k = perm[i]
    return {0: 1} if k == 0 else {1: 1} if k == 1 else {0: -1, 1: -1}


@lru_cache(maxsize=None)
def _poly_action(perm: tuple) -> tuple:
    """Image of each polynomial basis element under the letter permutation."""
    xi = _letter_image(0, perm)
    yi = _letter_image(1, perm)
    out = []
    for p in range(POLY_DIM):
        i, e = poly_exponents(p)
        acc = Counter()
        # expand (sum c_u u)^i (sum d_v v)^e with u, v in {x, y}
        for picks in itertools.product(xi.items(), repeat=i):
            for epick in itertools.product(yi.items(), repeat=e):
                c = 1
                nx = ny = 0
                for var, coef in picks + epick:
                    c *= coef
                    if var == 0:
                        nx += 1
                    else:
                        ny += 1
                for q, v in reduce_xy(nx, ny):
                    acc[q] += c * v
        out.append(tuple(sorted((q, v) for q, v in acc.items() if v)))
    return tuple(out)


@lru_cache(maxsize=None)
def _ext_action(perm: tuple) -> tuple:
    """Image of each single-factor code (1, a, b, ab) under the permutation."""
    ai = _letter_image(0, perm)  # code 1 or 2 per entry index 0/1
    bi = _letter_image(1, perm)
    to_code = {0: 1, 1: 2}
    img_a = {to_code[k]: v for k, v in ai.items()}
    img_b = {to_code[k]: v for k, v in bi.items()}
    img_ab = Counter()
    for ca, va in img_a.items():
        for cb, vb in img_b.items():
            r = _EXT_MUL.get((ca, cb))
            if r is not None:
                img_ab[r[1]] += r[0] * va * vb
    return (((0, 1),), tuple(img_a.items()), tuple(img_b.items()),
            tuple((c, v) for c, v in img_ab.items() if v))


def act_monomial(g: D6Element, key) -> dict:
    p, codes = key
    sign = g.sign ** (poly_degree(p) + sum(EXT_DEG[c] for c in codes))
    polys = _poly_action(g.perm)[p]
    ext = _ext_action(g.perm)
    parts = [ext[c] for c in codes]
    out = {}
    for combo in itertools.product(*parts):
        codes_out = tuple(c for c, _ in combo)
        v = sign
        for _, coef in combo:
            v *= coef
        for q, w in polys:
            k = (q, codes_out)
            out[k] = out.get(k, 0) + v * w
    return out


def d6_act(g: D6Element, a: KElement) -> KElement:
    out = {}
    for key, c in a.terms.items():
        for k, v in act_monomial(g, key).items():
            out[k] = out.get(k, 0) + c * v
    return KElement(a.m, out)


def d6_act_substitution(g: D6Element, a: KElement) -> KElement:
    """Same action computed by letterwise substitution and rewriting."""
    m = a.m
    out = RawExpr(m)
    for t in to_raw(a).terms:
        img = RawExpr.const(m, t.coeff)
        for i, e in enumerate(t.xyw):
            for _ in range(e):
                img = img * RawExpr.letter(m, LETTERS[g.perm[i]]) * g.sign
        for l, j in t.word:
            img = img * RawExpr.letter(m, EXT_LETTERS[g.perm[EXT_LETTERS.index(l)]], j) * g.sign
        out = out + img
    return normalize(out)


def reynolds(a: KElement) -> KElement:
    """Average over D6: the projection onto the invariant subring."""
    out = KElement(a.m)
    for g in d6_elements():
        out = out + d6_act(g, a)
    return out.scale(Fraction(1, 12))


def is_invariant(a: KElement) -> bool:
    return all(d6_act(g, a) == a for g in (ROTATION, REFLECTION))


# -- z classes --------------------------------------------------------------------------

def z_element(k: int, I, m: int) -> KElement:
    """z(k, I) = x^(k-1) a_I + y^(k-1) b_I + w^(k-1) g_I, with I in increasing order."""
    if k < 1:
        raise ValueError("z(k, I) needs k >= 1")
    I = sorted(I)
    if len(set(I)) != len(I) or any(not 1 <= j <= m for j in I):
        raise ValueError(f"bad index set {I} for m={m}")
    total = RawExpr(m)
    for v, l in zip("xyw", "abg"):
        term = RawExpr.letter(m, v) ** (k - 1)
        for j in I:
            term = term * RawExpr.letter(m, l, j)
        total = total + term
    return normalize(total)


def z_is_invariant(k: int, I) -> bool:
    """z(k, I) is fixed by D6 iff (k - 1) + |I| is even."""
    return (k - 1 + len(I)) % 2 == 0


def generator_set(m: int) -> list[tuple]:
    """Index data (k, I) of the generators z(3-|I|, I), |I| <= 2, and z(7-|I|, I)."""
    out = []
    for n in range(0, min(m, 2) + 1):
        for I in itertools.combinations(range(1, m + 1), n):
            out.append((3 - n, I))
    for n in range(0, min(m, 6) + 1):
        for I in itertools.combinations(range(1, m + 1), n):
            out.append((7 - n, I))
    return out


def generators(m: int) -> list[tuple]:
    """Nonzero generators as (k, I, bidegree, element)."""
    out = []
    for k, I in generator_set(m):
        z = z_element(k, I, m)
        if z:
            out.append((k, I, (2 * (k - 1), len(I)), z))
    return out


def generator_products(m: int, i: int, j: int):
    """Yield (label, element) for every product of generators in bidegree (i, j)
    whose factors together touch all m exterior factors."""
    gens = [g for g in generators(m) if g[2] != (0, 0)]

    def rec(start, di, dj, chosen):
        if (di, dj) == (i, j):
            support = set().union(*(gens[n][1] for n in chosen)) if chosen else set()
            if len(support) == m:
                yield chosen
            return
        for n in range(start, len(gens)):
            gi, gj = gens[n][2]
            if di + gi <= i and dj + gj <= j:
                yield from rec(n, di + gi, dj + gj, chosen + [n])

    for chosen in rec(0, 0, 0, []):
        elem = KElement.one(m)
        for n in chosen:
            elem = elem * gens[n][3]
        yield _label(*((gens[n][0], gens[n][1]) for n in chosen)), elem


def z_label(k, I):
    return f"z({k},{{{','.join(map(str, I))}}})"


# -- slices, invariant dimensions -------------------------------------------------------------

def poly_basis(P: int) -> list[int]:
    if P == 0:
        return [0]
    if P == 6:
        return [poly_index(5, 1)]
    if 1 <= P <= 5:
        return [poly_index(P, 0), poly_index(P - 1, 1)]
    return []


_CODES_BY_DEG = {0: (0,), 1: (1, 2), 2: (3,)}


def slice_basis(P: int, dvec: tuple) -> list:
    out = []
    for p in poly_basis(P):
        for codes in itertools.product(*(_CODES_BY_DEG[d] for d in dvec)):
            out.append((p, codes))
    return out


def basis(m: int) -> list:
    """All normal-form monomials of K(m)."""
    return [(p, codes) for p in range(POLY_DIM) for codes in itertools.product(range(4), repeat=m)]


@lru_cache(maxsize=None)
def _slice_rank(P: int, dvec: tuple) -> int:
    """rank of the Reynolds operator on a slice; dvec sorted, zeros dropped."""
    keys = slice_basis(P, dvec)
    if not keys:
        return 0
    index = {k: n for n, k in enumerate(keys)}
    group = d6_elements()
    rows = []
    trace = 0
    for k in keys:
        row = [0] * len(keys)
        for g in group:
            for q, v in act_monomial(g, k).items():
                row[index[q]] += v
        trace += row[index[k]]
        rows.append(row)
    r = integer_rank(rows)
    # a projector has rank = trace; 12 * trace(R) is the summed character
    if trace != 12 * r:
        raise ArithmeticError(f"Reynolds operator on slice {(P, dvec)} is not a projector")
    return r


def slice_invariant_rank(P: int, dvec) -> int:
    return _slice_rank(P, tuple(sorted((d for d in dvec if d), reverse=True)))


def _dvec_classes(m: int, j: int, full_support: bool):
    """Sorted degree vectors with their number of arrangements."""
    lo = 1 if full_support else 0
    for counts in itertools.product(range(m + 1), repeat=3):
        if sum(counts) != m:
            continue
        n0, n1, n2 = counts
        if lo and n0:
            continue
        if n1 + 2 * n2 != j:
            continue
        dvec = (2,) * n2 + (1,) * n1
        arrangements = factorial(m) // (factorial(n0) * factorial(n1) * factorial(n2))
        yield dvec, arrangements


def _check_m(m, cap=M_MAX):
    if not 0 <= m <= cap:
        raise ValueError(f"m={m} outside the supported range 0..{cap}")


def invariant_dimension(m: int, i: int, j: int) -> int:
    _check_m(m)
    if i % 2 or not 0 <= i <= 12 or not 0 <= j <= 2 * m:
        return 0
    return sum(n * slice_invariant_rank(i // 2, dvec) for dvec, n in _dvec_classes(m, j, False))


def filtration_quotient_dimension(m: int, i: int, j: int) -> int:
    """Invariants in bidegree (i, j) modulo those touching fewer than m factors."""
    _check_m(m)
    if i % 2 or not 0 <= i <= 12 or not 0 <= j <= 2 * m:
        return 0
    return sum(n * slice_invariant_rank(i // 2, dvec) for dvec, n in _dvec_classes(m, j, True))


def invariant_series(m: int) -> BiPoly:
    return BiPoly({(i, j): invariant_dimension(m, i, j)
                   for i in range(0, 13, 2) for j in range(2 * m + 1)})


def quotient_series(m: int) -> BiPoly:
    return BiPoly({(i, j): filtration_quotient_dimension(m, i, j)
                   for i in range(0, 13, 2) for j in range(2 * m + 1)})


def inclusion_exclusion_series(m: int, series_of) -> BiPoly:
    """sum_k (-1)^(m-k) C(m,k) P(K(k)^D6), with P(K(0)^D6) = 1."""
    out = BiPoly.zero()
    for k in range(m + 1):
        p = series_of(k) if k else BiPoly.one()
        out = out + p.scale((-1) ** (m - k) * comb(m, k))
    return out


def project_to_quotient(a: KElement, i: int, j: int) -> dict:
    """Coordinates of the (i, j) part of ``a`` modulo the filtration F_{m-1}."""
    return {k: c for k, c in a.terms.items()
            if monomial_bidegree(k) == (i, j) and all(k[1])}


# -- relation identities -------------------------------------------------------------------

@dataclass
class CheckResult:
    lemma: str
    case: str
    expected_dim: object
    computed_rank: object
    status: str
    detail: str = ""
    candidate_rank: object = None

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        return {
            "lemma": self.lemma,
            "case": self.case,
            "expected_dim": self.expected_dim,
            "computed_rank": self.computed_rank,
            "status": self.status,
            **({"detail": self.detail} if self.detail else {}),
        }


def relation_identities(m: int = 3, perturb: str | None = None):
    """(name, lhs, rhs) for the relations among z classes.

    ``perturb`` names one identity whose leading coefficient is changed, as a
    negative control.
    """
    if m < 3:
        raise ValueError("the relations involve three factors; need m >= 3")
    z = lambda k, *I: z_element(k, I, m)  # noqa: E731

    def lead(name, c):
        return c - 1 if perturb == name else c

    out = [
        ("9z(3,{1,2,3})", z(3, 1, 2, 3) * lead("9z(3,{1,2,3})", 9),
         z(2, 1, 2) * z(2, 3) - z(2, 1, 3) * z(2, 2) + z(2, 2, 3) * z(2, 1)
         + z(1, 1, 2) * z(3, 3) - z(1, 1, 3) * z(3, 2) + z(1, 2, 3) * z(3, 1)),
        ("9z(5,{1,2,3})", z(5, 1, 2, 3) * lead("9z(5,{1,2,3})", 9),
         z(4, 1, 2) * z(2, 3) - z(4, 1, 3) * z(2, 2) + z(4, 2, 3) * z(2, 1)
         + z(3, 1, 2) * z(3, 3) - z(3, 1, 3) * z(3, 2) + z(3, 2, 3) * z(3, 1)),
        ("3z(4,{1,2})", z(4, 1, 2) * lead("3z(4,{1,2})", 3),
         z(3, 1) * z(2, 2) + z(2, 1) * z(3, 2)),
        ("3z(6,{1,2})", z(6, 1, 2) * lead("3z(6,{1,2})", 3),
         z(5, 1) * z(2, 2) + z(4, 1) * z(3, 2)),
        # z(6,{}) has no coefficient to change; the control unbalances it instead
        ("z(6,{})", z(6) + (w_elem(m) ** 5 if perturb == "z(6,{})" else KElement(m)), KElement(m)),
    ]
    return out


def alternative_fourth_relation(m: int = 3):
    """The variant 3z(6,{1,2}) = z(4,{1})z(1,{2}) + z(3,{1})z(2,{2})."""
    z = lambda k, *I: z_element(k, I, m)  # noqa: E731
    return ("3z(6,{1,2}) via z(4,{1})z(1,{2})", z(6, 1, 2) * 3,
            z(4, 1) * z(1, 2) + z(3, 1) * z(2, 2))


def verify_relations(m: int = 3, perturb: str | None = None) -> list[CheckResult]:
    out = []
    for name, lhs, rhs in relation_identities(m, perturb):
        diff = lhs - rhs
        out.append(CheckResult("relations", name, 0, len(diff),
                               "pass" if not diff else "fail",
                               "" if not diff else f"difference: {to_text(diff)}"))
    return out


def relation_variant_check(m: int = 3) -> CheckResult:
    """The variant right-hand side of the fourth identity must not hold."""
    name, lhs, rhs = alternative_fourth_relation(m)
    diff = lhs - rhs
    return CheckResult("relations", name, "nonzero", len(diff), "pass" if diff else "fail",
                       "variant rejected; z(5,{1})z(2,{2}) + z(4,{1})z(3,{2}) is the valid form"
                       if diff else "variant unexpectedly holds")


def relation_negative_controls(m: int = 3) -> list[CheckResult]:
    """Each perturbed identity must produce a nonzero difference."""
    out = []
    for name, *_ in relation_identities(m):
        bad = verify_relations(m, perturb=name)
        flagged = any(r.case == name and not r.passed for r in bad)
        out.append(CheckResult("relations", f"perturbed {name}", "nonzero",
                               "nonzero" if flagged else 0, "pass" if flagged else "fail"))
    return out


# -- span checks -----------------------------------------------------------------------------

def _zp(m, *parts):
    """Product of z classes given as (k, I) pairs."""
    out = KElement.one(m)
    for k, I in parts:
        out = out * z_element(k, I, m)
    return out


def _label(*parts):
    return "".join(z_label(k, I) for k, I in parts)


def _cands(m, products):
    return [(_label(*ps), _zp(m, *ps)) for ps in products]


def span_cases() -> dict:
    """The thirteen (m, i, j) quotient slices with their candidate products."""
    def pairs_z1(a, b):
        return (1, (a, b))

    cases = {}
    cases[(3, 2, 3)] = _cands(3, [[(2, (1,)), pairs_z1(2, 3)],
                                  [(2, (2,)), pairs_z1(1, 3)],
                                  [(2, (3,)), pairs_z1(1, 2)]])
    cases[(3, 6, 3)] = _cands(3, [[(2, (1,)), (2, (2,)), (2, (3,))],
                                  [(4, (1, 2, 3))]])
    cases[(3, 10, 3)] = _cands(3, [[(6, (1,)), pairs_z1(2, 3)],
                                   [(6, (2,)), pairs_z1(1, 3)],
                                   [(6, (3,)), pairs_z1(1, 2)]])
    cases[(3, 4, 4)] = _cands(3, [[(2, (1,)), (2, (2,)), pairs_z1(2, 3)],
                                  [(2, (1,)), (2, (2,)), pairs_z1(1, 3)],
                                  [(2, (1,)), (2, (3,)), pairs_z1(2, 3)]])
    cases[(4, 4, 4)] = _cands(4, [[(2, (1,)), (2, (2,)), pairs_z1(3, 4)],
                                  [(2, (1,)), (2, (3,)), pairs_z1(2, 4)],
                                  [(2, (1,)), (2, (4,)), pairs_z1(2, 3)],
                                  [(2, (2,)), (2, (3,)), pairs_z1(1, 4)],
                                  [(3, (1, 2, 3, 4))]])
    cases[(3, 2, 5)] = _cands(3, [[(2, (1,)), pairs_z1(2, 3), pairs_z1(2, 3)],
                                  [(2, (2,)), pairs_z1(1, 3), pairs_z1(1, 3)],
                                  [(2, (3,)), pairs_z1(1, 2), pairs_z1(1, 2)]])
    cases[(4, 2, 5)] = _cands(4, [[(2, (i,)), pairs_z1(*p), pairs_z1(*q)]
                                  for i in range(1, 5)
                                  for p, q in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]])
    five = [(1, (2, 3), (4, 5)), (1, (2, 4), (3, 5)), (2, (1, 3), (4, 5)), (2, (1, 4), (3, 5)),
            (3, (1, 4), (2, 5)), (3, (1, 5), (2, 4)), (4, (1, 2), (3, 5)), (4, (1, 5), (2, 3)),
            (5, (1, 2), (3, 4)), (5, (1, 3), (2, 4))]
    cases[(5, 2, 5)] = _cands(5, [[(2, (i,)), pairs_z1(*p), pairs_z1(*q)] for i, p, q in five]
                              + [[(2, (1, 2, 3, 4, 5))]])
    cases[(4, 0, 6)] = _cands(4, [[pairs_z1(*p), pairs_z1(*p), pairs_z1(*q)]
                                  for p, q in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)),
                                               ((2, 3), (1, 4)), ((2, 4), (1, 3)), ((3, 4), (1, 2))]])
    fifteen = [((1, 2), (1, 3), (4, 5)), ((1, 2), (1, 4), (3, 5)), ((1, 2), (1, 5), (3, 4)),
               ((1, 2), (2, 3), (4, 5)), ((1, 2), (2, 4), (3, 5)), ((1, 2), (2, 5), (3, 4)),
               ((1, 3), (2, 3), (4, 5)), ((1, 3), (3, 4), (2, 5)), ((1, 3), (3, 5), (2, 4)),
               ((1, 4), (2, 4), (3, 5)), ((1, 4), (3, 4), (2, 5)), ((1, 4), (4, 5), (2, 3)),
               ((1, 5), (2, 5), (3, 4)), ((1, 5), (3, 5), (2, 4)), ((1, 5), (4, 5), (2, 3))]
    cases[(5, 0, 6)] = _cands(5, [[pairs_z1(*a), pairs_z1(*b), pairs_z1(*c)] for a, b, c in fifteen])
    cases[(6, 0, 6)] = _cands(6, [[(1, (1, 2, 3, 4, 5, 6))]]
                              + [[pairs_z1(*a), pairs_z1(*b), pairs_z1(*c)] for a, b, c in SIX_PAIRINGS])
    cases[(3, 8, 4)] = _cands(3, [[(5, (1, 2)), pairs_z1(1, 3)],
                                  [(5, (1, 2)), pairs_z1(2, 3)],
                                  [(5, (1, 3)), pairs_z1(2, 3)]])
    cases[(4, 8, 4)] = _cands(4, [[(5, (1, 2)), pairs_z1(3, 4)],
                                  [(5, (1, 3)), pairs_z1(2, 4)],
                                  [(5, (1, 4)), pairs_z1(2, 3)],
                                  [(5, (2, 3)), pairs_z1(1, 4)],
                                  [(5, (2, 4)), pairs_z1(1, 3)]])
    return cases


SIX_PAIRINGS = [((1, 2), (3, 4), (5, 6)), ((1, 2), (3, 5), (4, 6)), ((1, 2), (3, 6), (4, 5)),
                ((1, 3), (2, 4), (5, 6)), ((1, 3), (2, 5), (4, 6)), ((1, 3), (2, 6), (4, 5)),
                ((1, 4), (2, 3), (5, 6)), ((1, 4), (2, 5), (3, 6)), ((1, 5), (2, 3), (4, 6)),
                ((1, 6), (2, 3), (4, 5))]

# exterior monomials (as a/b strings over factors 1..6) indexing the reference columns
SIX_COLUMNS = ["aaaaaa", "aaaabb", "aaabab", "aabaab", "abaaab", "baaaab",
               "aaabba", "aababa", "abaaba", "aabbaa", "ababaa"]

REFERENCE_SIX_MATRIX = [
    [2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [8, 8, 2, 2, 2, 2, 2, 2, 2, 8, 2],
    [8, 2, 8, 2, 2, 2, 2, 8, 2, 2, 2],
    [8, 2, 2, 8, 2, 2, 8, 2, 2, 2, 2],
    [8, 8, 2, 2, 2, 2, 2, 2, 2, 2, 8],
    [8, 2, 8, 2, 2, 2, 2, 2, 8, 2, 2],
    [8, 2, 2, 2, 8, 2, 8, 2, 2, 2, 2],
    [8, 8, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [8, 2, 2, 8, 2, 2, 2, 2, 8, 2, 2],
    [8, 2, 8, 2, 2, 2, 2, 2, 2, 2, 2],
    [8, 2, 2, 2, 2, 8, 8, 2, 2, 2, 2],
]


def six_factor_matrix() -> list[list]:
    """Coefficients of the SIX_COLUMNS monomials in the eleven (6,0,6) candidates."""
    cands = span_cases()[(6, 0, 6)]
    keys = [(0, tuple(1 if ch == "a" else 2 for ch in col)) for col in SIX_COLUMNS]
    return [[elem.terms.get(k, 0) for k in keys] for _, elem in cands]


def span_check(case, candidates=None, complete: bool = True) -> CheckResult:
    """Rank of generator products in a filtration quotient slice.

    ``candidates`` (default: the listed products for ``case``) are projected
    to the quotient first.  If they fall short and ``complete`` is set, every
    other product of generators in that bidegree is tried as well; the
    candidates' own rank is kept in ``candidate_rank``.
    """
    m, i, j = case
    if candidates is None:
        candidates = span_cases()[case]
    expected = filtration_quotient_dimension(m, i, j)
    e = Echelon()
    not_invariant = [lab for lab, c in candidates if not is_invariant(c)]
    for _, c in candidates:
        e.add(project_to_quotient(c, i, j))
    candidate_rank = e.rank
    added = []
    if complete and e.rank < expected:
        for lab, c in generator_products(m, i, j):
            if e.add(project_to_quotient(c, i, j)):
                added.append(lab)
                if e.rank == expected:
                    break
    ok = e.rank == expected and not not_invariant
    notes = []
    if candidate_rank < expected:
        notes.append(f"listed candidates reach rank {candidate_rank}")
    if added:
        notes.append(f"completed by {', '.join(added)}")
    if e.rank != expected:
        notes.append(f"rank deficit {expected - e.rank}")
    if not_invariant:
        notes.append(f"non-invariant candidates: {not_invariant}")
    return CheckResult("span", f"({m},{i},{j})", expected, e.rank, "pass" if ok else "fail",
                       "; ".join(notes), candidate_rank)


def candidate_relations(case) -> list[dict]:
    """Linear relations among the listed candidates in the quotient slice."""
    m, i, j = case
    cands = span_cases()[case]
    vecs = [project_to_quotient(c, i, j) for _, c in cands]
    return [{cands[n][0]: _norm(c) for n, c in enumerate(v) if c} for v in kernel(vecs)]


# -- generation by L(m) -------------------------------------------------------------------------

def verify_generators(m: int, progress=None) -> CheckResult:
    """Check slice by slice that the z generators span every invariant bidegree.

    A_d = span(generators of bidegree d, g * A_{d - deg g}); every product
    of generators of bidegree d arises this way, so comparing dim A_d with the
    invariant dimension decides whether the generators suffice.
    """
    _check_m(m, 4)
    gens = generators(m)
    for k, I, _, g in gens:
        if not is_invariant(g):
            return CheckResult("generators", f"m={m}", None, None, "fail",
                               f"{z_label(k, I)} is not invariant")
    spans = {(0, 0): [KElement.one(m)]}
    total_expected = total_rank = 0
    for j in range(0, 2 * m + 1):
        for i in range(0, 13, 2):
            if (i, j) == (0, 0):
                total_expected += 1
                total_rank += 1
                continue
            target = invariant_dimension(m, i, j)
            total_expected += target
            if not target:
                continue
            e = Echelon()
            found = []

            def offer(elem):
                if e.add(elem.terms):
                    found.append(elem)

            for _, _, (gi, gj), g in gens:
                if (gi, gj) == (i, j):
                    offer(g)
            for _, _, (gi, gj), g in gens:
                if len(found) == target:
                    break
                prev = spans.get((i - gi, j - gj))
                if not prev or (gi, gj) == (0, 0):
                    continue
                for b in prev:
                    offer(g * b)
                    if len(found) == target:
                        break
            spans[(i, j)] = found
            total_rank += len(found)
            if progress:
                progress(i, j, len(found), target)
            if len(found) != target:
                return CheckResult("generators", f"m={m}", target, len(found), "fail",
                                   f"first deficient bidegree (s^{i} t^{j})")
    return CheckResult("generators", f"m={m}", total_expected, total_rank, "pass")


# -- printing -----------------------------------------------------------------------------------

def _poly_text(coeffs: dict) -> str:
    parts = []
    for p in sorted(coeffs, key=lambda q: (-poly_degree(q), -(q // 2))):
        c = coeffs[p]
        i, e = poly_exponents(p)
        mono = "".join([("x" if i == 1 else f"x^{i}") if i else "", "y" if e else ""])
        mag = abs(c)
        body = mono if mag == 1 and mono else f"{mag}{mono}"
        parts.append(("-" if c < 0 else "+", body))
    text = "".join(f" {s} {b}" for s, b in parts).strip()
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _ext_text(codes) -> str:
    out = []
    for j, c in enumerate(codes, start=1):
        if c & 1:
            out.append(f"α{j}")
        if c & 2:
            out.append(f"β{j}")
    return "".join(out)


def to_text(a: KElement) -> str:
    """Group terms by exterior monomial, e.g. ``(2x + y)α1 + (x + 2y)β1``."""
    if not a.terms:
        return "0"
    groups = {}
    for (p, codes), c in a.terms.items():
        groups.setdefault(codes, {})[p] = c
    pieces = []
    for codes in sorted(groups, key=lambda cs: [(-(c & 1), -(c & 2)) for c in cs]):
        poly = groups[codes]
        ext = _ext_text(codes)
        if len(poly) == 1:
            (p, c), = poly.items()
            i, e = poly_exponents(p)
            mono = "".join([("x" if i == 1 else f"x^{i}") if i else "", "y" if e else ""])
            body = mono + ext
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append("-" + body)
            else:
                pieces.append(f"{c}{body}")
        else:
            inner = _poly_text(poly)
            pieces.append(f"({inner}){ext}" if ext else inner)
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out
