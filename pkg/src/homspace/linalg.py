"""Exact rank computations over Q on sparse vectors.

Vectors are dicts ``key -> Fraction | int``.  Pivots are chosen by smallest
numerator/denominator size to keep entries short.
"""
from __future__ import annotations

from fractions import Fraction


def _size(c) -> int:
    c = Fraction(c)
    return abs(c.numerator).bit_length() + c.denominator.bit_length()


class Echelon:
    """Incrementally maintained reduced basis of a subspace of Q^keys."""

    def __init__(self):
        self.rows = {}  # pivot key -> row normalized to 1 at the pivot

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        for p, row in self.rows.items():
            c = v.get(p)
            if c:
                for k, r in row.items():
                    nv = v.get(k, 0) - c * r
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True if it was independent of the basis."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v, key=lambda k: (_size(v[k]), repr(k)))
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        # keep the basis fully reduced so reduce() is a single pass
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, r in v.items():
                    nr = row.get(k, 0) - c * r
                    if nr:
                        row[k] = nr
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(vectors) -> int:
    """Rank of a list of sparse vectors (dicts) or dense rows (sequences)."""
    e = Echelon()
    for v in vectors:
        if not isinstance(v, dict):
            v = {i: c for i, c in enumerate(v) if c}
        e.add(v)
    return e.rank


def integer_rank(rows) -> int:
    """Rank of a dense integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        best = None
        for i in range(r, nrows):
            if a[i][c] and (best is None or abs(a[i][c]) < best):
                piv, best = i, abs(a[i][c])
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for k in range(c + 1, ncols):
                ai[k] = (pr[c] * ai[k] - f * pr[k]) // prev
            ai[c] = 0
        prev = pr[c]
        r += 1
        if r == nrows:
            break
    return r


def kernel(vectors) -> list[list]:
    """Basis of {c : sum_n c_n v_n = 0} for sparse vectors v_n, via RREF."""
    keys = sorted({k for v in vectors for k in v}, key=repr)
    n = len(vectors)
    a = [[Fraction(v.get(k, 0)) for v in vectors] for k in keys]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = []
    for free in (c for c in range(n) if c not in pivots):
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -a[row][free]
        out.append(vec)
    return out
