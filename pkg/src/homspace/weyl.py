"""Root data and Weyl groups of the simple Lie types.

Weyl group elements are integer matrices acting on the simple-root basis,
with the reflection convention

    s_i(alpha_j) = alpha_j - a_ij * alpha_i,    a_ij = <alpha_i^vee, alpha_j>.

The object of interest is the *characteristic-polynomial histogram* of W:
the multiset of char polys det(lambda - w) over all w in W.  Every class
function we need (det(1 + t w), det(1 - s^2 w)) factors through it.

Classical types get the histogram in closed form from cycle types of
(signed) permutations.  Exceptional types are enumerated element by element
along a chain of parabolic subgroups, see :func:`transversal_chain`.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

FAMILIES = "ABCDEFG"

CONVENTION = "s_i(alpha_j) = alpha_j - a_ij alpha_i; a_ij = <alpha_i^vee, alpha_j>; chain removes nodes r..1"
CACHE_VERSION = 1
CACHE_ENV = "HOMSPACE_CACHE_DIR"


class WeylError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 1,
            "C": n >= 1,
            "D": n >= 2,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f, False)
        if not ok:
            raise WeylError(f"inadmissible Lie type {f}{n}")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        text = text.strip().upper()
        if len(text) < 2 or text[0] not in FAMILIES or not text[1:].isdigit():
            raise WeylError(f"cannot parse Lie type {text!r}")
        return cls(text[0], int(text[1:]))

    @property
    def is_exceptional(self) -> bool:
        return self.family in "EFG"

    def __str__(self):
        return f"{self.family}{self.rank}"


def classical_degrees(t: LieType) -> list[int]:
    """Degrees of the basic invariants of W acting on its reflection representation."""
    n = t.rank
    if t.family == "A":
        return list(range(2, n + 2))
    if t.family in "BC":
        return [2 * k for k in range(1, n + 1)]
    if t.family == "D":
        return sorted([2 * k for k in range(1, n)] + [n])
    return {
        ("G", 2): [2, 6],
        ("F", 4): [2, 6, 8, 12],
        ("E", 6): [2, 5, 6, 8, 9, 12],
        ("E", 7): [2, 6, 8, 10, 12, 14, 18],
        ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30],
    }[(t.family, t.rank)]


def topological_degrees(t: LieType) -> list[int]:
    """Cohomological degrees |z_i| of the polynomial generators of H*(BG; Q)."""
    return [2 * d for d in classical_degrees(t)]


def group_order(t: LieType) -> int:
    return math.prod(classical_degrees(t))


def num_positive_roots(t: LieType) -> int:
    return sum(d - 1 for d in classical_degrees(t))


# -- Cartan matrices and reflections ---------------------------------------

def _chain_cartan(n: int) -> np.ndarray:
    a = 2 * np.eye(n, dtype=np.int64)
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = -1
    return a


def cartan_matrix(t: LieType) -> np.ndarray:
    """Cartan matrix in Bourbaki numbering, ``a[i, j] = <alpha_i^vee, alpha_j>``.

    For G2 the first simple root is the long one.
    """
    n = t.rank
    f = t.family
    if f == "A":
        return _chain_cartan(n)
    if f in "BC":
        a = _chain_cartan(n)
        if n >= 2:
            # B: alpha_n short; C: alpha_n long
            if f == "B":
                a[n - 1, n - 2] = -2
            else:
                a[n - 2, n - 1] = -2
        return a
    if f == "D":
        a = 2 * np.eye(n, dtype=np.int64)
        for i in range(n - 2):
            a[i, i + 1] = a[i + 1, i] = -1
        if n >= 3:
            a[n - 3, n - 1] = a[n - 1, n - 3] = -1
        return a
    if f == "G":
        return np.array([[2, -1], [-3, 2]], dtype=np.int64)
    if f == "F":
        a = _chain_cartan(4)
        a[2, 1] = -2
        return a
    # E: 1-3-4-5-6-7-8 with 2 attached to 4
    a = 2 * np.eye(n, dtype=np.int64)
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    for i, j in edges:
        if i <= n and j <= n:
            a[i - 1, j - 1] = a[j - 1, i - 1] = -1
    return a


def check_cartan(a: np.ndarray) -> None:
    a = np.asarray(a)
    n = a.shape[0]
    if a.shape != (n, n) or np.any(np.diag(a) != 2):
        raise WeylError("Cartan matrix must be square with 2 on the diagonal")
    for i in range(n):
        for j in range(n):
            if i != j:
                if a[i, j] > 0 or a[i, j] * a[j, i] not in (0, 1, 2, 3):
                    raise WeylError(f"bad off-diagonal pair at ({i}, {j})")
                if (a[i, j] == 0) != (a[j, i] == 0):
                    raise WeylError(f"asymmetric zero pattern at ({i}, {j})")


def simple_reflections(a: np.ndarray) -> list[np.ndarray]:
    """Matrices of s_1..s_r on the simple-root basis (column j = s_i(alpha_j))."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    gens = []
    for i in range(n):
        s = np.eye(n, dtype=np.int64)
        s[i, :] -= a[i, :]
        gens.append(s)
    return gens


def char_poly(w) -> tuple[int, ...]:
    """Monic characteristic polynomial det(lambda*I - w) as (c_0, ..., c_r).

    Faddeev-LeVerrier over the integers; every division is exact.
    """
    w = np.asarray(w, dtype=object)
    n = w.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = np.eye(n, dtype=object)
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        m = w.dot(m) + coeffs[n - k + 1] * ident
        tr = int(np.trace(w.dot(m)))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return tuple(int(c) for c in coeffs)


def is_self_reciprocal(c) -> bool:
    r = len(c) - 1
    return abs(c[0]) == 1 and all(c[k] == c[0] * c[r - k] for k in range(r + 1))


def enumerate_group(gens, limit: int = 2_000_000) -> list[np.ndarray]:
    """All elements of the matrix group generated by ``gens`` (breadth-first)."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0]
    one = np.eye(n, dtype=np.int64)
    seen = {one.tobytes(): one}
    frontier = [one]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s @ g
                key = h.tobytes()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
                    if len(seen) > limit:
                        raise MemoryError(f"group exceeds enumeration limit {limit}")
        frontier = nxt
    return list(seen.values())


# -- histograms ---------------------------------------------------------------

@dataclass(frozen=True)
class CharPolyHistogram:
    """Char polys of all elements of W with their multiplicities."""

    lie_type: LieType
    entries: dict = field(hash=False)  # tuple(c_0..c_r) -> count
    group_order: int

    def __post_init__(self):
        total = sum(self.entries.values())
        if total != self.group_order:
            raise WeylError(
                f"histogram for {self.lie_type} sums to {total}, expected {self.group_order}")
        r = self.lie_type.rank
        for c, k in self.entries.items():
            if len(c) != r + 1 or c[-1] != 1 or k <= 0:
                raise WeylError(f"malformed histogram entry {c}: {k}")
        ident = _identity_charpoly(r)
        if self.entries.get(ident) != 1:
            raise WeylError("identity char poly must occur exactly once")

    def __len__(self):
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def to_json(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "type": self.lie_type.family,
            "rank": self.lie_type.rank,
            "convention_hash": convention_hash(self.lie_type),
            "group_order": self.group_order,
            "entries": [[list(c), k] for c, k in self.items()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CharPolyHistogram":
        t = LieType(doc["type"], int(doc["rank"]))
        if doc.get("convention_hash") != convention_hash(t):
            raise WeylError(f"histogram for {t} was built under a different convention")
        entries = {tuple(int(x) for x in c): int(k) for c, k in doc["entries"]}
        return cls(t, entries, int(doc["group_order"]))


def _identity_charpoly(r: int) -> tuple[int, ...]:
    # (lambda - 1)^r
    return tuple((-1) ** (r - k) * math.comb(r, k) for k in range(r + 1))


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _cyclotomic_factor(length: int, sign: int) -> list[int]:
    # lambda^length + sign, ascending coefficients
    f = [0] * (length + 1)
    f[0] = sign
    f[length] = 1
    return f


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _z_factor(parts, base: int) -> int:
    """prod_k (base*k)^{a_k} a_k! for the multiplicities a_k of ``parts``."""
    out = 1
    for k, a in Counter(parts).items():
        out *= (base * k) ** a * math.factorial(a)
    return out


def histogram_classical(t: LieType) -> CharPolyHistogram:
    """Closed-form histogram for types A, B, C, D from cycle-type data."""
    n = t.rank
    entries: Counter = Counter()
    if t.family == "A":
        total = math.factorial(n + 1)
        for lam in _partitions(n + 1):
            poly = [1]
            for part in lam:
                poly = _poly_mul(poly, _cyclotomic_factor(part, -1))
            # divide by (lambda - 1)
            quot = _divide_by_linear(poly)
            entries[tuple(quot)] += total // _z_factor(lam, 1)
    elif t.family in "BCD":
        total = 2 ** n * math.factorial(n)
        for k in range(n + 1):
            for lam in _partitions(k):
                for mu in _partitions(n - k):
                    if t.family == "D" and len(mu) % 2:
                        continue
                    poly = [1]
                    for part in lam:
                        poly = _poly_mul(poly, _cyclotomic_factor(part, -1))
                    for part in mu:
                        poly = _poly_mul(poly, _cyclotomic_factor(part, 1))
                    entries[tuple(poly)] += total // (_z_factor(lam, 2) * _z_factor(mu, 2))
    else:
        raise WeylError(f"{t} is not a classical type")
    return CharPolyHistogram(t, dict(entries), group_order(t))


def _divide_by_linear(poly):
    # synthetic division of an ascending-coefficient polynomial by (lambda - 1)
    deg = len(poly) - 1
    desc = poly[::-1]
    q = [desc[0]]
    for c in desc[1:deg]:
        q.append(c + q[-1])
    assert desc[deg] + q[-1] == 0, "not divisible by lambda - 1"
    return q[::-1]


def histogram_bruteforce(t: LieType, limit: int = 200_000) -> CharPolyHistogram:
    """Histogram by explicit enumeration of every group element (small groups only)."""
    gens = simple_reflections(cartan_matrix(t))
    counts = Counter(char_poly(g) for g in enumerate_group(gens, limit=limit))
    return CharPolyHistogram(t, dict(counts), group_order(t))


# -- transversal chains ---------------------------------------------------------

@dataclass(frozen=True)
class TransversalLevel:
    node: int  # 0-based node whose fundamental weight is stabilised below
    generators: tuple  # 0-based nodes generating this level's group
    reps: np.ndarray = field(hash=False, compare=False)  # (k, r, r) int64
    dets: np.ndarray = field(hash=False, compare=False)  # (k,) +-1


@dataclass(frozen=True)
class TransversalChain:
    """Levels ordered from the whole group down; W = T_top * T_next * ... * T_last."""

    lie_type: LieType
    levels: tuple

    @property
    def sizes(self) -> list[int]:
        return [len(level.reps) for level in self.levels]

    def elements(self):
        """Iterate every element of W as a product of one rep per level."""
        for combo in itertools.product(*(range(s) for s in self.sizes)):
            w = np.eye(self.lie_type.rank, dtype=np.int64)
            for level, idx in zip(self.levels, combo):
                w = w @ level.reps[idx]
            yield w


def _orbit_transversal(a: np.ndarray, gens: list[np.ndarray], nodes, node):
    """Orbit of the fundamental weight omega_node under <s_i : i in nodes>.

    Weights are kept in fundamental-weight coordinates where
    s_i(lam)_k = lam_k - lam_i * a[k, i].  For each orbit point we record the
    root-basis matrix of one group element carrying omega_node to it.
    """
    r = a.shape[0]
    start = tuple(int(i == node) for i in range(r))
    one = np.eye(r, dtype=np.int64)
    orbit = {start: (one, 1)}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            mat, det = orbit[lam]
            for i in nodes:
                if lam[i] == 0:
                    continue
                image = tuple(lam[k] - lam[i] * int(a[k, i]) for k in range(r))
                if image not in orbit:
                    orbit[image] = (gens[i] @ mat, -det)
                    nxt.append(image)
        frontier = nxt
    reps = np.array([m for m, _ in orbit.values()], dtype=np.int64)
    dets = np.array([d for _, d in orbit.values()], dtype=np.int64)
    return reps, dets


def transversal_chain(t: LieType) -> TransversalChain:
    """Chain W = W(r) > W(r-1) > ... > W(0) = 1 with W(i) = <s_1..s_i>.

    W(i-1) is the stabiliser of omega_i in W(i), so the orbit of omega_i is a
    transversal of W(i)/W(i-1).
    """
    a = cartan_matrix(t)
    gens = simple_reflections(a)
    levels = []
    for node in range(t.rank - 1, -1, -1):
        nodes = tuple(range(node + 1))
        reps, dets = _orbit_transversal(a, gens, nodes, node)
        levels.append(TransversalLevel(node, nodes, reps, dets))
    return TransversalChain(t, tuple(levels))


def convention_hash(t: LieType) -> str:
    h = hashlib.sha256()
    h.update(CONVENTION.encode())
    h.update(str(t).encode())
    h.update(cartan_matrix(t).tobytes())
    return h.hexdigest()[:16]


# -- exceptional enumeration ------------------------------------------------------

TAIL_LIMIT = 60_000


def _split_chain(chain: TransversalChain, tail_limit: int = TAIL_LIMIT):
    """Split levels into outer (prefix) levels and an explicitly enumerated tail."""
    sizes = chain.sizes
    cut = len(sizes)
    prod = 1
    while cut > 0 and prod * sizes[cut - 1] <= tail_limit:
        cut -= 1
        prod *= sizes[cut]
    return chain.levels[:cut], chain.levels[cut:]


def _expand(levels, r):
    mats = np.eye(r, dtype=np.int64)[None]
    dets = np.ones(1, dtype=np.int64)
    for level in levels:
        mats = np.einsum("aij,bjk->abik", mats, level.reps).reshape(-1, r, r)
        dets = np.outer(dets, level.dets).reshape(-1)
    return mats, dets


def _keys_to_charpoly(key: int, r: int, npow: int) -> tuple[int, ...]:
    base = 2 * r + 1
    det = 1 if key % 2 else -1
    key //= 2
    p = []
    for _ in range(npow):
        p.append(key % base - r)
        key //= base
    # Newton: e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    e = [1]
    for k in range(1, npow + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1))
        assert acc % k == 0
        e.append(acc // k)
    # c_{r-k} = (-1)^k e_k; reciprocity c_k = c_0 c_{r-k} fills the rest
    c = [None] * (r + 1)
    for k in range(npow + 1):
        c[r - k] = (-1) ** k * e[k]
    c0 = (-1) ** r * det
    if c[0] is not None and c[0] != c0:
        raise WeylError("determinant inconsistent with power traces")
    for k in range(r + 1):
        if c[k] is None:
            c[k] = c0 * c[r - k]
    return tuple(c)


def _histogram_worker(args):
    prefixes, prefix_dets, tail, tail_dets, npow = args
    from homspace import _kernels

    counts: Counter = Counter()
    for p, d in zip(prefixes, prefix_dets):
        keys = _kernels.trace_keys(p, tail, tail_dets * d, npow)
        uniq, cnt = np.unique(keys, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            counts[k] += c
    return counts


def histogram_exceptional(t: LieType, jobs: int = 1, full_traces: bool | None = None,
                          progress=None) -> CharPolyHistogram:
    """Histogram by full enumeration of W along its transversal chain.

    The innermost levels are multiplied out into a tail block (a few tens of
    thousands of matrices); every outer prefix is multiplied against the tail
    in a compiled kernel that reduces each product to its power traces.  With
    ``full_traces`` all r power traces are taken; otherwise only the first
    r//2 plus the determinant, the rest following from self-reciprocity.
    """
    if not t.is_exceptional:
        raise WeylError(f"{t} is not exceptional")
    r = t.rank
    if full_traces is None:
        full_traces = r < 8
    npow = r if full_traces else r // 2
    chain = transversal_chain(t)
    outer, inner = _split_chain(chain)
    tail, tail_dets = _expand(inner, r)
    prefixes, prefix_dets = _expand(outer, r)
    tail = np.ascontiguousarray(tail)
    # every matrix the kernel stores is an element of W, bounded by r * max|prefix| * max|tail|
    bound = r * int(np.abs(prefixes).max()) * int(np.abs(tail).max())
    if bound >= 2 ** 31:
        raise WeylError(f"Weyl matrix entries of {t} may exceed int32 (bound {bound})")

    nchunks = max(1, min(len(prefixes), 4 * jobs if jobs > 1 else len(prefixes)))
    chunks = np.array_split(np.arange(len(prefixes)), nchunks)
    tasks = [(prefixes[c], prefix_dets[c], tail, tail_dets, npow) for c in chunks if len(c)]

    counts: Counter = Counter()
    if jobs > 1:
        import multiprocessing as mp

        with mp.get_context("spawn").Pool(jobs) as pool:
            for i, part in enumerate(pool.imap_unordered(_histogram_worker, tasks)):
                counts.update(part)
                if progress:
                    progress(i + 1, len(tasks))
    else:
        for i, task in enumerate(tasks):
            counts.update(_histogram_worker(task))
            if progress:
                progress(i + 1, len(tasks))

    entries: Counter = Counter()
    for key, c in counts.items():
        entries[_keys_to_charpoly(key, r, npow)] += c
    return CharPolyHistogram(t, dict(entries), group_order(t))


# -- dispatch + cache ----------------------------------------------------------------

def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "homspace"


def cache_path(t: LieType, cache_dir: Path | str) -> Path:
    return Path(cache_dir) / f"hist_{t}_{convention_hash(t)}.json"


def load_histogram(path: Path | str) -> CharPolyHistogram:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != CACHE_VERSION:
        raise WeylError(f"unsupported histogram cache version in {path}")
    return CharPolyHistogram.from_json(doc)


def save_histogram(hist: CharPolyHistogram, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(hist.to_json(), fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)


# enumeration is only worth caching for the large exceptional groups
_CACHED_TYPES = {LieType("E", 7), LieType("E", 8)}


def histogram(t: LieType, jobs: int = 1, cache_dir=None, use_cache: bool = True,
              progress=None) -> CharPolyHistogram:
    if not t.is_exceptional:
        return histogram_classical(t)
    if not use_cache or t not in _CACHED_TYPES:
        return histogram_exceptional(t, jobs=jobs, progress=progress)
    path = cache_path(t, cache_dir or default_cache_dir())
    if path.exists():
        return load_histogram(path)
    hist = histogram_exceptional(t, jobs=jobs, progress=progress)
    try:
        save_histogram(hist, path)
    except OSError:
        pass
    return hist
