"""Golden corpus: checked-in reference series, one canonical term per line.

File names select the computation:

    hom_<TYPE>_m<m>.txt       P(Hom(Z^m, G)_0) from the Molien sum
    g2_invariants_m<m>.txt    P(K(m)^D6), by Reynolds ranks and by the Molien sum
    g2_quotient_m<m>.txt      P(K(m)^D6 / F_{m-1})
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from . import g2ring
from .bipoly import BiPoly, parse, to_lines
from .molien import hom_series
from .weyl import LieType

_NAME = re.compile(r"^(hom_(?P<type>[A-G]\d+)|g2_(?P<kind>invariants|quotient))_m(?P<m>\d+)\.txt$")


def default_corpus_dir() -> Path:
    return Path(str(files("homspace") / "golden"))


@dataclass(frozen=True)
class GoldenEntry:
    path: Path
    kind: str  # "hom", "invariants" or "quotient"
    m: int
    lie_type: LieType | None = None

    @property
    def name(self):
        return self.path.name

    @property
    def long(self):
        """E8 needs the 696,729,600-element enumeration unless cached."""
        return self.lie_type is not None and str(self.lie_type) == "E8"


def load(path) -> BiPoly:
    lines = Path(path).read_text().splitlines()
    body = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    return parse("\n".join(body)) if body else BiPoly.zero()


def write(path, p: BiPoly, header: str) -> None:
    Path(path).write_text(f"# {header}\n" + "\n".join(to_lines(p)) + "\n")


def entries(corpus_dir=None) -> list[GoldenEntry]:
    d = Path(corpus_dir) if corpus_dir is not None else default_corpus_dir()
    out = []
    for path in sorted(d.glob("*.txt")):
        mt = _NAME.match(path.name)
        if not mt:
            continue
        m = int(mt["m"])
        if mt["type"]:
            out.append(GoldenEntry(path, "hom", m, LieType.parse(mt["type"])))
        else:
            out.append(GoldenEntry(path, mt["kind"], m))
    return out


def compute(entry: GoldenEntry, **kw) -> list[tuple[str, BiPoly]]:
    """Every independent route that produces the entry's series."""
    g2 = LieType("G", 2)
    if entry.kind == "hom":
        return [("molien", hom_series(entry.lie_type, entry.m, **kw).series.with_bounds(None))]
    if entry.kind == "invariants":
        return [("reynolds", g2ring.invariant_series(entry.m)),
                ("molien", hom_series(g2, entry.m, **kw).series.with_bounds(None))]
    return [("reynolds", g2ring.quotient_series(entry.m)),
            ("inclusion-exclusion", g2ring.inclusion_exclusion_series(entry.m, g2ring.invariant_series))]


def diff(expected: BiPoly, got: BiPoly) -> list[tuple]:
    """(i, j, expected, got) at every point where the two differ."""
    a, b = expected.terms, got.terms
    keys = sorted(set(a) | set(b), key=lambda ij: (-ij[1], -ij[0]))
    return [(i, j, a.get((i, j), 0), b.get((i, j), 0)) for i, j in keys if a.get((i, j), 0) != b.get((i, j), 0)]


@dataclass
class GoldenResult:
    entry: GoldenEntry
    mismatches: dict  # route -> list of (i, j, expected, got)
    skipped: bool = False

    @property
    def passed(self):
        return not self.skipped and not any(self.mismatches.values())

    def to_json(self):
        return {
            "file": self.entry.name,
            "status": "skipped" if self.skipped else "pass" if self.passed else "fail",
            "mismatches": {r: [list(x) for x in ms] for r, ms in self.mismatches.items() if ms},
        }


def verify(entry: GoldenEntry, long: bool = False, **kw) -> GoldenResult:
    if entry.long and not long:
        return GoldenResult(entry, {}, skipped=True)
    expected = load(entry.path)
    return GoldenResult(entry, {route: diff(expected, got) for route, got in compute(entry, **kw)})
