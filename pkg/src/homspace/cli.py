"""Command-line entry point ``homspace``.

Exit status: 0 on success, 1 on usage errors (bad flags, unknown type, m out
of range, unreadable cache), 2 when a computation contradicts an expected
identity or a reference value.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import corpus, g2ring
from .bipoly import BiPoly, to_json, to_text
from .mapspace import full_generator_table, full_mapspace_hilbert_series, h_generator_table, h_hilbert_series
from .molien import SeriesError, duality_defects, duality_partner, hom_bounds, hom_series
from .surjcheck import check, classify, expected_surjective
from .weyl import LieType, WeylError

M_LIMIT = 16
EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2

LEMMA_CHOICES = {
    "all": ("relations", "filtration", "span", "generators"),
    "relations": ("relations",),
    "filtration": ("filtration",),
    "span": ("span",),
    "generators": ("generators",),
    # numeric aliases
    "6.3": ("relations",),
    "6.6": ("filtration",),
    "6.8": ("span",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _lie_type(text):
    try:
        return LieType.parse(text)
    except (ValueError, WeylError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _m(text):
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"m must be an integer, got {text!r}") from None
    if not 0 <= m <= M_LIMIT:
        raise argparse.ArgumentTypeError(f"m={m} outside the supported range 0..{M_LIMIT}")
    return m


def _emit(doc, fmt, text):
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def _hist_kw(args):
    kw = {"jobs": args.jobs}
    if args.cache_dir:
        kw["cache_dir"] = args.cache_dir
    return kw


def cmd_hom_series(args):
    h = hom_series(args.type, args.m, trunc_slack=args.trunc_slack, **_hist_kw(args))
    doc = to_json(h.series)
    doc.update({"type": str(args.type), "m": args.m, "S_max": h.s_max, "T_max": h.t_max,
                "group_order": h.group_order})
    _emit(doc, args.format, to_text(h.series))
    defects = duality_defects(h, duality_partner(h, **_hist_kw(args)))
    if defects:
        print(f"duality fails at {defects[:5]}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_map_series(args):
    bounds = hom_bounds(args.type, args.m)
    if args.full:
        tab = full_generator_table(args.type, args.m)
        series = full_mapspace_hilbert_series(args.type, args.m, bounds)
    else:
        tab = h_generator_table(args.type, args.m)
        series = h_hilbert_series(tab, bounds)
    doc = to_json(series)
    doc.update({"type": str(args.type), "m": args.m, "S_max": bounds[0], "T_max": bounds[1],
                "generators": tab.to_json()["entries"],
                "algebra": "full" if args.full else "h-subalgebra"})
    _emit(doc, args.format, to_text(series))
    return EXIT_OK


def cmd_check(args):
    report = check(args.type, args.m, **_hist_kw(args))
    _emit(report.to_json(), args.format, report.text())
    if args.m >= 3 and expected_surjective(args.type) and report.violations:
        print(f"{args.type} should be surjective but violates the necessary condition",
              file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_classify(args):
    if args.m < 3:
        raise UsageError("classify needs m >= 3")
    factors = []
    for name in args.factors.split(","):
        try:
            factors.append(LieType.parse(name.strip()))
        except (ValueError, WeylError) as exc:
            raise UsageError(str(exc)) from None
    result = classify(factors, args.m, **_hist_kw(args))
    doc = result.to_json()
    verdict = "surjective" if result.surjective else "not-surjective"
    doc["verdict"] = verdict
    lines = [f"m={args.m}: {verdict}"]
    for f in result.factors:
        lines.append(f"  {f.report.text()}")
    _emit(doc, args.format, "\n".join(lines))
    return EXIT_OK if result.consistent else EXIT_INCONSISTENT


def g2_reports(lemmas, m, progress=None) -> list[g2ring.CheckResult]:
    out = []
    if "relations" in lemmas:
        out.extend(g2ring.verify_relations(3))
        out.append(g2ring.relation_variant_check(3))
        out.extend(g2ring.relation_negative_controls(3))
    if "filtration" in lemmas:
        for e in corpus.entries():
            if e.kind != "quotient":
                continue
            res = corpus.verify(e)
            expected = corpus.load(e.path)
            total = sum(expected.terms.values())
            got = g2ring.quotient_series(e.m)
            out.append(g2ring.CheckResult("filtration", f"m={e.m}", total, sum(got.terms.values()),
                                          "pass" if res.passed else "fail",
                                          json.dumps(res.to_json()["mismatches"]) if not res.passed else ""))
    if "span" in lemmas:
        for case in g2ring.span_cases():
            out.append(g2ring.span_check(case))
        ref = g2ring.integer_rank(g2ring.REFERENCE_SIX_MATRIX)
        computed = g2ring.six_factor_matrix()
        same = all(abs(a) == abs(b) for ra, rb in zip(computed, g2ring.REFERENCE_SIX_MATRIX)
                   for a, b in zip(ra, rb))
        out.append(g2ring.CheckResult("span", "(6,0,6) reference matrix", 11, ref,
                                      "pass" if ref == 11 and same else "fail",
                                      "" if same else "computed coefficients differ"))
    if "generators" in lemmas:
        out.append(g2ring.verify_generators(m, progress))
    return out


def cmd_g2_verify(args):
    if not 1 <= args.m <= 4:
        raise UsageError("g2-verify supports 1 <= m <= 4")
    reports = g2_reports(LEMMA_CHOICES[args.lemma], args.m)
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], sort_keys=True))
    else:
        for r in reports:
            extra = f"  ({r.detail})" if r.detail else ""
            print(f"{r.status.upper():4}  {r.lemma:10} {r.case:40} expected {r.expected_dim}, "
                  f"got {r.computed_rank}{extra}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_INCONSISTENT


def cmd_golden_verify(args):
    entries = corpus.entries(args.corpus)
    if not entries:
        raise UsageError(f"no golden files found in {args.corpus or corpus.default_corpus_dir()}")
    ok = True
    docs = []
    for e in entries:
        res = corpus.verify(e, long=args.long, **_hist_kw(args))
        docs.append(res.to_json())
        ok &= res.passed or res.skipped
        if args.format == "text":
            status = res.to_json()["status"].upper()
            print(f"{status:7} {e.name}")
            for route, ms in res.mismatches.items():
                for i, j, exp, got in ms[:20]:
                    print(f"        {route}: s^{i}*t^{j} expected {exp}, got {got}")
    if args.format == "json":
        print(json.dumps(docs, sort_keys=True))
    return EXIT_OK if ok else EXIT_INCONSISTENT


# -- selftest ----------------------------------------------------------------------------------

def _selftest_checks():
    from fractions import Fraction

    import numpy as np

    from .bipoly import inv_truncated, parse, power
    from .mapspace import bg_generator_degrees
    from .molien import denominator_from_charpoly, exterior_average, molien_univariate, numerator_from_charpoly
    from .weyl import (cartan_matrix, char_poly, classical_degrees, histogram, histogram_classical,
                       is_self_reciprocal, simple_reflections, transversal_chain)

    m = 3
    x, y, w = g2ring.x_elem(m), g2ring.y_elem(m), g2ring.w_elem(m)
    a1, b2 = g2ring.alpha(m, 1), g2ring.beta(m, 2)
    raw = g2ring.RawExpr
    z21 = g2ring.z_element(2, [1], m)
    A1, G2, F4 = LieType("A", 1), LieType("G", 2), LieType("F", 4)

    def molien_ok(t):
        want = [Fraction(1)] + [Fraction(0)] * 30
        for d in classical_degrees(t):
            for n in range(d, 31):
                want[n] += want[n - d]
        return molien_univariate(histogram(t), 30) == want

    def eye(r, sign=1):
        return sign * np.eye(r, dtype=np.int64)

    def perturbed_relation_fails():
        return not g2ring.verify_relations(3, perturb="9z(3,{1,2,3})")[0].passed

    def corrupted_golden_detected():
        path = corpus.default_corpus_dir() / "hom_F4_m3.txt"
        ref = corpus.load(path)
        bad = ref + BiPoly.monomial(18, 3)
        return corpus.diff(bad, ref) == [(18, 3, 21, 20)]

    p = parse("s^2*t + 3*s^4 - 1/2*t^2")
    q = parse("s*t - 2")
    u = parse("s^2*t + 1")
    types = [LieType.parse(n) for n in ("A1", "A2", "B2", "C3", "D4", "G2")]
    return [
        # weyl
        ("weyl: Cartan matrix of G2", lambda: cartan_matrix(G2).tolist() == [[2, -1], [-3, 2]]),
        ("weyl: Cartan matrix of A1", lambda: cartan_matrix(A1).tolist() == [[2]]),
        ("weyl: simple reflection of A1", lambda: [s.tolist() for s in simple_reflections(cartan_matrix(A1))]
         == [[[-1]]]),
        ("weyl: char poly of the identity", lambda: char_poly(eye(3)) == (-1, 3, -3, 1)),
        ("weyl: char poly of -I", lambda: char_poly(eye(3, -1)) == (1, 3, 3, 1)),
        ("weyl: F4 histogram counts sum to 1152", lambda: sum(histogram(F4).entries.values()) == 1152),
        ("weyl: transversal chain of A1", lambda: transversal_chain(A1).sizes == [2]),
        ("weyl: closed-form histogram of A1",
         lambda: histogram_classical(A1).entries == {(-1, 1): 1, (1, 1): 1}),
        ("weyl: histograms are self-reciprocal",
         lambda: all(is_self_reciprocal(c) for t in types for c in histogram(t).entries)),
        # bipoly
        ("bipoly: p + 0 = p", lambda: p + BiPoly.zero() == p),
        ("bipoly: (1+s^2t) - s^2t = 1", lambda: u + parse("-s^2*t") == 1),
        ("bipoly: (1+t)(1-t) = 1-t^2", lambda: parse("1+t") * parse("1-t") == parse("1-t^2")),
        ("bipoly: (1+s^2t)^3 at s^2t is 3", lambda: power(u, 3).coefficient(2, 1) == 3),
        ("bipoly: truncated (1+s)^2 with S_max=1",
         lambda: parse("1+s", bounds=(1, 0)) * parse("1+s", bounds=(1, 0)) == parse("1+2*s")),
        ("bipoly: 1/(1-t^2) to t^6",
         lambda: inv_truncated(parse("1-t^2"), 0, 6) == parse("1+t^2+t^4+t^6")),
        ("bipoly: 1/(1-s^2) to s^4", lambda: inv_truncated(parse("1-s^2"), 4, 0) == parse("1+s^2+s^4")),
        ("bipoly: (1+t)^0 = 1", lambda: power(parse("1+t"), 0) == 1),
        ("bipoly: (1-t+t^2)^2", lambda: power(parse("1-t+t^2"), 2) == parse("1-2*t+3*t^2-2*t^3+t^4")),
        ("bipoly: (1+t)^8 at t^4 is 70", lambda: power(parse("1+t"), 8).coefficient(0, 4) == 70),
        ("bipoly: coefficient of 1+3s^2t at (2,1)", lambda: parse("1+3*s^2*t").coefficient(2, 1) == 3),
        ("bipoly: out-of-range coefficient is 0", lambda: p.coefficient(999, 999) == 0),
        ("bipoly: text round trip", lambda: parse(to_text(p)) == p),
        ("bipoly: ring axioms", lambda: (p * q) * u == p * (q * u) and p * (q + u) == p * q + p * u
         and p * q == q * p),
        # molien
        ("molien: numerator of the identity", lambda: numerator_from_charpoly(char_poly(eye(2)), 1)
         == parse("1+2*t+t^2")),
        ("molien: numerator of -I", lambda: numerator_from_charpoly(char_poly(eye(2, -1)), 1)
         == parse("1-2*t+t^2")),
        ("molien: denominator of the identity", lambda: denominator_from_charpoly(char_poly(eye(2)))
         == parse("1-2*s^2+s^4")),
        ("molien: denominator of -I", lambda: denominator_from_charpoly(char_poly(eye(2, -1)))
         == parse("1+2*s^2+s^4")),
        ("molien: m=0 series is 1", lambda: all(hom_series(t, 0).series == 1 for t in types)),
        ("molien: Shephard-Todd identity", lambda: all(molien_ok(t) for t in types)),
        ("molien: exterior average is 1",
         lambda: all(exterior_average(histogram(t)) == [1] + [0] * t.rank for t in types)),
        ("molien: G2 m=1", lambda: to_text(hom_series(G2, 1).series) == "s^12*t^2 + s^10*t + s^2*t + 1"),
        # mapspace
        ("mapspace: degrees of A1", lambda: bg_generator_degrees(A1) == [4]),
        ("mapspace: H table of (G2, 1)",
         lambda: h_generator_table(G2, 1).to_json()["entries"] == [[2, 1, "odd", 1], [10, 1, "odd", 1]]),
        ("mapspace: H table at m=0 is empty", lambda: h_generator_table(G2, 0).to_json()["entries"] == []),
        ("mapspace: H series of (A1, 1)",
         lambda: h_hilbert_series(h_generator_table(A1, 1), hom_bounds(A1, 1)) == u),
        ("mapspace: H series at m=0 is 1", lambda: h_hilbert_series(h_generator_table(G2, 0), (0, 0)) == 1),
        # g2ring
        ("g2ring: x+y+w = 0", lambda: not (x + y + w)),
        ("g2ring: x^6+y^6+w^6 = 0", lambda: not (x ** 6 + y ** 6 + w ** 6)),
        ("g2ring: x^5+y^5+w^5 = 0", lambda: not (x ** 5 + y ** 5 + w ** 5)),
        ("g2ring: rewriter on x+y+w",
         lambda: not g2ring.normalize(raw.letter(m, "x") + raw.letter(m, "y") + raw.letter(m, "w"))),
        ("g2ring: rewriter on x^2+y^2+w^2",
         lambda: not g2ring.normalize(raw.letter(m, "x") ** 2 + raw.letter(m, "y") ** 2
                                      + raw.letter(m, "w") ** 2)),
        ("g2ring: alpha1^2 = 0", lambda: not (a1 * a1)),
        ("g2ring: anticommutativity", lambda: not (a1 * b2 + b2 * a1)),
        ("g2ring: D6 fixes 1",
         lambda: all(g2ring.d6_act(g, g2ring.KElement.one(m)) == g2ring.KElement.one(m)
                     for g in g2ring.d6_elements())),
        ("g2ring: Reynolds fixes z(2,{1})", lambda: g2ring.reynolds(z21) == z21),
        ("g2ring: Reynolds is idempotent",
         lambda: g2ring.reynolds(g2ring.reynolds(x * a1 + y * b2)) == g2ring.reynolds(x * a1 + y * b2)),
        ("g2ring: z(3,{}) = 0", lambda: not g2ring.z_element(3, [], m)),
        ("g2ring: perturbed relation is rejected", perturbed_relation_fails),
        ("g2ring: dim (m=2, 0, 0) = 1", lambda: g2ring.invariant_dimension(2, 0, 0) == 1),
        # corpus
        ("golden: a corrupted term is located", corrupted_golden_detected),
    ]


def cmd_selftest(args):
    t0 = time.time()
    failed = 0
    for name, fn in _selftest_checks():
        try:
            ok = bool(fn())
        except Exception as exc:  # report and keep going
            ok = False
            name += f" ({type(exc).__name__}: {exc})"
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"{failed} failure(s) in {time.time() - t0:.1f} s")
    return EXIT_OK if not failed else EXIT_INCONSISTENT


# -- parser -------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="homspace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, type_required=True):
        if type_required:
            sp.add_argument("--type", type=_lie_type, required=True, help="e.g. A3, B2, G2, F4, E8")
            sp.add_argument("--m", type=_m, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--cache-dir", default=None,
                        help="histogram cache (default $HOMSPACE_CACHE_DIR or ~/.cache/homspace)")
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("hom-series", help="Poincare series of Hom(Z^m, G)_0")
    common(sp)
    sp.add_argument("--trunc-slack", type=int, default=0,
                    help="evaluate beyond the top bidegree and require the excess to vanish")
    sp.set_defaults(func=cmd_hom_series)

    sp = sub.add_parser("map-series", help="Poincare series of the mapping space or its subalgebra H")
    common(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--full", action="store_true")
    g.add_argument("--h-subalgebra", action="store_true")
    sp.set_defaults(func=cmd_map_series)

    sp = sub.add_parser("check", help="coefficient test of P(Hom) against P(H)")
    common(sp)
    sp.set_defaults(func=cmd_check, format="json")

    sp = sub.add_parser("classify", help="verdict for a product of simple factors")
    common(sp, type_required=False)
    sp.add_argument("--factors", required=True, help="comma separated, e.g. F4,G2")
    sp.add_argument("--m", type=_m, required=True)
    sp.set_defaults(func=cmd_classify, format="json")

    sp = sub.add_parser("g2-verify", help="exact checks in the G2 model ring")
    sp.add_argument("--m", type=int, default=3, help="rank of the generator check (1..4)")
    sp.add_argument("--lemma", choices=tuple(LEMMA_CHOICES), default="all")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_g2_verify)

    sp = sub.add_parser("golden-verify", help="recompute and diff the golden corpus")
    common(sp, type_required=False)
    sp.add_argument("--corpus", default=None, help="directory of golden files (default: bundled)")
    sp.add_argument("--long", action="store_true", help="include E8")
    sp.set_defaults(func=cmd_golden_verify)

    sp = sub.add_parser("selftest", help="quick internal consistency checks")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"homspace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError, WeylError) as exc:
        print(f"homspace: error: cannot read input or cache: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SeriesError, ArithmeticError) as exc:
        print(f"homspace: inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
