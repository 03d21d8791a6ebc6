"""Command-line front end: text/JSON parsing, subcommand dispatch,
deterministic verification suites, JSON reporting.

Exit codes: 0 success (a verdict was produced), 2 parse/usage error,
3 unknown due to truncation, 1 internal consistency failure.

Identical argv, seed and environment produce byte-identical output: all
rationals are serialized as "p/q" strings, reports are sorted, and per-trial
seeds derive deterministically from the master seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import criterion as crit
from . import oracle as orc
from .errors import (
    ConsistencyError, DegenerateError, LctkitError, ParseError,
    TruncationError,
)
from .poly import MPoly, UPoly
from .qideal import UNKNOWN
from .rootdata import (
    contact_order_identity_check, diff_orders, integrality_test,
    max_root_order, newton_polygon, orders_against_series, partial_sums,
    perturbation_check, root_orders,
)
from .series import PSeries, frac_str

# ---------------------------------------------------------------------------
# Text parsing
# ---------------------------------------------------------------------------


class _Tok:
    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("num", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    """Terms c*x^(p/q) joined by + and -; rational literals p/q; variables
    alphanumeric.  Produces a list of (Fraction, {var: Fraction})."""

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.kind}", tok.pos)
        self.i += 1
        return tok

    def parse(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok.kind in "+-":
            self.take()
            sign = -1 if tok.kind == "-" else 1
        terms.append(self.term(sign))
        while self.peek().kind in "+-":
            op = self.take()
            terms.append(self.term(-1 if op.kind == "-" else 1))
        self.take("end")
        return terms

    def term(self, sign):
        coeff = Fraction(sign)
        exps = {}
        first = True
        while True:
            tok = self.peek()
            if tok.kind == "num":
                coeff *= self.rational()
            elif tok.kind == "name":
                self.take()
                var = tok.value
                e = Fraction(1)
                if self.peek().kind == "^":
                    self.take()
                    e = self.exponent()
                exps[var] = exps.get(var, Fraction(0)) + e
            elif first:
                raise ParseError("expected a term", tok.pos)
            if self.peek().kind == "*":
                self.take()
                first = False
                continue
            return coeff, exps

    def rational(self):
        tok = self.take("num")
        value = Fraction(tok.value)
        if self.peek().kind == "/":
            self.take()
            den_tok = self.take("num")
            if den_tok.value == 0:
                raise ParseError("zero denominator", den_tok.pos)
            value /= den_tok.value
        return value

    def exponent(self):
        tok = self.peek()
        if tok.kind == "num":
            return self.rational()
        if tok.kind == "(":
            self.take()
            v = self.rational()
            self.take(")")
            return v
        raise ParseError("expected an exponent", tok.pos)


def parse_series(text, var=None) -> PSeries:
    """Series from text; exact (infinite truncation).  The variable is
    inferred when unambiguous; constants default to `var` or 't'."""
    terms = _Parser(text).parse()
    seen = {v for _, exps in terms for v in exps}
    if len(seen) > 1:
        raise ParseError(f"series text uses several variables {sorted(seen)}",
                         0)
    name = var or (seen.pop() if seen else "t")
    acc = {}
    for coeff, exps in terms:
        stray = [v for v in exps if v != name]
        if stray:
            raise ParseError(
                f"series text uses {stray[0]!r}, expected {name!r}", 0)
        e = exps.get(name, Fraction(0))
        acc[e] = acc.get(e, Fraction(0)) + coeff
    return PSeries(name, acc)


def parse_series_group(texts, var=None):
    """Parse several series sharing one variable; constants adopt it."""
    seen = set()
    for t in texts:
        for _, exps in _Parser(t).parse():
            seen.update(exps)
    if var is None:
        if len(seen) > 1:
            raise ParseError(
                f"series use several variables {sorted(seen)}", 0)
        var = seen.pop() if seen else "x"
    return [parse_series(t, var=var) for t in texts]


def parse_poly(text) -> MPoly:
    """Multivariate polynomial from text (integer exponents)."""
    terms = _Parser(text).parse()
    vars = tuple(sorted({v for _, exps in terms for v in exps}))
    acc = {}
    for coeff, exps in terms:
        for v, e in exps.items():
            if e.denominator != 1:
                raise ParseError(
                    f"fractional exponent on {v!r} in a polynomial", 0)
        key = tuple(int(exps.get(v, 0)) for v in vars)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return MPoly(vars, acc)


def parse_upoly(text, main="y") -> UPoly:
    """Monic polynomial in `main` with exact series coefficients in the
    remaining variable."""
    terms = _Parser(text).parse()
    others = {v for _, exps in terms for v in exps if v != main}
    if len(others) > 1:
        raise ParseError(
            f"coefficients use several variables {sorted(others)}", 0)
    cvar = others.pop() if others else "x"
    d = 0
    for _, exps in terms:
        e = exps.get(main, Fraction(0))
        if e.denominator != 1:
            raise ParseError(f"fractional power of {main!r}", 0)
        d = max(d, int(e))
    if d == 0:
        raise ParseError(f"no positive power of {main!r}", 0)
    coeff_terms = [dict() for _ in range(d + 1)]
    for coeff, exps in terms:
        k = int(exps.get(main, Fraction(0)))
        e = exps.get(cvar, Fraction(0))
        tgt = coeff_terms[d - k]
        tgt[e] = tgt.get(e, Fraction(0)) + coeff
    lead = coeff_terms[0]
    if list(lead.items()) != [(Fraction(0), Fraction(1))]:
        raise ParseError(f"polynomial is not monic in {main!r}", 0)
    coeffs = [PSeries(cvar, t) for t in coeff_terms[1:]]
    return UPoly(main, coeffs)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _apply_trunc(coeffs, arg):
    """--trunc without a value truncates at the LCTKIT_TRUNC default."""
    if arg is None:
        return coeffs
    from .series import default_trunc
    bound = default_trunc() if arg == "" else Fraction(arg)
    return [s.truncated(bound) for s in coeffs]


def _load_lct_input(args):
    if args.coeffs:
        with open(args.coeffs) as fh:
            blob = json.load(fh)
        if isinstance(blob, list):
            coeffs = [PSeries.from_json(o) for o in blob]
        else:
            coeffs = [PSeries.from_json(o) for o in blob["coeffs"]]
            if args.d is None and "d" in blob:
                args.d = int(blob["d"])
            if args.c is None and "c" in blob:
                args.c = blob["c"]
    else:
        coeffs = parse_series_group(args.coeff or [])
    return _apply_trunc(coeffs, getattr(args, "trunc", None))


def _cmd_orders(args):
    h = parse_upoly(args.poly, args.var)
    np = newton_polygon(h)
    out = np.to_json()
    out["min_partial_sums"] = [
        partial_sums(h, k).to_json() for k in range(1, h.degree + 1)]
    out["max_root_order"] = max_root_order(h).to_json()
    _emit(out)
    return 0


def _cmd_diffs(args):
    h = parse_upoly(args.poly, args.var)
    depth = Fraction(args.depth) if args.depth else None
    table = diff_orders(h, depth=depth)
    _emit(table.to_json())
    return 0


def _cmd_integrality(args):
    h = parse_upoly(args.poly, args.var)
    verdict, cert = integrality_test(h)
    _emit(cert)
    return 0


def _cmd_criterion(args):
    ctx = crit.choose_p(int(args.d), Fraction(args.c))
    out = {"d": ctx.d, "c": frac_str(ctx.c), "p": ctx.p,
           "c1": frac_str(ctx.c1), "c2": frac_str(ctx.c2)}
    if ctx.d <= 3:
        ideals = crit.build_p_plus_minus(ctx)
        out["p_plus"] = ideals.p_plus.to_json()
        out["p_minus"] = ideals.p_minus.to_json()
    _emit(out)
    return 0


def _cmd_lct(args):
    coeffs = _load_lct_input(args)
    d = int(args.d) if args.d is not None else len(coeffs)
    verdict, diag = crit.lct_ge(d, Fraction(args.c), coeffs)
    diag["verdict"] = verdict
    _emit(diag)
    return 3 if verdict == UNKNOWN else 0


def _cmd_degree3(args):
    a, b = parse_series_group([args.a, args.b], var=args.series_var)
    verdict, diag = crit.degree3_test(a, b, Fraction(args.c))
    diag["verdict"] = verdict
    _emit(diag)
    return 3 if verdict == UNKNOWN else 0


def _cmd_oracle(args):
    if args.binomial:
        d, k = (int(v) for v in args.binomial)
        _emit({"lct": frac_str(orc.lct_binomial_curve(d, k)),
               "kind": "binomial"})
        return 0
    if args.vectors:
        vecs = json.loads(args.vectors)
        lct = orc.lct_monomial_ideal(vecs, n=args.n)
        _emit({"lct": frac_str(lct), "kind": "monomial"})
        return 0
    f = parse_poly(args.poly)
    lct, cert = orc.lct_plane_nondegenerate(f)
    _emit({"lct": frac_str(lct), "kind": "plane",
           "t0": frac_str(cert["t0"]),
           "hull": cert["hull"]})
    return 0


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def _trial_rng(seed, index):
    return random.Random(seed * 1_000_003 + index)


def _rand_upoly(rng, dmax=4, var="t"):
    d = rng.randint(2, dmax)
    coeffs = []
    for _ in range(d):
        terms = {}
        for _ in range(rng.randint(0, 2)):
            e = Fraction(rng.randint(1, 6))
            c = Fraction(rng.randint(-5, 5))
            if c:
                terms[e] = c
        coeffs.append(PSeries(var, terms))
    return UPoly("y", coeffs)


def _rand_w(rng, var="t"):
    terms = {Fraction(rng.randint(1, 4)): Fraction(rng.randint(-3, 3))
             for _ in range(rng.randint(0, 2))}
    return PSeries(var, terms)


def _suite_orders(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        h = _rand_upoly(rng)
        orders = root_orders(h)  # carries the internal coefficient check
        results.append({"trial": i, "ok": True,
                        "orders": [v.to_json() for v in orders]})
    return results


def _suite_partial_sums(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        h = _rand_upoly(rng)
        sums = [partial_sums(h, k).to_json() for k in range(1, h.degree + 1)]
        results.append({"trial": i, "ok": True, "partial_sums": sums})
    return results


def _suite_max_order(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        h = _rand_upoly(rng)
        results.append({"trial": i, "ok": True,
                        "max_root_order": max_root_order(h).to_json()})
    return results


def _suite_diffs(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        h = _rand_upoly(rng)
        table = diff_orders(h)  # certificate check is internal
        flat = sorted(v.sort_key() for row in table.rows for v in row[:-1])
        cert = sorted(v.sort_key() for v in table.certificate)
        ok = flat == cert
        results.append({"trial": i, "ok": ok})
    return results


def _suite_shift(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        h = _rand_upoly(rng, dmax=3)
        w = _rand_w(rng)
        vals, cert = orders_against_series(h, w)
        ok = sorted(v.sort_key() for v in vals) == \
            sorted(v.sort_key() for v in cert)
        results.append({"trial": i, "ok": ok})
    return results


def _suite_integrality(trials, seed):
    pack = crit.build_cor3_pack(2)
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        if i % 2 == 0:
            m = rng.randint(1, 10)
            ram = rng.choice([0, 1])
            h = UPoly("y", [PSeries.zero("t"),
                            PSeries.monomial("t", 2 * m + ram, -1)])
            expect = ram == 0
        else:
            roots = [PSeries("t", {Fraction(rng.randint(1, 4)):
                                   Fraction(rng.randint(-3, 3))
                                   for _ in range(rng.randint(0, 2))})
                     for _ in range(2)]
            h = UPoly.from_roots("y", roots)
            expect = True
        verdict, _ = integrality_test(h)
        divisible = crit.cor3_divisibility(pack, [h.coeff(1), h.coeff(2)])
        ok = (verdict == expect) and (divisible == verdict)
        results.append({"trial": i, "ok": ok, "integral": verdict})
    return results


def _suite_containment(trials, seed):
    results = []
    combos = [(2, Fraction(2, 3)), (2, Fraction(1)), (3, Fraction(5, 12)),
              (3, Fraction(2, 3)), (3, Fraction(11, 12))]
    per = max(1, trials // len(combos))
    for i, (d, c) in enumerate(combos):
        ctx = crit.choose_p(d, c)
        rep = crit.containment_check(ctx, samples=per, seed=seed + i)
        results.append({"trial": i, "ok": rep["pass"], "d": d,
                        "c": frac_str(c), "samples": rep["samples"]})
    return results


def _suite_perturbation(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        f = _rand_upoly(rng, dmax=3)
        N = rng.randint(8, 12)
        pert = []
        for a in f.coeffs:
            bump = PSeries("t", {Fraction(N + rng.randint(0, 2)):
                                 Fraction(rng.randint(-2, 2))})
            pert.append(a + bump)
        g = UPoly("y", pert)
        rep = perturbation_check(f, g, N)
        results.append({"trial": i, "ok": rep["pass"], "N": N})
    return results


def _suite_contact(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        h = _rand_upoly(rng, dmax=3)
        w = _rand_w(rng)
        rep = contact_order_identity_check(h, w)
        results.append({"trial": i, "ok": rep["pass"]})
    return results


def _suite_ring(trials, seed):
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)

        def rnd():
            terms = {}
            for _ in range(rng.randint(0, 4)):
                e = Fraction(rng.randint(0, 8), rng.choice([1, 1, 2]))
                c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                if c:
                    terms[e] = c
            return PSeries("t", terms)

        a, b, c = rnd(), rnd(), rnd()
        ok = ((a + b) + c == a + (b + c)) and \
            (a * (b + c) == a * b + a * c) and (a * b == b * a)
        oa, ob = a.order(), b.order()
        om = (a * b).order()
        if oa.is_exact and ob.is_exact:
            ok = ok and om == oa + ob
        results.append({"trial": i, "ok": ok})
    return results


def _suite_oracle(trials, seed):
    results = []
    i = 0
    for d in range(1, 13):
        for k in range(1, 13):
            closed = orc.lct_binomial_curve(d, k)
            mono = orc.lct_monomial_ideal([(k, 0), (0, d)])
            ok = closed == min(Fraction(1), mono)
            results.append({"trial": i, "ok": ok, "d": d, "k": k})
            i += 1
    return results


_SUITES = {
    "orders": _suite_orders,
    "partial-sums": _suite_partial_sums,
    "max-order": _suite_max_order,
    "diffs": _suite_diffs,
    "shift": _suite_shift,
    "integrality": _suite_integrality,
    "containment": _suite_containment,
    "perturbation": _suite_perturbation,
    "contact": _suite_contact,
    "ring": _suite_ring,
    "oracle": _suite_oracle,
}

# terse aliases kept for compatibility with existing invocations
_SUITES.update({
    "lem1": _suite_orders,
    "prop1": _suite_partial_sums,
    "cor4": _suite_max_order,
    "cor2": _suite_shift,
    "cor3": _suite_integrality,
    "lem11": _suite_perturbation,
    "lem31": _suite_contact,
})


def _cmd_verify(args):
    suite = _SUITES.get(args.suite)
    if suite is None:
        raise ValueError(
            f"unknown suite {args.suite!r}; available: "
            f"{', '.join(sorted(_SUITES))}")
    results = suite(args.trials, args.seed)
    results.sort(key=lambda r: r["trial"])
    failures = sum(1 for r in results if not r["ok"])
    _emit({"suite": args.suite, "seed": args.seed, "trials": len(results),
           "failures": failures, "results": results})
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="lctkit",
        description="Exact threshold toolkit for monic polynomials with "
                    "one-variable series coefficients")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orders", help="Newton polygon and root orders")
    p.add_argument("--poly", required=True)
    p.add_argument("--var", default="y")
    p.set_defaults(func=_cmd_orders)

    p = sub.add_parser("diffs", help="pairwise root-difference orders")
    p.add_argument("--poly", required=True)
    p.add_argument("--var", default="y")
    p.add_argument("--depth", default=None)
    p.set_defaults(func=_cmd_diffs)

    p = sub.add_parser("integrality", help="are all roots unramified?")
    p.add_argument("--poly", required=True)
    p.add_argument("--var", default="y")
    p.set_defaults(func=_cmd_integrality)

    p = sub.add_parser("criterion",
                       help="band data and (d <= 3) the symbolic pair")
    p.add_argument("--d", required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(func=_cmd_criterion)

    p = sub.add_parser("lct", help="decide lct(f) >= c")
    p.add_argument("--d", default=None)
    p.add_argument("--c", required=True)
    p.add_argument("--coeffs", default=None,
                   help="JSON file with the coefficient series")
    p.add_argument("--coeff", action="append",
                   help="coefficient as series text (repeatable)")
    p.add_argument("--trunc", nargs="?", const="", default=None,
                   help="truncate inputs (default bound from LCTKIT_TRUNC)")
    p.set_defaults(func=_cmd_lct)

    p = sub.add_parser("degree3", help="explicit depressed-cubic test")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--series-var", default=None)
    p.set_defaults(func=_cmd_degree3)

    p = sub.add_parser("oracle", help="independent threshold oracles")
    p.add_argument("--poly", default=None)
    p.add_argument("--vectors", default=None,
                   help="JSON list of exponent vectors")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--binomial", nargs=2, default=None, metavar=("D", "K"))
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="seeded verification suites")
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=_cmd_verify)

    return ap


def run(argv) -> int:
    ap = _build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(json.dumps(
            {"error": str(exc), "pos": exc.pos}) + "\n")
        return 2
    except TruncationError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 3
    except ConsistencyError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1
    except (ValueError, DegenerateError, LctkitError, OSError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
