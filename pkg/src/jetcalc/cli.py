"""Command line front end: ``jetcalc decompose | chi | report``.

Bundle expressions::

    bundle  := term ('+' term)*
    term    := factor (('⊗' | '(x)' | '*') factor)*      at most one non-line factor
    factor  := 'schur(' int (',' int)* ')' ':' atom
             | atom | 'dual(' atom ')' | 'O(' twist ')'
    atom    := cotangent | tangent | log-cotangent | ambient-cotangent | ambient-tangent
    twist   := integer, optionally with a multiple of d: 3, -2, d-5, 2d+1

Varieties: ``p3``, ``p4``, ``hypersurface:n=4[,d=5]``, ``surface[:d=5]``
(a hypersurface in P^3), ``logpair:n=3[,d=5]``.  ``--d`` sets the degree too.

Exit codes: 0 success, 1 usage, 2 computation error, 3 a reproduced value
does not match its published value.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import bounds, jets, vanish
from .cache import ENV_VAR, default_cache_dir
from .chow import (
    Atom, BundleExpr, Dual, HypersurfaceIn, LineBundle, LogPair, ProjectiveSpace, Schur, Sum, Twist,
    VarietySpec, euler_characteristic,
)
from .combinat import schur_rank
from .poly import Poly

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ParseError(UsageError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")
        self.pos = pos
        self.message = message


# --------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"\s*(schur|dual|O|[a-z]+(?:-[a-z]+)*|-?\d+|⊗|\(x\)|[(),:+*-])")
_ATOMS = {a.value: a for a in Atom}
_TWIST = re.compile(r"\s*([+-]?\d*)\s*(\*?\s*d)?\s*(?:([+-])\s*(\d+))?\s*$")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def peek(self) -> str | None:
        m = _TOKEN.match(self.text, self.pos)
        return m.group(1) if m else None

    def take(self, expected: str | None = None) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            self.fail("unexpected character" if self.text[self.pos:].strip() else "unexpected end of input")
        tok = m.group(1)
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, found {tok!r}")
        self.pos = m.end()
        return tok

    def at_end(self) -> bool:
        return not self.text[self.pos:].strip()

    def skip_ws(self) -> int:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.pos

    def parse(self) -> BundleExpr:
        terms = [self.term()]
        while not self.at_end() and self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        if not self.at_end():
            self.skip_ws()
            self.fail("trailing input")
        return terms[0] if len(terms) == 1 else Sum(terms)

    def term(self) -> BundleExpr:
        base: BundleExpr | None = None
        t = dm = 0
        while True:
            start = self.skip_ws()
            f = self.factor()
            if isinstance(f, LineBundle):
                t, dm = t + f.t, dm + f.dmult
            elif base is not None:
                self.pos = start
                self.fail("only one non-line factor per tensor product is supported")
            else:
                base = f
            if not self.at_end() and self.peek() in ("⊗", "(x)", "*"):
                self.take()
                continue
            break
        if base is None:
            return LineBundle(t, dm)
        return Twist(base, t, dm) if (t or dm) else base

    def atom(self) -> Atom:
        start = self.pos
        tok = self.take()
        if tok not in _ATOMS:
            self.pos = start
            self.fail(f"unknown bundle {tok!r}")
        return _ATOMS[tok]

    def factor(self) -> BundleExpr:
        tok = self.peek()
        if tok == "schur":
            self.take()
            self.take("(")
            weight = [self.integer()]
            while self.peek() == ",":
                self.take(",")
                weight.append(self.integer())
            self.take(")")
            self.take(":")
            at = self.atom_or_dual()
            try:
                return Schur(weight, at)
            except ValueError as exc:
                self.fail(str(exc))
        if tok == "O":
            self.take()
            self.take("(")
            close = self.text.find(")", self.pos)
            if close < 0:
                self.fail("missing ')'")
            m = _TWIST.match(self.text[self.pos:close])
            if not m or not (m.group(1) not in ("", "+", "-") or m.group(2)):
                self.fail("bad twist")
            self.pos = close + 1
            return LineBundle(*_twist_value(m))
        return self.atom_or_dual()

    def atom_or_dual(self):
        if self.peek() == "dual":
            self.take()
            self.take("(")
            a = self.atom()
            self.take(")")
            return Dual(a)
        return self.atom()

    def integer(self) -> int:
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.integer()
        start = self.pos
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            self.pos = start
            self.fail(f"expected an integer, found {tok!r}")


def _twist_value(m: re.Match) -> tuple[int, int]:
    coef, dpart, sign, const = m.groups()
    if dpart:
        dm = -1 if coef == "-" else 1 if coef in ("", "+") else int(coef)
        t = 0
        if const:
            t = int(const) if sign == "+" else -int(const)
        return t, dm
    return int(coef), 0


def parse_bundle(text: str) -> BundleExpr:
    return _Parser(text).parse()


def parse_variety(text: str, degree: int | None = None) -> VarietySpec:
    text = text.strip().lower()
    name, _, rest = text.partition(":")
    opts = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise UsageError(f"bad variety option {item!r}")
        opts[key.strip()] = val.strip()
    try:
        if "d" in opts and opts["d"] != "d":
            degree = int(opts["d"])
        n = int(opts["n"]) if "n" in opts else None
        if re.fullmatch(r"p\d+", name):
            return ProjectiveSpace(int(name[1:]))
        if name == "hypersurface":
            return HypersurfaceIn(n or 4, degree)
        if name == "surface":
            return HypersurfaceIn(3, degree)
        if name == "logpair":
            return LogPair(degree, n or 3)
    except ValueError as exc:
        raise UsageError(f"bad variety {text!r}: {exc}") from exc
    raise UsageError(f"unknown variety {text!r}")


# --------------------------------------------------------------------------
# rendering


def rational_json(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def render_decomposition(dec: jets.JetDecomposition, fmt: str) -> str:
    rows = []
    for gamma, lam in dec:
        w = lam.padded(3)
        rows.append((gamma, w, schur_rank(w, 3), bounds.g_weight(lam)))
    if fmt == "json":
        return _dump({
            "order": dec.order,
            "m": dec.m,
            "count": len(rows),
            "pieces": [
                {"gamma": g, "lambda": list(w), "rank": r, "g": rational_json(gw)} for g, w, r, gw in rows
            ],
        })
    if fmt == "csv":
        return _csv([("gamma", "l1", "l2", "l3", "rank", "g")] + [(g, *w, r, str(gw)) for g, w, r, gw in rows])
    lines = [f"order {dec.order}, m = {dec.m}: {len(rows)} pieces"]
    lines += [f"  gamma={g}  lambda=({w[0]},{w[1]},{w[2]})  rank={r}  g={gw}" for g, w, r, gw in rows]
    return "\n".join(lines) + "\n"


def render_chi(v: VarietySpec, expr: BundleExpr, value: Poly, fmt: str) -> str:
    if fmt == "json":
        return _dump({"variety": v.canonical(), "bundle": str(expr), "chi": value.to_json()})
    if fmt == "csv":
        rows = [("variety", "bundle", "chi"), (v.canonical(), str(expr), str(value))]
        return _csv(rows)
    return f"chi({v.canonical()}, {expr}) = {value}\n"


# --------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class ReportEntry:
    claim_id: str
    description: str
    published: str
    computed: str
    status: str  # match | mismatch | verified-sufficiency | finding


def _compare(claim: str, desc: str, published, computed) -> ReportEntry:
    status = "match" if published == computed else "mismatch"
    return ReportEntry(claim, desc, str(published), str(computed), status)


D = Poly.var("d")


def _claim_quartic(ctx):
    lead = ctx.leading(False)
    pub = D * (389 * D ** 3 - 20739 * D ** 2 + 185559 * D - 358873) * Fraction(1, 81648000000)
    return [_compare("quartic", "m^9 coefficient of chi of the order 3 jet bundle on X in P^4", pub, lead)]


def _claim_log_cubic(ctx):
    lead = ctx.leading(True)
    pub = (389 * D ** 3 * Fraction(1, 81648000000) - 6913 * D ** 2 * Fraction(1, 34020000000)
           + 6299 * D * Fraction(1, 4252500000) - Fraction(1513, 63787500))
    return [_compare("log-cubic", "m^9 coefficient of chi of the order 3 log jet bundle on P^3", pub, lead)]


def _claim_euler43(ctx):
    return [_compare("euler-43", "degree from which the Euler quartic stays positive", 43,
                     bounds.threshold_euler_quartic())]


def _claim_c(ctx):
    return [_compare("C", "m^9 coefficient of the sum of g over the order 3 pieces", bounds.PUBLISHED_C, ctx.c())]


def _threshold(ctx, log: bool, claim: str, published: int) -> list[ReportEntry]:
    rep = bounds.threshold_order3(log, leading=ctx.leading(log), c=ctx.c())
    ok = rep.verified and rep.leading_positive
    kind = "log pair in P^3" if log else "X in P^4"
    return [
        ReportEntry(claim, f"Delta(d) > 0 for d in [{published}, {rep.verified_to}], {kind}",
                    f"d >= {published}", f"positive on [{rep.verified_from}, {rep.verified_to}]" if ok
                    else "not positive on the whole range",
                    "verified-sufficiency" if ok else "mismatch"),
        ReportEntry(f"{claim}-minimal", f"smallest d from which Delta(d) stays positive, {kind}",
                    f"d >= {published}", str(rep.minimal_found), "finding"),
    ]


def _claim_h2sym(ctx):
    pub = D ** 2 * Fraction(1, 8) - D * Fraction(7, 24)
    return [_compare("h2-sym", "m^5 coefficient of chi(S^m Omega_X) = h^2 for m > 6", pub,
                     vanish.h2_symmetric_leading())]


def _claim_surface15(ctx):
    coeff, thr = bounds.surface_2jet_bound()
    return [_compare("surface-15", f"13c1^2 - 9c2 = {coeff} stays positive from", 15, thr)]


CLAIMS: dict[str, Callable] = {
    "quartic": _claim_quartic,
    "euler-43": _claim_euler43,
    "C": _claim_c,
    "threshold-97": lambda ctx: _threshold(ctx, False, "threshold-97", 97),
    "threshold-92": lambda ctx: _threshold(ctx, True, "threshold-92", 92),
    "h2-sym": _claim_h2sym,
    "surface-15": _claim_surface15,
    "log-cubic": _claim_log_cubic,
}
ALIASES = {"thresholds": ["threshold-97", "threshold-92"], "43": ["euler-43"], "97": ["threshold-97"],
           "92": ["threshold-92"], "15": ["surface-15"]}


class _Context:
    """Shares fitted values between claims."""

    def __init__(self, jobs: int):
        self.jobs = jobs
        self._lead: dict[bool, Poly] = {}
        self._c: Fraction | None = None

    def leading(self, log: bool) -> Poly:
        if log not in self._lead:
            v = LogPair() if log else HypersurfaceIn(4)
            self._lead[log] = jets.fit_leading(v, 3, jobs=self.jobs)[1]
        return self._lead[log]

    def c(self) -> Fraction:
        if self._c is None:
            self._c = bounds.constant_C(jobs=self.jobs)
        return self._c


def select_claims(text: str | None) -> list[str]:
    if not text:
        return list(CLAIMS)
    out: list[str] = []
    for item in text.split(","):
        item = item.strip()
        names = ALIASES.get(item, [item])
        for n in names:
            if n not in CLAIMS:
                raise UsageError(f"unknown claim {item!r}; known: {', '.join(list(CLAIMS) + list(ALIASES))}")
            if n not in out:
                out.append(n)
    return out


def build_report(claims: Sequence[str], jobs: int = 1) -> list[ReportEntry]:
    ctx = _Context(jobs)
    entries: list[ReportEntry] = []
    for name in claims:
        entries.extend(CLAIMS[name](ctx))
    return entries


def render_report(entries: Sequence[ReportEntry], fmt: str) -> str:
    if fmt == "json":
        return _dump({"entries": [
            {"claimId": e.claim_id, "description": e.description, "publishedValue": e.published,
             "computedValue": e.computed, "status": e.status}
            for e in entries
        ]})
    if fmt == "csv":
        return _csv([("claimId", "status", "publishedValue", "computedValue", "description")]
                    + [(e.claim_id, e.status, e.published, e.computed, e.description) for e in entries])
    lines = []
    for e in entries:
        lines.append(f"[{e.status}] {e.claim_id}: {e.description}")
        lines.append(f"    published: {e.published}")
        lines.append(f"    computed:  {e.computed}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# entry point


class _Parser_(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for lattice sums")
    common.add_argument("--cache-dir", default=None,
                        help=f"on-disk cache (default: ${ENV_VAR} or {default_cache_dir()})")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the disk cache")

    p = _Parser_(prog="jetcalc", description=__doc__.split("\n\n")[0],
                 epilog=__doc__.split("\n\n", 1)[1], formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser_)

    dp = sub.add_parser("decompose", parents=[common], help="graded pieces of a jet bundle")
    dp.add_argument("--order", type=int, choices=(2, 3), default=3)
    dp.add_argument("--m", type=int, required=True)

    cp = sub.add_parser("chi", parents=[common], help="Euler characteristic of a bundle",
                        epilog=__doc__.split("\n\n")[1], formatter_class=argparse.RawDescriptionHelpFormatter)
    cp.add_argument("--variety", default="hypersurface:n=4")
    cp.add_argument("--bundle", help="bundle expression")
    cp.add_argument("--d", type=int, default=None, help="numeric degree (default: symbolic d)")
    cp.add_argument("--order", type=int, choices=(2, 3), help="jet bundle of this order instead of --bundle")
    cp.add_argument("--m", type=int, help="weighted degree for --order")
    cp.add_argument("--log", action="store_true", help="use the log pair (P^3, X_d) for --order")

    rp = sub.add_parser("report", parents=[common], help="reproduce the published constants")
    rp.add_argument("--claims", default=None,
                    help=f"comma separated subset of: {', '.join(list(CLAIMS) + list(ALIASES))}")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = sys.stdout
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if not args.no_cache:
            jets.set_cache_dir(args.cache_dir or default_cache_dir())
        if args.command == "decompose":
            if args.m < 1:
                raise UsageError("--m must be at least 1")
            out.write(render_decomposition(jets.decompose(args.order, args.m), args.format))
            return EXIT_OK
        if args.command == "chi":
            if args.order is not None:
                if args.m is None or args.m < 1:
                    raise UsageError("--order needs --m >= 1")
                v = parse_variety(args.variety, args.d)
                if args.log:
                    v = LogPair(v.degree)
                value = jets.chi_jets(v, args.order, args.m)
                label: object = f"jets(order={args.order}, m={args.m})"
            else:
                if not args.bundle:
                    raise UsageError("give --bundle or --order/--m")
                v = parse_variety(args.variety, args.d)
                expr = parse_bundle(args.bundle)
                value = euler_characteristic(v, expr)
                label = expr
            out.write(render_chi(v, label, value, args.format))
            return EXIT_OK
        entries = build_report(select_claims(args.claims), args.jobs)
        out.write(render_report(entries, args.format))
        return EXIT_MISMATCH if any(e.status == "mismatch" for e in entries) else EXIT_OK
    except UsageError as exc:
        print(f"jetcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"jetcalc: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
