"""Command-line front end.

Exit codes: 0 on success, 1 on usage errors and unreadable input, 2 on
mathematical errors and on verification failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import fmt, frac
from .blowup import regular_tower, tower_discrepancy_profile, weak_transform, weighted_blowup
from .canonize import canonize, verify_algorithm_lemmas, verify_output
from .classify import SATURATED, classify_curve, half_lemma_check, verify_saturated_lc
from .errors import MathError
from .ideals import MonomialRIdeal, WeightedHomPoly
from .suite import CHECKS, run_suite
from .surface import blowup_sequence, computing_wblowup_search
from .valuations import ToricGerm, ToricValuation, a_lc_threshold, lct_report, mld


class UsageError(Exception):
    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _load_json(text: str, what: str):
    """Parse inline JSON or, when ``text`` names an existing file, the file's contents."""
    source = "inline"
    stripped = text.strip()
    if stripped[:1] not in ("{", "[") and os.path.isfile(text):
        source = text
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON in {what}: {exc.msg}",
            source=source,
            line=exc.lineno,
            column=exc.colno,
            position=exc.pos,
        ) from None


def _ideal(text: str | None, what: str = "--ideal") -> MonomialRIdeal | None:
    if text is None:
        return None
    return MonomialRIdeal.from_json(_load_json(text, what))


def _rational_list(text: str | None, what: str):
    if text is None:
        return None
    try:
        return tuple(frac(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} expects comma-separated rationals", value=text) from None


def _rational(text: str, what: str) -> Fraction:
    try:
        return frac(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} expects a rational number", value=text) from None


def _int_list(text: str | None, what: str):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} expects comma-separated integers", value=text) from None


def _germ(args, dim: int | None) -> ToricGerm:
    if args.germ:
        germ = ToricGerm.parse(args.germ)
    elif dim is not None:
        germ = ToricGerm.smooth(dim)
    else:
        raise UsageError("--germ is required when no ideal fixes the dimension")
    return germ


def _centre(args):
    c = _int_list(args.centre, "--centre")
    if c is None:
        return None
    return tuple(i - 1 for i in c)


def _enc(x):
    return "+inf" if x is None else fmt(x)


# --------------------------------------------------------------------------
# subcommands


def cmd_mld(args):
    a = _ideal(args.ideal)
    germ = _germ(args, a.dim if a else None)
    rep = mld(germ, a, _centre(args), _rational_list(args.delta, "--delta"))
    full = rep.to_json()
    if args.full:
        return full
    return {"value": full["value"], "witness": full["witness"], "certified": full["certified"]}


def cmd_lct(args):
    b = _ideal(args.ideal)
    if b is None:
        raise UsageError("lct needs --ideal")
    germ = _germ(args, b.dim)
    base = _ideal(args.base, "--base")
    rep = lct_report(germ, base, b, _rational_list(args.delta, "--delta"))
    return {"lct": _enc(rep.value), "newton": _enc(rep.newton_value), "agree": rep.agree}


def cmd_threshold(args):
    b = _ideal(args.ideal)
    if b is None:
        raise UsageError("threshold needs --ideal")
    germ = _germ(args, b.dim)
    base = _ideal(args.base, "--base")
    target = _rational(args.target, "--target")
    t = a_lc_threshold(germ, base, b, target, _centre(args), _rational_list(args.delta, "--delta"))
    return {"threshold": fmt(t), "target": fmt(target)}


def cmd_blowup(args):
    w = _rational_list(args.w, "--w")
    a = _ideal(args.ideal)
    germ = _germ(args, len(w))
    bl = weighted_blowup(germ, w)
    out = bl.to_json()
    if a is not None:
        out["pullbacks"] = [t.to_json() for t in weak_transform(bl, a, _rational_list(args.delta, "--delta"))]
    return out


def cmd_tower(args):
    w = _rational_list(args.w, "--w")
    germ = ToricGerm.smooth(len(w))
    a = _ideal(args.ideal)
    rec = tower_discrepancy_profile(germ, w, a) if a is not None else regular_tower(germ, w)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(rec.to_dot())
    if args.full or a is not None:
        return rec.to_json()
    return {"tower": rec.to_json()["tower"]}


def cmd_surface(args):
    a = _ideal(args.ideal)
    if a is None:
        raise UsageError("surface-mld needs --ideal")
    seq = blowup_sequence(a)
    # search on the rescaled ideal so both answers refer to the same pair
    (w1, w2), rep = computing_wblowup_search(seq.ideal)
    out = seq.to_json()
    out["weighted_blowup"] = [w1, w2]
    out["mld_report"] = rep.to_json()
    return out


def cmd_canonize(args):
    a = _ideal(args.ideal)
    if a is None:
        raise UsageError("canonize needs --ideal")
    q = _rational(args.q, "--q")
    eps = _rational(args.epsilon, "--epsilon")
    trace, ledger = canonize(a, q, eps, audit=args.audit)
    lemmas = verify_algorithm_lemmas(trace)
    out = {
        "process": trace.outcome.process,
        "length": len(trace.steps),
        "mld": fmt(trace.mld),
        "divisor": trace.to_json()["divisor"],
        "lemmas": lemmas.to_json(),
        "output_check": verify_output(trace),
        "ledger": ledger.to_json(),
    }
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(dumps({"trace": trace.to_json(), "ledger": ledger.to_json()}) + "\n")
    return out


def cmd_classify(args):
    if args.half is not None:
        return half_lemma_check(args.w1, args.w2, _rational(args.half, "--half"), _rational(args.b, "--b")).to_json()
    f = None
    if args.poly is not None:
        data = _load_json(args.poly, "--poly")
        if isinstance(data, dict) and "terms" in data:
            f = WeightedHomPoly.make(data.get("weights", [args.w1, args.w2, 1]), data["terms"])
        else:
            f = WeightedHomPoly.make([args.w1, args.w2, 1], data)
    case = classify_curve((args.w1, args.w2), f)
    out = case.to_json()
    if case.tag == SATURATED:
        out["lc_check"] = verify_saturated_lc(args.w1, args.w2).to_json()
    return out


def cmd_suite(args):
    only = [x for x in args.only.split(",") if x] if args.only else None
    if only:
        bad = [x for x in only if x not in CHECKS]
        if bad:
            raise UsageError("unknown check", unknown=bad, available=list(CHECKS))
    return run_suite(args.seed, args.count, only)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricmld", description="Exact minimal log discrepancies of toric pairs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, ideal=True, germ=True):
        if germ:
            sp.add_argument("--germ", help="smooth2, smooth3 or 1/r(a1,...,ad)")
        if ideal:
            sp.add_argument("--ideal", help="R-ideal as inline JSON or a JSON file")
        sp.add_argument("--delta", help="boundary coefficients, comma-separated")
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("mld", help="minimal log discrepancy")
    common(sp)
    sp.add_argument("--centre", help="1-based coordinates vanishing on the centre")
    sp.add_argument("--full", action="store_true", help="include certificate details")
    sp.set_defaults(func=cmd_mld)

    sp = sub.add_parser("lct", help="lc threshold of --ideal against --base")
    common(sp)
    sp.add_argument("--base", help="base R-ideal")
    sp.set_defaults(func=cmd_lct)

    sp = sub.add_parser("threshold", help="exponent at which the mld reaches --target")
    common(sp)
    sp.add_argument("--base", help="base R-ideal")
    sp.add_argument("--target", default="0")
    sp.add_argument("--centre", help="1-based coordinates vanishing on the centre")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("blowup", help="weighted blow-up charts and pull-backs")
    common(sp)
    sp.add_argument("--w", required=True, help="weight vector, comma-separated")
    sp.set_defaults(func=cmd_blowup)

    sp = sub.add_parser("tower", help="regular tower of smooth blow-ups")
    common(sp, germ=False)
    sp.add_argument("--w", required=True, help="weight vector, comma-separated")
    sp.add_argument("--dot", help="also write the tower as a DOT graph to this file")
    sp.add_argument("--full", action="store_true")
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("surface-mld", help="blow-up sequence reaching the mld on a smooth surface")
    common(sp, germ=False)
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("canonize", help="construct a canonical pair by crepant contractions")
    common(sp, germ=False)
    sp.add_argument("--q", required=True)
    sp.add_argument("--epsilon", required=True)
    sp.add_argument("--trace", help="write the full trace JSON here")
    sp.add_argument("--audit", action="store_true", help="check crepancy at every step")
    sp.set_defaults(func=cmd_canonize)

    sp = sub.add_parser("classify", help="normal form of a crepant divisor centre")
    sp.add_argument("--w1", type=int, required=True)
    sp.add_argument("--w2", type=int, required=True)
    sp.add_argument("--poly", help="weighted polynomial as JSON (inline or file); omit for the exceptional divisor")
    sp.add_argument("--half", help="run the one-half inequality chain at this t instead")
    sp.add_argument("--b", default="0", help="boundary coefficient for --half")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify-suite", help="run the named invariant checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--only", help="comma-separated check names: " + ",".join(CHECKS))
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_suite)
    return p


def _emit_error(payload: dict) -> None:
    sys.stderr.write(dumps(payload) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        _emit_error({"error": "usage", "message": str(exc), "details": exc.details})
        return 1
    except MathError as exc:
        _emit_error(exc.to_json())
        return 2
    text = dumps(result) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify-suite" and not result["passed"]:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
