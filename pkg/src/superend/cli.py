"""Command-line interface: ``superend {report,sweep,reduce,galois,cyclotomic}``.

Exit codes: 0 success, 1 internal error, 2 hypothesis or domain failure,
3 sweep counterexample, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .exactalg import PrimePower, UniPoly, cyclotomic_prime_power, pq_polynomial
from .galoischeck import certify
from .numberfield import NonInvertible, degree_reduction
from .report import (
    EXIT_COUNTEREXAMPLE,
    EXIT_HYPOTHESIS,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_USAGE,
    build_report,
)
from .sweeps import MIN_N, SWEEP_KINDS, run_sweep

log = logging.getLogger("superend")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _poly(text: str) -> list[int]:
    try:
        coeffs = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed coefficient list {text!r}") from None
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        raise argparse.ArgumentTypeError("polynomial must be nonconstant")
    return coeffs


def _prime_power(text: str) -> PrimePower:
    try:
        return PrimePower.from_q(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime power") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superend", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("report", help="all invariants of y^q = f(x)")
    p.add_argument("--poly", type=_poly, required=True, help="integer coefficients, highest degree first")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--prime-budget", type=_positive, default=200)
    p.add_argument("--timing", action="store_true", help="append wall-clock timing")
    fmt(p)

    p = sub.add_parser("sweep", help="exhaustive verification over (n, q)")
    p.add_argument("kind", choices=SWEEP_KINDS)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    fmt(p)

    p = sub.add_parser("reduce", help="degree reduction for q | deg f")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--q", type=_prime_power, required=True)
    fmt(p)

    p = sub.add_parser("galois", help="certify Gal(f) = S_n or A_n")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--prime-budget", type=_positive, default=200)
    fmt(p)

    p = sub.add_parser("cyclotomic", help="P_q(t) and its cyclotomic factors")
    p.add_argument("--q", type=_prime_power, required=True)
    fmt(p)
    return parser


# ---------------------------------------------------------------------------
# rendering


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key in sorted(obj):
            yield from _flatten(obj[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for k, item in enumerate(obj):
            yield from _flatten(item, f"{prefix}[{k}]")
    else:
        yield prefix, obj


def render_text(doc: dict) -> str:
    """One ``key = json-value`` line per leaf, sorted; parseable back to the JSON."""
    return "\n".join(f"{k} = {json.dumps(v, sort_keys=True)}" for k, v in _flatten(doc)) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return render_text(doc)


# ---------------------------------------------------------------------------
# commands


def cmd_report(args) -> tuple[dict, int]:
    return build_report(args.poly, args.q.q, args.prime_budget, timing=args.timing)


def cmd_sweep(args) -> tuple[dict, int]:
    if args.n_max < MIN_N[args.kind] or args.q_max < 2:
        raise UsageError(f"sweep {args.kind} needs --n-max >= {MIN_N[args.kind]} and --q-max >= 2")
    result = run_sweep(args.kind, args.n_max, args.q_max, args.jobs)
    doc = result.to_dict()
    doc["summary"] = result.summary()
    if not result.ok:
        for ce in result.counterexamples:
            log.error("counterexample n=%d q=%d: %s", ce["n"], ce["q"], ce["failure"])
        return doc, EXIT_COUNTEREXAMPLE
    return doc, EXIT_OK


def cmd_reduce(args) -> tuple[dict, int]:
    f = UniPoly.from_high(args.poly)
    if f.degree % args.q.q:
        return {"error": f"q={args.q.q} does not divide deg f = {f.degree}"}, EXIT_HYPOTHESIS
    try:
        res = degree_reduction(f.monic(), args.q)
    except NonInvertible as exc:
        return {"error": f"f is reducible: factor {exc.factor}"}, EXIT_HYPOTHESIS
    doc = res.to_dict()
    doc["h1"] = str(res.h1)
    doc["reconstructs"] = res.reconstructs()
    return doc, EXIT_OK if res.h1_separable else EXIT_HYPOTHESIS


def cmd_galois(args) -> tuple[dict, int]:
    f = UniPoly.from_high(args.poly)
    try:
        cert = certify(f, args.prime_budget)
    except ValueError as exc:
        return {"error": str(exc)}, EXIT_HYPOTHESIS
    return cert.to_dict(), EXIT_OK


def cmd_cyclotomic(args) -> tuple[dict, int]:
    pp = args.q
    factors = [cyclotomic_prime_power(pp, i) for i in range(1, pp.r + 1)]
    product = UniPoly([1])
    for phi in factors:
        product = product * phi
    pq = pq_polynomial(pp)
    return {
        "q": pp.q,
        "P_q": str(pq),
        "degree": pq.degree,
        "factors": [{"i": i, "conductor": pp.p**i, "Phi": str(phi), "degree": phi.degree}
                    for i, phi in enumerate(factors, start=1)],
        "product_matches": product == pq,
    }, EXIT_OK


COMMANDS = {
    "report": cmd_report,
    "sweep": cmd_sweep,
    "reduce": cmd_reduce,
    "galois": cmd_galois,
    "cyclotomic": cmd_cyclotomic,
}


def _configure_logging():
    level = os.environ.get("SUPEREND_LOG", "error").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"superend: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    sys.stdout.write(render(doc, args.format))
    if code == EXIT_HYPOTHESIS:
        for msg in doc.get("notes", []) or [doc.get("error", "")]:
            print(f"superend: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
