"""Command-line frontend: ``chebknot poly|factor|critical|sample|diagram|scan``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chebyshev import cheb_T, cheb_V, factor_T, factor_V, minimal_cos_poly, pi_poly
from .critical import (CertificationError, CriticalSet, InvalidParams, KnotParams,
                       critical_set, sample_points)
from .diagram import CriticalPhase, KnotDiagram, build_diagram
from .interval import format_dyadic
from .invariants import (DEFAULT_CUTOFF, ConventionError, CutoffExceeded,
                         LaurentPolynomial, determinant, jones, two_bridge_fraction)
from .render import render

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_CUTOFF = 3
EXIT_CERT = 4

log = logging.getLogger("chebknot")


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _acc(e: int) -> Fraction:
    return Fraction(1, 1 << e)


def _invariants(d: KnotDiagram, cutoff: int) -> tuple[LaurentPolynomial, dict]:
    v = jones(d, cutoff)
    det = determinant(d, cutoff)
    out = {"jones": str(v), "determinant": det}
    if d.params.original[0] in (3, 4):
        out["fraction"] = str(two_bridge_fraction(d, det))
    return v, out


def invariants(d: KnotDiagram, cutoff: int = DEFAULT_CUTOFF) -> dict:
    """Jones, determinant and (for a in {3, 4}) the two-bridge fraction of ``d``.

    Raises CutoffExceeded past ``cutoff`` crossings and ConventionError when the
    cross-checks disagree.
    """
    return _invariants(d, cutoff)[1]


@dataclass
class ScanReport:
    params: KnotParams
    summary: dict
    samples: list[dict]
    classes: dict[str, list[int]]
    mirror_classes: dict[str, list[int]]
    unknots: list[int] = field(default_factory=list)
    unavailable: list[int] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def nontrivial(self) -> int:
        return sum(len(v) for v in self.classes.values())

    def to_json(self, with_timings: bool = False) -> dict:
        a, b, c = self.params.original
        doc = {
            "params": {"a": a, "b": b, "c": c},
            "critical": self.summary,
            "samples": self.samples,
            "classes": self.classes,
            "mirror_classes": self.mirror_classes,
            "class_count": len(self.classes),
            "mirror_class_count": len(self.mirror_classes),
            "nontrivial_samples": self.nontrivial,
            "unknot_samples": self.unknots,
            "unavailable_samples": self.unavailable,
        }
        if with_timings:
            doc["timings"] = self.timings
        return doc

    def dumps(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_json(with_timings), indent=1, sort_keys=True) + "\n"


def scan(p: KnotParams, acc: Fraction = _acc(64), max_crossings: int = DEFAULT_CUTOFF,
         cs: Optional[CriticalSet] = None) -> ScanReport:
    """Every knot type of ``C(a,b,c,phi)``: one sample per regular interval."""
    t0 = time.perf_counter()
    if cs is None:
        cs = critical_set(p, acc)
    t1 = time.perf_counter()
    phis = sample_points(cs)
    records = []
    classes: dict[str, list[int]] = {}
    mirror: dict[str, list[int]] = {}
    unknots, unavailable = [], []
    for n, phi in enumerate(phis):
        d = build_diagram(p, phi, cs)
        rec = {"index": n, "phi": _q(phi), "crossings": d.size, "gauss": d.gauss_string()}
        try:
            v, inv = _invariants(d, max_crossings)
        except CutoffExceeded:
            rec["invariants"] = None
            unavailable.append(n)
            records.append(rec)
            continue
        rec.update(inv)
        records.append(rec)
        if v.is_one():
            unknots.append(n)
            continue
        key = str(v)
        classes.setdefault(key, []).append(n)
        mkey = min(key, str(v.invert()))
        mirror.setdefault(mkey, []).append(n)
    t2 = time.perf_counter()
    summary = {
        "distinct": cs.distinct_count,
        "with_multiplicity": cs.total_multiplicity,
        "zero_multiplicity": cs.multiplicity_at_zero(),
        "degree_bound": p.degree_bound,
    }
    return ScanReport(p, summary, records, classes, mirror, unknots, unavailable,
                      {"critical": round(t1 - t0, 3), "diagrams": round(t2 - t1, 3)})


# -- subcommands -----------------------------------------------------------

def _poly_text(poly) -> str:
    return " ".join(str(c) for c in poly.coeffs)


def cmd_poly(args) -> int:
    n = args.n
    if args.family == "T":
        poly = cheb_T(n)
    elif args.family == "V":
        poly = cheb_V(n)
    elif args.family == "M":
        poly = minimal_cos_poly(n)
    else:
        poly = pi_poly(n)
    print(_poly_text(poly))
    return EXIT_OK


def cmd_factor(args) -> int:
    if args.family == "T":
        factors = factor_T(args.n)
    else:
        content, factors = factor_V(args.n)
        if content != 1:
            print(content)
    for f in factors:
        print(_poly_text(f))
    return EXIT_OK


def _params(args) -> KnotParams:
    return KnotParams.make(args.a, args.b, args.c)


def cmd_critical(args) -> int:
    cs = critical_set(_params(args), _acc(args.acc))
    for r in cs.roots:
        print(f"{format_dyadic(r.interval.lo)} {format_dyadic(r.interval.hi)} mult={r.multiplicity}")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(cs.dumps() + "\n")
    return EXIT_OK


def cmd_sample(args) -> int:
    cs = critical_set(_params(args), _acc(args.acc))
    for phi in sample_points(cs):
        print(_q(phi))
    return EXIT_OK


def cmd_diagram(args) -> int:
    p = _params(args)
    d = build_diagram(p, args.phi)
    if args.format == "json":
        text = d.dumps(invariants(d, args.max_crossings)) + "\n"
    else:
        text = render(d, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_scan(args) -> int:
    report = scan(_params(args), _acc(args.acc), args.max_crossings)
    text = report.dumps(args.timings)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("scan timings: %s", report.timings)
    return EXIT_OK


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chebknot", description="Chebyshev knot diagrams and critical phases")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("poly", help="print T_n, V_n, M_n or Pi_n (lowest degree first)")
    sp.add_argument("family", choices=["T", "V", "M", "Pi"])
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("factor", help="irreducible factors of T_n or V_n")
    sp.add_argument("family", choices=["T", "V"])
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_factor)

    def abc(sp):
        sp.add_argument("a", type=int)
        sp.add_argument("b", type=int)
        sp.add_argument("c", type=int)

    sp = sub.add_parser("critical", help="certified critical phases")
    abc(sp)
    sp.add_argument("--acc", type=int, default=64, help="interval width 2^-E (default 64)")
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(func=cmd_critical)

    sp = sub.add_parser("sample", help="simplest rational in each regular interval")
    abc(sp)
    sp.add_argument("--acc", type=int, default=64)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("diagram", help="diagram at a rational phase")
    abc(sp)
    sp.add_argument("--phi", required=True, type=_rational, help="rational p/q")
    sp.add_argument("--format", choices=["json", "svg", "ascii"], default="json")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--max-crossings", type=int, default=DEFAULT_CUTOFF)
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("scan", help="all knot types over every regular interval")
    abc(sp)
    sp.add_argument("--acc", type=int, default=64)
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--max-crossings", type=int, default=DEFAULT_CUTOFF)
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    sp.set_defaults(func=cmd_scan)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InvalidParams, CriticalPhase, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except CutoffExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CUTOFF
    except (CertificationError, ConventionError) as e:
        print(f"certification failure: {e}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
