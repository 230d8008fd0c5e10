"""Command line interface.  Every command prints one JSON document.

Exit codes: 0 success, 1 domain error (bad expression, failed check),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chains, classify, degree, dsl, equivariant, space
from .graded import GradedError, euler_char, total_rank


class DomainFailure(Exception):
    """A command ran but its verdict is negative (exit code 1)."""

    def __init__(self, doc: dict):
        super().__init__(doc.get("error", "check failed"))
        self.doc = doc


def _poly_doc(p) -> dict:
    return {str(d): r for d, r in p.terms}


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("yes", "y", "true", "1"):
        return True
    if low in ("no", "n", "false", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected yes/no, got {text!r}")


def report_doc(rep: equivariant.FixedSetReport) -> dict:
    return {
        "total": dsl.to_text(rep.total),
        "fixed": dsl.to_text(rep.fixed),
        "rank_total": rep.rank_total,
        "rank_fixed": rep.rank_fixed,
        "chi_total": rep.chi_total,
        "chi_fixed": rep.chi_fixed,
        "tnhz": rep.tnhz,
    }


def gallery_doc(g: equivariant.GalleryResult) -> dict:
    return {
        "case": g.case_id,
        "params": g.params,
        "action": dsl.to_text(g.action),
        "report": report_doc(g.report),
        "claimed": str(g.claimed),
        "observed": str(g.observed),
        "expected_tnhz": g.expected_tnhz,
        "total_type": g.total_type,
        "expected_total_type": g.expected_total_type,
        "in_classification": g.in_classification,
        "passed": g.passed,
    }


# --- commands ------------------------------------------------------------------

def cmd_cohomology(args) -> dict:
    p = space.eval_poincare(dsl.parse_space(args.expr))
    return {"ranks": _poly_doc(p), "total_rank": total_rank(p), "chi": euler_char(p)}


def cmd_euler(args) -> dict:
    return {"chi": euler_char(space.eval_poincare(dsl.parse_space(args.expr)))}


def cmd_ring(args) -> dict:
    e = dsl.parse_space(args.expr)
    if isinstance(e, space.Toda):
        pres = space.toda_ring(e.n, e.a, e.b)
        iso = str(space.classify_type(e.n, e.a, e.b))
    elif isinstance(e, space.MappingCone):
        cr = space.mapping_cone_ring(e.n, e.hopf)
        pres, iso = cr.presentation, cr.iso_class
    elif isinstance(e, space.PTrunc):
        pres, iso = space.truncated_ring(e.h, e.n), f"P{e.h}({e.n})"
    else:
        raise space.ValidationError("ring presentations exist for toda(...), cone(...) and P(...)")
    doc = pres.describe()
    doc["iso_class"] = iso
    doc["additive_ranks"] = _poly_doc(pres.additive_ranks())
    return doc


def cmd_classify_type(args) -> dict:
    label = space.classify_type(args.n, args.a, args.b)
    return {"label": label.kind, "n": label.n, "model": dsl.to_text(label.model())}


def cmd_fixed_set(args) -> dict:
    a = dsl.parse_action(args.expr)
    f = equivariant.fixed_set(a)
    p = space.eval_poincare(f)
    doc = {"fixed": dsl.to_text(f), "ranks": _poly_doc(p)}
    try:
        doc["type"] = str(classify.fixed_set_type(f))
    except space.ValidationError:
        doc["type"] = None
    return doc


def cmd_report(args) -> dict:
    return report_doc(equivariant.report(dsl.parse_action(args.expr)))


def _axioms(args) -> classify.Axioms:
    return classify.Axioms(p2_even=not args.allow_odd_p2, p2_max_n=not args.p2_unbounded)


def cmd_classify(args) -> dict:
    types = classify.enumerate_fixed_types(args.n, args.tnhz, _axioms(args))
    return {"n": args.n, "tnhz": args.tnhz, "cases": [str(t) for t in classify.sorted_types(types)]}


def cmd_compare_theorem(args) -> dict:
    doc = classify.compare_theorem(args.n, args.tnhz, _axioms(args))
    if not doc["empty_diff"]:
        raise DomainFailure({"error": "enumeration differs from the theorem", **doc})
    return doc


def cmd_degree(args) -> dict:
    if args.map == "phi":
        m = degree.MapDescriptor("phi", args.n)
    else:
        m = degree.MapDescriptor.cayley(args.level) if args.level else degree.MapDescriptor("cayley", args.n)
    b = degree.bidegree(m, seed=args.seed, samples=args.samples)
    h = degree.hopf_from_bidegree(b)
    return {
        "map": m.label(),
        "alpha": b.alpha,
        "beta": b.beta,
        "hopf": {"magnitude": h.magnitude, "signed": h.signed, "note": h.note},
        "estimates": b.estimates,
        "seed": args.seed,
    }


def cmd_gallery(args) -> dict:
    if args.all:
        results = [equivariant.gallery(cid, **p) for cid, p in equivariant.catalog()]
    elif args.case:
        params = {}
        for item in args.param or []:
            key, _, val = item.partition("=")
            params[key] = int(val)
        results = [equivariant.gallery(args.case, **params)]
    else:
        return {"cases": sorted(equivariant.CASES)}
    doc = {"results": [gallery_doc(g) for g in results], "all_passed": all(g.passed for g in results)}
    if not doc["all_passed"]:
        raise DomainFailure({"error": "gallery case failed", **doc})
    return doc


def cmd_oracle_check(args) -> dict:
    verdict = chains.oracle_check(dsl.parse_space(args.expr))
    doc = verdict.as_dict()
    if not verdict.match:
        raise DomainFailure({"error": "oracle mismatch", **doc})
    return doc


# --- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circlefix", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="JSON output (the default and only format)")
    parser.add_argument("--human", action="store_true", help="render the JSON document as key: value lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_expr(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("expr")
        p.set_defaults(func=func)
        return p

    with_expr("cohomology", cmd_cohomology, "Poincare polynomial of a space expression")
    with_expr("euler", cmd_euler, "Euler characteristic of a space expression")
    with_expr("ring", cmd_ring, "ring presentation of toda(n,a,b), cone(n,h) or P(h,n)")
    with_expr("fixed-set", cmd_fixed_set, "fixed point set of an action expression")
    with_expr("report", cmd_report, "fixed set report with rank and Euler checks")
    with_expr("oracle-check", cmd_oracle_check, "compare with simplicial homology")

    p = sub.add_parser("classify-type", help="rational type of a Toda space of type (a,b)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_classify_type)

    for name, func in (("classify", cmd_classify), ("compare-theorem", cmd_compare_theorem)):
        p = sub.add_parser(name, help="enumerate fixed set types" if name == "classify" else "enumerator vs theorem")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--tnhz", type=_bool, required=True, metavar="yes|no")
        p.add_argument("--allow-odd-p2", action="store_true", help="drop the even-degree P^2 axiom")
        p.add_argument("--p2-unbounded", action="store_true", help="drop the r <= n bound on P^2(r)")
        p.set_defaults(func=func)

    p = sub.add_parser("degree", help="bidegree and Hopf invariant of a sphere map")
    p.add_argument("--map", choices=["phi", "cayley"], required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--level", type=int, choices=[1, 2, 3])
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("gallery", help="realization examples")
    p.add_argument("case", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--param", action="append", metavar="KEY=INT")
    p.set_defaults(func=cmd_gallery)
    return parser


def _emit(doc: dict, human: bool, stream) -> None:
    if human:
        for key in sorted(doc):
            stream.write(f"{key}: {json.dumps(doc[key], sort_keys=True, ensure_ascii=False)}\n")
    else:
        stream.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except DomainFailure as exc:
        _emit(exc.doc, args.human, sys.stdout)
        return 1
    except dsl.ParseError as exc:
        _emit({"error": str(exc), "line": exc.line, "column": exc.col, "token": exc.token}, False, sys.stderr)
        return 1
    except (space.ValidationError, GradedError, degree.DegreeError, chains.ComplexError,
            equivariant.InvariantViolation) as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__}, False, sys.stderr)
        return 1
    _emit(doc, args.human, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
