"""Command-line interface.

Exit codes: 0 success, 1 I/O or malformed document, 2 domain error,
3 infeasible (not coherent), 4 verification failed.
"""

import argparse
import json
import sys
from importlib import resources

from . import serialize as ser
from .cartier import (
    NotCoherentError,
    cartier_from_subdivision,
    ideal_from_cartier,
    integralize,
    support_from_heights,
)
from .exactq import ExactError, format_rat
from .fans import Fan, cone_from_rays, fan_equal, refines, star_subdivision
from .newton import integral_closure_generators, newton, normal_fan, verify_blowup
from .polyhedra import HalfSpace, equivalent_halfspaces, facets, upper_hull
from .pulling import pull

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3, 4


class CommandFailed(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CommandFailed(EXIT_IO, f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CommandFailed(EXIT_IO, f"{path} is not valid JSON: {exc}") from exc


def _write(path, doc) -> None:
    text = ser.dumps(doc)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CommandFailed(EXIT_IO, f"cannot write {path}: {exc.strerror}") from exc


def _parse_hyperplane(text):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise CommandFailed(EXIT_DOMAIN, f"bad --hyperplane {text!r}: expected integers a1,...,an,c") from exc
    if len(parts) < 2:
        raise CommandFailed(EXIT_DOMAIN, "--hyperplane needs the functional and the offset")
    return tuple(parts[:-1]), parts[-1]


def cmd_pull(args) -> int:
    sigma = ser.load_cone(_read(args.sigma))
    tau = ser.load_cone(_read(args.tau))
    hyperplane = _parse_hyperplane(args.hyperplane) if args.hyperplane else None
    if hyperplane is not None and len(hyperplane[0]) != sigma.ambient:
        raise CommandFailed(EXIT_DOMAIN, "hyperplane functional has the wrong length")
    sub = pull(sigma, tau, hyperplane)
    _write(args.out, ser.subdivision_doc(sub))
    return EXIT_OK


def cmd_cartier(args) -> int:
    doc = _read(args.subdivision)
    if args.from_heights:
        sub = ser.load_subdivision(doc)
        cd = integralize(support_from_heights(sub))
        method = "heights"
    else:
        if not args.ambient:
            raise CommandFailed(EXIT_DOMAIN, "--ambient is required unless --from-heights is given")
        cd = cartier_from_subdivision(ser.load_fan(doc), ser.load_fan(_read(args.ambient)))
        method = "inequalities"
    _write(args.out, ser.cartier_doc(cd, method))
    return EXIT_OK


def cmd_idealize(args) -> int:
    cd = ser.load_cartier(_read(args.cartier))
    delta = ser.load_fan(_read(args.ambient))
    ideals = ideal_from_cartier(cd, delta)
    _write(args.out, {"ideals": [ser.ideal_doc(data) for _, data in ideals]})
    return EXIT_OK


def cmd_newton_fan(args) -> int:
    ideals = ser.load_ideals(_read(args.ideal))
    cones = []
    for _, data in ideals:
        cones.extend(normal_fan(newton(data)).cones)
    rank = ideals[0][1].ambient.ambient
    _write(args.out, ser.fan_doc(Fan.from_cones(cones, rank)))
    return EXIT_OK


def cmd_verify(args) -> int:
    sigma = ser.load_fan(_read(args.subdivision))
    delta = ser.load_fan(_read(args.ambient))
    ideals = ser.load_ideals(_read(args.ideals))
    if verify_blowup(sigma, delta, ideals):
        print("verified: the normal fans of the ideals reproduce the subdivision")
        return EXIT_OK
    print("mismatch: the normal fans of the ideals differ from the subdivision")
    return EXIT_VERIFY


# ---------------------------------------------------------------------------
# reproduce-paper


def _points(points):
    return [[format_rat(x) for x in p] for p in points]


def example_report(golden: dict) -> dict:
    """Run the worked example described by ``golden`` and collect every computed value."""
    sigma = cone_from_rays(golden["sigma"])
    tau = cone_from_rays(golden["tau"], sigma.ambient)
    hp = golden["hyperplane"]
    sub = pull(sigma, tau, (tuple(hp["normal"]), hp["offset"]))
    config = sub.config
    lifted = config.lifted()
    hull = facets(lifted)
    cells = upper_hull(lifted, dim=sigma.ambient - 1)
    sf = support_from_heights(sub)
    cd = integralize(sf)
    delta = Fan.from_cones([sigma])
    ideals = ideal_from_cartier(cd, delta)
    ideal = ideals[0][1]
    blowup = normal_fan(newton(ideal))
    star = {}
    for r in tau.rays:
        st = star_subdivision(delta, r)
        label = "(" + ",".join(str(x) for x in r) + ")"
        star[f"pull refines star at {label}"] = refines(sub.fan, st)
        star[f"star at {label} refines pull"] = refines(st, sub.fan)
    return {
        "A": _points(p for p, h in zip(config.points, config.heights) if h == 0),
        "B": _points(p for p, h in zip(config.points, config.heights) if h == 1),
        "facets": [{"normal": list(h.normal), "offset": h.offset} for h in hull.halfspaces],
        "affine_hull": [{"normal": list(e), "offset": c} for e, c in hull.equalities],
        "cells": [_points(config.points[i] for i in cell) for cell in cells],
        "cones": [
            {"rays": [list(r) for r in c.rays], "u": [format_rat(x) for x in u], "m": list(m)}
            for c, u, m in zip(sub.fan.cones, sf.functionals, cd.vectors)
        ],
        "multiplier": cd.multiplier,
        "ideal": [list(g) for g in ideal.generators],
        "closure_generators": [list(g) for g in integral_closure_generators(ideal)],
        "blowup_fan_equal": fan_equal(blowup, sub.fan),
        "star": star,
    }


def _as_set(items):
    return sorted(json.dumps(x, sort_keys=True) for x in items)


def _cone_key(entry):
    return {"rays": sorted(entry["rays"]), "u": entry["u"], "m": entry["m"]}


def compare_report(report: dict, golden: dict) -> dict:
    """One boolean per golden key; facets are compared modulo the affine hull and positive scaling."""
    checks = {}
    for key in ("A", "B", "ideal", "closure_generators"):
        checks[key] = _as_set(report[key]) == _as_set(golden[key])
    checks["cells"] = _as_set(_as_set(c) for c in report["cells"]) == _as_set(
        _as_set(c) for c in golden["cells"]
    )
    checks["cones"] = _as_set(map(_cone_key, report["cones"])) == _as_set(map(_cone_key, golden["cones"]))
    eqs = [(tuple(e["normal"]), e["offset"]) for e in report["affine_hull"]]
    ours = [HalfSpace(tuple(h["normal"]), h["offset"]) for h in report["facets"]]
    theirs = [HalfSpace(tuple(h["normal"]), h["offset"]) for h in golden["facets"]]
    matched = len(ours) == len(theirs) and all(
        sum(equivalent_halfspaces(t, o, eqs) for o in ours) == 1 for t in theirs
    )
    checks["facets"] = matched
    checks["multiplier"] = report["multiplier"] == golden["multiplier"]
    checks["blowup_fan_equal"] = report["blowup_fan_equal"] == golden["blowup_fan_equal"]
    checks["star"] = report["star"] == golden["star"]
    return checks


def load_golden(path=None) -> dict:
    if path is None:
        text = resources.files("toricpull").joinpath("data/worked_example.json").read_text()
        return json.loads(text)
    return _read(path)


def cmd_reproduce_paper(args) -> int:
    golden = load_golden(args.golden)
    try:
        report = example_report(golden)
        checks = compare_report(report, golden)
    except (KeyError, TypeError) as exc:
        raise CommandFailed(EXIT_IO, f"golden file is malformed: {exc!r}") from exc
    ok = all(checks.values())
    if args.json:
        sys.stdout.write(ser.dumps({"report": report, "checks": checks, "ok": ok}))
    else:
        _print_report(report, golden, checks)
    return EXIT_OK if ok else EXIT_VERIFY


def _fmt(p):
    return "(" + ", ".join(str(x) for x in p) + ")"


def _print_report(report, golden, checks):
    def status(key):
        return "ok" if checks[key] else "MISMATCH"

    print(f"[{status('A')}] A = {{{', '.join(map(_fmt, report['A']))}}}")
    print(f"[{status('B')}] B = {{{', '.join(map(_fmt, report['B']))}}}")
    print(f"[{status('facets')}] lifted polytope facets (<= form):")
    for h in report["facets"]:
        print(f"    {_fmt(h['normal'])} . w <= {h['offset']}")
    for e in report["affine_hull"]:
        print(f"    {_fmt(e['normal'])} . w  = {e['offset']}")
    print(f"[{status('cells')}] upper cells:")
    for cell in report["cells"]:
        print("    {" + ", ".join(map(_fmt, cell)) + "}")
    print(f"[{status('cones')}] maximal cones, u and m:")
    for c in report["cones"]:
        print(f"    cone{{{', '.join(map(_fmt, c['rays']))}}}  u = {_fmt(c['u'])}  m = {_fmt(c['m'])}")
    print(f"[{status('multiplier')}] multiplier k = {report['multiplier']}")
    print(f"[{status('ideal')}] ideal generators: {', '.join(map(_fmt, report['ideal']))} (integral closure)")
    print(
        f"[{status('closure_generators')}] closure generators: "
        + ", ".join(map(_fmt, report["closure_generators"]))
    )
    print(f"[{status('blowup_fan_equal')}] normal fan of newt(I) equals pull fan: {report['blowup_fan_equal']}")
    print(f"[{status('star')}] star subdivision comparisons:")
    for k, v in report["star"].items():
        print(f"    {k}: {v}")
    for key, good in checks.items():
        if not good:
            print(f"diff {key}: expected {json.dumps(golden.get(key))}, got {json.dumps(report.get(key))}")
    print("all values match" if all(checks.values()) else "some values differ")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricpull",
        description="Pulling subdivisions, Cartier data and monomial-ideal blowups in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pull", help="pulling subdivision of sigma along tau")
    p.add_argument("--sigma", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--hyperplane", help="a1,...,an,c for the hyperplane <a,x> = c")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pull)

    p = sub.add_parser("cartier", help="Cartier data of a subdivision")
    p.add_argument("--subdivision", required=True)
    p.add_argument("--ambient")
    p.add_argument("--from-heights", action="store_true", help="use the ray heights in the subdivision document")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cartier)

    p = sub.add_parser("idealize", help="monomial ideal per maximal cone of the ambient fan")
    p.add_argument("--cartier", required=True)
    p.add_argument("--ambient", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_idealize)

    p = sub.add_parser("newton-fan", help="normal fan of the Newton polyhedron of an ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_newton_fan)

    p = sub.add_parser("verify", help="check that the ideals' blowup fans equal the subdivision")
    p.add_argument("--subdivision", required=True)
    p.add_argument("--ambient", required=True)
    p.add_argument("--ideals", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce-paper", help="run the worked example and compare with golden values")
    p.add_argument("--json", action="store_true")
    p.add_argument("--golden", help="alternative golden-values file")
    p.set_defaults(func=cmd_reproduce_paper)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ser.DocumentError as exc:
        print(f"error: malformed document: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotCoherentError as exc:
        print(f"error: not coherent: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ExactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
