"""Command line front end.

Every command prints one JSON report

    {"command": ..., "inputs": {...}, "checks": [{"name", "pass", "detail"}], "artifacts": {...}}

and exits with 0 when all checks pass, 1 when one fails and 2 on usage
errors.  Reports depend only on the command line and the seed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import acceptance, catk, rtree
from .building import (
    SphericalBuilding,
    an_building,
    opposite_chambers,
    solomon_tits_basis,
    thickness_report,
    thin_building,
    verify_building_axioms,
    weak_join,
)
from .coxeter import CoxeterDiagram
from .simplicial import (
    SimplicialComplex,
    homology,
    join,
    local_homology,
    make_simplex,
    sphere_complex,
)
from .support_lattice import building_lattice, minimal_element, reconstruct


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.checks: list[dict] = []
        self.artifacts: dict[str, Any] = {}

    def check(self, name: str, passed: bool, detail: Any = None) -> bool:
        self.checks.append({"name": name, "pass": bool(passed), "detail": detail})
        return passed

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "checks": sorted(self.checks, key=lambda c: c["name"]),
            "artifacts": self.artifacts,
        }


def _jsonable(o):
    if isinstance(o, Fraction):
        return rtree._num_json(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def render(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2, default=_jsonable) + "\n"


# --- input helpers ------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}")
    return _fraction(parts[0]), _fraction(parts[1])


def _simplex(text: str) -> tuple[int, ...]:
    try:
        return make_simplex(int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated vertices, got {text!r}") from exc


def _tree(text: str) -> rtree.RTree:
    key = text.upper()
    if key not in ("T1", "T2"):
        raise argparse.ArgumentTypeError("tree must be t1 or t2")
    return rtree.RTree(key)


def _read_json(path: str | None) -> dict:
    if path and path != "-":
        text = Path(path).read_text()
    else:
        if sys.stdin.isatty():
            raise ValueError("no input: pass a file or pipe JSON on standard input")
        text = sys.stdin.read()
    data = json.loads(text)
    # accept a whole report from an upstream command
    if isinstance(data, dict) and "artifacts" in data and "command" in data:
        art = data["artifacts"]
        for key in ("building", "complex"):
            if key in art:
                return art[key]
        raise ValueError("upstream report carries no complex or building")
    return data


def _load_building(args) -> SphericalBuilding:
    if getattr(args, "an", None):
        n, q = args.an
        return an_building(n, q)
    return SphericalBuilding.from_json(_read_json(getattr(args, "building", None)))


def _load_complex(args) -> SimplicialComplex:
    return SimplicialComplex.from_json(_read_json(args.input))


def _figure_dir(args) -> Path | None:
    return Path(args.figures) if getattr(args, "figures", None) else None


def _facets(cx: SimplicialComplex) -> list[list[int]]:
    return [list(f) for f in cx.sorted_facets()]


# --- complex ------------------------------------------------------------------

def cmd_complex_sphere(args, rep: Report) -> None:
    cx = sphere_complex(args.n)
    h = homology(cx, args.n, reduced=args.n == 0)
    rep.check("top_homology_is_Z", h.betti == 1 and not h.torsion, h.to_json())
    rep.artifacts["complex"] = cx.to_json()


def cmd_homology(args, rep: Report) -> None:
    cx = _load_complex(args)
    h = homology(cx, args.k, reduced=args.reduced)
    rep.check("computed", True, {"f_vector": cx.f_vector()})
    rep.artifacts["homology"] = h.to_json()
    rep.artifacts["betti"] = h.betti
    if args.expect_betti is not None:
        rep.check("expected_betti", h.betti == args.expect_betti, {"expected": args.expect_betti, "got": h.betti})


def cmd_local_homology(args, rep: Report) -> None:
    cx = _load_complex(args)
    vertices = [args.vertex] if args.vertex is not None else cx.vertices
    rows = []
    for v in vertices:
        rows.append({"vertex": v, "degrees": [local_homology(cx, v, k).to_json() for k in range(cx.dim + 1)]})
    rep.check("computed", True, {"vertices": len(rows)})
    rep.artifacts["local_homology"] = rows


def cmd_complex_join(args, rep: Report) -> None:
    cx = join(_load_complex(args), sphere_complex(args.n))
    rep.check("computed", True, {"f_vector": cx.f_vector()})
    rep.artifacts["complex"] = cx.to_json()


# --- building -----------------------------------------------------------------

def _emit_building(args, rep: Report, b: SphericalBuilding) -> None:
    rep.artifacts["building"] = b.to_json()
    rep.artifacts["f_vector"] = b.complex.f_vector()
    rep.artifacts["apartments"] = len(b.apartments)
    fig = _figure_dir(args)
    if fig:
        from .plotting import plot_building
        rep.artifacts["figures"] = [plot_building(b, fig / "building.png")]


def cmd_building_an(args, rep: Report) -> None:
    b = an_building(args.n, args.q)
    rep.check("chambers_typed", sorted({b.type_of[v] for v in b.complex.vertices}) == list(range(args.n)))
    _emit_building(args, rep, b)


def cmd_building_thin(args, rep: Report) -> None:
    b = thin_building(CoxeterDiagram.of_type(args.type, args.n))
    h = homology(b.complex, b.dim, reduced=b.dim == 0)
    rep.check("is_sphere", h.betti == 1 and not h.torsion, h.to_json())
    _emit_building(args, rep, b)


def cmd_building_weak_join(args, rep: Report) -> None:
    b = weak_join(_load_building(args), args.n)
    _emit_building(args, rep, b)
    rep.check("computed", True, {"rank": b.rank})


def cmd_building_axioms(args, rep: Report) -> None:
    r = verify_building_axioms(_load_building(args))
    for name, ok in sorted(r.checks.items()):
        rep.check(name, ok, r.details.get(name))


def cmd_building_thick(args, rep: Report) -> None:
    t = thickness_report(_load_building(args))
    data = t.to_json()
    rep.artifacts["thickness"] = data
    rep.artifacts["thick"] = t.thick
    if args.expect is not None:
        want = args.expect == "thick"
        rep.check("thickness_as_expected", t.thick == want, {"thick": t.thick})
    else:
        rep.check("computed", True, {"thick": t.thick})


def _chamber(args, b: SphericalBuilding) -> tuple[int, ...]:
    if args.chamber is None:
        return b.chambers[0]
    if args.chamber not in b.complex.facets:
        raise ValueError(f"{list(args.chamber)} is not a chamber")
    return args.chamber


def cmd_building_opposite(args, rep: Report) -> None:
    b = _load_building(args)
    c0 = _chamber(args, b)
    opp = opposite_chambers(b, c0)
    rep.artifacts["chamber"] = list(c0)
    rep.artifacts["opposite"] = [list(c) for c in opp]
    rep.artifacts["count"] = len(opp)
    betti = homology(b.complex, b.dim, reduced=b.dim == 0).betti
    rep.check("count_equals_top_betti", len(opp) == betti, {"count": len(opp), "betti": betti})


def cmd_building_solomon_tits(args, rep: Report) -> None:
    b = _load_building(args)
    st = solomon_tits_basis(b, _chamber(args, b))
    rep.check("basis_of_top_homology", st.verified, {
        "cycles": len(st.cycles), "rank": st.rank, "betti": st.betti,
        "invariant_factors_all_one": all(d == 1 for d in st.invariant_factors),
    })
    rep.artifacts["chamber"] = list(st.chamber)
    rep.artifacts["cycles"] = [z.to_json() for z in st.cycles]


# --- lattice ------------------------------------------------------------------

def cmd_lattice(args, rep: Report) -> None:
    b = _load_building(args)
    if args.join is not None:
        b = weak_join(b, args.join)
    lat = building_lattice(b)
    ind = [lat.to_complex(m) for m in lat.indecomposable_masks]
    minimal = minimal_element(lat)
    try:
        rec = reconstruct(lat)
        iso, why = rec.isomorphic, None
    except ValueError as exc:
        iso, why = False, str(exc)
    rep.artifacts.update({
        "elements": lat.element_count(),
        "indecomposables": [_facets(c) for c in ind],
        "minimal": _facets(minimal),
        "reconstruction_isomorphic": iso,
    })
    rep.check("reconstruction_isomorphic", iso, why)


# --- catk ---------------------------------------------------------------------

def cmd_catk_sines(args, rep: Report) -> None:
    tri = catk.comparison_triangle(args.kappa, *args.sides)
    res = catk.law_of_sines_residual(args.kappa, tri)
    rep.artifacts["angles"] = list(tri.angles)
    rep.artifacts["ratios"] = list(res.ratios)
    if res.determinant is not None:
        rep.artifacts["determinant"] = res.determinant
    rep.check("law_of_sines", res.ratio_residual < args.tolerance, {"residual": res.ratio_residual})
    if res.determinant_residual is not None:
        rep.check("determinant_identity", res.determinant_residual < args.tolerance,
                  {"residual": res.determinant_residual})


def cmd_catk_sines_batch(args, rep: Report) -> None:
    res = acceptance.sines_residuals(args.n, args.seed)
    for k, vals in res.items():
        rep.check(f"kappa_{k:+g}", max(vals) < args.tolerance,
                  {"max_residual": max(vals), "triangles": len(vals)})
    fig = _figure_dir(args)
    if fig:
        from .plotting import plot_sines_residuals
        rep.artifacts["figures"] = [plot_sines_residuals(res, args.tolerance, fig / "sines_residuals.png")]


def _read_quad(path: str) -> catk.Quadruple:
    data = _read_json(path)
    keys = ("pq", "pr", "qr", "qm", "mr", "pm")
    if isinstance(data, list):
        if len(data) != 6:
            raise ValueError("quadruple array must list pq, pr, qr, qm, mr, pm")
        return catk.Quadruple(*map(float, data))
    return catk.Quadruple(*(float(data[k]) for k in keys))


def cmd_catk_check(args, rep: Report) -> None:
    quad = _read_quad(args.quad)
    res = catk.cat_check(args.kappa, quad, args.tolerance)
    rep.check("cat_inequality", res.holds,
              {"distance": res.distance, "comparison_distance": res.comparison_distance})


def cmd_catk_cat_batch(args, rep: Report) -> None:
    rng = np.random.default_rng(args.seed)
    for k in args.kappas:
        bad = None
        for i in range(args.n):
            quad = catk.random_quadruple(k, rng)
            if not catk.cat_check(k, quad, args.tolerance).holds:
                bad = quad.to_json()
                break
        rep.check(f"random_quadruples_kappa_{k:+g}", bad is None, {"quadruples": args.n, "first_failure": bad})
    quad, points = catk.spherical_witness()
    flat = catk.cat_check(0.0, quad, args.tolerance)
    rep.check("spherical_witness_fails_flat", not flat.holds, {
        "points": points, "quadruple": quad.to_json(),
        "distance": flat.distance, "comparison_distance": flat.comparison_distance,
    })


# --- rtree --------------------------------------------------------------------

def cmd_rtree_dist(args, rep: Report) -> None:
    p, q = rtree.TreePoint(*args.p), rtree.TreePoint(*args.q)
    d = rtree.tree_distance(args.tree, p, q)
    mid = rtree.geodesic(args.tree, p, q, Fraction(1, 2))
    rep.artifacts["distance"] = d
    rep.artifacts["midpoint"] = mid.to_json()
    rep.check("midpoint_halves_distance", 2 * rtree.tree_distance(args.tree, p, mid) == d)


def cmd_rtree_segment(args, rep: Report) -> None:
    if args.horizontal:
        seg = rtree.HorizontalSegment(*args.horizontal)
    else:
        seg = rtree.VerticalSegment(*args.vertical)
    dec = rtree.is_segment_in_apartment(args.tree, seg)
    rep.artifacts["decision"] = dec.to_json()
    rep.check("decided", True, {"contained": dec.contained})


def cmd_rtree_fiber(args, rep: Report) -> None:
    sample = rtree.sample_fiber(args.base, args.n, random.Random(args.seed))
    r = rtree.verify_fiber_metric(rtree.T2, rtree.XI, sample)
    rep.check("ultrametric_all_triples", r.ultrametric, r.to_json())
    rep.check("delta_equals_d", r.delta_equals_d, {"L": r.lipschitz_constant})


def cmd_rtree_burillo(args, rep: Report) -> None:
    r = Fraction(args.r)
    if r <= 0:
        raise ValueError("r must be positive")
    sample = rtree.sample_tree(rtree.T2, args.n, random.Random(args.seed))
    cover = rtree.burillo_cover(rtree.T2, rtree.XI, r, sample)
    fine = rtree.burillo_cover(rtree.T2, rtree.XI, r / 5, sample)
    ok, bad = rtree.refines(fine, cover)
    rep.artifacts["cover"] = cover.to_json()
    rep.artifacts["refining_cover"] = fine.to_json()
    rep.check("order_le_2", cover.order <= 2, {"order": cover.order})
    rep.check("mesh_le_bound", cover.mesh <= cover.mesh_bound, {"mesh": cover.mesh, "bound": cover.mesh_bound})
    for name, good in sorted(cover.claims.items()):
        rep.check(name, good)
    rep.check("refinement", ok, {"offending": [list(map(str, k)) for k in bad]})
    fig = _figure_dir(args)
    if fig:
        from .plotting import plot_cover
        rep.artifacts["figures"] = [plot_cover(sample, cover, fig / "cover.png")]


def cmd_rtree_theorem_a(args, rep: Report) -> None:
    o = args.tree.point(*args.o)
    dirs = rtree.directions_at(args.tree, o)
    ball = rtree.sample_ball(args.tree, o, args.eps, args.n, random.Random(args.seed))
    pts, labels = rtree.punctured_labels(args.tree, o, args.eps, ball)
    comps = len(set(labels))
    angles = rtree.direction_angles(args.tree, o)
    worst = max((abs(e.angle - math.pi) for e in angles.values()), default=0.0)
    rep.artifacts["directions"] = [d.name for d in dirs]
    rep.artifacts["components"] = comps
    rep.artifacts["angles"] = {f"{a},{b}": e.report() for (a, b), e in angles.items()}
    rep.check("components_equal_directions", comps == len(dirs), {"components": comps, "directions": len(dirs)})
    rep.check("angles_equal_pi", worst <= args.tolerance, {"max_deviation": worst})
    fig = _figure_dir(args)
    if fig:
        from .plotting import plot_angle_convergence, plot_ball
        rep.artifacts["figures"] = [
            plot_ball(o, pts, labels, fig / "ball.png"),
            plot_angle_convergence({f"{a},{b}": e for (a, b), e in angles.items()}, fig / "angles.png"),
        ]


def cmd_rtree_example(args, rep: Report) -> None:
    for c in acceptance.c11_example_trees(args.seed):
        rep.check(c.name, c.passed, c.detail)


# --- verify-all ---------------------------------------------------------------

def cmd_verify_all(args, rep: Report) -> None:
    for n in args.criteria or sorted(acceptance.CRITERIA):
        title = acceptance.CRITERIA[n][0]
        checks, _ = acceptance.run_criterion(n, args.seed)
        rep.check(f"criterion_{n:02d}", all(c.passed for c in checks),
                  {"title": title, "checks": [c.to_json() for c in checks]})


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--figures", metavar="DIR", help="also render figures into DIR")

    parser = argparse.ArgumentParser(prog="buildgeom", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="group", required=True)

    def leaf(parent, name: str, fn: Callable, help: str):
        p = parent.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=fn)
        return p

    def building_source(p):
        p.add_argument("--building", metavar="FILE", help="building JSON or report (default: stdin)")
        p.add_argument("--an", nargs=2, type=int, metavar=("N", "Q"), help="use the A_N building over F_Q")

    def homology_args(p):
        p.add_argument("--k", type=int, required=True, help="degree")
        p.add_argument("--reduced", action="store_true")
        p.add_argument("--input", metavar="FILE", help="complex, building or report JSON (default: stdin)")
        p.add_argument("--expect-betti", type=int)

    cx = sub.add_parser("complex", help="simplicial complexes").add_subparsers(dest="cmd", required=True)
    p = leaf(cx, "sphere", cmd_complex_sphere, "boundary of the (n+1)-cross-polytope")
    p.add_argument("--n", type=int, required=True)
    homology_args(leaf(cx, "homology", cmd_homology, "integral homology"))
    p = leaf(cx, "local-homology", cmd_local_homology, "local homology via links")
    p.add_argument("--vertex", type=int)
    p.add_argument("--input", metavar="FILE")
    p = leaf(cx, "join", cmd_complex_join, "join with S^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", metavar="FILE")

    homology_args(leaf(sub, "homology", cmd_homology, "integral homology of a piped complex"))

    bd = sub.add_parser("building", help="spherical buildings").add_subparsers(dest="cmd", required=True)
    p = leaf(bd, "an", cmd_building_an, "flag complex of F_q^(n+1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = leaf(bd, "thin", cmd_building_thin, "Coxeter complex as a thin building")
    p.add_argument("--type", required=True, choices=["A", "B", "I2"])
    p.add_argument("--n", type=int, required=True)
    p = leaf(bd, "weak-join", cmd_building_weak_join, "join with S^n")
    building_source(p)
    p.add_argument("--n", type=int, required=True)
    building_source(leaf(bd, "axioms", cmd_building_axioms, "check (B1) and (B2)"))
    p = leaf(bd, "thick", cmd_building_thick, "thickness report")
    building_source(p)
    p.add_argument("--expect", choices=["thick", "thin"])
    for name, fn in (("opposite", cmd_building_opposite), ("solomon-tits", cmd_building_solomon_tits)):
        p = leaf(bd, name, fn, f"{name.replace('-', ' ')} for a chamber")
        building_source(p)
        p.add_argument("--chamber", type=_simplex, help="comma separated vertices (default: first chamber)")

    p = leaf(sub, "lattice", cmd_lattice, "support lattice and reconstruction")
    building_source(p)
    p.add_argument("--join", type=int, metavar="N", help="first join the building with S^N")

    ck = sub.add_parser("catk", help="model spaces and comparison checks").add_subparsers(dest="cmd", required=True)
    p = leaf(ck, "sines", cmd_catk_sines, "law of sines for one triangle")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--sides", type=float, nargs=3, required=True, metavar=("A", "B", "C"))
    p = leaf(ck, "sines-batch", cmd_catk_sines_batch, "law of sines on random triangles")
    p.add_argument("--n", type=int, default=10_000)
    p = leaf(ck, "check", cmd_catk_check, "CAT(kappa) inequality for one quadruple")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--quad", required=True, metavar="FILE")
    p = leaf(ck, "cat-batch", cmd_catk_cat_batch, "random model quadruples plus the spherical witness")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--kappas", type=float, nargs="+", default=[-1.0, 0.0, 1.0])

    rt = sub.add_parser("rtree", help="the R-trees T1 and T2").add_subparsers(dest="cmd", required=True)
    p = leaf(rt, "dist", cmd_rtree_dist, "distance and midpoint")
    p.add_argument("--tree", type=_tree, default=rtree.T2)
    p.add_argument("--p", type=_pair, required=True, metavar="X,Y")
    p.add_argument("--q", type=_pair, required=True, metavar="X,Y")
    p = leaf(rt, "segment", cmd_rtree_segment, "is a segment inside an apartment")
    p.add_argument("--tree", type=_tree, default=rtree.T1)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--horizontal", type=_fraction, nargs=2, metavar=("U", "V"))
    g.add_argument("--vertical", type=_fraction, nargs=3, metavar=("X", "Y1", "Y2"))
    p = leaf(rt, "fiber", cmd_rtree_fiber, "fiber ultrametric on a sample")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--base", type=_fraction, default=Fraction(1, 3))
    p = leaf(rt, "burillo", cmd_rtree_burillo, "Burillo cover of T2 on a sample")
    p.add_argument("--r", type=str, default="1")
    p.add_argument("--n", type=int, default=1000)
    p = leaf(rt, "theorem-a", cmd_rtree_theorem_a, "punctured balls versus directions")
    p.add_argument("--tree", type=_tree, default=rtree.T2)
    p.add_argument("--o", type=_pair, required=True, metavar="X,Y")
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--n", type=int, default=1000)
    leaf(rt, "example", cmd_rtree_example, "T1 axis, stretch map round trip and distortion")

    p = leaf(sub, "verify-all", cmd_verify_all, "run the acceptance suite")
    p.add_argument("--criteria", type=int, nargs="+", choices=sorted(acceptance.CRITERIA))
    return parser


def _inputs(args) -> dict:
    skip = {"handler", "group", "cmd", "out", "figures", "format"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, rtree.RTree):
            v = v.base
        out[k] = v
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(x for x in (args.group, getattr(args, "cmd", None)) if x)
    rep = Report(command, _inputs(args))
    try:
        args.handler(args, rep)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        rep.check("input_valid", False, str(exc))
    text = render(rep)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
