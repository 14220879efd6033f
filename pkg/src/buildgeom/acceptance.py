"""The acceptance criteria as runnable checks, shared by `verify-all`.

Each criterion returns a list of named checks.  Wall-clock time is compared
against the criterion's bound but never written into a report, so reports
stay byte-identical across runs.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from . import catk, rtree
from .building import (
    an_building,
    opposite_chambers,
    solomon_tits_basis,
    verify_building_axioms,
    weak_join,
)
from .simplicial import (
    Chain,
    SimplicialComplex,
    homology,
    join,
    local_homology,
    sphere_complex,
    suspend_cycle,
    support,
)
from .support_lattice import building_lattice, minimal_element, reconstruct


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "detail": self.detail}


@lru_cache(maxsize=None)
def fano():
    return an_building(2, 2)


@lru_cache(maxsize=None)
def fano_basis():
    b = fano()
    return solomon_tits_basis(b, b.chambers[0])


def c1_fano_homology(seed: int) -> list[Check]:
    b = fano()
    h = homology(b.complex, 1)
    f = b.complex.f_vector()
    chi_betti = 1 - b.complex.euler_characteristic()
    opp = {len(opposite_chambers(b, c)) for c in b.chambers}
    return [
        Check("betti_1", h.betti == 8, {"betti": h.betti}),
        Check("torsion_empty", not h.torsion, {"torsion": list(h.torsion)}),
        Check("euler_characteristic", chi_betti == 8 and f == [14, 21], {"f_vector": f, "1 - chi": chi_betti}),
        Check("opposite_chambers_every_chamber", opp == {8}, {"counts": sorted(opp)}),
    ]


def c2_solomon_tits(seed: int) -> list[Check]:
    out = []
    for q, expected in ((2, 8), (3, 27)):
        b = fano() if q == 2 else an_building(2, 3)
        st = fano_basis() if q == 2 else solomon_tits_basis(b, b.chambers[0])
        out.append(Check(
            f"q{q}_basis",
            st.verified and len(st.cycles) == expected == st.betti,
            {"cycles": len(st.cycles), "betti": st.betti, "rank": st.rank,
             "invariant_factors_all_one": all(d == 1 for d in st.invariant_factors)},
        ))
    return out


def random_combinations(basis: list[Chain], n: int, rng: random.Random, coef_range: int = 3):
    """n nonzero integer combinations of the basis cycles."""
    degree = basis[0].degree
    out = []
    while len(out) < n:
        coefs = [rng.randint(-coef_range, coef_range) for _ in basis]
        z = Chain(degree, {})
        for c, b in zip(coefs, basis):
            if c:
                z = z + c * b
        if z.coefficients:
            out.append(z)
    return out


def c3_support_join(seed: int) -> list[Check]:
    b = fano()
    basis = fano_basis().cycles
    s0 = sphere_complex(0)
    pure = join_ok = True
    for z in random_combinations(basis, 100, random.Random(seed)):
        s = support(z, b.complex)
        pure &= s.is_pure() and s.dim == 1
        sz, cx = suspend_cycle(z, b.complex, 0)
        join_ok &= sz.is_cycle() and support(sz, cx) == join(s, s0)
    return [
        Check("supports_pure_1_dimensional", pure, {"samples": 100}),
        Check("suspended_support_is_join", join_ok, {"samples": 100}),
    ]


def c4_lattice(seed: int) -> list[Check]:
    b = fano()
    lat = building_lattice(b)
    rec = reconstruct(lat)
    joined = weak_join(b, 0)
    lat0 = building_lattice(joined)
    s0 = SimplicialComplex([(14,), (15,)], joined.complex.vertex_count)
    m0 = minimal_element(lat0)
    rec0 = reconstruct(lat0)
    return [
        Check("fano_indecomposables", len(lat.indecomposable_masks) == 35,
              {"indecomposables": len(lat.indecomposable_masks)}),
        Check("fano_reconstruction_isomorphic", rec.isomorphic, {"f_vector": rec.complex.f_vector()}),
        Check("join_minimal_is_s0", m0 == s0, {"minimal": [list(f) for f in m0.sorted_facets()]}),
        Check("join_reconstruction_isomorphic", rec0.isomorphic,
              {"f_vector": rec0.joined.f_vector(), "ground_f_vector": joined.complex.f_vector()}),
    ]


def c5_axioms(seed: int) -> list[Check]:
    rep = verify_building_axioms(fano())
    return [Check(name, ok, None) for name, ok in sorted(rep.checks.items())]


KAPPAS = (-2.0, -1.0, 0.0, 1.0, 2.0)


def sines_residuals(n: int, seed: int) -> dict[float, list[float]]:
    rng = np.random.default_rng(seed)
    return {
        k: [catk.law_of_sines_residual(k, catk.random_triangle(k, rng)).value for _ in range(n)]
        for k in KAPPAS
    }


def c6_sines(seed: int, tol: float = 1e-9) -> list[Check]:
    res = sines_residuals(10_000, seed)
    return [
        Check(f"kappa_{k:+g}", max(v) < tol, {"max_residual_below": tol, "triangles": len(v)})
        for k, v in res.items()
    ]


def c7_cat(seed: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for k in (-1.0, 0.0, 1.0):
        ok = all(catk.cat_check(k, catk.random_quadruple(k, rng)).holds for _ in range(10_000))
        out.append(Check(f"random_quadruples_kappa_{k:+g}", ok, {"quadruples": 10_000}))
    quad, points = catk.spherical_witness()
    flat = catk.cat_check(0.0, quad)
    out.append(Check("spherical_witness_fails_flat", not flat.holds, {
        "points": points, "quadruple": quad.to_json(),
        "distance": flat.distance, "comparison_distance": flat.comparison_distance,
    }))
    return out


def c8_fiber(seed: int) -> list[Check]:
    sample = rtree.sample_fiber(Fraction(1, 3), 1000, random.Random(seed))
    rep = rtree.verify_fiber_metric(rtree.T2, rtree.XI, sample)
    return [
        Check("ultrametric_all_triples", rep.ultrametric, rep.to_json()),
        Check("delta_equals_d", rep.delta_equals_d and rep.lipschitz_constant == 1,
              {"L": rtree._num_json(rep.lipschitz_constant)}),
    ]


def c9_burillo(seed: int) -> list[Check]:
    sample = rtree.sample_tree(rtree.T2, 1000, random.Random(seed))
    out = []
    for r in (Fraction(1), Fraction(1, 5)):
        cov = rtree.burillo_cover(rtree.T2, rtree.XI, r, sample)
        fine = rtree.burillo_cover(rtree.T2, rtree.XI, r / 5, sample)
        ok, bad = rtree.refines(fine, cov)
        tag = f"r_{float(r):g}"
        out.append(Check(f"{tag}_order_le_2", cov.order <= 2, {"order": cov.order}))
        out.append(Check(f"{tag}_mesh_le_5r", cov.mesh <= 5 * r,
                         {"mesh": rtree._num_json(cov.mesh), "bound": rtree._num_json(5 * r)}))
        out.append(Check(f"{tag}_claims", all(cov.claims.values()), cov.claims))
        out.append(Check(f"{tag}_refined_by_r_over_5", ok, {"offending": [str(k) for k in bad]}))
    return out


def c10_punctured_balls(seed: int, tol: float = 1e-9) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for o, eps_list in (((0, 0), (Fraction(1, 10), Fraction(1, 2))), ((0, 2), (Fraction(1, 2),))):
        o = rtree.TreePoint(Fraction(o[0]), Fraction(o[1]))
        dirs = len(rtree.directions_at(rtree.T2, o))
        for eps in eps_list:
            ball = rtree.sample_ball(rtree.T2, o, eps, 1000, rng)
            comps = rtree.punctured_components(rtree.T2, o, eps, ball)
            expected = 4 if o.y == 0 else 2
            out.append(Check(
                f"o_{o.x}_{o.y}_eps_{eps}", comps == dirs == expected,
                {"components": comps, "directions": dirs},
            ))
        angles = rtree.direction_angles(rtree.T2, o)
        worst = max(abs(e.angle - math.pi) for e in angles.values())
        out.append(Check(f"o_{o.x}_{o.y}_angles_pi", worst <= tol, {"pairs": len(angles)}))
    return out


def c11_example_trees(seed: int) -> list[Check]:
    dec = rtree.is_segment_in_apartment(rtree.T1, rtree.HorizontalSegment(-1, 1))
    rng = np.random.default_rng(seed)
    xs = rng.normal(scale=10.0, size=10_000)
    worst = max(abs(rtree.unstretch(rtree.stretch(float(x))) - x) for x in xs)
    wit = rtree.distortion_witness()
    return [
        Check("t1_axis_not_in_apartment", not dec.contained, dec.to_json()),
        Check("stretch_round_trip", worst <= 1e-12, {"samples": 10_000}),
        Check("stretch_not_isometry", wit["distance_T2"] != wit["distance_T1_of_images"], wit),
    ]


def c12_local_homology(seed: int) -> list[Check]:
    b = fano()
    degree1 = all(
        (h := local_homology(b.complex, v, 1)).betti == 2 and not h.torsion for v in b.complex.vertices
    )
    others = all(
        local_homology(b.complex, v, k).is_zero() for v in b.complex.vertices for k in (0, 2)
    )
    return [
        Check("degree_1_is_Z2", degree1, {"vertices": len(b.complex.vertices)}),
        Check("other_degrees_zero", others, {"degrees": [0, 2]}),
    ]


CRITERIA: dict[int, tuple[str, float | None, Callable[[int], list[Check]]]] = {
    1: ("Fano building homology", 5, c1_fano_homology),
    2: ("Solomon-Tits basis", 60, c2_solomon_tits),
    3: ("support purity and join", None, c3_support_join),
    4: ("lattice reconstruction", 120, c4_lattice),
    5: ("building axioms", None, c5_axioms),
    6: ("law of sines", 10, c6_sines),
    7: ("CAT check sanity", 10, c7_cat),
    8: ("tree fiber metric", 30, c8_fiber),
    9: ("Burillo cover", 30, c9_burillo),
    10: ("punctured balls and directions", 5, c10_punctured_balls),
    11: ("tree examples", 5, c11_example_trees),
    12: ("local homology", None, c12_local_homology),
}


def run_criterion(number: int, seed: int) -> tuple[list[Check], float]:
    title, bound, fn = CRITERIA[number]
    start = time.perf_counter()
    checks = fn(seed)
    elapsed = time.perf_counter() - start
    if bound is not None:
        checks.append(Check("runtime_within_bound", elapsed < bound, {"bound_seconds": bound}))
    return checks, elapsed
