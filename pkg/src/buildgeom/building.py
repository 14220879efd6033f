"""Finite spherical buildings: flag complexes of PG(n, q), apartments, axioms.

Vertices are numbered type-major (all type-0 vertices first), so the
type order of every chamber agrees with its sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Mapping, Sequence

from .coxeter import CoxeterComplexData, CoxeterDiagram, coxeter_complex
from .simplicial import (
    Chain,
    Simplex,
    SimplicialComplex,
    homology,
    join,
    oriented,
    sphere_complex,
)
from .snf import IntegerMatrix, smith_normal_form


class ChartError(ValueError):
    pass


@dataclass
class Apartment:
    faces: SimplicialComplex
    # chamber -> element index of the Coxeter group, anchored at `base`
    chart: dict[Simplex, int]
    # vertex -> vertex of the Coxeter complex
    vertex_map: dict[int, int]
    base: Simplex

    @cached_property
    def face_set(self) -> frozenset[Simplex]:
        return self.faces.all_faces

    @property
    def chambers(self) -> list[Simplex]:
        return sorted(self.faces.facets)

    def key(self) -> list[Simplex]:
        return self.faces.sorted_facets()

    def __contains__(self, face) -> bool:
        # the empty simplex lies in every apartment
        return not face or tuple(face) in self.face_set


def _type_ordered(chamber: Simplex, type_of: Mapping[int, int]) -> list[int]:
    return sorted(chamber, key=lambda v: type_of[v])


def build_chart(
    apt: SimplicialComplex,
    type_of: Mapping[int, int],
    cc: CoxeterComplexData,
    base: Simplex,
) -> tuple[dict[Simplex, int], dict[int, int]]:
    """Type-preserving isomorphism apt -> Coxeter complex sending base to 1.

    Walks galleries from `base`: crossing the panel opposite the type-i
    vertex multiplies the chart value by s_i on the right.  Raises
    ChartError if the walk is inconsistent, i.e. apt is not a copy of the
    Coxeter complex.
    """
    group = cc.group
    rank = group.diagram.rank
    gen_index = [group.index[s] for s in group.generators]
    chambers = list(apt.facets)
    for c in chambers:
        if sorted(type_of[v] for v in c) != list(range(rank)):
            raise ChartError(f"chamber {c} does not have one vertex of each type")
    panels: dict[tuple[Simplex, int], list[Simplex]] = {}
    for c in chambers:
        for v in c:
            panels.setdefault((tuple(x for x in c if x != v), type_of[v]), []).append(c)
    if base not in apt.facets:
        raise ChartError("base chamber not in apartment")
    chart = {base: 0}
    queue = [base]
    while queue:
        c = queue.pop(0)
        for v in c:
            i = type_of[v]
            nbrs = panels[(tuple(x for x in c if x != v), i)]
            if len(nbrs) != 2:
                raise ChartError("apartment is not thin")
            d = nbrs[0] if nbrs[1] == c else nbrs[1]
            w = group.mul_index(chart[c], gen_index[i])
            if d in chart:
                if chart[d] != w:
                    raise ChartError("inconsistent gallery walk")
            else:
                chart[d] = w
                queue.append(d)
    if len(chart) != len(chambers) or sorted(chart.values()) != list(range(group.order())):
        raise ChartError("chambers do not biject with the Coxeter group")
    vertex_map: dict[int, int] = {}
    for c, w in chart.items():
        for v in c:
            image = cc.vertex_of[type_of[v]][w]
            if vertex_map.setdefault(v, image) != image:
                raise ChartError("chart is not well defined on vertices")
    if len(set(vertex_map.values())) != len(vertex_map):
        raise ChartError("chart is not injective on vertices")
    return chart, vertex_map


class SphericalBuilding:
    def __init__(
        self,
        complex: SimplicialComplex,
        diagram: CoxeterDiagram,
        type_of: Mapping[int, int],
        apartments: Sequence[SimplicialComplex],
    ):
        self.complex = complex
        self.diagram = diagram
        self.type_of = dict(type_of)
        self.coxeter = coxeter_complex(diagram)
        apts = []
        for a in sorted(apartments, key=lambda a: a.sorted_facets()):
            base = min(a.facets)
            chart, vmap = build_chart(a, self.type_of, self.coxeter, base)
            apts.append(Apartment(a, chart, vmap, base))
        self.apartments: list[Apartment] = apts

    @property
    def rank(self) -> int:
        return self.diagram.rank

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def chambers(self) -> list[Simplex]:
        return self.complex.faces(self.dim)

    def apartments_containing(self, *faces: Simplex) -> list[int]:
        return [i for i, a in enumerate(self.apartments) if all(f in a for f in faces)]

    def to_json(self) -> dict:
        data = self.complex.to_json()
        data["types"] = [self.type_of.get(v, -1) for v in range(self.complex.vertex_count)]
        data["diagram"] = self.diagram.to_json()
        data["apartments"] = [[list(f) for f in a.key()] for a in self.apartments]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "SphericalBuilding":
        cx = SimplicialComplex.from_json(data)
        types = {v: t for v, t in enumerate(data["types"]) if t >= 0}
        apts = [SimplicialComplex(a, cx.vertex_count) for a in data["apartments"]]
        return cls(cx, CoxeterDiagram.from_json(data["diagram"]), types, apts)


def chart_anchored(bldg: SphericalBuilding, apt: Apartment, c0: Simplex) -> dict[Simplex, int]:
    if c0 not in apt.faces.facets:
        raise ValueError("chamber not in apartment")
    chart, _ = build_chart(apt.faces, bldg.type_of, bldg.coxeter, c0)
    return chart


def thin_building(d: CoxeterDiagram) -> SphericalBuilding:
    """The Coxeter complex as a building with itself as only apartment."""
    cc = coxeter_complex(d)
    return SphericalBuilding(cc.complex, d, cc.type_of, [cc.complex])


# --- the A_n flag complex over F_q -------------------------------------------

def _span(vectors: Sequence[tuple[int, ...]], q: int) -> frozenset[tuple[int, ...]]:
    dim = len(vectors[0])
    out = set()
    for coeffs in product(range(q), repeat=len(vectors)):
        out.add(tuple(sum(c * v[k] for c, v in zip(coeffs, vectors)) % q for k in range(dim)))
    return frozenset(out)


def an_building(n: int, q: int) -> SphericalBuilding:
    """Flag complex of proper nonzero subspaces of F_q^(n+1).

    Type of a vertex = (subspace dimension - 1).  Apartments come from
    frames: sets of n+1 points spanning the space.
    """
    if n not in (1, 2) or q not in (2, 3):
        raise ValueError("an_building supports n in {1, 2} and q in {2, 3}")
    dim = n + 1
    points = [
        v for v in product(range(q), repeat=dim)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    subspaces: list[list[frozenset]] = [[_span([p], q) for p in points]]
    for k in range(2, dim):
        found = {}
        for combo in combinations(points, k):
            s = _span(list(combo), q)
            if len(s) == q ** k:
                found.setdefault(s, None)
        subspaces.append(list(found))
    vertex_id: dict[frozenset, int] = {}
    type_of: dict[int, int] = {}
    for t, layer in enumerate(subspaces):
        for s in sorted(layer, key=lambda s: sorted(s)):
            type_of[len(vertex_id)] = t
            vertex_id[s] = len(vertex_id)

    flags: list[list[frozenset]] = [[s] for s in subspaces[0]]
    for layer in subspaces[1:]:
        flags = [f + [s] for f in flags for s in layer if f[-1] < s]
    cx = SimplicialComplex([[vertex_id[s] for s in f] for f in flags], len(vertex_id))

    apartments = []
    for frame in combinations(points, dim):
        if len(_span(list(frame), q)) != q ** dim:
            continue
        facets = []
        for order in permutations(frame):
            facets.append([vertex_id[_span(list(order[:k]), q)] for k in range(1, dim)])
        apartments.append(SimplicialComplex(facets, len(vertex_id)))
    return SphericalBuilding(cx, CoxeterDiagram.of_type("A", n), type_of, apartments)


def weak_join(bldg: SphericalBuilding, n: int) -> SphericalBuilding:
    """Delta * S^n with apartments A * S^n and diagram extended by n+1 A_1's.

    The i-th antipodal pair of S^n gets type rank + i.  ``n = -1`` returns
    the building unchanged.
    """
    if n == -1:
        return bldg
    if n < -1:
        raise ValueError("sphere dimension must be >= -1")
    sphere = sphere_complex(n)
    cx = join(bldg.complex, sphere)
    shift = bldg.complex.vertex_count
    types = dict(bldg.type_of)
    for v in range(sphere.vertex_count):
        types[shift + v] = bldg.rank + v // 2
    diagram = bldg.diagram
    for _ in range(n + 1):
        diagram = diagram.direct_sum(CoxeterDiagram.of_type("A", 1))
    apts = [join(a.faces, sphere) for a in bldg.apartments]
    return SphericalBuilding(cx, diagram, types, apts)


# --- operations ---------------------------------------------------------------

def apartment_containing(bldg: SphericalBuilding, c: Simplex, d: Simplex) -> Apartment:
    ids = bldg.apartments_containing(tuple(c), tuple(d))
    if not ids:
        raise ValueError("axiom (B1) violated")
    return bldg.apartments[ids[0]]


def opposite_chambers(bldg: SphericalBuilding, c0: Simplex) -> list[Simplex]:
    c0 = tuple(c0)
    group = bldg.coxeter.group
    w0 = group.index[group.longest_element]
    out = set()
    for i in bldg.apartments_containing(c0):
        chart = chart_anchored(bldg, bldg.apartments[i], c0)
        out.update(c for c, w in chart.items() if w == w0)
    return sorted(out)


def fundamental_class(bldg: SphericalBuilding, apt: Apartment, c0: Simplex) -> Chain:
    """Fundamental cycle of `apt` with the type-ordered C0 oriented positively.

    The type-ordered chamber with chart value w gets sign (-1)^length(w);
    adjacent chambers then induce opposite orientations on their common
    panel, so the boundary cancels panel by panel.
    """
    c0 = tuple(c0)
    if c0 not in apt.faces.facets:
        raise ValueError("chamber not in apartment")
    chart = chart_anchored(bldg, apt, c0)
    group = bldg.coxeter.group
    lengths = [group.length(w) for w in group.elements]
    terms = [
        (_type_ordered(c, bldg.type_of), (-1) ** lengths[w]) for c, w in chart.items()
    ]
    return Chain.from_oriented(bldg.dim, terms)


@dataclass
class SolomonTitsBasis:
    chamber: Simplex
    opposite: list[Simplex]
    apartments: list[Apartment]
    cycles: list[Chain]
    invariant_factors: list[int]
    rank: int
    betti: int

    @property
    def verified(self) -> bool:
        return (
            self.rank == self.betti == len(self.cycles)
            and all(d == 1 for d in self.invariant_factors)
        )


def solomon_tits_basis(bldg: SphericalBuilding, c0: Simplex) -> SolomonTitsBasis:
    c0 = tuple(c0)
    opp = opposite_chambers(bldg, c0)
    apts = [apartment_containing(bldg, c0, d) for d in opp]
    cycles = [fundamental_class(bldg, a, c0) for a in apts]
    chambers = bldg.chambers
    col = {c: j for j, c in enumerate(chambers)}
    entries = {(i, col[c]): v for i, z in enumerate(cycles) for c, v in z.coefficients.items()}
    divisors, rank = smith_normal_form(IntegerMatrix(len(cycles), len(chambers), entries))
    # a 0-dimensional building is a wedge of 0-spheres: use reduced H_0
    betti = homology(bldg.complex, bldg.dim, reduced=bldg.dim == 0).betti
    return SolomonTitsBasis(c0, opp, apts, cycles, divisors, rank, betti)


@dataclass
class ThicknessReport:
    thick: bool
    panel_chambers: dict[Simplex, int]
    face_apartments: dict[Simplex, int]

    @property
    def apartment_criterion(self) -> bool:
        return all(n >= 3 for n in self.face_apartments.values())

    def to_json(self) -> dict:
        return {
            "thick": self.thick,
            "panel_criterion": all(n >= 3 for n in self.panel_chambers.values()),
            "apartment_criterion": self.apartment_criterion,
            "panels": [{"panel": list(p), "chambers": n} for p, n in sorted(self.panel_chambers.items())],
            "min_apartments_per_face": min(self.face_apartments.values(), default=None),
        }


def thickness_report(bldg: SphericalBuilding) -> ThicknessReport:
    """Chambers per panel and apartments per non-maximal face.

    Thick means every panel lies in at least three chambers.  The count of
    apartments through each non-maximal face is reported alongside.
    """
    m = bldg.dim
    panels: dict[Simplex, int] = {}
    for c in bldg.chambers:
        for v in c:
            p = tuple(x for x in c if x != v)
            panels[p] = panels.get(p, 0) + 1
    non_max = [()] + [f for k in range(m) for f in bldg.complex.faces(k)]
    face_apts = {f: len(bldg.apartments_containing(f)) for f in non_max}
    thick = bool(panels) and all(n >= 3 for n in panels.values())
    return ThicknessReport(thick, panels, face_apts)


def is_thick(bldg: SphericalBuilding) -> bool:
    return thickness_report(bldg).thick


def simplex_as_apartment_intersection(bldg: SphericalBuilding, a: Simplex) -> list[Apartment]:
    """Fewest apartments whose intersection is exactly the closed simplex a."""
    if not is_thick(bldg):
        raise ValueError("intersection representation requires thickness")
    a = tuple(a)
    target = SimplicialComplex([a]).all_faces
    candidates = bldg.apartments_containing(a)
    for size in range(1, len(candidates) + 1):
        for combo in combinations(candidates, size):
            common = frozenset.intersection(*(bldg.apartments[i].face_set for i in combo))
            if common == target:
                return [bldg.apartments[i] for i in combo]
    raise ValueError(f"simplex {a} is not an intersection of apartments")


@dataclass
class AxiomReport:
    checks: dict[str, bool]
    details: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "details": self.details}


def verify_building_axioms(bldg: SphericalBuilding) -> AxiomReport:
    """Exhaustive check of (B1) and (B2) plus typing of chambers.

    (B2) is tested by enumerating, for every pair of apartments, all
    type-preserving isomorphisms (one per Coxeter group element) and their
    fixed vertex sets.
    """
    checks: dict[str, bool] = {}
    details: dict[str, object] = {}
    rank = bldg.rank
    checks["chambers_typed"] = all(
        sorted(bldg.type_of[v] for v in c) == list(range(rank)) for c in bldg.complex.facets
    )
    checks["apartments_are_subcomplexes"] = all(
        a.face_set <= bldg.complex.all_faces for a in bldg.apartments
    )

    faces = sorted(bldg.complex.all_faces)
    masks = {f: 0 for f in faces}
    for i, a in enumerate(bldg.apartments):
        for f in a.face_set:
            masks[f] |= 1 << i
    b1_fail = []
    for x in range(len(faces)):
        for y in range(x, len(faces)):
            if not masks[faces[x]] & masks[faces[y]]:
                b1_fail.append([list(faces[x]), list(faces[y])])
    checks["B1"] = not b1_fail
    details["B1"] = {"pairs_checked": len(faces) * (len(faces) + 1) // 2, "failures": b1_fail[:5]}

    cc = bldg.coxeter
    actions = [cc.left_action(g) for g in range(cc.group.order())]
    b2_fail = []
    pairs = 0
    for i, a in enumerate(bldg.apartments):
        for j in range(i + 1, len(bldg.apartments)):
            b = bldg.apartments[j]
            common = sorted(a.face_set & b.face_set)
            if not common:
                continue
            inv_b = {w: v for v, w in b.vertex_map.items()}
            fixed_sets = []
            for act in actions:
                fixed_sets.append(frozenset(
                    v for v, w in a.vertex_map.items() if inv_b[act[w]] == v
                ))
            for x in range(len(common)):
                for y in range(x, len(common)):
                    pairs += 1
                    need = set(common[x]) | set(common[y])
                    if not any(need <= fs for fs in fixed_sets):
                        b2_fail.append([i, j, list(common[x]), list(common[y])])
    checks["B2"] = not b2_fail
    details["B2"] = {"pairs_checked": pairs, "failures": b2_fail[:5]}
    return AxiomReport(checks, details)
