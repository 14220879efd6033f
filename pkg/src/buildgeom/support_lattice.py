"""Lattices of supports of top cycles, their indecomposables, reconstruction.

A subcomplex of the ground complex is encoded as a bitmask over the ground
faces, so union and intersection are ``|`` and ``&``.  The lattice generated
by a family of subcomplexes under union and intersection is distributive,
and every element is a union of finite intersections of generators.  We
therefore store only the intersection closure ``meets`` of the generators;
the lattice itself is the set of nonempty unions of members of ``meets``.
Materializing it is hopeless in general (the Fano lattice contains every
subcomplex of the Fano graph), so membership, counting and sampling all
work from ``meets``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .simplicial import Chain, Simplex, SimplicialComplex, is_isomorphic, join, support


class SupportLattice:
    def __init__(self, ground: SimplicialComplex, generators: Sequence[SimplicialComplex]):
        self.ground = ground
        self.faces: list[Simplex] = sorted(ground.all_faces, key=lambda f: (len(f), f))
        self._bit = {f: i for i, f in enumerate(self.faces)}
        for g in generators:
            if not g.all_faces <= ground.all_faces:
                raise ValueError("generator is not a subcomplex of the ground complex")
        self.generators: list[int] = sorted({self.to_mask(g) for g in generators})
        self.meets: list[int] = _intersection_closure(self.generators)

    def to_mask(self, k: SimplicialComplex | Iterable[Simplex]) -> int:
        faces = k.all_faces if isinstance(k, SimplicialComplex) else SimplicialComplex(k).all_faces
        mask = 0
        for f in faces:
            mask |= 1 << self._bit[f]
        return mask

    def to_complex(self, mask: int) -> SimplicialComplex:
        faces = [self.faces[i] for i in range(len(self.faces)) if mask >> i & 1]
        return SimplicialComplex(faces, self.ground.vertex_count)

    def __contains__(self, k) -> bool:
        mask = k if isinstance(k, int) else self.to_mask(k)
        below = [m for m in self.meets if m & ~mask == 0]
        if not below:
            return False
        union = 0
        for m in below:
            union |= m
        return union == mask

    @cached_property
    def bottom(self) -> int:
        out = self.meets[0] if self.meets else 0
        for m in self.meets:
            out &= m
        return out

    @cached_property
    def indecomposable_masks(self) -> list[int]:
        out = []
        for x in self.meets:
            union = 0
            for m in self.meets:
                if m != x and m & ~x == 0:
                    union |= m
            if union != x:
                out.append(x)
        return out

    def element_count(self) -> int:
        """Number of lattice elements, as the number of downsets of the
        poset of indecomposables above the bottom (finite distributive
        lattices are determined by their join-irreducibles)."""
        irr = [x for x in self.indecomposable_masks if x != self.bottom]
        n = len(irr)
        comparable = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and (irr[i] & ~irr[j] == 0 or irr[j] & ~irr[i] == 0):
                    comparable[i] |= 1 << j

        @lru_cache(maxsize=None)
        def antichains(avail: int) -> int:
            if not avail:
                return 1
            # branch on the available element with most comparabilities
            best = max(
                (i for i in range(n) if avail >> i & 1),
                key=lambda i: bin(comparable[i] & avail).count("1"),
            )
            rest = avail & ~(1 << best)
            return antichains(rest) + antichains(rest & ~comparable[best])

        return antichains((1 << n) - 1)

    def random_element(self, rng: random.Random) -> int:
        picks = [m for m in self.meets if rng.random() < 0.5] or [rng.choice(self.meets)]
        out = 0
        for m in picks:
            out |= m
        return out

    def elements(self, limit: int = 100000) -> list[int]:
        """All lattice elements, for small lattices only."""
        seen = set(self.meets)
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for m in self.meets:
                    u = a | m
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
                        if len(seen) > limit:
                            raise ValueError("lattice too large to enumerate")
            frontier = nxt
        return sorted(seen)


def _intersection_closure(gens: list[int]) -> list[int]:
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                x = a & g
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen)


def generate_lattice(ground: SimplicialComplex, generators: Sequence[SimplicialComplex]) -> SupportLattice:
    return SupportLattice(ground, generators)


def building_lattice(bldg) -> SupportLattice:
    """Lattice generated by all apartment supports of a building.

    Supports of the Solomon-Tits basis cycles are apartments, so they are
    already among the generators.
    """
    return SupportLattice(bldg.complex, [a.faces for a in bldg.apartments])


def indecomposables(lat: SupportLattice) -> list[SimplicialComplex]:
    return [lat.to_complex(m) for m in lat.indecomposable_masks]


def minimal_element(lat: SupportLattice) -> SimplicialComplex:
    if not lat.meets:
        raise ValueError("lattice is empty")
    minimal = [x for x in lat.meets if not any(m != x and m & ~x == 0 for m in lat.meets)]
    if len(minimal) != 1:
        raise ValueError("minimal element of the lattice is not unique")
    return lat.to_complex(minimal[0])


@dataclass
class Reconstruction:
    complex: SimplicialComplex
    minimal: SimplicialComplex
    joined: SimplicialComplex
    isomorphism: dict[int, int] | None

    @property
    def isomorphic(self) -> bool:
        return self.isomorphism is not None


def reconstruct(lat: SupportLattice) -> Reconstruction:
    """Rebuild the complex from the poset of indecomposables.

    Each indecomposable other than the minimum is a_bar * B with B the
    minimal element; deleting the faces that touch B leaves a_bar.  The
    minimal indecomposables are the vertices; an element's vertex set must
    determine it and every nonempty subset must occur, i.e. the poset must
    be the face poset of a simplicial complex.  The result, joined back
    with B, is compared with the ground complex up to isomorphism.
    """
    bottom_cx = minimal_element(lat)
    bottom = lat.to_mask(bottom_cx)
    bottom_vertices = set(bottom_cx.vertices)
    elems = [x for x in lat.indecomposable_masks if x != bottom]
    if not elems:
        raise ValueError("reconstruction failed: no indecomposables above the minimum")

    quotient = []
    for x in elems:
        faces = frozenset(
            f for f in lat.to_complex(x).all_faces if not bottom_vertices.intersection(f)
        )
        if not faces:
            raise ValueError("reconstruction failed: element does not extend the minimum")
        quotient.append(faces)

    atoms = [i for i, q in enumerate(quotient) if not any(p < q for p in quotient)]
    atom_sets = []
    for q in quotient:
        atom_sets.append(frozenset(a for a in atoms if quotient[a] <= q))
    if len(set(atom_sets)) != len(atom_sets):
        raise ValueError("reconstruction failed: elements not determined by their vertices")
    present = set(atom_sets)
    for i, s in enumerate(atom_sets):
        if not s:
            raise ValueError("reconstruction failed: element without vertices")
        for j, t in enumerate(atom_sets):
            if (quotient[i] <= quotient[j]) != (s <= t):
                raise ValueError("reconstruction failed: order not given by vertex sets")
        for a in s:
            if len(s) > 1 and s - {a} not in present:
                raise ValueError("reconstruction failed: poset is not simplicial")

    label = {a: k for k, a in enumerate(atoms)}
    complex_ = SimplicialComplex([[label[a] for a in s] for s in atom_sets], len(atoms))
    relabel = {v: k for k, v in enumerate(sorted(bottom_vertices))}
    minimal = bottom_cx.relabel(relabel) if not bottom_cx.is_empty() else SimplicialComplex([], 0)
    joined = join(complex_, minimal)
    return Reconstruction(complex_, minimal, joined, is_isomorphic(joined, lat.ground))


def sample_cycle_supports(
    lat: SupportLattice,
    ground: SimplicialComplex,
    basis: Sequence[Chain],
    samples: int,
    rng: random.Random,
    coef_range: int = 3,
) -> list[dict]:
    """Supports of random integer combinations of basis cycles.

    Returns one record per sample with the support, whether it is pure of
    top dimension and whether it lies in the lattice.
    """
    out = []
    for _ in range(samples):
        coefs = [rng.randint(-coef_range, coef_range) for _ in basis]
        z = Chain(ground.dim, {})
        for c, b in zip(coefs, basis):
            if c:
                z = z + c * b
        s = support(z, ground)
        out.append({
            "coefficients": coefs,
            "cycle": z,
            "support": s,
            "pure": s.is_empty() or (s.is_pure() and s.dim == ground.dim),
            "in_lattice": lat.to_mask(s) in lat,
        })
    return out
