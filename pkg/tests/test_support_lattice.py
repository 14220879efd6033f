import random
from itertools import combinations

import pytest

from buildgeom.building import solomon_tits_basis, weak_join
from buildgeom.simplicial import SimplicialComplex, join, make_complex, sphere_complex
from buildgeom.support_lattice import (
    SupportLattice,
    building_lattice,
    generate_lattice,
    indecomposables,
    minimal_element,
    reconstruct,
    sample_cycle_supports,
)


@pytest.fixture(scope="module")
def fano_lattice(fano):
    return building_lattice(fano)


@pytest.fixture(scope="module")
def fano_s0_lattice(fano_s0):
    return building_lattice(fano_s0)


def hexagon_on(vs):
    return make_complex([[vs[i], vs[(i + 1) % 6]] for i in range(6)])


def test_single_generator(hexagon):
    lat = generate_lattice(hexagon, [hexagon])
    assert lat.elements() == [lat.to_mask(hexagon)]
    assert [c for c in indecomposables(lat)] == [hexagon]
    assert minimal_element(lat) == hexagon


def test_two_disjoint_hexagons():
    a, b = hexagon_on(range(6)), hexagon_on(range(6, 12))
    ground = SimplicialComplex(list(a.facets) + list(b.facets))
    lat = generate_lattice(ground, [a, b])
    elems = lat.elements()
    assert len(elems) == 4 == lat.element_count()
    assert set(elems) == {0, lat.to_mask(a), lat.to_mask(b), lat.to_mask(ground)}


def test_generator_order_irrelevant(fano):
    gens = [a.faces for a in fano.apartments]
    shuffled = gens[:]
    random.Random(7).shuffle(shuffled)
    assert generate_lattice(fano.complex, gens).meets == generate_lattice(fano.complex, shuffled).meets


def test_generator_must_be_subcomplex(hexagon):
    with pytest.raises(ValueError):
        generate_lattice(hexagon, [make_complex([[0, 3]])])


def test_fano_contains_closed_faces(fano, fano_lattice):
    for f in fano.complex.all_faces:
        assert SimplicialComplex([f]) in fano_lattice


def test_fano_indecomposables_are_closed_faces(fano, fano_lattice):
    ind = indecomposables(fano_lattice)
    assert len(ind) == 35
    closed_faces = {SimplicialComplex([f]).sorted_facets().__repr__() for f in fano.complex.all_faces}
    got = {c.sorted_facets().__repr__() for c in ind}
    assert got == closed_faces


def test_fano_element_count_oracle(fano, fano_lattice):
    # Elements are the subcomplexes of the Fano graph: choose a vertex set S
    # and any subset of the edges spanned by S, plus nothing else.
    verts = fano.complex.vertices
    edges = fano.complex.faces(1)
    total = 0
    for mask in range(1 << len(verts)):
        chosen = {v for i, v in enumerate(verts) if mask >> i & 1}
        inside = sum(1 for e in edges if set(e) <= chosen)
        total += 2 ** inside
    assert fano_lattice.element_count() == total


def test_fano_minimum_is_empty(fano_lattice):
    assert minimal_element(fano_lattice).is_empty()


def test_fano_reconstruction(fano, fano_lattice):
    rec = reconstruct(fano_lattice)
    assert rec.isomorphic
    assert rec.complex.f_vector() == [14, 21]
    assert fano.complex.relabel(rec.isomorphism) == fano.complex


def test_join_indecomposables(fano, fano_s0, fano_s0_lattice):
    s0 = SimplicialComplex([(14,), (15,)], fano_s0.complex.vertex_count)
    n = fano.complex.vertex_count
    expected = {repr(join(SimplicialComplex([f], n), sphere_complex(0)).sorted_facets()) for f in fano.complex.all_faces}
    expected.add(repr(s0.sorted_facets()))
    got = {repr(c.sorted_facets()) for c in indecomposables(fano_s0_lattice)}
    assert got == expected


def test_join_minimum(fano_s0, fano_s0_lattice):
    assert minimal_element(fano_s0_lattice) == SimplicialComplex([(14,), (15,)], fano_s0.complex.vertex_count)


def test_join_reconstruction(fano, fano_s0_lattice):
    rec = reconstruct(fano_s0_lattice)
    assert rec.isomorphic
    assert rec.complex.f_vector() == fano.complex.f_vector()
    assert rec.minimal.f_vector() == [2]


def test_join_s1_reconstruction(fano):
    lat = building_lattice(weak_join(fano, 1))
    rec = reconstruct(lat)
    assert rec.minimal.f_vector() == [4, 4]
    assert rec.isomorphic


def test_thin_reconstruction_fails(thin_hexagon):
    with pytest.raises(ValueError, match="reconstruction failed"):
        reconstruct(building_lattice(thin_hexagon))


def test_non_unique_minimum():
    a, b = hexagon_on(range(6)), hexagon_on(range(6, 12))
    ground = SimplicialComplex(list(a.facets) + list(b.facets))
    lat = SupportLattice(ground, [a, b])
    # drop the empty meet by hand: two incomparable minimal elements remain
    lat.meets = [m for m in lat.meets if m]
    with pytest.raises(ValueError, match="not unique"):
        minimal_element(lat)


def test_distributivity(fano_lattice):
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (fano_lattice.random_element(rng) for _ in range(3))
        assert (a | b) & c == (a & c) | (b & c)
        assert a in fano_lattice and (a | b) in fano_lattice and (a & b) in fano_lattice


def test_random_cycle_supports_lie_in_lattice(fano, fano_lattice):
    basis = solomon_tits_basis(fano, fano.chambers[0]).cycles
    rows = sample_cycle_supports(fano_lattice, fano.complex, basis, 200, random.Random(5))
    assert all(r["pure"] for r in rows)
    assert all(r["in_lattice"] for r in rows)


def test_membership_rejects_non_elements(fano_s0, fano_s0_lattice):
    # a single chamber of the join, without S^0, is not a union of meets
    c = fano_s0.chambers[0]
    assert SimplicialComplex([c]) not in fano_s0_lattice
    edge = tuple(v for v in c if v < 14)
    assert SimplicialComplex([edge]) not in fano_s0_lattice
