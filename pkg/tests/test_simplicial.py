import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buildgeom.simplicial import (
    Chain,
    SimplicialComplex,
    betti_over_q,
    boundary_matrix,
    fundamental_cycle_of_circle,
    homology,
    is_isomorphic,
    join,
    link,
    local_homology,
    make_complex,
    oriented,
    sphere_complex,
    star,
    support,
    suspend_cycle,
)
from buildgeom.snf import smith_normal_form


# --- construction -------------------------------------------------------------

def test_triangle_boundary():
    k = make_complex([[0, 1], [1, 2], [0, 2]])
    assert k.f_vector() == [3, 3]


def test_full_triangle():
    assert make_complex([[0, 1, 2]]).f_vector() == [3, 3, 1]


def test_absorption():
    assert make_complex([[0, 1], [0, 1, 2]]) == make_complex([[0, 1, 2]])


def test_empty_facet_list_rejected():
    with pytest.raises(ValueError, match="empty complex not constructible"):
        make_complex([])


def test_json_round_trip(octahedron):
    data = octahedron.to_json()
    assert set(data) == {"vertices", "facets"}
    assert SimplicialComplex.from_json(data) == octahedron


def test_oriented_sign():
    assert oriented([2, 0, 1]) == ((0, 1, 2), 1)
    assert oriented([1, 0, 2]) == ((0, 1, 2), -1)


# --- spheres, joins, links ----------------------------------------------------

def test_sphere_minus_one_is_empty():
    assert sphere_complex(-1).is_empty()
    with pytest.raises(ValueError):
        sphere_complex(-2)


def test_sphere_zero():
    s0 = sphere_complex(0)
    assert s0.f_vector() == [2]
    assert homology(s0, 0).betti == 2


def test_octahedron(octahedron):
    assert octahedron.f_vector() == [6, 12, 8]
    assert homology(octahedron, 2).betti == 1
    assert homology(octahedron, 1).betti == 0


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_sphere_homology(n):
    s = sphere_complex(n)
    assert s.f_vector()[0] == 2 * n + 2
    for k in range(n + 1):
        h = homology(s, k, reduced=True)
        assert h.betti == (1 if k == n else 0) and not h.torsion


def test_s0_join_s0_is_square():
    sq = join(sphere_complex(0), sphere_complex(0))
    assert sq.f_vector() == [4, 4]
    assert homology(sq, 1).betti == 1


def test_join_with_empty(hexagon):
    assert join(hexagon, sphere_complex(-1)) == hexagon


def test_hexagon_suspension(hexagon):
    s = join(hexagon, sphere_complex(0))
    assert homology(s, 2).betti == 1 and homology(s, 1).betti == 0


def test_join_faces_are_unions():
    k, l = make_complex([[0, 1]]), make_complex([[0], [1]])
    j = join(k, l)
    assert set(j.facets) == {(0, 1, 2), (0, 1, 3)}


def test_links(hexagon, octahedron):
    assert link(hexagon, 3).f_vector() == [2]
    assert link(make_complex([[0, 1, 2]]), 0) == make_complex([[1, 2]])
    for v in octahedron.vertices:
        lk = link(octahedron, v)
        assert lk.f_vector() == [4, 4] and homology(lk, 1).betti == 1
    with pytest.raises(ValueError):
        link(hexagon, 17)


def test_star_contains_link(octahedron):
    st_ = star(octahedron, 0)
    assert link(octahedron, 0) <= st_


# --- boundary, homology -------------------------------------------------------

def test_boundary_triangle_boundary():
    k = make_complex([[0, 1], [1, 2], [0, 2]])
    m = boundary_matrix(k, 1).to_dense()
    assert len(m) == 3 and len(m[0]) == 3
    for j in range(3):
        col = sorted(m[i][j] for i in range(3))
        assert col == [-1, 0, 1]
    assert smith_normal_form(boundary_matrix(k, 1)) == ([1, 1], 2)


def test_boundary_full_triangle():
    m = boundary_matrix(make_complex([[0, 1, 2]]), 2).to_dense()
    # canonical edge order (0,1), (0,2), (1,2)
    assert [row[0] for row in m] == [1, -1, 1]


def test_boundary_degree_zero(hexagon):
    assert boundary_matrix(hexagon, 0).rows == 0
    red = boundary_matrix(hexagon, 0, reduced=True)
    assert red.rows == 1 and red.to_dense() == [[1] * 6]


def test_boundary_out_of_range(hexagon):
    with pytest.raises(ValueError):
        boundary_matrix(hexagon, 3)
    with pytest.raises(ValueError):
        homology(hexagon, 5)


def test_boundary_squares_to_zero(octahedron):
    d1, d2 = boundary_matrix(octahedron, 1), boundary_matrix(octahedron, 2)
    assert (d1 @ d2).is_zero()


def test_hexagon_homology(hexagon):
    h = homology(hexagon, 1)
    assert h.betti == 1 and not h.torsion


def test_two_hexagons():
    k = make_complex([[i, (i + 1) % 6] for i in range(6)] + [[6 + i, 6 + (i + 1) % 6] for i in range(6)])
    assert homology(k, 1).betti == 2
    assert homology(k, 0).betti == 2


def test_projective_plane_torsion():
    rp2 = make_complex([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
    ])
    assert homology(rp2, 1).torsion == (2,)
    assert homology(rp2, 2).betti == 0
    assert betti_over_q(rp2, 1) == 0


random_complexes = st.lists(
    st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=8
).map(make_complex)


@settings(max_examples=60, deadline=None)
@given(random_complexes)
def test_euler_characteristic_matches_betti(k):
    betti = [homology(k, d).betti for d in range(k.dim + 1)]
    assert sum((-1) ** d * b for d, b in enumerate(betti)) == k.euler_characteristic()
    assert betti == [betti_over_q(k, d) for d in range(k.dim + 1)]


# --- chains, supports, suspension ---------------------------------------------

def test_hexagon_fundamental_cycle(hexagon):
    z = fundamental_cycle_of_circle(hexagon)
    assert z.is_cycle()
    assert support(z, hexagon) == hexagon


def test_zero_chain_support(hexagon):
    assert support(Chain(1, {}), hexagon).is_empty()


def test_support_needs_cycle(hexagon):
    z = Chain.from_oriented(1, [((0, 1), 1)])
    with pytest.raises(ValueError, match="support defined here only for cycles"):
        support(z, hexagon)


def test_chain_json_round_trip(hexagon):
    z = fundamental_cycle_of_circle(hexagon)
    data = z.to_json()
    assert set(data) == {"degree", "terms"}
    assert Chain.from_json(data) == z


def test_suspension_n0(hexagon):
    z = fundamental_cycle_of_circle(hexagon)
    sz, cx = suspend_cycle(z, hexagon, 0)
    assert sz.degree == 2 and sz.is_cycle()
    assert support(sz, cx) == join(hexagon, sphere_complex(0))


def test_suspension_n1(hexagon):
    z = fundamental_cycle_of_circle(hexagon)
    sz, cx = suspend_cycle(z, hexagon, 1)
    assert sz.degree == 3 and sz.is_cycle()
    assert support(sz, cx) == join(hexagon, sphere_complex(1))


def test_suspension_of_zero(hexagon):
    for n in (0, 1, 2):
        sz, _ = suspend_cycle(Chain(1, {}), hexagon, n)
        assert sz.is_zero() and sz.degree == 2 + n


def test_suspension_rejects_non_cycle(hexagon):
    with pytest.raises(ValueError):
        suspend_cycle(Chain.from_oriented(1, [((0, 1), 1)]), hexagon, 0)


def test_suspension_generates_top_homology(hexagon):
    # the suspended fundamental class of S^1 must generate H_2(S^2) = Z
    z = fundamental_cycle_of_circle(hexagon)
    sz, cx = suspend_cycle(z, hexagon, 0)
    assert set(abs(c) for c in sz.coefficients.values()) == {1}
    assert len(sz.coefficients) == len(cx.facets)


# --- local homology -----------------------------------------------------------

def test_local_homology_hexagon(hexagon):
    assert local_homology(hexagon, 0, 1).betti == 1
    assert local_homology(hexagon, 0, 0).is_zero()


def test_local_homology_octahedron(octahedron):
    for v in octahedron.vertices:
        assert local_homology(octahedron, v, 2).betti == 1
        assert local_homology(octahedron, v, 1).is_zero()


def test_local_homology_fano_point(fano):
    point = next(v for v in fano.complex.vertices if fano.type_of[v] == 0)
    assert local_homology(fano.complex, point, 1).betti == 2


def test_local_homology_missing_vertex(hexagon):
    with pytest.raises(ValueError):
        local_homology(hexagon, 99, 1)


# --- isomorphism --------------------------------------------------------------

def test_isomorphism_found_and_valid(hexagon):
    perm = list(range(6))
    random.Random(3).shuffle(perm)
    other = hexagon.relabel(dict(enumerate(perm)))
    iso = is_isomorphic(hexagon, other)
    assert iso is not None
    assert hexagon.relabel(iso) == other


def test_non_isomorphic(hexagon):
    two_triangles = make_complex([[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]])
    assert is_isomorphic(hexagon, two_triangles) is None
