from math import factorial

import pytest

from buildgeom.coxeter import (
    CoxeterDiagram,
    CoxeterGroup,
    coxeter_complex,
    generate_group,
    longest_element,
    opposition,
)
from buildgeom.simplicial import homology

CASES = [
    (("A", 1), 2),
    (("A", 2), 6),
    (("A", 3), 24),
    (("B", 2), 8),
    (("B", 3), 48),
    (("I2", 5), 10),
    (("I2", 8), 16),
    (("I2", 12), 24),
]


@pytest.mark.parametrize("kind,order", CASES)
def test_group_orders(kind, order):
    assert len(generate_group(CoxeterDiagram.of_type(*kind))) == order


def test_order_formulas():
    for n in (1, 2, 3):
        assert len(generate_group(CoxeterDiagram.of_type("A", n))) == factorial(n + 1)
    for n in (2, 3):
        assert len(generate_group(CoxeterDiagram.of_type("B", n))) == 2 ** n * factorial(n)


def test_elements_distinct_and_closed():
    g = CoxeterGroup(CoxeterDiagram.of_type("B", 3))
    elems = set(g.elements)
    assert len(elems) == g.order()
    for a in g.elements[:10]:
        for s in g.generators:
            assert g.multiply(a, s) in elems


def test_generators_are_involutions_with_braid_orders():
    d = CoxeterDiagram.of_type("B", 3)
    g = CoxeterGroup(d)
    for i, s in enumerate(g.generators):
        assert g.multiply(s, s) == g.identity
        for j, t in enumerate(g.generators):
            if i < j:
                st, w = g.multiply(s, t), g.identity
                for _ in range(d.m[i][j]):
                    w = g.multiply(w, st)
                assert w == g.identity


def test_longest_element_a2():
    g = CoxeterGroup(CoxeterDiagram.of_type("A", 2))
    assert g.length(g.longest_element) == 3
    assert longest_element(CoxeterDiagram.of_type("A", 2)) == g.longest_element


@pytest.mark.parametrize("kind,positive_roots", [(("A", 3), 6), (("B", 3), 9), (("I2", 7), 7)])
def test_longest_length_counts_positive_roots(kind, positive_roots):
    g = CoxeterGroup(CoxeterDiagram.of_type(*kind))
    assert g.length(g.longest_element) == positive_roots


def test_opposition():
    d = CoxeterDiagram.of_type("A", 2)
    g = CoxeterGroup(d)
    assert opposition(g.identity, g.longest_element, d)
    for w in g.elements:
        opp = [u for u in g.elements if g.opposite(w, u)]
        assert len(opp) == 1
        # involution
        assert [u for u in g.elements if g.opposite(opp[0], u)] == [w]


@pytest.mark.parametrize("kind,_", CASES + [(("A", 1), 2)])
def test_coxeter_complex_is_sphere(kind, _):
    d = CoxeterDiagram.of_type(*kind)
    cc = coxeter_complex(d)
    cx = cc.complex
    assert len(cx.facets) == cc.group.order()
    top = d.rank - 1
    for k in range(top + 1):
        h = homology(cx, k, reduced=True)
        assert h.betti == (1 if k == top else 0) and not h.torsion


def test_coxeter_complex_shapes():
    assert coxeter_complex(CoxeterDiagram.of_type("A", 2)).complex.f_vector() == [6, 6]
    assert coxeter_complex(CoxeterDiagram.of_type("A", 1)).complex.f_vector() == [2]
    assert coxeter_complex(CoxeterDiagram.of_type("B", 2)).complex.f_vector() == [8, 8]


def test_type_classes_have_coset_sizes():
    d = CoxeterDiagram.of_type("A", 3)
    cc = coxeter_complex(d)
    g = cc.group
    for i in range(3):
        para = g.parabolic([j for j in range(3) if j != i])
        count = sum(1 for v, t in cc.type_of.items() if t == i)
        assert count == g.order() // len(para)


def test_left_action_is_automorphism():
    cc = coxeter_complex(CoxeterDiagram.of_type("B", 2))
    for g in range(cc.group.order()):
        perm = cc.left_action(g)
        assert cc.complex.relabel(perm) == cc.complex
        assert all(cc.type_of[perm[v]] == cc.type_of[v] for v in perm)


def test_direct_sum_order():
    d = CoxeterDiagram.of_type("A", 2).direct_sum(CoxeterDiagram.of_type("A", 1))
    assert len(generate_group(d)) == 12
    assert d.components() == [[0, 1], [2]]


def test_json_forms():
    d = CoxeterDiagram.from_json({"type": "B", "n": 2})
    assert d == CoxeterDiagram.from_json(d.to_json())
    assert d.m == ((1, 4), (4, 1))


@pytest.mark.parametrize("m", [
    ((1, 3, 2, 2), (3, 1, 3, 2), (2, 3, 1, 3), (2, 2, 3, 1)),  # A4: rank > 3 component
    ((1, 3, 3), (3, 1, 3), (3, 3, 1)),                          # affine A2
    ((1, 13), (13, 1)),                                        # I2(13) beyond cap
])
def test_unsupported_rejected(m):
    with pytest.raises(ValueError):
        CoxeterGroup(CoxeterDiagram(m))


def test_bad_matrix_rejected():
    with pytest.raises(ValueError):
        CoxeterDiagram(((1, 3), (2, 1)))
