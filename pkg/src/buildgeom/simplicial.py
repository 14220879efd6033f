"""Finite abstract simplicial complexes and their integral homology.

Simplices are tuples of strictly increasing non-negative integers.  A chain
stores each simplex in sorted form; building one from an arbitrary vertex
order multiplies the coefficient by the sign of the sorting permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .snf import IntegerMatrix, rank_over_q, smith_normal_form

Simplex = tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(sorted(set(int(v) for v in vertices)))
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    if s[0] < 0:
        raise ValueError("vertex ids must be non-negative")
    return s


def oriented(vertices: Sequence[int]) -> tuple[Simplex, int]:
    """Sorted simplex and the sign of the permutation that sorts `vertices`."""
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("repeated vertex in oriented simplex")
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(vs)):
        j = i
        while j > 0 and vs[j - 1] > vs[j]:
            vs[j - 1], vs[j] = vs[j], vs[j - 1]
            sign = -sign
            j -= 1
    return tuple(vs), sign


def faces_of(s: Simplex) -> Iterable[Simplex]:
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


class SimplicialComplex:
    """A finite simplicial complex given by its facets.

    Immutable.  ``vertex_count`` bounds the vertex ids (ids lie in
    ``range(vertex_count)``); joins shift the second factor past it.
    """

    def __init__(self, facets: Iterable[Iterable[int]] = (), vertex_count: int | None = None):
        simplices = {make_simplex(f) for f in facets}
        # absorb non-maximal input facets
        by_size = sorted(simplices, key=len, reverse=True)
        kept: list[Simplex] = []
        kept_sets: list[frozenset[int]] = []
        for s in by_size:
            ss = frozenset(s)
            if not any(ss < k for k in kept_sets):
                kept.append(s)
                kept_sets.append(ss)
        self.facets: frozenset[Simplex] = frozenset(kept)
        top = max((v for f in self.facets for v in f), default=-1) + 1
        if vertex_count is None:
            vertex_count = top
        elif vertex_count < top:
            raise ValueError("vertex_count smaller than the largest vertex id")
        self.vertex_count = vertex_count

    @classmethod
    def from_faces(cls, faces: Iterable[Simplex], vertex_count: int | None = None) -> "SimplicialComplex":
        return cls(faces, vertex_count)

    @cached_property
    def face_index(self) -> dict[int, list[Simplex]]:
        """Dimension -> lexicographically sorted faces."""
        by_dim: dict[int, set[Simplex]] = {}
        for f in self.facets:
            for face in faces_of(f):
                by_dim.setdefault(len(face) - 1, set()).add(face)
        return {k: sorted(v) for k, v in sorted(by_dim.items())}

    @cached_property
    def all_faces(self) -> frozenset[Simplex]:
        return frozenset(f for fs in self.face_index.values() for f in fs)

    @cached_property
    def _position(self) -> dict[Simplex, int]:
        return {f: i for fs in self.face_index.values() for i, f in enumerate(fs)}

    def index_of(self, face: Simplex) -> int:
        return self._position[face]

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @property
    def vertices(self) -> list[int]:
        return [f[0] for f in self.faces(0)]

    def faces(self, k: int) -> list[Simplex]:
        return self.face_index.get(k, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def is_empty(self) -> bool:
        return not self.facets

    def __contains__(self, face) -> bool:
        return tuple(face) in self.all_faces

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self.all_faces <= other.all_faces

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector()})"

    def sorted_facets(self) -> list[Simplex]:
        return sorted(self.facets, key=lambda f: (len(f), f))

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "facets": [list(f) for f in self.sorted_facets()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        return cls(data.get("facets", []), data.get("vertices"))

    def subcomplex(self, faces: Iterable[Simplex]) -> "SimplicialComplex":
        """Closure of `faces` as a complex on the same vertex range."""
        faces = list(faces)
        for f in faces:
            if f not in self.all_faces:
                raise ValueError(f"{f} is not a face of the complex")
        return SimplicialComplex(faces, self.vertex_count)

    def relabel(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        return SimplicialComplex([[mapping[v] for v in f] for f in self.facets])


def make_complex(facets: Sequence[Iterable[int]], vertex_count: int | None = None) -> SimplicialComplex:
    if len(facets) == 0:
        raise ValueError("empty complex not constructible (use sphere_complex(-1))")
    return SimplicialComplex(facets, vertex_count)


def sphere_complex(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-dimensional cross-polytope.

    Vertices 2i and 2i+1 form the i-th antipodal pair.  ``n = -1`` gives
    the empty complex.
    """
    if n < -1:
        raise ValueError("sphere dimension must be >= -1")
    if n == -1:
        return SimplicialComplex([], 0)
    facets: list[list[int]] = [[]]
    for i in range(n + 1):
        facets = [f + [2 * i + e] for f in facets for e in (0, 1)]
    return SimplicialComplex(facets, 2 * n + 2)


def join(k: SimplicialComplex, l: SimplicialComplex) -> SimplicialComplex:
    """Join K * L; vertices of L are shifted by ``K.vertex_count``."""
    shift = k.vertex_count
    shifted = [tuple(v + shift for v in f) for f in l.facets]
    if k.is_empty():
        facets = shifted
    elif l.is_empty():
        facets = list(k.facets)
    else:
        facets = [f + g for f in k.facets for g in shifted]
    return SimplicialComplex(facets, k.vertex_count + l.vertex_count)


def link(k: SimplicialComplex, v: int) -> SimplicialComplex:
    if (v,) not in k.all_faces:
        raise ValueError(f"vertex {v} is not in the complex")
    faces = [tuple(x for x in f if x != v) for f in k.facets if v in f]
    return SimplicialComplex([f for f in faces if f], k.vertex_count)


def star(k: SimplicialComplex, v: int) -> SimplicialComplex:
    return SimplicialComplex([f for f in k.facets if v in f], k.vertex_count)


def boundary_matrix(k: SimplicialComplex, deg: int, reduced: bool = False) -> IntegerMatrix:
    """Matrix of the boundary map C_deg -> C_{deg-1} in canonical bases."""
    if not 0 <= deg <= k.dim:
        raise ValueError(f"degree {deg} out of range for a complex of dimension {k.dim}")
    return _boundary(k, deg, reduced)


def _boundary(k: SimplicialComplex, deg: int, reduced: bool = False) -> IntegerMatrix:
    # total version: any deg >= 0, empty outside the complex
    cols = k.faces(deg)
    if deg == 0:
        if reduced:
            return IntegerMatrix(1, len(cols), {(0, j): 1 for j in range(len(cols))})
        return IntegerMatrix(0, len(cols))
    rows = k.faces(deg - 1)
    pos = {f: i for i, f in enumerate(rows)}
    entries = {}
    for j, s in enumerate(cols):
        for i in range(len(s)):
            entries[(pos[s[:i] + s[i + 1:]], j)] = (-1) ** i
    return IntegerMatrix(len(rows), len(cols), entries)


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.betti < 0:
            raise ValueError("betti number must be non-negative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = (["Z"] if self.betti == 1 else [f"Z^{self.betti}"] if self.betti else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def homology(k: SimplicialComplex, deg: int, reduced: bool = False) -> HomologyGroup:
    if not 0 <= deg <= k.dim:
        raise ValueError(f"degree {deg} out of range for a complex of dimension {k.dim}")
    return _homology(k, deg, reduced)


def _homology(k: SimplicialComplex, deg: int, reduced: bool = False) -> HomologyGroup:
    """Homology in any degree >= -1; reduced H_{-1} is Z only for the empty complex."""
    if deg == -1:
        return HomologyGroup(1 if (reduced and k.is_empty()) else 0)
    if deg > k.dim:
        return HomologyGroup(0)
    _, rank_out = smith_normal_form(_boundary(k, deg, reduced))
    divisors, rank_in = smith_normal_form(_boundary(k, deg + 1, reduced))
    betti = len(k.faces(deg)) - rank_out - rank_in
    return HomologyGroup(betti, tuple(d for d in divisors if d > 1))


def betti_over_q(k: SimplicialComplex, deg: int, reduced: bool = False) -> int:
    """Betti number by rank-nullity over Q; cross-check for `homology`."""
    if deg > k.dim:
        return 0
    return (
        len(k.faces(deg))
        - rank_over_q(_boundary(k, deg, reduced))
        - rank_over_q(_boundary(k, deg + 1, reduced))
    )


def local_homology(k: SimplicialComplex, v: int, deg: int) -> HomologyGroup:
    """H_deg(|K|, |K| - v), computed as reduced H_{deg-1} of the link of v."""
    return _homology(link(k, v), deg - 1, reduced=True)


@dataclass
class Chain:
    degree: int
    coefficients: dict[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("chain degree must be >= 0")
        clean = {}
        for s, c in self.coefficients.items():
            if len(s) != self.degree + 1 or list(s) != sorted(set(s)):
                raise ValueError(f"simplex {s} does not match degree {self.degree}")
            if c:
                clean[tuple(s)] = int(c)
        self.coefficients = clean

    @classmethod
    def from_oriented(cls, degree: int, terms: Iterable[tuple[Sequence[int], int]]) -> "Chain":
        acc: dict[Simplex, int] = {}
        for verts, c in terms:
            s, sign = oriented(verts)
            acc[s] = acc.get(s, 0) + sign * c
        return cls(degree, acc)

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise ValueError("cannot add chains of different degree")
        acc = dict(self.coefficients)
        for s, c in other.coefficients.items():
            acc[s] = acc.get(s, 0) + c
        return Chain(self.degree, acc)

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {s: -c for s, c in self.coefficients.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "Chain":
        return Chain(self.degree, {s: scalar * c for s, c in self.coefficients.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.coefficients == other.coefficients

    def is_zero(self) -> bool:
        return not self.coefficients

    def boundary(self) -> dict[Simplex, int]:
        """Boundary as a dict; empty dict means zero.  Degree 0 maps to zero."""
        acc: dict[Simplex, int] = {}
        if self.degree == 0:
            return acc
        for s, c in self.coefficients.items():
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                acc[f] = acc.get(f, 0) + (-1) ** i * c
        return {f: c for f, c in acc.items() if c}

    def is_cycle(self) -> bool:
        return not self.boundary()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"simplex": list(s), "coef": c} for s, c in sorted(self.coefficients.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Chain":
        return cls.from_oriented(
            int(data["degree"]), [(t["simplex"], int(t["coef"])) for t in data.get("terms", [])]
        )


def support(z: Chain, k: SimplicialComplex) -> SimplicialComplex:
    """Closed subcomplex carrying the top cycle z (pure of dimension dim K)."""
    if any(s not in k.all_faces for s in z.coefficients):
        raise ValueError("chain is not supported on the complex")
    if not z.is_cycle():
        raise ValueError("support defined here only for cycles")
    if z.coefficients and z.degree != k.dim:
        raise ValueError("support defined here only for top-dimensional cycles")
    return SimplicialComplex(z.coefficients.keys(), k.vertex_count)


def cone_chain(apex: int, z: Chain) -> Chain:
    """apex * z with the apex placed first in each oriented simplex."""
    return Chain.from_oriented(z.degree + 1, [((apex, *s), c) for s, c in z.coefficients.items()])


def suspend_cycle(z: Chain, k: SimplicialComplex, n: int) -> tuple[Chain, SimplicialComplex]:
    """Push the top cycle z of K to a cycle of K * S^n.

    One S^0 factor {u, v} at a time, z becomes u*z - v*z (apex first).
    Since the boundary of apex*z is z for a cycle z, the result is again a
    cycle, with support supp(z) * {u, v}.  Returns the cycle and K * S^n.
    """
    if n < 0:
        raise ValueError("suspension dimension must be >= 0")
    if not z.is_cycle():
        raise ValueError("support defined here only for cycles")
    if any(s not in k.all_faces for s in z.coefficients):
        raise ValueError("chain is not supported on the complex")
    current, cx = z, k
    for _ in range(n + 1):
        u = cx.vertex_count
        current = cone_chain(u, current) - cone_chain(u + 1, current)
        cx = join(cx, sphere_complex(0))
    return current, cx


def fundamental_cycle_of_circle(k: SimplicialComplex) -> Chain:
    """Oriented cycle on a complex that is a single simplicial circle."""
    if k.dim != 1 or any(len(link(k, v).faces(0)) != 2 for v in k.vertices):
        raise ValueError("complex is not a circle")
    start = k.vertices[0]
    prev, cur = start, None
    nbrs = sorted(link(k, start).vertices)
    cur = nbrs[0]
    terms = [((start, cur), 1)]
    while cur != start:
        nxt = [w for w in link(k, cur).vertices if w != prev][0]
        terms.append(((cur, nxt), 1))
        prev, cur = cur, nxt
    if len(terms) != len(k.faces(1)):
        raise ValueError("complex is not connected")
    return Chain.from_oriented(1, terms)


def is_isomorphic(k: SimplicialComplex, l: SimplicialComplex) -> dict[int, int] | None:
    """A simplicial isomorphism K -> L as a vertex map, or None.

    Matches the Hasse diagrams of the face posets (faces labelled by
    dimension), which determines the complex up to isomorphism.
    """
    import networkx as nx
    from networkx.algorithms import isomorphism

    if k.f_vector() != l.f_vector():
        return None

    def hasse(c: SimplicialComplex) -> nx.Graph:
        g = nx.Graph()
        for f in c.all_faces:
            g.add_node(f, dim=len(f))
            if len(f) > 1:
                for i in range(len(f)):
                    g.add_edge(f, f[:i] + f[i + 1:])
        return g

    gm = isomorphism.GraphMatcher(
        hasse(k), hasse(l), node_match=lambda a, b: a["dim"] == b["dim"]
    )
    if not gm.is_isomorphic():
        return None
    return {f[0]: g[0] for f, g in gm.mapping.items() if len(f) == 1}
