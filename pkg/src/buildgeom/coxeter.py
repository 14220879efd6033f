"""Finite Coxeter groups of small rank and their Coxeter complexes.

Group elements are integer matrices.  Crystallographic components
(m in {2, 3, 4, 6}) act through the Cartan reflection representation;
a dihedral component I2(m) with m outside that set acts by permutation
matrices on the vertices of the regular m-gon, which is faithful and
still exact.  A diagram is a block sum of such components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .simplicial import Simplex, SimplicialComplex

Matrix = tuple[tuple[int, ...], ...]

MAX_ORDER = 20000


@dataclass(frozen=True)
class CoxeterDiagram:
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.m)
        if n < 1:
            raise ValueError("rank must be >= 1")
        for i in range(n):
            if len(self.m[i]) != n:
                raise ValueError("Coxeter matrix must be square")
            if self.m[i][i] != 1:
                raise ValueError("Coxeter matrix needs 1 on the diagonal")
            for j in range(n):
                if i != j and (self.m[i][j] < 2 or self.m[i][j] != self.m[j][i]):
                    raise ValueError("off-diagonal entries must be symmetric and >= 2")

    @property
    def rank(self) -> int:
        return len(self.m)

    @classmethod
    def of_type(cls, kind: str, n: int) -> "CoxeterDiagram":
        kind = kind.upper()
        if kind == "A":
            m = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
        elif kind == "B":
            m = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
            if n >= 2:
                m[n - 2][n - 1] = m[n - 1][n - 2] = 4
        elif kind == "I2":
            m = [[1, n], [n, 1]]
        else:
            raise ValueError(f"unsupported Coxeter type {kind!r}")
        return cls(tuple(tuple(r) for r in m))

    @classmethod
    def from_json(cls, data: Mapping) -> "CoxeterDiagram":
        if "m" in data:
            return cls(tuple(tuple(int(x) for x in r) for r in data["m"]))
        return cls.of_type(data["type"], int(data["n"]))

    def to_json(self) -> dict:
        return {"m": [list(r) for r in self.m]}

    def direct_sum(self, other: "CoxeterDiagram") -> "CoxeterDiagram":
        n, k = self.rank, other.rank
        m = [[2] * (n + k) for _ in range(n + k)]
        for i in range(n):
            for j in range(n):
                m[i][j] = self.m[i][j]
        for i in range(k):
            for j in range(k):
                m[n + i][n + j] = other.m[i][j]
        return CoxeterDiagram(tuple(tuple(r) for r in m))

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in range(self.rank):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.rank):
                    if j not in seen and self.m[i][j] > 2:
                        seen.add(j)
                        stack.append(j)
            out.append(sorted(comp))
        return out

    def check_supported(self) -> None:
        """Raise unless every component is A_n (n<=3), B_2, B_3 or I2(m<=12)."""
        for comp in self.components():
            sub = [[self.m[i][j] for j in comp] for i in comp]
            if len(comp) == 1:
                continue
            if len(comp) == 2:
                if sub[0][1] > 12:
                    raise ValueError("I2(m) supported only for m <= 12")
                continue
            if len(comp) > 3:
                raise ValueError("irreducible components of rank > 3 are not supported")
            labels = sorted(sub[i][j] for i, j in combinations(range(3), 2))
            if labels not in ([2, 3, 3], [2, 3, 4]):
                raise ValueError(f"unsupported or infinite rank-3 component {sub}")
        gram = np.array([[-math.cos(math.pi / x) for x in row] for row in self.m])
        if np.linalg.eigvalsh(gram).min() <= 1e-9:
            raise ValueError("diagram is not of finite type")


def _component_generators(m: list[list[int]]) -> list[np.ndarray]:
    n = len(m)
    crystallographic = all(x in (1, 2, 3, 4, 6) for row in m for x in row)
    if crystallographic:
        cartan = np.eye(n, dtype=object) * 2
        for i in range(n):
            for j in range(i + 1, n):
                a_ij, a_ji = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}[m[i][j]]
                cartan[i, j], cartan[j, i] = a_ij, a_ji
        gens = []
        for i in range(n):
            # s_i(alpha_j) = alpha_j - A[i][j] alpha_i, columns are images
            g = np.eye(n, dtype=object)
            for j in range(n):
                g[i, j] -= cartan[i, j]
            gens.append(g)
        return gens
    # dihedral I2(m): reflections of the m-gon, k -> -k and k -> 1-k
    order = m[0][1]
    gens = []
    for shift in (0, 1):
        g = np.zeros((order, order), dtype=object)
        for k in range(order):
            g[(shift - k) % order, k] = 1
        gens.append(g)
    return gens


class CoxeterGroup:
    def __init__(self, diagram: CoxeterDiagram):
        diagram.check_supported()
        self.diagram = diagram
        blocks: list[tuple[list[int], list[np.ndarray]]] = []
        for comp in diagram.components():
            sub = [[diagram.m[i][j] for j in comp] for i in comp]
            blocks.append((comp, _component_generators(sub)))
        size = sum(g[0].shape[0] for _, g in blocks)
        self.generators: list[Matrix] = [None] * diagram.rank  # type: ignore[list-item]
        offset = 0
        for comp, gens in blocks:
            k = gens[0].shape[0]
            for idx, g in zip(comp, gens):
                full = np.eye(size, dtype=object)
                full[offset:offset + k, offset:offset + k] = g
                self.generators[idx] = _freeze(full)
            offset += k
        self.dimension = size
        self.identity: Matrix = _freeze(np.eye(size, dtype=object))

    def multiply(self, a: Matrix, b: Matrix) -> Matrix:
        return _freeze(np.array(a, dtype=object).dot(np.array(b, dtype=object)))

    def inverse(self, a: Matrix) -> Matrix:
        # elements have finite order; invert via the enumerated table
        return self._inverse[a]

    @cached_property
    def elements(self) -> list[Matrix]:
        """All elements in BFS order from the identity (so by length)."""
        return list(self.lengths)

    @cached_property
    def lengths(self) -> dict[Matrix, int]:
        length = {self.identity: 0}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.generators:
                    ws = self.multiply(w, s)
                    if ws not in length:
                        length[ws] = length[w] + 1
                        nxt.append(ws)
                        if len(length) > MAX_ORDER:
                            raise ValueError("group too large or infinite")
            frontier = nxt
        return length

    @cached_property
    def _inverse(self) -> dict[Matrix, Matrix]:
        inv = {}
        for w in self.elements:
            if w in inv:
                continue
            for u in self.elements:
                if self.multiply(w, u) == self.identity:
                    inv[w], inv[u] = u, w
                    break
        return inv

    @cached_property
    def index(self) -> dict[Matrix, int]:
        return {w: i for i, w in enumerate(self.elements)}

    @cached_property
    def _table(self) -> list[list[int]]:
        idx = self.index
        return [[idx[self.multiply(a, b)] for b in self.elements] for a in self.elements]

    def mul_index(self, i: int, j: int) -> int:
        return self._table[i][j]

    def order(self) -> int:
        return len(self.elements)

    def length(self, w: Matrix) -> int:
        return self.lengths[w]

    @cached_property
    def longest_element(self) -> Matrix:
        top = max(self.lengths.values())
        longest = [w for w, l in self.lengths.items() if l == top]
        if len(longest) != 1:
            raise ValueError("longest element not unique; group is not finite Coxeter")
        return longest[0]

    def opposite(self, w: Matrix, w2: Matrix) -> bool:
        return self.multiply(self.inverse(w), w2) == self.longest_element

    def parabolic(self, subset: Sequence[int]) -> list[Matrix]:
        gens = [self.generators[i] for i in subset]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    ws = self.multiply(w, s)
                    if ws not in seen:
                        seen.add(ws)
                        nxt.append(ws)
            frontier = nxt
        return sorted(seen, key=lambda w: self.index[w])


def _freeze(a: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in a)


def generate_group(d: CoxeterDiagram) -> list[Matrix]:
    return CoxeterGroup(d).elements


def longest_element(d: CoxeterDiagram) -> Matrix:
    return CoxeterGroup(d).longest_element


def opposition(w: Matrix, w2: Matrix, d: CoxeterDiagram) -> bool:
    return CoxeterGroup(d).opposite(w, w2)


@dataclass
class CoxeterComplexData:
    group: CoxeterGroup
    complex: SimplicialComplex
    chamber_of: dict[int, Simplex]
    type_of: dict[int, int]
    # vertex_of[i][g] = id of the type-i vertex of the chamber of element g
    vertex_of: list[list[int]]

    def left_action(self, g: int) -> dict[int, int]:
        """Vertex permutation induced by left multiplication with element g."""
        out = {}
        for i, row in enumerate(self.vertex_of):
            for w, v in enumerate(row):
                if v not in out:
                    out[v] = row[self.group.mul_index(g, w)]
        return out


def coxeter_complex(d: CoxeterDiagram) -> CoxeterComplexData:
    """Simplicial complex of proper cosets wW_J, vertices ordered by type.

    The type-i vertex of the chamber of w is the coset w W_{S - {i}}.
    """
    group = CoxeterGroup(d)
    idx = group.index
    n = d.rank
    vertex_of: list[list[int]] = []
    type_of: dict[int, int] = {}
    next_id = 0
    for i in range(n):
        sub = [idx[h] for h in group.parabolic([j for j in range(n) if j != i])]
        row = [-1] * group.order()
        for w in range(group.order()):
            if row[w] >= 0:
                continue
            for h in sub:
                row[group.mul_index(w, h)] = next_id
            type_of[next_id] = i
            next_id += 1
        vertex_of.append(row)
    chamber_of = {
        w: tuple(vertex_of[i][w] for i in range(n)) for w in range(group.order())
    }
    cx = SimplicialComplex(chamber_of.values(), next_id)
    return CoxeterComplexData(group, cx, chamber_of, type_of, vertex_of)
