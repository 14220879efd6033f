"""The R-trees T1 = (-1, 1) x R and T2 = R x R with the comb metric.

    d((x, y), (x', y')) = |y - y'|                 if x = x'
                        = |y| + |x - x'| + |y'|    otherwise

Each vertical line {x} x R crosses the axis R x {0}; moving between lines
means going down to the axis, along it, and up again.  Coordinates are
`Fraction`s wherever exactness matters; floats are accepted too.

The end xi used for the retraction is x -> +infinity along the axis of T2.
The geodesic ray from (x, y) to xi runs down to (x, 0) and then right, so
the apartment spanned by xi and (x, y) is the line through the vertical
ray at x and [x, oo) x 0.  The isometry onto the axis fixing [x, oo) x 0
sends (x, y) to (x - |y|, 0), which gives the retraction formula.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .catk import AngleEstimate, alexandrov_angle_estimate, geometric_schedule

Number = Fraction | float | int


@dataclass(frozen=True)
class TreePoint:
    x: Number
    y: Number

    def __iter__(self):
        yield self.x
        yield self.y

    def to_json(self) -> list:
        return [_num_json(self.x), _num_json(self.y)]


def _num_json(v: Number):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def _sign(v: Number) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class RTree:
    base: str  # "T1" or "T2"

    def __post_init__(self):
        if self.base not in ("T1", "T2"):
            raise ValueError("tree must be T1 or T2")

    def check(self, p: TreePoint) -> TreePoint:
        if self.base == "T1" and not -1 < p.x < 1:
            raise ValueError(f"{p} is not a point of T1 (need |x| < 1)")
        return p

    def point(self, x: Number, y: Number) -> TreePoint:
        return self.check(TreePoint(x, y))


T1 = RTree("T1")
T2 = RTree("T2")


def tree_distance(t: RTree, p: TreePoint, q: TreePoint) -> Number:
    t.check(p)
    t.check(q)
    return _dist(p, q)


def _dist(p: TreePoint, q: TreePoint) -> Number:
    if p.x == q.x:
        return abs(p.y - q.y)
    return abs(p.y) + abs(p.x - q.x) + abs(q.y)


def geodesic(t: RTree, p: TreePoint, q: TreePoint, s: Number) -> TreePoint:
    """Point at fraction s of the way from p to q (arc length)."""
    t.check(p)
    t.check(q)
    if not 0 <= s <= 1:
        raise ValueError("parameter must lie in [0, 1]")
    if p.x == q.x:
        return TreePoint(p.x, p.y + s * (q.y - p.y))
    total = _dist(p, q)
    run = s * total
    down = abs(p.y)
    across = abs(q.x - p.x)
    if run <= down:
        return TreePoint(p.x, p.y - _sign(p.y) * run)
    if run <= down + across:
        return TreePoint(p.x + _sign(q.x - p.x) * (run - down), 0 * run)
    return TreePoint(q.x, _sign(q.y) * (run - down - across))


def on_geodesic(p: TreePoint, o: TreePoint, q: TreePoint) -> bool:
    return _dist(p, o) + _dist(o, q) == _dist(p, q)


# --- apartments ---------------------------------------------------------------

@dataclass(frozen=True)
class ApartmentDescriptor:
    """A geodesic line of the tree.

    kinds: "vertical" ({x0} x R), "bi-ray" (ray at x1 with sign1, segment
    [x1, x2] x 0, ray at x2 with sign2), "ray-axis" (T2 only: ray at x1
    with sign1 joined to the half axis towards `end` = +1 or -1) and
    "axis" (T2 only).
    """

    kind: str
    x0: Number | None = None
    x1: Number | None = None
    x2: Number | None = None
    sign1: int = 1
    sign2: int = 1
    end: int = 1

    def contains(self, p: TreePoint) -> bool:
        if self.kind == "vertical":
            return p.x == self.x0
        if self.kind == "axis":
            return p.y == 0
        if self.kind == "bi-ray":
            if p.y == 0:
                return self.x1 <= p.x <= self.x2
            return (p.x == self.x1 and _sign(p.y) == self.sign1) or (
                p.x == self.x2 and _sign(p.y) == self.sign2
            )
        if self.kind == "ray-axis":
            if p.y == 0:
                return (p.x - self.x1) * self.end >= 0
            return p.x == self.x1 and _sign(p.y) == self.sign1
        raise ValueError(f"unknown apartment kind {self.kind!r}")

    def parametrize(self, s: Number) -> TreePoint:
        """Unit-speed parametrization R -> line."""
        if self.kind == "vertical":
            return TreePoint(self.x0, s)
        if self.kind == "axis":
            return TreePoint(s, 0 * s)
        if self.kind == "bi-ray":
            if s <= 0:
                return TreePoint(self.x1, -s * self.sign1)
            if s <= self.x2 - self.x1:
                return TreePoint(self.x1 + s, 0 * s)
            return TreePoint(self.x2, (s - (self.x2 - self.x1)) * self.sign2)
        if self.kind == "ray-axis":
            if s <= 0:
                return TreePoint(self.x1, -s * self.sign1)
            return TreePoint(self.x1 + self.end * s, 0 * s)
        raise ValueError(f"unknown apartment kind {self.kind!r}")

    def valid_in(self, t: RTree) -> bool:
        xs = [v for v in (self.x0, self.x1, self.x2) if v is not None]
        if t.base == "T1":
            if self.kind in ("axis", "ray-axis"):
                return False
            if any(not -1 < v < 1 for v in xs):
                return False
        if self.kind == "bi-ray" and not self.x1 < self.x2:
            return False
        return True

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for k in ("x0", "x1", "x2"):
            v = getattr(self, k)
            if v is not None:
                out[k] = _num_json(v)
        if self.kind in ("bi-ray", "ray-axis"):
            out["sign1"] = self.sign1
        if self.kind == "bi-ray":
            out["sign2"] = self.sign2
        if self.kind == "ray-axis":
            out["end"] = self.end
        return out


def apartment_kinds(t: RTree) -> list[str]:
    if t.base == "T1":
        return ["vertical", "bi-ray"]
    return ["vertical", "bi-ray", "ray-axis", "axis"]


@dataclass(frozen=True)
class HorizontalSegment:
    """Open segment (u, v) x {0}."""
    u: Number
    v: Number


@dataclass(frozen=True)
class VerticalSegment:
    """Open segment {x} x (y1, y2)."""
    x: Number
    y1: Number
    y2: Number


@dataclass
class SegmentDecision:
    contained: bool
    witness: ApartmentDescriptor | None
    justification: list[str]

    def to_json(self) -> dict:
        return {
            "contained": self.contained,
            "witness": self.witness.to_json() if self.witness else None,
            "justification": self.justification,
        }


def is_segment_in_apartment(t: RTree, seg) -> SegmentDecision:
    """Decide from the classification of geodesic lines in `t`.

    A geodesic line can only move horizontally between two vertical rays,
    or run off along the axis, which is possible only when the axis has
    infinite length in that direction (T2).  So in T1 a line's horizontal
    part is always a compact [x1, x2] x 0 with -1 < x1 < x2 < 1.
    """
    if isinstance(seg, VerticalSegment):
        desc = ApartmentDescriptor("vertical", x0=seg.x)
        return SegmentDecision(True, desc, [f"vertical apartment at x0={seg.x} contains it"])
    if not isinstance(seg, HorizontalSegment) or not seg.u < seg.v:
        raise ValueError("expected a horizontal or vertical segment")
    reasons = ["vertical apartments meet the axis in a single point"]
    if t.base == "T2":
        desc = ApartmentDescriptor("axis")
        return SegmentDecision(True, desc, reasons + ["the axis R x 0 is an apartment of T2"])
    reasons.append("T1 has no axis or ray-axis apartments: the axis has length 2, so it cannot carry an end of a line")
    if -1 < seg.u and seg.v < 1:
        desc = ApartmentDescriptor("bi-ray", x1=seg.u, x2=seg.v, sign1=1, sign2=1)
        return SegmentDecision(True, desc, reasons + [f"bi-ray with [x1, x2] = [{seg.u}, {seg.v}] contains it"])
    reasons.append(
        f"a bi-ray contains (u, v) x 0 only if x1 <= u and v <= x2, impossible with -1 < x1 and x2 < 1 "
        f"for (u, v) = ({seg.u}, {seg.v})"
    )
    return SegmentDecision(False, None, reasons)


def check_line_isometric(t: RTree, desc: ApartmentDescriptor, params: Sequence[Number]) -> bool:
    """Parametrization is an isometric embedding on the given parameters."""
    pts = [desc.parametrize(s) for s in params]
    for p in pts:
        t.check(p)
        if not desc.contains(p):
            return False
    return all(_dist(p, q) == abs(s - u) for (s, p), (u, q) in combinations(zip(params, pts), 2))


# --- stretch map --------------------------------------------------------------

def stretch(x: Number) -> Number:
    return x / (1 + abs(x))


def unstretch(u: Number) -> Number:
    return u / (1 - abs(u))


def stretch_map(p: TreePoint) -> TreePoint:
    """Homeomorphism T2 -> T1, (x, y) -> (x / (1 + |x|), y)."""
    return T1.check(TreePoint(stretch(p.x), p.y))


def stretch_inverse(p: TreePoint) -> TreePoint:
    return TreePoint(unstretch(T1.check(p).x), p.y)


def distortion_witness() -> dict:
    p, q = TreePoint(Fraction(0), Fraction(0)), TreePoint(Fraction(1), Fraction(0))
    return {
        "p": p.to_json(),
        "q": q.to_json(),
        "distance_T2": _num_json(_dist(p, q)),
        "distance_T1_of_images": _num_json(_dist(stretch_map(p), stretch_map(q))),
    }


# --- retraction and fiber ultrametric -----------------------------------------

XI = "+inf"


def _check_end(t: RTree, xi: str) -> None:
    if t.base != "T2" or xi != XI:
        raise ValueError("the retraction is implemented for T2 and the end x -> +infinity only")


def retraction(t: RTree, xi: str, p: TreePoint) -> TreePoint:
    _check_end(t, xi)
    return TreePoint(p.x - abs(p.y), 0 * p.y)


def branch_point(b: TreePoint, c: TreePoint) -> TreePoint:
    """Point e where the rays from b and c to xi merge."""
    if b.x != c.x:
        return TreePoint(max(b.x, c.x), 0 * b.y)
    if _sign(b.y) * _sign(c.y) < 0:
        return TreePoint(b.x, 0 * b.y)
    s = _sign(b.y) or _sign(c.y)
    return TreePoint(b.x, s * min(abs(b.y), abs(c.y)))


def fiber_ultrametric(t: RTree, xi: str, b: TreePoint, c: TreePoint) -> tuple[Number, TreePoint]:
    """delta(b, c) = d(e, b) + d(e, c) on a fiber of the retraction."""
    if retraction(t, xi, b) != retraction(t, xi, c):
        raise ValueError("points lie in different fibers")
    e = branch_point(b, c)
    return _dist(e, b) + _dist(e, c), e


@dataclass
class FiberReport:
    points: int
    triples: int
    ultrametric: bool
    lipschitz_constant: Number | None
    delta_equals_d: bool
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "points": self.points,
            "triples_checked": self.triples,
            "ultrametric": self.ultrametric,
            "lipschitz_constant": _num_json(self.lipschitz_constant) if self.lipschitz_constant is not None else None,
            "delta_equals_d": self.delta_equals_d,
            "violations": self.violations[:5],
        }


def verify_fiber_metric(t: RTree, xi: str, sample: Sequence[TreePoint]) -> FiberReport:
    """Exact check of the ultrametric inequality on every triple and of
    d <= delta <= L d, with L the largest observed ratio.

    Coordinates are scaled to integers by their common denominator; both
    d and delta are homogeneous of degree one, so nothing is lost.
    """
    n = len(sample)
    if n:
        base = retraction(t, xi, sample[0])
        if any(retraction(t, xi, p) != base for p in sample):
            raise ValueError("sample is not contained in a single fiber")
    X, Y = _scaled_coordinates(sample)
    d = _distance_matrix(X, Y)
    delta = fiber_delta_matrix(X, Y)
    pos = d > 0
    ratio = None
    if pos.any():
        pairs = np.unique(np.stack([delta[pos], d[pos]], axis=1), axis=0)
        ratio = max(Fraction(int(a), int(b)) for a, b in pairs)
    equal = bool(np.array_equal(d, delta))
    ok, violations = _all_triples_ultrametric(delta)
    return FiberReport(n, n ** 3, ok, ratio, equal, violations)


def _scaled_coordinates(sample: Sequence[TreePoint]) -> tuple[np.ndarray, np.ndarray]:
    den = 1
    for p in sample:
        for v in p:
            den = math.lcm(den, Fraction(v).denominator)
    X = [int(Fraction(p.x) * den) for p in sample]
    Y = [int(Fraction(p.y) * den) for p in sample]
    if max(map(abs, X + Y), default=0) >= 2 ** 60:
        raise ValueError("coordinates too large for exact integer arithmetic")
    return np.array(X, dtype=np.int64), np.array(Y, dtype=np.int64)


def _distance_matrix(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    same = X[:, None] == X[None, :]
    apart = np.abs(Y)[:, None] + np.abs(X[:, None] - X[None, :]) + np.abs(Y)[None, :]
    return np.where(same, np.abs(Y[:, None] - Y[None, :]), apart)


def fiber_delta_matrix(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Vectorized `fiber_ultrametric` for integer coordinates."""
    ay = np.abs(Y)
    xm = np.maximum(X[:, None], X[None, :])
    # e = (max x, 0) when the lines differ
    to_b = np.where(X[:, None] == xm, ay[:, None], ay[:, None] + xm - X[:, None])
    to_c = np.where(X[None, :] == xm, ay[None, :], ay[None, :] + xm - X[None, :])
    same = X[:, None] == X[None, :]
    opposite = np.sign(Y)[:, None] * np.sign(Y)[None, :] < 0
    on_line = np.where(opposite, ay[:, None] + ay[None, :], np.abs(Y[:, None] - Y[None, :]))
    return np.where(same, on_line, to_b + to_c)


def _all_triples_ultrametric(delta) -> tuple[bool, list]:
    """delta(a, c) <= max(delta(a, b), delta(b, c)) for all a, b, c,
    exhaustively over the middle point b."""
    m = np.asarray(delta, dtype=np.int64)
    n = len(m)
    bound = np.empty_like(m)
    bad = np.empty(m.shape, dtype=bool)
    for b in range(n):
        np.maximum(m[:, b][:, None], m[b, :][None, :], out=bound)
        np.greater(m, bound, out=bad)
        if bad.any():
            a, c = np.argwhere(bad)[0]
            return False, [[int(a), b, int(c)]]
    return True, []


# --- Burillo covers -----------------------------------------------------------

@dataclass
class CoverElement:
    k: int                    # index of U_k = ((k-1) r/2, (k+1) r/2)
    basepoint: Number         # a_U = k r/2 on the axis
    label: TreePoint          # fiber point over the base point of U naming this set
    core: bool                # label is the ball delta <= 3rL around (a_U, 0)
    members: list[int]        # indices into the sample

    def key(self) -> tuple:
        return (self.k, self.label.x, self.label.y)


@dataclass
class BurilloCover:
    r: Number
    lipschitz: Number
    elements: list[CoverElement]
    order: int
    mesh: Number
    claims: dict[str, bool]

    @property
    def mesh_bound(self) -> Number:
        return self.r * (2 + 3 * self.lipschitz)

    def membership(self, n: int) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(n)]
        for idx, w in enumerate(self.elements):
            for i in w.members:
                out[i].append(idx)
        return out

    def to_json(self) -> dict:
        return {
            "r": _num_json(self.r),
            "L": _num_json(self.lipschitz),
            "sets": len(self.elements),
            "order": self.order,
            "mesh": _num_json(self.mesh),
            "mesh_bound": _num_json(self.mesh_bound),
            "claims": self.claims,
        }


def base_cover_indices(p: Number, r: Number) -> list[int]:
    """Indices k with (k-1) r/2 < p < (k+1) r/2."""
    k0 = math.floor(2 * p / r)
    return [k for k in (k0 - 1, k0, k0 + 1) if (k - 1) * r / 2 < p < (k + 1) * r / 2]


def cover_label(y: TreePoint, a: Number, r: Number, lip: Number) -> tuple[TreePoint, bool] | None:
    """The fiber point x over a whose cover set contains y, canonically chosen.

    On the fiber {(a + t, +-t)} the delta-ball of radius 3rL around (a, 0)
    is {t <= 3rL/2}; every point with larger t is alone in its ball.
    Returns (label, is_core) or None if y lies in no W over this U.
    """
    big = Fraction(3) * r * lip / 2 if isinstance(r, Fraction) else 1.5 * r * lip
    D = y.x - a
    core_pts = [TreePoint(a, 0 * D)]
    if 0 < D <= big:
        core_pts += [TreePoint(y.x, D), TreePoint(y.x, -D)]
    if min(_dist(y, z) for z in core_pts) <= r:
        return TreePoint(a, 0 * D), True
    if D > big and y.y != 0:
        x = TreePoint(y.x, _sign(y.y) * D)
        if _dist(y, x) <= r:
            return x, False
    return None


def burillo_cover(
    t: RTree, xi: str, r: Number, sample: Sequence[TreePoint], lipschitz: Number = 1
) -> BurilloCover:
    """Cover sets labelled by fiber points over the half-overlapping interval
    cover of the axis, restricted to `sample`, with each defining property
    checked on it."""
    _check_end(t, xi)
    n = len(sample)
    proj = [retraction(t, xi, y).x for y in sample]
    elements: dict[tuple, CoverElement] = {}
    per_u: dict[int, list[tuple[int, tuple]]] = {}
    covered = [False] * n
    for i, y in enumerate(sample):
        for k in base_cover_indices(proj[i], r):
            a = k * r / 2
            found = cover_label(y, a, r, lipschitz)
            if found is None:
                continue
            label, core = found
            key = (k, label.x, label.y)
            if key not in elements:
                elements[key] = CoverElement(k, a, label, core, [])
            elements[key].members.append(i)
            per_u.setdefault(k, []).append((i, key))
            covered[i] = True

    ordered = sorted(elements.values(), key=lambda w: w.key())
    counts = [0] * n
    mesh: Number = 0
    for w in ordered:
        for i in w.members:
            counts[i] += 1
        for i, j in combinations(w.members, 2):
            d = _dist(sample[i], sample[j])
            if d > mesh:
                mesh = d
    order = max(counts, default=0)

    claims = {}
    # r-neighbours over the same U must share a cover set
    absorbed = True
    disjoint = True
    for k, items in per_u.items():
        labels = {}
        for i, key in items:
            if labels.setdefault(i, key) != key:
                disjoint = False
        inside = [i for i in range(n) if (k - 1) * r / 2 < proj[i] < (k + 1) * r / 2]
        for i, j in combinations(inside, 2):
            if _dist(sample[i], sample[j]) <= r and labels.get(i) != labels.get(j):
                absorbed = False
    claims["absorption"] = absorbed
    claims["diameter"] = mesh <= r * (2 + 3 * lipschitz)
    claims["coverage"] = all(covered)
    claims["equal_or_disjoint"] = disjoint
    claims["order"] = order <= 2
    return BurilloCover(r, lipschitz, ordered, order, mesh, claims)


def refines(fine: BurilloCover, coarse: BurilloCover) -> tuple[bool, list]:
    """Every fine set (on the sample) lies inside some coarse set, and the
    base intervals refine as well."""
    coarse_sets = [set(w.members) for w in coarse.elements]
    bad = []
    for w in fine.elements:
        if not any(set(w.members) <= c for c in coarse_sets):
            bad.append(w.key())
    base_ok = all(
        any(
            (k - 1) * coarse.r / 2 <= (j - 1) * fine.r / 2 and (j + 1) * fine.r / 2 <= (k + 1) * coarse.r / 2
            for k in base_cover_indices(j * fine.r / 2, coarse.r)
        )
        for j in {w.k for w in fine.elements}
    )
    return (not bad) and base_ok, bad[:5]


# --- directions and punctured balls -------------------------------------------

@dataclass(frozen=True)
class Direction:
    name: str
    dx: int
    dy: int

    def ray(self, o: TreePoint) -> Callable[[Number], TreePoint]:
        # exact arithmetic keeps d(c(s), c'(s)) = 2s free of cancellation
        x, y = Fraction(o.x), Fraction(o.y)
        return lambda s: TreePoint(x + self.dx * Fraction(s), y + self.dy * Fraction(s))


def directions_at(t: RTree, o: TreePoint) -> list[Direction]:
    """Germs of geodesics leaving o.

    On the axis the vertical line through o crosses it, giving four
    directions; off the axis o sits inside a vertical line: two.
    """
    t.check(o)
    if o.y == 0:
        return [Direction("+x", 1, 0), Direction("-x", -1, 0), Direction("+y", 0, 1), Direction("-y", 0, -1)]
    return [Direction("+y", 0, 1), Direction("-y", 0, -1)]


def direction_angles(t: RTree, o: TreePoint, steps: int = 12) -> dict[tuple[str, str], AngleEstimate]:
    """Alexandrov angle estimate for every pair of directions at o."""
    dirs = directions_at(t, o)
    room = 1.0 if t.base == "T2" else float(min(1 - o.x, 1 + o.x))
    if o.y != 0:
        room = min(room, abs(float(o.y)))
    schedule = geometric_schedule(room / 2, steps)
    dist = lambda p, q: float(_dist(p, q))
    out = {}
    for a, b in combinations(dirs, 2):
        est = alexandrov_angle_estimate(a.ray(o), b.ray(o), dist, schedule)
        out[(a.name, b.name)] = est
    return out


def punctured_labels(
    t: RTree, o: TreePoint, eps: Number, sample: Sequence[TreePoint]
) -> tuple[list[TreePoint], list[int]]:
    """Sampled points of B_eps(o) - {o} with a component label each.

    p and q are adjacent when the geodesic between them avoids o, that is
    d(p, o) + d(o, q) > d(p, q); labels are the connected components of
    this graph, computed exactly on integer-scaled coordinates.
    """
    t.check(o)
    pts = [p for p in sample if 0 < _dist(p, o) < eps]
    if not pts:
        return [], []
    X, Y = _scaled_coordinates(pts + [o])
    d = _distance_matrix(X, Y)
    to_o = d[-1, :-1]
    linked = to_o[:, None] + to_o[None, :] != d[:-1, :-1]
    labels = [-1] * len(pts)
    current = 0
    for start in range(len(pts)):
        if labels[start] >= 0:
            continue
        labels[start] = current
        stack = [start]
        while stack:
            i = stack.pop()
            for j in np.flatnonzero(linked[i]):
                if labels[j] < 0:
                    labels[j] = current
                    stack.append(int(j))
        current += 1
    return pts, labels


def punctured_components(t: RTree, o: TreePoint, eps: Number, sample: Sequence[TreePoint]) -> int:
    _, labels = punctured_labels(t, o, eps, sample)
    return len(set(labels))


# --- sampling -----------------------------------------------------------------

def _rand_frac(rng: random.Random, lo: Number, hi: Number, den: int = 1024) -> Fraction:
    lo_i, hi_i = math.ceil(lo * den), math.floor(hi * den)
    return Fraction(rng.randint(lo_i, hi_i), den)


def sample_tree(t: RTree, n: int, rng: random.Random, extent: int = 4) -> list[TreePoint]:
    """Points of the tree with dyadic coordinates.

    Vertical lines are drawn from a small pool so that many points share a
    line; a fifth of the points sit on the axis.
    """
    lo, hi = (-extent, extent) if t.base == "T2" else (Fraction(-1023, 1024), Fraction(1023, 1024))
    pool = [_rand_frac(rng, lo, hi) for _ in range(max(4, n // 25))]
    out = []
    for _ in range(n):
        x = rng.choice(pool) if rng.random() < 0.8 else _rand_frac(rng, lo, hi)
        y = Fraction(0) if rng.random() < 0.2 else _rand_frac(rng, -extent, extent)
        out.append(TreePoint(x, y))
    return out


def sample_fiber(a: Number, n: int, rng: random.Random, extent: int = 4) -> list[TreePoint]:
    """Points (a + t, +-t) of the fiber over (a, 0), t dyadic in [0, extent]."""
    out = []
    for _ in range(n):
        s = _rand_frac(rng, 0, extent)
        out.append(TreePoint(a + s, s * rng.choice((1, -1))))
    return out


def sample_ball(t: RTree, o: TreePoint, eps: Number, n: int, rng: random.Random) -> list[TreePoint]:
    """Points of B_eps(o) from three strata in equal proportion: the
    vertical line through o, the axis, and generic points (x, y) with
    x != o.x, y != 0."""
    eps = Fraction(eps)
    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            y = o.y + _rand_frac(rng, -eps, eps)
            p = TreePoint(o.x, y)
        elif kind == 1:
            budget = eps - abs(o.y)
            if budget <= 0:
                continue
            p = TreePoint(o.x + _rand_frac(rng, -budget, budget), Fraction(0))
        else:
            budget = eps - abs(o.y)
            if budget <= 0:
                continue
            dx = _rand_frac(rng, -budget, budget)
            if dx == 0:
                continue
            rest = budget - abs(dx)
            p = TreePoint(o.x + dx, _rand_frac(rng, -rest, rest))
        if t.base == "T1" and not -1 < p.x < 1:
            continue
        if _dist(p, o) < eps:
            out.append(p)
    return out
