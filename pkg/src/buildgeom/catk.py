"""Model surfaces M_kappa, comparison triangles and related checks.

Points live in R^3: the unit sphere for kappa > 0, the plane z = 0 for
kappa = 0 and the upper sheet of the hyperboloid -x0^2 + x1^2 + x2^2 = -1
for kappa < 0.  Curvature enters only by rescaling distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    compare: float = 1e-9
    identity: float = 1e-12
    chart: float = 1e-9


TOL = Tolerances()


def diameter(kappa: float) -> float:
    return math.pi / math.sqrt(kappa) if kappa > 0 else math.inf


def chart_for(kappa: float) -> str:
    return "sphere" if kappa > 0 else "plane" if kappa == 0 else "hyperboloid"


@dataclass(frozen=True)
class ModelPoint:
    coords: tuple[float, float, float]
    chart: str

    def __post_init__(self):
        x = self.coords
        if self.chart == "sphere":
            err = abs(x[0] ** 2 + x[1] ** 2 + x[2] ** 2 - 1)
        elif self.chart == "plane":
            err = abs(x[2])
        elif self.chart == "hyperboloid":
            if x[0] <= 0:
                raise ValueError("hyperboloid point must have x0 > 0")
            err = abs(-x[0] ** 2 + x[1] ** 2 + x[2] ** 2 + 1) / max(1.0, x[0] ** 2)
        else:
            raise ValueError(f"unknown chart {self.chart!r}")
        if err > TOL.chart:
            raise ValueError(f"point {x} is not on the {self.chart}")

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)


def _minkowski(p: np.ndarray, q: np.ndarray) -> float:
    return float(-p[0] * q[0] + p[1] * q[1] + p[2] * q[2])


def _check_chart(kappa: float, *points: ModelPoint) -> None:
    want = chart_for(kappa)
    for p in points:
        if p.chart != want:
            raise ValueError(f"kappa={kappa} needs {want} points, got {p.chart}")


def _unscaled(kappa: float, p: ModelPoint, q: ModelPoint) -> float:
    """Distance in the curvature -1/0/+1 model."""
    (a0, a1, a2), (b0, b1, b2) = p.coords, q.coords
    # atan2 and asinh stay accurate for nearby points, unlike acos / acosh
    if kappa > 0:
        cross = math.hypot(a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
        return math.atan2(cross, a0 * b0 + a1 * b1 + a2 * b2)
    d0, d1, d2 = a0 - b0, a1 - b1, a2 - b2
    if kappa < 0:
        gap = max(0.0, -d0 * d0 + d1 * d1 + d2 * d2)
        return 2 * math.asinh(math.sqrt(gap) / 2)
    return math.hypot(d0, d1, d2)


def model_distance(kappa: float, p: ModelPoint, q: ModelPoint) -> float:
    _check_chart(kappa, p, q)
    return _unscaled(kappa, p, q) / math.sqrt(abs(kappa)) if kappa else _unscaled(0, p, q)


def geodesic_point(kappa: float, p: ModelPoint, q: ModelPoint, t: float) -> ModelPoint:
    _check_chart(kappa, p, q)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    a, b = p.vec, q.vec
    d = _unscaled(kappa, p, q)
    if kappa > 0 and d >= math.pi - TOL.identity:
        raise ValueError("geodesic not unique")
    if t == 0 or d == 0:
        return p
    if t == 1:
        return q
    if kappa > 0:
        v = (math.sin((1 - t) * d) * a + math.sin(t * d) * b) / math.sin(d)
        v /= np.linalg.norm(v)
    elif kappa < 0:
        v = (math.sinh((1 - t) * d) * a + math.sinh(t * d) * b) / math.sinh(d)
    else:
        v = (1 - t) * a + t * b
    return ModelPoint(tuple(float(x) for x in v), p.chart)


def point_at(kappa: float, dist: float, angle: float) -> ModelPoint:
    """Point at distance `dist` from the base point, leaving at `angle`.

    Base points: north pole (sphere), origin (plane), (1, 0, 0) (hyperboloid).
    """
    c, s = math.cos(angle), math.sin(angle)
    if kappa > 0:
        r = math.sqrt(kappa) * dist
        return ModelPoint((math.sin(r) * c, math.sin(r) * s, math.cos(r)), "sphere")
    if kappa < 0:
        r = math.sqrt(-kappa) * dist
        return ModelPoint((math.cosh(r), math.sinh(r) * c, math.sinh(r) * s), "hyperboloid")
    return ModelPoint((dist * c, dist * s, 0.0), "plane")


@dataclass(frozen=True)
class ComparisonTriangle:
    """Side a is opposite the angle alpha, and so on."""

    kappa: float
    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def angles(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    def vertices(self) -> tuple[ModelPoint, ModelPoint, ModelPoint]:
        """Realize the triangle: A at the base point, B along angle 0,
        C along angle alpha (so A, B, C is positively oriented)."""
        A = point_at(self.kappa, 0.0, 0.0)
        B = point_at(self.kappa, self.c, 0.0)
        C = point_at(self.kappa, self.b, self.alpha)
        return A, B, C


def _angle(kappa: float, opp: float, s1: float, s2: float) -> float:
    """Angle between sides s1, s2 opposite the side `opp` (law of cosines)."""
    if kappa == 0:
        x = (s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2)
    elif kappa > 0:
        k = math.sqrt(kappa)
        x = (math.cos(k * opp) - math.cos(k * s1) * math.cos(k * s2)) / (
            math.sin(k * s1) * math.sin(k * s2)
        )
    else:
        k = math.sqrt(-kappa)
        x = (math.cosh(k * s1) * math.cosh(k * s2) - math.cosh(k * opp)) / (
            math.sinh(k * s1) * math.sinh(k * s2)
        )
    return math.acos(max(-1.0, min(1.0, x)))


def comparison_triangle(kappa: float, a: float, b: float, c: float) -> ComparisonTriangle:
    sides = (a, b, c)
    if min(sides) < 0:
        raise ValueError("side lengths must be non-negative")
    if a > b + c + TOL.compare or b > a + c + TOL.compare or c > a + b + TOL.compare:
        raise ValueError("triangle inequality violated")
    if a + b + c >= 2 * diameter(kappa):
        raise ValueError("exceeds comparison perimeter")
    if min(sides) == 0:
        raise ValueError("degenerate triangle: zero side")
    return ComparisonTriangle(
        kappa, a, b, c, _angle(kappa, a, b, c), _angle(kappa, b, a, c), _angle(kappa, c, a, b)
    )


def _side_sine(kappa: float, x: float) -> float:
    if kappa == 0:
        return x
    if kappa > 0:
        return math.sin(math.sqrt(kappa) * x)
    return math.sinh(math.sqrt(-kappa) * x)


@dataclass
class SinesResidual:
    ratio_residual: float
    determinant_residual: float | None = None
    ratios: tuple[float, float, float] = ()
    determinant: float | None = None

    @property
    def value(self) -> float:
        return max(self.ratio_residual, self.determinant_residual or 0.0)


def law_of_sines_residual(kappa: float, tri: ComparisonTriangle) -> SinesResidual:
    """Spread of sin(angle)/s(side), plus for kappa > 0 the triple-product
    identity det(A, B, C) = sin(angle) sin(k*side) sin(k*side) at all three
    vertices, evaluated on the realized unit vectors."""
    if min(tri.sides) <= 0:
        raise ValueError("degenerate triangle: zero side")
    ratios = tuple(math.sin(ang) / _side_sine(kappa, s) for ang, s in zip(tri.angles, tri.sides))
    spread = max(ratios) - min(ratios)
    if kappa <= 0:
        return SinesResidual(spread, None, ratios)
    k = math.sqrt(kappa)
    A, B, C = (p.vec for p in tri.vertices())
    det = float(np.linalg.det(np.array([A, B, C])))
    # cyclic versions: at A (sides c, b), at B (sides a, c), at C (sides b, a)
    values = [
        math.sin(tri.alpha) * math.sin(k * tri.c) * math.sin(k * tri.b),
        math.sin(tri.beta) * math.sin(k * tri.a) * math.sin(k * tri.c),
        math.sin(tri.gamma) * math.sin(k * tri.b) * math.sin(k * tri.a),
    ]
    return SinesResidual(spread, max(abs(det - v) for v in values), ratios, det)


@dataclass(frozen=True)
class Quadruple:
    """Distances among p, q, r and a point m on a geodesic [q, r]."""

    pq: float
    pr: float
    qr: float
    qm: float
    mr: float
    pm: float

    @property
    def t(self) -> float:
        return self.qm / self.qr if self.qr else 0.0

    @classmethod
    def from_points(cls, dist: Callable, p, q, r, m) -> "Quadruple":
        return cls(dist(p, q), dist(p, r), dist(q, r), dist(q, m), dist(m, r), dist(p, m))

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("pq", "pr", "qr", "qm", "mr", "pm")}


@dataclass
class CatResult:
    holds: bool
    distance: float
    comparison_distance: float


def cat_check(kappa: float, quad: Quadruple, tol: float = TOL.compare) -> CatResult:
    """d(p, m) <= d(p_bar, m_bar) for the comparison triangle of (p, q, r)."""
    if abs(quad.qm + quad.mr - quad.qr) > tol:
        raise ValueError("m does not lie on a geodesic from q to r")
    if quad.pq + quad.pr + quad.qr >= 2 * diameter(kappa):
        raise ValueError("exceeds comparison perimeter")
    if quad.qr == 0:
        return CatResult(quad.pm <= quad.pq + tol, quad.pm, quad.pq)
    if quad.pq == 0 or quad.pr == 0:
        # p coincides with an endpoint: the comparison distance is the arc
        other = quad.qm if quad.pq == 0 else quad.mr
        return CatResult(quad.pm <= other + tol, quad.pm, other)
    # place q at the base point, p along angle 0, r along the angle at q
    tri = comparison_triangle(kappa, quad.pr, quad.qr, quad.pq)
    qb = point_at(kappa, 0.0, 0.0)
    pb = point_at(kappa, quad.pq, 0.0)
    rb = point_at(kappa, quad.qr, tri.alpha)
    mb = geodesic_point(kappa, qb, rb, quad.t)
    cd = model_distance(kappa, pb, mb)
    return CatResult(quad.pm <= cd + tol, quad.pm, cd)


def random_model_point(kappa: float, rng: np.random.Generator, radius: float = 2.0) -> ModelPoint:
    if kappa > 0:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        return ModelPoint(tuple(float(x) for x in v), "sphere")
    dist = radius * math.sqrt(rng.random())
    if kappa < 0:
        dist *= 1 / math.sqrt(-kappa)
    return point_at(kappa, dist, float(rng.uniform(0, 2 * math.pi)))


@dataclass
class AngleEstimate:
    angle: float
    raw: list[float]
    extrapolated: list[float]
    monotone: bool
    schedule: list[float] = field(default_factory=list)

    def report(self) -> dict:
        return {
            "angle": self.angle,
            "raw_last": self.raw[-1],
            "monotone": self.monotone,
            "steps": len(self.schedule),
            "spread_of_last_extrapolants": (
                max(self.extrapolated[-3:]) - min(self.extrapolated[-3:]) if self.extrapolated else 0.0
            ),
            "order": 2,
        }


def geometric_schedule(s0: float = 1.0, steps: int = 12) -> list[float]:
    return [s0 * 2.0 ** -k for k in range(steps)]


def alexandrov_angle_estimate(
    c: Callable[[float], object],
    c2: Callable[[float], object],
    dist: Callable[[object, object], float],
    schedule: Sequence[float] | None = None,
    tol: float = TOL.compare,
) -> AngleEstimate:
    """2 * lim arcsin(d(c(s), c2(s)) / 2s) with Richardson extrapolation.

    Assumes an error term of order s^2 when the schedule halves s.
    """
    schedule = list(schedule or geometric_schedule())
    if any(b >= a for a, b in zip(schedule, schedule[1:])) or schedule[-1] <= 0:
        raise ValueError("schedule must be strictly decreasing and positive")
    raw = []
    for s in schedule:
        ratio = dist(c(s), c2(s)) / (2 * s)
        if ratio > 1 + tol:
            raise ValueError("not geodesics from a common point")
        raw.append(2 * math.asin(min(1.0, ratio)))
    extra = []
    for (s1, a1), (s2, a2) in zip(zip(schedule, raw), zip(schedule[1:], raw[1:])):
        f = (s1 / s2) ** 2
        extra.append((f * a2 - a1) / (f - 1))
    diffs = [b - a for a, b in zip(raw, raw[1:])]
    monotone = all(d >= -tol for d in diffs) or all(d <= tol for d in diffs)
    angle = extra[-1] if extra else raw[-1]
    angle = min(math.pi, max(0.0, angle))
    return AngleEstimate(angle, raw, extra, monotone, schedule)


def blowup_metric(d: float, theta: float) -> float:
    if d < 0 or theta < 0:
        raise ValueError("need d >= 0 and theta >= 0")
    return math.hypot(d, theta)


def random_triangle(kappa: float, rng: np.random.Generator, min_angle: float = 1e-3) -> ComparisonTriangle:
    """Triangle from three random model points, rejecting near-degenerate ones."""
    while True:
        p, q, r = (random_model_point(kappa, rng) for _ in range(3))
        a, b, c = model_distance(kappa, q, r), model_distance(kappa, p, r), model_distance(kappa, p, q)
        if min(a, b, c) < min_angle or a + b + c >= 2 * diameter(kappa) * (1 - min_angle):
            continue
        try:
            tri = comparison_triangle(kappa, a, b, c)
        except ValueError:
            continue
        if min(tri.angles) < min_angle:
            continue
        return tri


def random_quadruple(kappa: float, rng: np.random.Generator) -> Quadruple:
    """p, q, r drawn in the model space and m on [q, r]; triples whose
    perimeter reaches 2 D_kappa are redrawn."""
    while True:
        p, q, r = (random_model_point(kappa, rng) for _ in range(3))
        d = lambda u, v: model_distance(kappa, u, v)
        if d(p, q) + d(p, r) + d(q, r) >= 2 * diameter(kappa) * (1 - 1e-6):
            continue
        try:
            m = geodesic_point(kappa, q, r, float(rng.random()))
        except ValueError:
            continue
        return Quadruple.from_points(d, p, q, r, m)


def spherical_witness() -> tuple[Quadruple, dict]:
    """Quadruple on the unit sphere that is too fat for the flat check:
    p the north pole, q and r on the equator a quarter turn apart, m their
    midpoint.  Then d(p, m) = pi/2 while the flat comparison gives less."""
    p = ModelPoint((0.0, 0.0, 1.0), "sphere")
    q = ModelPoint((1.0, 0.0, 0.0), "sphere")
    r = ModelPoint((0.0, 1.0, 0.0), "sphere")
    m = geodesic_point(1.0, q, r, 0.5)
    quad = Quadruple.from_points(lambda u, v: model_distance(1.0, u, v), p, q, r, m)
    points = {k: list(v.coords) for k, v in zip("pqrm", (p, q, r, m))}
    return quad, points
