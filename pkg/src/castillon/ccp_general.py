"""General inscribed-polygon solver: find N-gons inscribed in a circle whose
sides pass cyclically through N given points.

Two independent algorithms are provided.

* `solve_ccp_mobius` composes the chord involutions of the given points on
  the tangent-half-angle parameter of the circle.  Each involution is a real
  2x2 projective map, so the composite's fixed points come from one
  quadratic, yielding 0, 1 or 2 real solutions.

* `solve_ccp_perspectrix` (triangle/incircle-or-excircle case only) runs the
  classical axis construction: three seeded chord paths, the two cross
  intersections on the homography axis, and the axis-circle intersection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import CircleData, TriangleData, VertexMatrix
from .errors import (
    CenterPoint,
    DegenerateComposition,
    GeometryError,
    NoRealIntersection,
    PathClosed,
)

Array = np.ndarray


# ---------------------------------------------------------------------------
# circle parameter:  point at angle theta <-> t = tan(theta/2), kept as a
# homogeneous pair (p : q) with t = p/q so that theta = pi (t = infinity)
# needs no special casing.


def param_from_point(circle: CircleData, P) -> Array:
    rel = (np.asarray(P, float) - circle.center) / circle.radius
    c, s = rel
    pq = np.array([s, 1.0 + c]) if 1.0 + c >= 0.5 else np.array([1.0 - c, s])
    return pq / np.linalg.norm(pq)


def point_from_param(circle: CircleData, pq) -> Array:
    p, q = pq
    den = p * p + q * q
    return circle.center + circle.radius * np.array([(q * q - p * p) / den, 2.0 * p * q / den])


@dataclass(frozen=True)
class MobiusMap:
    """Real 2x2 matrix acting projectively on the circle parameter."""

    m: Array

    def __call__(self, pq) -> Array:
        pq = np.asarray(pq, float)
        out = self.m @ pq
        norm = np.linalg.norm(out)
        if norm <= 1e-13 * np.linalg.norm(self.m) * np.linalg.norm(pq):
            # pq spans the kernel of a rank-1 chord map (pivot on the circle);
            # the continuous extension is the map's constant image direction
            out = self.m @ np.array([-pq[1], pq[0]])
            norm = np.linalg.norm(out)
        return out / norm

    def apply_t(self, t: float) -> float:
        """Scalar convenience for finite parameters."""
        (m00, m01), (m10, m11) = self.m
        return (m00 * t + m01) / (m10 * t + m11)

    def compose(self, inner: "MobiusMap") -> "MobiusMap":
        prod = self.m @ inner.m
        return MobiusMap(prod / np.abs(prod).max())

    def det(self) -> float:
        return float(np.linalg.det(self.m))

    def involution_defect(self) -> float:
        """Relative distance of M^2 from a multiple of the identity."""
        m2 = self.m @ self.m
        scaled = 0.5 * np.trace(m2) * np.eye(2)
        return float(np.linalg.norm(m2 - scaled) / np.linalg.norm(m2))

    def identity_defect(self) -> float:
        scaled = 0.5 * np.trace(self.m) * np.eye(2)
        return float(np.linalg.norm(self.m - scaled) / np.linalg.norm(self.m))


def chord_involution(circle: CircleData, P) -> MobiusMap:
    """Involution t -> t' pairing the two circle intersections of chords
    through P.  P at the center yields the antipodal map t -> -1/t; P on the
    circle yields the (degenerate) constant map onto its own parameter."""
    P = np.asarray(P, dtype=float)
    if not np.all(np.isfinite(P)):
        raise CenterPoint("chord pivot must be a finite point")
    px, py = (P - circle.center) / circle.radius
    return MobiusMap(np.array([[py, px - 1.0], [px + 1.0, -py]]))


# ---------------------------------------------------------------------------
# problems and solutions


@dataclass(frozen=True)
class CcpProblem:
    circle: CircleData
    points: Array  # Nx2, N >= 3

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 3 or pts.shape[1] != 2:
            raise GeometryError("a problem needs at least three cartesian points")
        if not np.all(np.isfinite(pts)):
            raise CenterPoint("problem points must be finite")
        object.__setattr__(self, "points", pts)

    @classmethod
    def on_triangle(cls, tri: TriangleData, circle: CircleData) -> "CcpProblem":
        return cls(circle=circle, points=tri.vertices.copy())


TWO_DISTINCT = "two-distinct"
TANGENT_DOUBLE = "tangent-double"


@dataclass(frozen=True)
class CcpSolution:
    vertices: Array  # Nx2 on the circle, side i..i+1 passes through point i
    multiplicity: str = TWO_DISTINCT

    def max_residuals(self, prob: CcpProblem) -> tuple[float, float]:
        """(on-circle, side-incidence) residuals, both in length units."""
        on_circle = max(
            abs(np.linalg.norm(V - prob.circle.center) - prob.circle.radius)
            for V in self.vertices
        )
        n = len(self.vertices)
        incidence = 0.0
        for i in range(n):
            side = core.cart_line(self.vertices[i], self.vertices[(i + 1) % n])
            incidence = max(incidence, core.point_line_distance(prob.points[i], side))
        return on_circle, incidence


def _projective_quadratic_roots(a: float, b: float, c: float, tol: float):
    """Roots of a t^2 + b t + c = 0 as homogeneous (p, q) pairs with t = p/q.

    Returns (kind, roots) with kind in {'two', 'one', 'none'}.  Uses the
    citardauq pairing so the small root is never formed by cancellation.
    """
    disc = b * b - 4.0 * a * c
    if disc < -tol:
        return "none", []
    if disc <= tol:
        if max(abs(a), abs(b)) <= tol:
            return "one", [np.array([1.0, 0.0])]
        root = np.array([-b, 2.0 * a]) if abs(a) >= abs(b) * 1e-14 else np.array([-c, b])
        return "one", [root / np.linalg.norm(root)]
    sq = math.sqrt(disc)
    qq = -0.5 * (b + math.copysign(sq, b if b != 0.0 else 1.0))
    r1 = np.array([qq, a])
    r2 = np.array([c, qq])
    return "two", [r1 / np.linalg.norm(r1), r2 / np.linalg.norm(r2)]


def solve_ccp_mobius(prob: CcpProblem) -> list[CcpSolution]:
    """Solve by composing chord involutions; 0, 1 or 2 solutions.

    Raises DegenerateComposition when the composite map is a multiple of the
    identity (every inscribed polygon closes; nothing to enumerate).
    """
    maps = [chord_involution(prob.circle, P) for P in prob.points]
    composite = maps[0]
    for nxt in maps[1:]:
        composite = nxt.compose(composite)

    m = composite.m
    norm2 = float(np.sum(m * m))
    tol = 1e-10 * norm2
    if composite.identity_defect() <= 1e-10:
        raise DegenerateComposition(
            "composed chord map is the identity: special configuration with "
            "infinitely many inscribed polygons"
        )

    a, b, c = m[1, 0], m[1, 1] - m[0, 0], -m[0, 1]
    kind, roots = _projective_quadratic_roots(a, b, c, tol)
    if kind == "none":
        return []

    solutions = []
    for root in roots:
        params = [root]
        for inv in maps[:-1]:
            params.append(inv(params[-1]))
        verts = np.array([point_from_param(prob.circle, pq) for pq in params])
        solutions.append(
            CcpSolution(vertices=verts,
                        multiplicity=TANGENT_DOUBLE if kind == "one" else TWO_DISTINCT)
        )

    def first_vertex_angle(sol: CcpSolution) -> float:
        d = sol.vertices[0] - prob.circle.center
        return math.atan2(d[1], d[0]) % (2.0 * math.pi)

    solutions.sort(key=first_vertex_angle)
    return solutions


# ---------------------------------------------------------------------------
# axis (perspectrix) construction for the triangle / incircle-excircle case


def _second_intersection(circle: CircleData, Q, through) -> Array:
    """Other intersection of the circle with the chord from Q through `through`."""
    Q = np.asarray(Q, float)
    d = np.asarray(through, float) - Q
    norm = np.linalg.norm(d)
    if norm <= 1e-14 * circle.radius:
        raise PathClosed("chord pivot coincides with the current point")
    d = d / norm
    out = Q - 2.0 * np.dot(Q - circle.center, d) * d
    # snap back onto the circle so four-step paths do not drift
    rel = out - circle.center
    return circle.center + circle.radius * rel / np.linalg.norm(rel)


def _touchpoints(tri: TriangleData, circle: CircleData) -> Array:
    """Tangency points of the circle with lines BC, CA, AB."""
    A, B, C = tri.vertices
    return np.array([
        core.foot_on_line(B, C, circle.center),
        core.foot_on_line(C, A, circle.center),
        core.foot_on_line(A, B, circle.center),
    ])


def _rotate_about(center, P, angle: float) -> Array:
    ca, sa = math.cos(angle), math.sin(angle)
    rel = np.asarray(P, float) - center
    return center + np.array([ca * rel[0] - sa * rel[1], sa * rel[0] + ca * rel[1]])


def identify_circle(tri: TriangleData, circle: CircleData) -> str:
    """Match a circle against the triangle's incircle/excircles."""
    for tag in core.CIRCLE_TAGS:
        ref = core.tagged_circle(tri, tag)
        if (np.linalg.norm(ref.center - circle.center) <= 1e-9 * ref.radius
                and abs(ref.radius - circle.radius) <= 1e-9 * ref.radius):
            return tag
    raise GeometryError("circle is neither the incircle nor an excircle")


def _axis_from_seeds(circle: CircleData, pivots, seeds):
    """Walk the three seed paths and intersect cross-chords; returns the
    homogeneous axis line, or None if this seeding is degenerate."""
    paths = []
    for seed in seeds:
        path = [seed]
        for pivot in pivots:
            path.append(_second_intersection(circle, path[-1], pivot))
        if np.linalg.norm(path[-1] - path[0]) <= 1e-6 * circle.radius:
            return None  # closed path: seed accidentally hit a solution vertex
        paths.append(path)
    (a1, _, _, a4), (b1, _, _, b4), (c1, _, _, c4) = paths

    def cross_point(p, p4, q, q4):
        try:
            l1 = core.cart_line(p, q4)
            l2 = core.cart_line(p4, q)
        except GeometryError:
            return None  # seed landed on another path's endpoint
        if core.sin_angle(l1, l2) <= 1e-9:
            return None
        return np.cross(l1, l2)

    h1 = cross_point(a1, a4, b1, b4)
    h2 = cross_point(a1, a4, c1, c4)
    if h1 is None or h2 is None or core.sin_angle(h1, h2) <= 1e-9:
        return None
    return np.cross(h1, h2)


def _wrap_angle(x: float) -> float:
    return (x + math.pi) % (2.0 * math.pi) - math.pi


def _closure_gap(circle: CircleData, pivots, theta: float) -> float:
    """Angular defect of the three-chord walk starting at angle theta."""
    P = circle.point_at(theta)
    for pivot in pivots:
        P = _second_intersection(circle, P, pivot)
    rel = P - circle.center
    return _wrap_angle(math.atan2(rel[1], rel[0]) - theta)


def _polish_fixed_point(circle: CircleData, pivots, P0) -> Array:
    """Newton-polish an approximate solution vertex on the closure gap.

    Uses only geometric chord steps; refines the axis construction's
    intersection points without touching the parameter-map machinery.
    """
    rel = P0 - circle.center
    theta = math.atan2(rel[1], rel[0])
    step_h = 1e-7
    for _ in range(4):
        g = _closure_gap(circle, pivots, theta)
        if abs(g) < 1e-15:
            break
        gp = (_closure_gap(circle, pivots, theta + step_h) - g) / step_h
        if abs(gp) < 1e-8:
            break
        step = -g / gp
        if abs(step) > 0.05:
            break  # stay local: never hop to the other fixed point
        theta += step
    return circle.point_at(theta)


def _line_circle_points(circle: CircleData, line) -> tuple[Array, Array]:
    l, m, n = line
    norm = math.hypot(l, m)
    signed = (l * circle.center[0] + m * circle.center[1] + n) / norm
    if abs(signed) > circle.radius * (1.0 + 1e-9):
        raise NoRealIntersection("axis does not meet the circle")
    foot = circle.center - signed * np.array([l, m]) / norm
    half = math.sqrt(max(circle.radius ** 2 - signed * signed, 0.0))
    direction = np.array([-m, l]) / norm
    return foot + half * direction, foot - half * direction


def solve_ccp_perspectrix(tri: TriangleData, circle: CircleData) -> tuple[VertexMatrix, VertexMatrix]:
    """Axis construction on the incircle or an excircle of `tri`.

    Seeds follow the constructive recipe: two touchpoints plus the reflection
    of the third touchpoint through the circle center; every path is chained
    by chords through B, then C, then A.  If a seeding degenerates (a path
    closes or the two axis points collapse) the construction retries with a
    deterministic ladder of alternative seeds.
    """
    tag = identify_circle(tri, circle)
    t_a, t_b, t_c = _touchpoints(tri, circle)
    antipode = lambda P: 2.0 * circle.center - P
    pivots = (tri.B, tri.C, tri.A)

    seed_choices = [
        (antipode(t_a), t_b, t_c),
        (t_a, antipode(t_b), antipode(t_c)),
        (antipode(t_a), antipode(t_b), t_c),
    ]
    seed_choices += [
        tuple(_rotate_about(circle.center, P, angle) for P in (t_a, t_b, t_c))
        for angle in (0.37, 0.91, 1.53)
    ]

    axis = None
    for seeds in seed_choices:
        axis = _axis_from_seeds(circle, pivots, seeds)
        if axis is not None:
            break
    if axis is None:
        raise PathClosed("all seed ladders degenerated; cannot build the axis")

    m1, m4 = _line_circle_points(circle, axis)
    m1 = _polish_fixed_point(circle, pivots, m1)
    m4 = _polish_fixed_point(circle, pivots, m4)

    def triangle_of(M) -> Array:
        v2 = _second_intersection(circle, M, tri.B)
        v3 = _second_intersection(circle, v2, tri.C)
        return np.array([M, v2, v3])

    tris = [triangle_of(m1), triangle_of(m4)]

    def first_angle(verts: Array) -> float:
        d = verts[0] - circle.center
        return math.atan2(d[1], d[0]) % (2.0 * math.pi)

    tris.sort(key=first_angle)
    out = []
    for label, verts in zip(("T1", "T2"), tris):
        rows = np.array([core.cartesian_to_bary(V, tri) for V in verts])
        out.append(VertexMatrix(rows=rows, label=label, circle=tag))
    return out[0], out[1]
