"""Numeric foundation: triangles, barycentric coordinates, lines, circles, conics.

Everything operates on small numpy arrays.  Homogeneous quantities
(barycentric points, line coefficient triples, conic matrices) are defined up
to a nonzero scale; equality checks therefore use the sine of the angle
between coordinate vectors, never componentwise differences.

Cartesian embeddings are canonical: B = (0, 0), C = (a, 0), A in the upper
half-plane, unless a triangle is built from explicit vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentPoints,
    DegenerateConic,
    DegenerateTriangle,
    GeometryError,
    InfinitePoint,
)

Array = np.ndarray

# Reject triangles with area below AREA_CUTOFF * s^2: every downstream
# formula divides by an area-derived quantity.
AREA_CUTOFF = 1e-12


# ---------------------------------------------------------------------------
# homogeneous-coordinate helpers


def sin_angle(p, q) -> float:
    """Sine of the angle between two coordinate vectors of equal shape.

    Scale (and sign) invariant; this is the canonical equality residual for
    homogeneous objects.  Computed as the norm of the component of q
    orthogonal to p (the cross-product form for 3-vectors), which stays
    accurate down to machine precision for nearly parallel vectors, unlike
    sqrt(1 - cos^2).  Returns 1.0 if either vector is zero.
    """
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    norm_p = np.linalg.norm(p)
    norm_q = np.linalg.norm(q)
    if norm_p == 0.0 or norm_q == 0.0:
        return 1.0
    p = p / norm_p
    q = q / norm_q
    perp = q - np.dot(q, p) * p
    return min(1.0, float(np.linalg.norm(perp)))


def normalize_bary(p) -> Array:
    """Canonical representative: component sum 1 for finite points,
    max |component| = 1 (first nonzero component positive) at infinity."""
    p = np.asarray(p, dtype=float)
    total = p.sum()
    if abs(total) > 1e-14 * np.abs(p).max():
        return p / total
    q = p / np.abs(p).max()
    for x in q:
        if x != 0.0:
            return q if x > 0 else -q
    raise GeometryError("zero barycentric triple")


def is_infinite_bary(p) -> bool:
    p = np.asarray(p, dtype=float)
    return abs(p.sum()) <= 1e-14 * np.abs(p).max()


def homog(P) -> Array:
    """Cartesian point -> homogeneous (x, y, 1)."""
    P = np.asarray(P, dtype=float)
    return np.array([P[0], P[1], 1.0])


def dehomog(Ph) -> Array:
    Ph = np.asarray(Ph, dtype=float)
    if abs(Ph[2]) <= 1e-14 * max(abs(Ph[0]), abs(Ph[1]), 1e-300):
        raise InfinitePoint("homogeneous point at infinity")
    return Ph[:2] / Ph[2]


# ---------------------------------------------------------------------------
# triangles


@dataclass(frozen=True)
class TriangleData:
    """Immutable triangle: sidelengths, derived metric data, an embedding.

    a, b, c are the lengths of the sides opposite A, B, C;  s is the
    semiperimeter and u = s - a, v = s - b, w = s - c.
    """

    a: float
    b: float
    c: float
    s: float
    u: float
    v: float
    w: float
    area: float
    r: float
    R: float
    vertices: Array  # 3x2, rows A, B, C

    @property
    def A(self) -> Array:
        return self.vertices[0]

    @property
    def B(self) -> Array:
        return self.vertices[1]

    @property
    def C(self) -> Array:
        return self.vertices[2]

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def bary_matrix(self) -> Array:
        """3x3 matrix V with V @ [x,y,z] = (sum-weighted) homogeneous cartesian."""
        V = np.ones((3, 3))
        V[:2, :] = self.vertices.T
        return V


def _derive(a: float, b: float, c: float, vertices: Array) -> TriangleData:
    s = 0.5 * (a + b + c)
    u, v, w = s - a, s - b, s - c
    if min(a, b, c) <= 0.0 or min(u, v, w) <= 0.0:
        raise DegenerateTriangle(f"sides ({a}, {b}, {c}) violate the triangle inequality")
    area = math.sqrt(s * u * v * w)
    if area < AREA_CUTOFF * s * s:
        raise DegenerateTriangle(f"triangle ({a}, {b}, {c}) is numerically flat")
    return TriangleData(
        a=a, b=b, c=c, s=s, u=u, v=v, w=w,
        area=area, r=area / s, R=a * b * c / (4.0 * area),
        vertices=vertices,
    )


def triangle_from_sides(a: float, b: float, c: float) -> TriangleData:
    """Build a triangle in the canonical embedding B=(0,0), C=(a,0), A above."""
    if not all(math.isfinite(x) for x in (a, b, c)):
        raise DegenerateTriangle("non-finite sidelength")
    x = (a * a + c * c - b * b) / (2.0 * a) if a > 0 else 0.0
    y2 = c * c - x * x
    if y2 <= 0.0:
        raise DegenerateTriangle(f"sides ({a}, {b}, {c}) do not embed")
    vertices = np.array([[x, math.sqrt(y2)], [0.0, 0.0], [a, 0.0]])
    return _derive(float(a), float(b), float(c), vertices)


def triangle_from_vertices(pts) -> TriangleData:
    """Build a triangle from an explicit 3x2 vertex array (A, B, C rows)."""
    P = np.asarray(pts, dtype=float).reshape(3, 2).copy()
    if not np.all(np.isfinite(P)):
        raise DegenerateTriangle("non-finite vertex")
    a = float(np.linalg.norm(P[1] - P[2]))
    b = float(np.linalg.norm(P[2] - P[0]))
    c = float(np.linalg.norm(P[0] - P[1]))
    return _derive(a, b, c, P)


# ---------------------------------------------------------------------------
# barycentric <-> cartesian


def bary_to_cartesian(p, tri: TriangleData) -> Array:
    """Map a finite homogeneous barycentric triple to a cartesian point."""
    p = np.asarray(p, dtype=float)
    total = p.sum()
    if abs(total) <= 1e-14 * np.abs(p).max():
        raise InfinitePoint("barycentric point at infinity has no cartesian image")
    return (p @ tri.vertices) / total


def _signed2(P, Q, R) -> float:
    return (Q[0] - P[0]) * (R[1] - P[1]) - (Q[1] - P[1]) * (R[0] - P[0])


def cartesian_to_bary(P, tri: TriangleData) -> Array:
    """Inverse of bary_to_cartesian; returns the sum-1 representative."""
    P = np.asarray(P, dtype=float)
    A, B, C = tri.vertices
    full = _signed2(A, B, C)
    return np.array([
        _signed2(P, B, C) / full,
        _signed2(A, P, C) / full,
        _signed2(A, B, P) / full,
    ])


def convert_bary(p, tri_from: TriangleData, tri_to: TriangleData) -> Array:
    """Re-express a barycentric triple w.r.t. another triangle.

    Works projectively (through homogeneous cartesian coordinates), so points
    at infinity convert to points at infinity.
    """
    return np.linalg.solve(tri_to.bary_matrix(), tri_from.bary_matrix() @ np.asarray(p, float))


# ---------------------------------------------------------------------------
# lines


def line_through(p, q) -> Array:
    """Homogeneous line through two homogeneous points (cross product).

    Valid in barycentric or cartesian-homogeneous coordinates alike.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    line = np.cross(p, q)
    if np.linalg.norm(line) <= 1e-14 * np.linalg.norm(p) * np.linalg.norm(q):
        raise CoincidentPoints("points are proportional; no unique line")
    return line


def incidence_residual(line, p) -> float:
    """|<line, p>| / (|line| |p|): scale-invariant incidence defect."""
    line = np.asarray(line, dtype=float)
    p = np.asarray(p, dtype=float)
    return float(abs(np.dot(line, p)) / (np.linalg.norm(line) * np.linalg.norm(p)))


def meet(l1, l2) -> Array:
    """Intersection point of two homogeneous lines (cross product)."""
    return line_through(l1, l2)


def cart_line(P, Q) -> Array:
    """Cartesian homogeneous line through two cartesian points."""
    return line_through(homog(P), homog(Q))


def point_line_distance(P, line) -> float:
    """Euclidean distance of a cartesian point to a cartesian homogeneous line."""
    l, m, n = np.asarray(line, dtype=float)
    return abs(l * P[0] + m * P[1] + n) / math.hypot(l, m)


def foot_on_line(P, Q, X) -> Array:
    """Foot of the perpendicular from X onto the line through P and Q."""
    P = np.asarray(P, float)
    d = np.asarray(Q, float) - P
    d = d / np.linalg.norm(d)
    return P + np.dot(np.asarray(X, float) - P, d) * d


def line_bary_to_cart(line, tri: TriangleData) -> Array:
    return np.linalg.solve(tri.bary_matrix().T, np.asarray(line, float))


def line_cart_to_bary(line, tri: TriangleData) -> Array:
    return tri.bary_matrix().T @ np.asarray(line, float)


def side_lines(tri: TriangleData) -> Array:
    """Cartesian homogeneous lines of the sides (BC, CA, AB), i.e. opposite A, B, C."""
    A, B, C = tri.vertices
    return np.array([cart_line(B, C), cart_line(C, A), cart_line(A, B)])


# ---------------------------------------------------------------------------
# circles


@dataclass(frozen=True)
class CircleData:
    """Circle by cartesian center and radius.

    Radius 0 is tolerated only as the degenerate point-circle that shows up
    in equilateral Brocard frames; proper constructions always yield > 0.
    """

    center: Array
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius >= 0.0):
            raise GeometryError(f"invalid circle radius {self.radius}")

    def point_at(self, theta: float) -> Array:
        return self.center + self.radius * np.array([math.cos(theta), math.sin(theta)])


def incircle(tri: TriangleData) -> CircleData:
    center = bary_to_cartesian(np.array([tri.a, tri.b, tri.c]), tri)
    return CircleData(center=center, radius=tri.r)


def excircle(tri: TriangleData, which: str) -> CircleData:
    """Excircle opposite vertex `which` in {'A','B','C'}."""
    idx = "ABC".index(which)
    weights = np.array([tri.a, tri.b, tri.c])
    weights[idx] = -weights[idx]
    radius = tri.area / (tri.u, tri.v, tri.w)[idx]
    return CircleData(center=bary_to_cartesian(weights, tri), radius=radius)


def circle_tangency_residual(circle: CircleData, line) -> float:
    """|distance(center, line) - radius|, in length units."""
    return abs(point_line_distance(circle.center, line) - circle.radius)


# ---------------------------------------------------------------------------
# solution triangles

INCIRCLE = "incircle"
EXCIRCLE_A = "excircle-A"
EXCIRCLE_B = "excircle-B"
EXCIRCLE_C = "excircle-C"
CIRCLE_TAGS = (INCIRCLE, EXCIRCLE_A, EXCIRCLE_B, EXCIRCLE_C)


def tagged_circle(tri: TriangleData, tag: str) -> CircleData:
    if tag == INCIRCLE:
        return incircle(tri)
    if tag in (EXCIRCLE_A, EXCIRCLE_B, EXCIRCLE_C):
        return excircle(tri, tag[-1])
    raise GeometryError(f"unknown circle tag {tag!r}")


@dataclass(frozen=True)
class VertexMatrix:
    """One inscribed solution triangle, rows = vertices in reference barycentrics."""

    rows: Array  # 3x3
    label: str  # "T1" | "T2"
    circle: str  # one of CIRCLE_TAGS

    def cartesian(self, tri: TriangleData) -> Array:
        return np.array([bary_to_cartesian(row, tri) for row in self.rows])


# ---------------------------------------------------------------------------
# conics

POINT_CONIC = "point"
LINE_CONIC = "line"


@dataclass(frozen=True)
class ConicMatrix:
    """Symmetric homogeneous 3x3 conic matrix.

    kind 'point': x^T M x = 0 for points on the conic.
    kind 'line':  l^T M l = 0 for tangent lines (dual form).
    """

    m: Array
    kind: str

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3) or np.abs(m - m.T).max() > 1e-12 * np.abs(m).max():
            raise GeometryError("conic matrix must be 3x3 symmetric")
        object.__setattr__(self, "m", 0.5 * (m + m.T))
        if self.kind not in (POINT_CONIC, LINE_CONIC):
            raise GeometryError(f"unknown conic kind {self.kind!r}")

    def dual(self) -> "ConicMatrix":
        kind = LINE_CONIC if self.kind == POINT_CONIC else POINT_CONIC
        return ConicMatrix(adjugate3(self.m), kind)


def adjugate3(M) -> Array:
    """Adjugate (cofactor transpose) of a 3x3 matrix, computed directly."""
    M = np.asarray(M, dtype=float)
    out = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            mi = np.delete(np.delete(M, j, axis=0), i, axis=1)
            out[i, j] = ((-1) ** (i + j)) * (mi[0, 0] * mi[1, 1] - mi[0, 1] * mi[1, 0])
    return out


def circle_to_conic(circle: CircleData) -> ConicMatrix:
    cx, cy = circle.center
    r = circle.radius
    if r <= 0.0:
        raise GeometryError("degenerate circle has no conic matrix")
    m = np.array([
        [1.0, 0.0, -cx],
        [0.0, 1.0, -cy],
        [-cx, -cy, cx * cx + cy * cy - r * r],
    ])
    return ConicMatrix(m, POINT_CONIC)


def circle_from_conic(conic: ConicMatrix) -> CircleData:
    """Inverse of circle_to_conic (the matrix must be a circle)."""
    if conic.kind != POINT_CONIC:
        raise GeometryError("circle extraction requires a point-conic")
    m = conic.m / conic.m[0, 0]
    if abs(m[0, 1]) > 1e-10 or abs(m[0, 0] - m[1, 1]) > 1e-10:
        raise GeometryError("conic is not a circle")
    cx, cy = -m[0, 2], -m[1, 2]
    r2 = cx * cx + cy * cy - m[2, 2]
    if r2 <= 0.0:
        raise GeometryError("conic is an imaginary circle")
    return CircleData(center=np.array([cx, cy]), radius=math.sqrt(r2))


def conic_point_residual(conic: ConicMatrix, Ph) -> float:
    """Scale-invariant on-conic residual of a homogeneous point."""
    if conic.kind != POINT_CONIC:
        raise GeometryError("point residual requires a point-conic")
    Ph = np.asarray(Ph, dtype=float)
    val = float(Ph @ conic.m @ Ph)
    return abs(val) / (np.linalg.norm(conic.m) * float(Ph @ Ph))

def conic_line_residual(conic: ConicMatrix, line) -> float:
    """Scale-invariant tangency residual of a homogeneous line."""
    n = conic.m if conic.kind == LINE_CONIC else adjugate3(conic.m)
    line = np.asarray(line, dtype=float)
    val = float(line @ n @ line)
    return abs(val) / (np.linalg.norm(n) * float(line @ line))


def conic_cart_to_bary(conic: ConicMatrix, tri: TriangleData) -> ConicMatrix:
    V = tri.bary_matrix()
    return ConicMatrix(V.T @ conic.m @ V, conic.kind)


def conic_bary_to_cart(conic: ConicMatrix, tri: TriangleData) -> ConicMatrix:
    W = np.linalg.inv(tri.bary_matrix())
    return ConicMatrix(W.T @ conic.m @ W, conic.kind)


def conic_from_tangent_lines(lines) -> ConicMatrix:
    """Dual conic through five line-coordinate triples.

    The five tangency conditions l^T N l = 0 form a 5x6 linear system in the
    entries of the symmetric dual matrix N; its null vector is the conic.
    Raises DegenerateConic if the null space is not one-dimensional.
    """
    lines = np.asarray(lines, dtype=float)
    if lines.shape != (5, 3):
        raise GeometryError("exactly five lines are required")
    lines = lines / np.linalg.norm(lines, axis=1, keepdims=True)
    l, m, n = lines[:, 0], lines[:, 1], lines[:, 2]
    system = np.column_stack([l * l, 2 * l * m, 2 * l * n, m * m, 2 * m * n, n * n])
    _, svals, vt = np.linalg.svd(system)
    # a 5x6 system always has a null vector (vt[-1]); a second vanishing
    # singular value means the lines do not pin down a unique conic
    if svals[-1] <= 1e-10 * svals[0]:
        raise DegenerateConic("tangent lines do not determine a unique conic")
    A, B, C, D, E, F = vt[-1]
    return ConicMatrix(np.array([[A, B, C], [B, D, E], [C, E, F]]), LINE_CONIC)


def conic_center(conic: ConicMatrix) -> Array:
    """Cartesian center of a central point-conic."""
    if conic.kind != POINT_CONIC:
        raise GeometryError("center requires a point-conic")
    M = conic.m
    return np.linalg.solve(M[:2, :2], -M[:2, 2])


def conic_semi_axes(conic: ConicMatrix) -> tuple[float, float]:
    """Semi-axis lengths (major, minor) of a real central point-conic."""
    M = conic.m
    center = conic_center(conic)
    val = float(M[2, 2] + M[:2, 2] @ center)
    eigvals = np.linalg.eigvalsh(M[:2, :2])
    axes = sorted((math.sqrt(abs(val / ev)) for ev in eigvals), reverse=True)
    return (axes[0], axes[1])
