import math

import numpy as np
import pytest
from hypothesis import given, assume, settings
from hypothesis import strategies as st

from castillon import core
from castillon.errors import (
    CoincidentPoints,
    DegenerateConic,
    DegenerateTriangle,
    InfinitePoint,
)


def test_triangle_derived_quantities(tri6913):
    t = tri6913
    assert t.s == 14
    assert (t.u, t.v, t.w) == (8, 5, 1)
    assert abs(t.u + t.v + t.w - t.s) < 1e-12
    assert abs(t.area - math.sqrt(14 * 8 * 5 * 1)) < 1e-12
    assert abs(t.r * t.s - t.area) < 1e-12
    assert abs(4 * t.R * t.area - t.a * t.b * t.c) < 1e-10


def test_canonical_embedding(tri345):
    t = tri345
    assert np.allclose(t.B, [0, 0])
    assert np.allclose(t.C, [3, 0])
    assert t.A[1] > 0
    # sidelength consistency of the embedding
    assert abs(np.linalg.norm(t.B - t.C) - t.a) < 1e-12 * t.a
    assert abs(np.linalg.norm(t.C - t.A) - t.b) < 1e-12 * t.b
    assert abs(np.linalg.norm(t.A - t.B) - t.c) < 1e-12 * t.c


@pytest.mark.parametrize("sides", [(1, 1, 2), (1, 2, 5), (0, 1, 1), (-3, 4, 5)])
def test_invalid_sides_rejected(sides):
    with pytest.raises(DegenerateTriangle):
        core.triangle_from_sides(*sides)


def test_flat_triangle_rejected():
    with pytest.raises(DegenerateTriangle):
        core.triangle_from_vertices([[0, 0], [1, 0], [2, 1e-14]])


def test_bary_to_cartesian_basics(tri345):
    t = tri345
    centroid = core.bary_to_cartesian(np.array([1.0, 1, 1]), t)
    assert np.allclose(centroid, t.vertices.mean(axis=0))
    assert np.allclose(core.bary_to_cartesian(np.array([1.0, 0, 0]), t), t.A)


def test_incenter_touches_all_sides(tri345):
    # [a,b,c] on (3,4,5) is the incenter: distance to each side is r = 1
    t = tri345
    P = core.bary_to_cartesian(np.array([t.a, t.b, t.c]), t)
    assert abs(t.r - 1.0) < 1e-14
    for line in core.side_lines(t):
        assert abs(core.point_line_distance(P, line) - 1.0) < 1e-12


def test_infinite_point_raises(tri345):
    with pytest.raises(InfinitePoint):
        core.bary_to_cartesian(np.array([1.0, -2.0, 1.0]), tri345)


def test_cartesian_to_bary_vertices_and_centroid(tri6913):
    t = tri6913
    assert core.sin_angle(core.cartesian_to_bary(t.A, t), [1, 0, 0]) < 1e-14
    assert core.sin_angle(core.cartesian_to_bary(t.vertices.mean(axis=0), t),
                          [1, 1, 1]) < 1e-13


@settings(max_examples=60, deadline=None)
@given(st.floats(0.5, 3), st.floats(0.5, 3), st.floats(0.5, 3),
       st.floats(-1, 2), st.floats(-1, 2))
def test_bary_round_trip(a, b, c, x, y):
    assume(a + b > c + 0.05 and b + c > a + 0.05 and c + a > b + 0.05)
    t = core.triangle_from_sides(a, b, c)
    P = np.array([x, y])
    back = core.bary_to_cartesian(core.cartesian_to_bary(P, t), t)
    assert np.linalg.norm(back - P) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 10), st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 4))
def test_bary_scaling_invariance(lam, x, y, z):
    tri = core.triangle_from_sides(3, 4, 5)
    p = np.array([x, y, z])
    assume(abs(p.sum()) > 1e-3 and np.abs(p).max() > 1e-3)
    a = core.bary_to_cartesian(p, tri)
    b = core.bary_to_cartesian(lam * p, tri)
    assert np.linalg.norm(a - b) < 1e-10


def test_incircle_and_excircles(tri345, equilateral):
    inc = core.incircle(tri345)
    assert abs(inc.radius - 1.0) < 1e-14
    assert np.allclose(inc.center, [2, 1])
    exc = core.excircle(tri345, "A")
    assert abs(exc.radius - 2.0) < 1e-14  # area/(s-a) = 6/3
    for which in "ABC":
        circ = core.excircle(tri345, which)
        for line in core.side_lines(tri345):
            assert core.circle_tangency_residual(circ, line) < 1e-12
    eq = core.incircle(equilateral)
    assert abs(eq.radius - 1 / math.sqrt(3)) < 1e-14
    assert np.allclose(eq.center, equilateral.vertices.mean(axis=0))
    radii = [core.excircle(equilateral, w).radius for w in "ABC"]
    assert max(radii) - min(radii) < 1e-14


def test_tangency_residual_random_triangles(triangles_100):
    for t in triangles_100:
        scale = max(t.sides)
        for which in "ABC":
            circ = core.excircle(t, which)
            for line in core.side_lines(t):
                assert core.circle_tangency_residual(circ, line) < 1e-12 * scale
        inc = core.incircle(t)
        for line in core.side_lines(t):
            assert core.circle_tangency_residual(inc, line) < 1e-12 * scale


def test_line_through_basics():
    line = core.line_through([1, 0, 0], [0, 1, 0])
    assert core.sin_angle(line, [0, 0, 1]) < 1e-15  # side AB is z = 0
    with pytest.raises(CoincidentPoints):
        core.line_through([1, 2, 3], [2, 4, 6])


def test_line_incidence_by_construction(rng):
    for _ in range(50):
        p, q = rng.normal(size=3), rng.normal(size=3)
        line = core.line_through(p, q)
        assert core.incidence_residual(line, p) < 1e-14
        assert core.incidence_residual(line, q) < 1e-14


def test_soddy_line_contains_de_longchamps(tri6913):
    # line X1-X7 passes through X20 (computed via the centers registry)
    from castillon import centers
    t = tri6913
    line = core.line_through(centers.center(1, t), centers.center(7, t))
    X20 = centers.center(20, t)
    assert core.incidence_residual(line, X20) < 1e-10


def _unit_tangent(theta):
    return np.array([math.cos(theta), math.sin(theta), -1.0])


def test_conic_from_five_unit_circle_tangents():
    lines = [_unit_tangent(math.radians(d)) for d in (0, 72, 144, 216, 288)]
    fit = core.conic_from_tangent_lines(lines)
    dual = core.circle_to_conic(core.CircleData(np.zeros(2), 1.0)).dual()
    assert core.sin_angle(fit.m, dual.m) < 1e-12
    assert core.conic_line_residual(fit, _unit_tangent(1.234)) < 1e-10


def test_conic_fit_degenerate():
    line = np.array([1.0, 2.0, 3.0])
    with pytest.raises(DegenerateConic):
        core.conic_from_tangent_lines([line] * 5)


def test_conic_fit_solution_sides(tri6913):
    # five of the six solution sides determine the conic the sixth touches
    from castillon import ccp_closed
    vm1, vm2 = ccp_closed.incircle_solutions(tri6913)
    sides = []
    for vm in (vm1, vm2):
        verts = vm.cartesian(tri6913)
        sides += [core.cart_line(verts[i], verts[(i + 1) % 3]) for i in range(3)]
    fit = core.conic_from_tangent_lines(sides[:5])
    assert core.conic_line_residual(fit, sides[5]) < 1e-8


def test_circle_conic_round_trip(rng):
    circ = core.CircleData(np.array([0.4, -1.3]), 2.2)
    conic = core.circle_to_conic(circ)
    back = core.circle_from_conic(conic)
    assert np.linalg.norm(back.center - circ.center) < 1e-12
    assert abs(back.radius - circ.radius) < 1e-12
    for _ in range(30):
        theta = rng.uniform(0, 2 * math.pi)
        # tangent line at angle theta
        n = np.array([math.cos(theta), math.sin(theta)])
        P = circ.center + circ.radius * n
        line = np.array([n[0], n[1], -float(n @ P)])
        assert core.conic_line_residual(conic, line) < 1e-10
        assert core.circle_tangency_residual(circ, line) < 1e-10


def test_normalize_bary():
    p = core.normalize_bary(np.array([2.0, 2.0, 4.0]))
    assert abs(p.sum() - 1) < 1e-15
    inf = core.normalize_bary(np.array([-1.0, 2.0, -1.0]))
    assert abs(np.abs(inf).max() - 1) < 1e-15
    assert core.is_infinite_bary(inf)


def test_bary_round_trip_other_direction(tri6913, rng):
    # bary -> cartesian -> bary returns the same class up to scale
    for _ in range(30):
        p = rng.normal(size=3)
        if abs(p.sum()) < 1e-2:
            continue
        back = core.cartesian_to_bary(core.bary_to_cartesian(p, tri6913), tri6913)
        assert core.sin_angle(p, back) < 1e-12


def test_convert_bary_projective(tri345, tri6913):
    # finite point round-trips through another triangle's frame
    p = np.array([0.2, 0.3, 0.5])
    q = core.convert_bary(p, tri345, tri6913)
    back = core.convert_bary(q, tri6913, tri345)
    assert core.sin_angle(p, back) < 1e-13
    # infinite points stay infinite
    inf = np.array([1.0, -2.0, 1.0])
    assert core.is_infinite_bary(core.convert_bary(inf, tri345, tri6913))
