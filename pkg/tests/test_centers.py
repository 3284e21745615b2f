import numpy as np
import pytest

from castillon import centers, core
from castillon.errors import UnknownCenter

REQUIRED = (1, 2, 3, 4, 6, 7, 15, 16, 20, 175, 176, 187, 279, 371, 372, 390,
            481, 482, 511, 512, 514, 516, 1151, 1152, 1350, 3053)


def test_registry_covers_required_indices():
    registry = set(centers.registry_indices())
    assert set(REQUIRED) <= registry


def test_unknown_center_raises(tri345):
    with pytest.raises(UnknownCenter):
        centers.center(99999, tri345)


def test_centroid_and_gergonne(tri345, tri6913):
    assert core.sin_angle(centers.center(2, tri345), [1, 1, 1]) < 1e-15
    assert core.sin_angle(centers.center(7, tri6913), [1 / 8, 1 / 5, 1.0]) < 1e-14


def test_accepts_vertex_array(tri345):
    by_tri = centers.center(6, tri345)
    by_verts = centers.center(6, tri345.vertices)
    assert core.sin_angle(by_tri, by_verts) < 1e-14


def test_homogeneity_all_registry(tri345):
    a, b, c = tri345.sides
    for idx in centers.registry_indices():
        fn = centers.center_definition(idx).fn
        assert core.sin_angle(fn(a, b, c), fn(2 * a, 2 * b, 2 * c)) < 1e-10, idx


def test_permutation_equivariance(tri6913):
    # relabeling (a,b,c) -> (b,c,a) must rotate the barycentrics
    a, b, c = tri6913.sides
    for idx in centers.registry_indices():
        fn = centers.center_definition(idx).fn
        rotated = fn(b, c, a)
        direct = fn(a, b, c)
        assert core.sin_angle(np.roll(direct, -1), rotated) < 1e-9, idx


# --- defining-property tests -------------------------------------------------


def test_incenter_property(tri6913):
    P = core.bary_to_cartesian(centers.center(1, tri6913), tri6913)
    d = [core.point_line_distance(P, line) for line in core.side_lines(tri6913)]
    assert max(d) - min(d) < 1e-12


def test_circumcenter_property(tri6913):
    P = core.bary_to_cartesian(centers.center(3, tri6913), tri6913)
    d = [np.linalg.norm(P - V) for V in tri6913.vertices]
    assert max(d) - min(d) < 1e-12


def test_orthocenter_property(tri6913):
    t = tri6913
    P = core.bary_to_cartesian(centers.center(4, t), t)
    assert abs(float((P - t.A) @ (t.B - t.C))) < 1e-10
    assert abs(float((P - t.B) @ (t.C - t.A))) < 1e-10


def test_symmedian_distance_property(tri345):
    # distances to the sides are proportional to the sidelengths
    t = tri345
    P = core.bary_to_cartesian(centers.center(6, t), t)
    ratios = [core.point_line_distance(P, line) / s
              for line, s in zip(core.side_lines(t), t.sides)]
    assert max(ratios) - min(ratios) < 1e-12


def test_gergonne_cevian_property(tri6913):
    # cevians through the intouch points concur at X7
    t = tri6913
    inc = core.incircle(t)
    X7 = core.bary_to_cartesian(centers.center(7, t), t)
    A, B, C = t.vertices
    for V, (P, Q) in zip((A, B, C), ((B, C), (C, A), (A, B))):
        touch = core.foot_on_line(P, Q, inc.center)
        assert core.point_line_distance(X7, core.cart_line(V, touch)) < 1e-10


def test_isodynamic_property(tri6913):
    t = tri6913
    for idx in (15, 16):
        P = core.bary_to_cartesian(centers.center(idx, t), t)
        vals = [s * np.linalg.norm(P - V) for s, V in zip(t.sides, t.vertices)]
        assert max(vals) - min(vals) < 1e-10 * max(vals)


def test_de_longchamps_reflection(tri345):
    t = tri345
    X3 = core.bary_to_cartesian(centers.center(3, t), t)
    X4 = core.bary_to_cartesian(centers.center(4, t), t)
    X20 = core.bary_to_cartesian(centers.center(20, t), t)
    assert np.linalg.norm(X20 - (2 * X3 - X4)) < 1e-12


@pytest.mark.parametrize("sides", [(3, 4, 5), (6, 9, 13), (1.48, 1.85, 1.32)])
def test_equal_detour_property(sides):
    # inner Soddy center: |PA| - (s-a) equal over the vertices
    t = core.triangle_from_sides(*sides)
    P = core.bary_to_cartesian(centers.center(176, t), t)
    vals = [np.linalg.norm(P - V) - q for V, q in zip(t.vertices, (t.u, t.v, t.w))]
    assert max(vals) - min(vals) < 1e-12
    assert min(vals) > 0


def test_isoperimetric_property():
    # outer Soddy center: |PA| + (s-a) equal, on a triangle where the outer
    # Soddy circle has positive curvature
    t = core.triangle_from_sides(1.48, 1.85, 1.32)
    P = core.bary_to_cartesian(centers.center(175, t), t)
    vals = [np.linalg.norm(P - V) + q for V, q in zip(t.vertices, (t.u, t.v, t.w))]
    assert max(vals) - min(vals) < 1e-12


def test_soddy_centers_on_soddy_line(tri6913):
    t = tri6913
    line = core.line_through(centers.center(1, t), centers.center(7, t))
    for idx in (175, 176, 390, 481, 482, 1323, 20):
        assert core.incidence_residual(line, centers.center(idx, t)) < 1e-10, idx


def test_brocard_axis_membership(tri6913):
    t = tri6913
    line = core.line_through(centers.center(3, t), centers.center(6, t))
    for idx in (15, 16, 187, 371, 372, 511, 1151, 1152, 1350, 3053):
        assert core.incidence_residual(line, centers.center(idx, t)) < 1e-10, idx


def test_schoute_center_is_axis_lemoine_meet(tri345):
    t = tri345
    a, b, c = t.sides
    axis = core.line_through(centers.center(3, t), centers.center(6, t))
    lemoine = np.array([1 / a ** 2, 1 / b ** 2, 1 / c ** 2])
    meet = core.meet(axis, lemoine)
    assert core.sin_angle(centers.center(187, t), meet) < 1e-12


def test_x279_is_barycentric_square_of_x7(tri6913):
    t = tri6913
    x7 = centers.center(7, t)
    assert core.sin_angle(centers.center(279, t), x7 * x7) < 1e-13


def test_infinity_points(tri6913):
    t = tri6913
    for idx in (511, 512, 514, 516):
        assert core.is_infinite_bary(centers.center(idx, t)), idx
    # X512 is on the Lemoine axis, X514 on the Gergonne line
    a, b, c = t.sides
    assert core.incidence_residual(np.array([1 / a ** 2, 1 / b ** 2, 1 / c ** 2]),
                                   centers.center(512, t)) < 1e-12
    assert core.incidence_residual(np.array([t.u, t.v, t.w]),
                                   centers.center(514, t)) < 1e-12


def test_fletcher_point_on_both_lines(tri6913):
    t = tri6913
    soddy = core.line_through(centers.center(1, t), centers.center(7, t))
    gergonne_line = np.array([t.u, t.v, t.w])
    X1323 = centers.center(1323, t)
    assert core.incidence_residual(soddy, X1323) < 1e-12
    assert core.incidence_residual(gergonne_line, X1323) < 1e-12


# --- correspondences ---------------------------------------------------------


def test_pair_file_complete():
    pairs = centers.correspondence_pairs()
    assert len(pairs) == 56
    assert (3, 1) in pairs and (43121, 31569) in pairs


def test_correspondences_fixed_triangles(tri6913, tri345):
    for t in (tri6913, tri345):
        rep = centers.verify_correspondences(t)
        assert rep.passed
        assert len(rep.verified) >= 10
        statuses = {r.status for r in rep.results}
        assert statuses == {centers.VERIFIED, centers.DATA_ONLY}
        # data-only pairs are reported, never failed
        for r in rep.results:
            if r.status == centers.DATA_ONLY:
                assert r.passed


def test_correspondences_sweep(triangles_100):
    for t in triangles_100[:40]:
        rep = centers.verify_correspondences(t)
        assert rep.passed, [(r.solution_index, r.reference_index, r.residual)
                            for r in rep.verified if not r.passed]


def test_infinity_pair_direction_equality(tri6913):
    # [511, 516]: direction of the solutions' Brocard axis equals the
    # direction of the reference's Soddy line
    from castillon import ccp_closed
    t = tri6913
    vm1, _ = ccp_closed.incircle_solutions(t)
    sol = core.triangle_from_vertices(vm1.cartesian(t))
    d_sol = core.convert_bary(centers.center(511, sol), sol, t)
    d_ref = centers.center(516, t)
    assert core.is_infinite_bary(d_sol)
    assert core.sin_angle(d_sol, d_ref) < 1e-9
