import itertools

import numpy as np
import pytest

import golden
from conftest import make_random_model, random_nonzero_point

from simplexcenters import (
    AtVertex,
    BarycentricPoint,
    EdgeLengthTable,
    NotATriangle,
    ParallelLine,
    ZeroCoordinate,
    apollonian_sphere,
    circumcenter_cart,
    classical_centers,
    collinear_cross_ratio,
    embed_from_edge_lengths,
    isodynamic_points,
    pedal_simplex,
    restrict_to_facet,
    sphere_family,
    yiu_triangle_test,
)


class TestApollonianSphere:
    def test_diameter_endpoints_and_center(self, five_model):
        p = BarycentricPoint.homogeneous([0.4, 0.3, 0.2, 0.1])
        sph = apollonian_sphere(p, 0, 1, five_model)
        inner, outer = sph.diameter_ends
        assert np.abs(inner.coords - np.array([0.4, 0.3, 0, 0])).max() < 1e-15
        assert np.abs(outer.coords - np.array([-0.4, 0.3, 0, 0])).max() < 1e-15
        # homogeneous center [-p_i^2 : p_j^2] equals the Cartesian midpoint
        mid = 0.5 * (five_model.bary_to_cart(inner) + five_model.bary_to_cart(outer))
        assert np.abs(five_model.bary_to_cart(sph.center) - mid).max() < 1e-10
        assert np.abs(sph.sphere.center - mid).max() < 1e-10

    def test_locus_ratio_on_sphere(self, five_model):
        rng = np.random.default_rng(3)
        p = BarycentricPoint.homogeneous([0.5, 0.3, 0.15, 0.05])
        for i, j in itertools.combinations(range(4), 2):
            sph = apollonian_sphere(p, i, j, five_model)
            for _ in range(5):
                u = rng.standard_normal(3)
                x = sph.sphere.center + sph.sphere.radius * u / np.linalg.norm(u)
                assert abs(sph.sphere.power(x)) <= 1e-10 * sph.sphere.radius ** 2
                di = np.linalg.norm(x - five_model.vertices[i])
                dj = np.linalg.norm(x - five_model.vertices[j])
                wi = di * abs(p.coords[i])
                wj = dj * abs(p.coords[j])
                assert abs(wi - wj) <= 1e-9 * max(wi, wj)

    def test_degenerate_equal_magnitudes(self, five_model):
        p = BarycentricPoint.homogeneous([0.3, -0.3, 0.2, 0.2])
        sph = apollonian_sphere(p, 0, 1, five_model)
        assert sph.is_degenerate
        plane = sph.sphere.degenerate_hyperplane
        # the perpendicular bisector is equidistant from both vertices
        for x in (five_model.vertices[2], five_model.vertices[3],
                  five_model.vertices.mean(axis=0)):
            d0 = np.linalg.norm(x - five_model.vertices[0])
            d1 = np.linalg.norm(x - five_model.vertices[1])
            onplane = abs(plane.signed_distance(x)) < 1e-12
            assert onplane == (abs(d0 - d1) < 1e-12)
        mid = 0.5 * (five_model.vertices[0] + five_model.vertices[1])
        assert abs(plane.signed_distance(mid)) < 1e-12

    def test_classical_triangle_division_points(self, gap_triangle):
        # with incenter weights, the sphere through the (0,1) pair has
        # diameter ends dividing that edge in the side-length ratio
        incenter = classical_centers(gap_triangle)["I"]
        sph = apollonian_sphere(incenter, 0, 1, gap_triangle)
        a = gap_triangle.edges.d[1, 2]  # weight of vertex 0
        b = gap_triangle.edges.d[0, 2]  # weight of vertex 1
        v0, v1 = gap_triangle.vertices[0], gap_triangle.vertices[1]
        inner_oracle = (a * v0 + b * v1) / (a + b)
        outer_oracle = (-a * v0 + b * v1) / (b - a)
        inner, outer = sph.diameter_ends
        assert np.abs(gap_triangle.bary_to_cart(inner) - inner_oracle).max() < 1e-12
        assert np.abs(gap_triangle.bary_to_cart(outer) - outer_oracle).max() < 1e-10

    def test_harmonic_range(self):
        rng = np.random.default_rng(7)
        for trial in range(50):
            n = 2 + trial % 3
            model = make_random_model(rng, n)
            p = random_nonzero_point(rng, n)
            sph = apollonian_sphere(BarycentricPoint.homogeneous(p), 0, 1, model)
            if sph.is_degenerate:
                continue
            inner = model.bary_to_cart(sph.diameter_ends[0])
            outer = model.bary_to_cart(sph.diameter_ends[1])
            cr = collinear_cross_ratio(model.vertices[0], model.vertices[1],
                                       inner, outer)
            assert abs(cr + 1.0) <= 1e-12

    def test_circumsphere_orthogonality(self):
        rng = np.random.default_rng(11)
        for trial in range(100):
            n = 2 + trial % 3
            model = make_random_model(rng, n)
            p = random_nonzero_point(rng, n)
            center, radius = circumcenter_cart(model)
            for sph in sphere_family(BarycentricPoint.homogeneous(p), model):
                if sph.is_degenerate:
                    continue
                gap = float(np.linalg.norm(center - sph.sphere.center))
                assert abs(gap ** 2 - radius ** 2 - sph.sphere.radius ** 2) \
                    <= 1e-8 * radius ** 2

    def test_zero_coordinate_rejected(self, five_model):
        with pytest.raises(ZeroCoordinate):
            apollonian_sphere(BarycentricPoint.homogeneous([0, 1, 1, 1]),
                              0, 1, five_model)


class TestIsodynamicPoints:
    def test_five_tetrahedron_table(self, five_model):
        result = isodynamic_points(classical_centers(five_model)["I"], five_model)
        assert len(result.points) == 2
        assert np.abs(result.points[0].normalized_coords
                      - golden.ISODYNAMIC_TABLE[0]).max() < 1e-8
        assert np.abs(result.points[1].normalized_coords
                      - golden.ISODYNAMIC_TABLE[1]).max() < 1e-8
        assert max(result.residuals) < 1e-8

    def test_gap_tetrahedron_empty(self, gap_model):
        result = isodynamic_points(classical_centers(gap_model)["I"], gap_model)
        assert result.points == []

    def test_triangle_equal_products(self):
        # each returned point satisfies d(J, A_i) * d_jk equal over i
        rng = np.random.default_rng(13)
        for _ in range(20):
            d12, d13, d23 = golden.random_triangle_sides(rng)
            model = embed_from_edge_lengths(
                EdgeLengthTable.from_flat(2, [d12, d13, d23]))
            result = isodynamic_points(classical_centers(model)["I"], model)
            assert len(result.points) == 2
            opposite = np.array([model.edges.d[1, 2], model.edges.d[0, 2],
                                 model.edges.d[0, 1]])
            for point in result.points:
                products = model.vertex_distances(point) * opposite
                assert np.ptp(products) <= 1e-9 * products.mean()

    def test_equilateral_returns_center_with_note(self, equilateral_triangle):
        result = isodynamic_points(classical_centers(equilateral_triangle)["I"],
                                   equilateral_triangle)
        assert len(result.points) == 1
        assert result.degenerate_axis
        assert result.note
        center, _ = circumcenter_cart(equilateral_triangle)
        assert np.abs(equilateral_triangle.bary_to_cart(result.points[0])
                      - center).max() < 1e-12

    def test_inversive_pair_about_circumsphere(self, five_model):
        result = isodynamic_points(classical_centers(five_model)["I"], five_model)
        center, radius = circumcenter_cart(five_model)
        x1 = five_model.bary_to_cart(result.points[0])
        x2 = five_model.bary_to_cart(result.points[1])
        d1, d2 = np.linalg.norm(x1 - center), np.linalg.norm(x2 - center)
        assert abs(d1 * d2 - radius ** 2) <= 1e-8 * radius ** 2
        # collinear with the circumcenter, on the same ray
        u1, u2 = (x1 - center) / d1, (x2 - center) / d2
        assert np.abs(u1 - u2).max() < 1e-9

    def test_membership_coherent_across_all_spheres(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            d12, d13, d23 = golden.random_triangle_sides(rng)
            model = embed_from_edge_lengths(
                EdgeLengthTable.from_flat(2, [d12, d13, d23]))
            weights = rng.uniform(0.3, 2.0, 3)
            result = isodynamic_points(BarycentricPoint.homogeneous(weights), model)
            for res in result.residuals:
                assert res <= 1e-8

    def test_brocard_axis_and_harmonic_range(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            d12, d13, d23 = golden.random_triangle_sides(rng)
            model = embed_from_edge_lengths(
                EdgeLengthTable.from_flat(2, [d12, d13, d23]))
            centers = classical_centers(model)
            result = isodynamic_points(centers["I"], model)
            o_cart, _ = circumcenter_cart(model)
            k_cart = model.bary_to_cart(centers["K"])
            j1 = model.bary_to_cart(result.points[0])
            j2 = model.bary_to_cart(result.points[1])
            axis = (k_cart - o_cart) / np.linalg.norm(k_cart - o_cart)
            for jc in (j1, j2):
                assert abs(golden.cross2(axis, jc - o_cart)) <= 1e-9 * model.diameter
            # the four points O, J1, K, J2 in line order form a harmonic range
            assert abs(collinear_cross_ratio(o_cart, k_cart, j1, j2) + 1) <= 1e-7

    def test_exactly_one_interior_below_120_degrees(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            d12, d13, d23 = golden.random_triangle_sides(rng)
            model = embed_from_edge_lengths(
                EdgeLengthTable.from_flat(2, [d12, d13, d23]))
            result = isodynamic_points(classical_centers(model)["I"], model)
            flags = [bool(np.all(p.normalized_coords > 0)) for p in result.points]
            assert sum(flags) == 1
            assert flags[0]  # interior point is listed first

    def test_no_interior_point_above_120_degrees(self):
        # beyond a 120-degree angle both points leave the triangle, which is
        # why the interior-split property is only claimed below that bound
        model = embed_from_edge_lengths(EdgeLengthTable.from_flat(2, [1, 1, 1.95]))
        result = isodynamic_points(classical_centers(model)["I"], model)
        assert len(result.points) == 2
        flags = [bool(np.all(p.normalized_coords > 0)) for p in result.points]
        assert sum(flags) == 0

    def test_pedal_triangles_equilateral(self):
        rng = np.random.default_rng(29)
        for _ in range(10):
            d12, d13, d23 = golden.random_triangle_sides(rng)
            model = embed_from_edge_lengths(
                EdgeLengthTable.from_flat(2, [d12, d13, d23]))
            result = isodynamic_points(classical_centers(model)["I"], model)
            for point in result.points:
                feet = pedal_simplex(point, model).feet_or_vertices
                sides = [np.linalg.norm(feet[a] - feet[b])
                         for a, b in itertools.combinations(range(3), 2)]
                assert (max(sides) - min(sides)) / np.mean(sides) <= 1e-8

    def test_zero_coordinate_rejected(self, five_model):
        with pytest.raises(ZeroCoordinate):
            isodynamic_points(BarycentricPoint.homogeneous([0, 1, 1, 1]), five_model)


class TestYiuTriangleTest:
    def test_gap_witness_exact_fractions(self):
        verdict = yiu_triangle_test(12, 11, 13, *golden.GAP_FACET_AREAS[:3])
        assert np.abs(verdict.point.normalized_coords
                      - np.array(golden.GAP_WITNESS)).max() < 1e-12
        assert verdict.outside
        assert verdict.distance > verdict.circumradius
        assert abs(verdict.circumradius - golden.GAP_TRIANGLE_CIRCUMRADIUS) < 1e-12

    def test_equilateral_equal_weights_center(self):
        verdict = yiu_triangle_test(1, 1, 1, 2, 2, 2)
        assert np.abs(verdict.point.normalized_coords - 1 / 3).max() < 1e-14
        assert not verdict.outside  # bisector lines meet at the center

    def test_agrees_with_brute_force(self):
        rng = np.random.default_rng(31)
        checked = 0
        while checked < 50:
            d12, d13, d23 = golden.random_triangle_sides(rng, max_angle_deg=150)
            weights = rng.uniform(0.3, 3.0, 3)
            if np.ptp(weights) < 1e-3:
                continue
            verdict = yiu_triangle_test(d23, d13, d12, *weights)
            model = embed_from_edge_lengths(
                EdgeLengthTable.from_flat(2, [d12, d13, d23]))
            oracle = golden.weighted_circles_meet(model.vertices, weights)
            assert verdict.circles_meet == oracle, (d12, d13, d23, weights)
            checked += 1

    def test_invalid_triangle_rejected(self):
        with pytest.raises(NotATriangle):
            yiu_triangle_test(1, 1, 2.5, 1, 1, 1)

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError):
            yiu_triangle_test(3, 4, 5, 1, -1, 1)


class TestRestrictToFacet:
    def test_symmedian_hits_squared_area_point(self, gap_model):
        k = classical_centers(gap_model)["K"]
        facet_model, point = restrict_to_facet(k, gap_model, 3)
        areas_sq = np.array(golden.GAP_FACET_AREAS[:3]) ** 2
        assert np.abs(point.normalized_coords
                      - areas_sq / areas_sq.sum()).max() < 1e-12
        # the facet model is the reference facet triangle
        assert np.abs(np.sort(facet_model.edges.flat())
                      - np.sort(golden.GAP_TRIANGLE_EDGES)).max() < 1e-12

    def test_point_already_on_facet(self, five_model):
        p = BarycentricPoint.homogeneous([0.5, 0.3, 0.2, 0.0])
        _, point = restrict_to_facet(p, five_model, 3)
        assert np.abs(point.normalized_coords - np.array([0.5, 0.3, 0.2])).max() < 1e-14

    def test_centroid_projects_to_facet_centroid(self, five_model):
        g = BarycentricPoint.homogeneous([1, 1, 1, 1])
        for facet in range(4):
            _, point = restrict_to_facet(g, five_model, facet)
            assert np.abs(point.normalized_coords - 1 / 3).max() < 1e-14

    def test_parallel_line(self, equilateral_triangle):
        p = BarycentricPoint.homogeneous([1.0, 1.0, -1.0])
        with pytest.raises(ParallelLine):
            restrict_to_facet(p, equilateral_triangle, 0)

    def test_opposite_vertex_rejected(self, five_model):
        with pytest.raises(AtVertex):
            restrict_to_facet(BarycentricPoint.vertex(2, 3), five_model, 2)
