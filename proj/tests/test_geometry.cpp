#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "pyramc/errors.hpp"
#include "pyramc/geometry.hpp"

#include "domains.hpp"
#include "oracle_geometry.hpp"

using namespace pyramc;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("build_domain derives the benchmark edge lines")
{
    const PyramidDomain dom = example1_domain();
    REQUIRE(dom.n() == 3);

    const auto& edges = dom.edge_lines();
    CHECK(edges[0].k.value() == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(edges[0].c.value() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(edges[1].k.value() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(edges[1].c.value() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(edges[2].k.value() == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(edges[2].c.value() == doctest::Approx(-1.2).epsilon(1e-14));

    // Slope/intercept and normalized implicit form describe the same line.
    for (int m = 1; m <= dom.n(); ++m) {
        const EdgeLine& e = edges[std::size_t(m - 1)];
        for (double x1 : {-5.0, 0.0, 1.7, 42.0}) {
            const double x2 = *e.k * x1 + *e.c;
            CHECK(std::fabs(e.p * x1 + e.q * x2 + e.r) < 1e-12 * (1.0 + std::fabs(x2)));
        }
    }
}

TEST_CASE("build_domain face plane 1 is proportional to (2,3,3,-6)")
{
    const PyramidDomain dom = example1_domain();
    const FacePlane& f = dom.face_planes()[0];

    const double s = f.a / 2.0;
    CHECK(s > 0.0);
    CHECK(f.b == doctest::Approx(3.0 * s).epsilon(1e-14));
    CHECK(f.c == doctest::Approx(3.0 * s).epsilon(1e-14));
    CHECK(f.d == doctest::Approx(-6.0 * s).epsilon(1e-14));

    // Plane passes through the apex and both edge vertices.
    const double tol = 1e-12 * dom.coefficient_scale();
    CHECK(std::fabs(f.value_at({0.0, 0.0, 2.0})) <= tol);
    CHECK(std::fabs(f.value_at({3.0, 0.0, 0.0})) <= tol);
    CHECK(std::fabs(f.value_at({0.0, 2.0, 0.0})) <= tol);
}

TEST_CASE("build_domain distances and inclination angles")
{
    const PyramidDomain dom = example1_domain();

    CHECK(dom.base_distances()[0] == doctest::Approx(6.0 / std::sqrt(13.0)).epsilon(1e-14));
    CHECK(dom.inclination_angles()[0]
          == doctest::Approx(std::atan(2.0 * std::sqrt(13.0) / 6.0)).epsilon(1e-14));
    CHECK(dom.inclination_angles()[0] == doctest::Approx(0.8768157).epsilon(1e-6));

    for (int m = 0; m < dom.n(); ++m) {
        CHECK(std::tan(dom.inclination_angles()[std::size_t(m)]) * dom.base_distances()[std::size_t(m)]
              == doctest::Approx(dom.height()).epsilon(1e-13));
    }
}

TEST_CASE("build_domain residuals at apex and base vertices")
{
    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        const double tol = 1e-12 * dom.coefficient_scale();
        for (int m = 1; m <= dom.n(); ++m) {
            const FacePlane& f = dom.face_planes()[std::size_t(m - 1)];
            const Vec2 a = dom.vertex(m);
            const Vec2 b = dom.vertex(m + 1);
            CHECK(std::fabs(f.value_at(dom.apex())) <= tol);
            CHECK(std::fabs(f.value_at({a.x, a.y, 0.0})) <= tol);
            CHECK(std::fabs(f.value_at({b.x, b.y, 0.0})) <= tol);
        }
    }
}

TEST_CASE("build_domain accepts the 8-sided benchmark base")
{
    const PyramidDomain dom = example2_domain();
    CHECK(dom.n() == 8);
    CHECK(dom.height() == 2.0);
}

TEST_CASE("build_domain rejects bad input")
{
    using Catch = Error;
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Catch& e) {
            return e.code();
        }
        return ErrorCode::io_error;  // sentinel: no throw
    };

    CHECK(code_of([] { build_domain(0.0, {{3, 0}, {0, 2}, {-2, -2}}); })
          == ErrorCode::non_positive_height);
    CHECK(code_of([] { build_domain(-1.0, {{3, 0}, {0, 2}, {-2, -2}}); })
          == ErrorCode::non_positive_height);
    CHECK(code_of([] { build_domain(2.0, {{3, 0}, {0, 2}}); }) == ErrorCode::non_convex_base);
    CHECK(code_of([] { build_domain(2.0, {{3, 0}, {-2, -2}, {0, 2}}); })
          == ErrorCode::clockwise_order);
    CHECK(code_of([] { build_domain(2.0, {{3, 0}, {3, 0}, {0, 2}, {-2, -2}}); })
          == ErrorCode::degenerate_edge);
    // Non-convex quad (counter-clockwise overall, one reflex vertex).
    CHECK(code_of([] { build_domain(2.0, {{3, 0}, {0.2, 0.2}, {0, 3}, {-2, -2}}); })
          == ErrorCode::non_convex_base);
    // Convex, counter-clockwise, but the origin is outside.
    CHECK(code_of([] { build_domain(2.0, {{1, 1}, {2, 1}, {2, 2}, {1, 2}}); })
          == ErrorCode::origin_outside_base);
}

TEST_CASE("build_domain handles vertical base edges")
{
    // Square with two vertical edges; the paper's slope form is undefined
    // there, the normalized implicit form is not.
    const PyramidDomain dom = build_domain(1.0, {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
    CHECK_FALSE(dom.edge_lines()[0].k.has_value());
    CHECK(dom.edge_lines()[1].k.has_value());
    CHECK(dom.base_distances()[0] == doctest::Approx(1.0));
    CHECK(is_inside(classify_point(dom, {0.0, 0.0, 0.5})));
    CHECK(is_outside(classify_point(dom, {1.5, 0.0, 0.5})));
}

TEST_CASE("classify_point on the benchmark examples")
{
    const PyramidDomain dom = example1_domain();

    CHECK(is_inside(classify_point(dom, {0.0, 0.0, 1.0})));
    CHECK(is_outside(classify_point(dom, {0.0, 0.0, 2.5})));
    CHECK(is_outside(classify_point(dom, {3.0, 3.0, 0.5})));

    const PointClass base_class = classify_point(dom, {0.0, 0.0, 0.0});
    const auto* base_hit = on_surface(base_class);
    REQUIRE(base_hit != nullptr);
    CHECK(base_hit->region.is_base());
    CHECK(base_hit->region.index == dom.n() + 1);

    // On lateral face 1: midpoint of apex and edge midpoint.
    const Vec3 face_pt = 0.5 * (Vec3{0.0, 0.0, 2.0} + Vec3{1.5, 1.0, 0.0});
    const PointClass face_class = classify_point(dom, face_pt);
    const auto* face_hit = on_surface(face_class);
    REQUIRE(face_hit != nullptr);
    CHECK(face_hit->region == RegionLabel::face(1));

    // Near a lateral edge: labelled as the edge.
    const Vec3 edge_pt = 0.5 * (Vec3{0.0, 0.0, 2.0} + Vec3{0.0, 2.0, 0.0});
    const PointClass edge_class = classify_point(dom, edge_pt);
    const auto* edge_hit = on_surface(edge_class);
    REQUIRE(edge_hit != nullptr);
    CHECK(edge_hit->region == RegionLabel::edge(dom.n() + 2));
}

TEST_CASE("classify_point: the naive beta test would miss (3,3,0.5)")
{
    // (3,3) is far outside the base, yet every beta_m stays below alpha_m
    // because the distance in the formula is unsigned.  The signed
    // half-space classifier must still say Outside.
    const PyramidDomain dom = example1_domain();
    const Vec3 x{3.0, 3.0, 0.5};

    const auto beta = beta_angles(dom, x);
    bool beta_says_inside = x.z > 0.0 && x.z < dom.height();
    for (int m = 0; m < dom.n(); ++m) {
        beta_says_inside = beta_says_inside
                           && beta[std::size_t(m)] < dom.inclination_angles()[std::size_t(m)];
    }
    CHECK(beta_says_inside);
    CHECK(is_outside(classify_point(dom, x)));
}

TEST_CASE("beta_angles benchmark values")
{
    const PyramidDomain dom = example1_domain();
    const auto beta = beta_angles(dom, {0.0, 0.0, 1.0});

    CHECK(beta[0] == doctest::Approx(0.541100).epsilon(1e-6));
    CHECK(beta[1] == doctest::Approx(0.841069).epsilon(1e-6));

    // On lateral face m exactly, beta_m equals alpha_m.
    const Vec3 face_pt = 0.5 * (Vec3{0.0, 0.0, 2.0} + Vec3{1.5, 1.0, 0.0});
    const auto beta_f = beta_angles(dom, face_pt);
    CHECK(beta_f[0] == doctest::Approx(dom.inclination_angles()[0]).epsilon(1e-12));

    // Delta = 0 maps to pi/2.
    const PyramidDomain square = build_domain(1.0, {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
    const auto beta_sq = beta_angles(square, {1.0, 0.0, 0.5});
    CHECK(beta_sq[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
}

TEST_CASE("beta/alpha test equals the classifier for interior-projection points")
{
    // The equivalence the walk relies on, restricted to points whose base
    // projection is strictly interior to every base edge line.
    oracle::SplitMix64 rng(0x5eed5eedULL);
    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        int tested = 0;
        while (tested < 20000) {
            const Vec3 x{rng.uniform(-3.5, 3.5), rng.uniform(-3.5, 3.5),
                         rng.uniform(-0.5, 2.5)};
            bool projection_interior = true;
            for (int m = 1; m <= dom.n(); ++m) {
                projection_interior
                    = projection_interior && dom.edge_line_value(m, x.x, x.y) > 1e-9;
            }
            if (!projection_interior || x.z <= 0.0) continue;
            ++tested;

            const auto beta = beta_angles(dom, x);
            bool beta_inside = x.z > 0.0 && x.z < dom.height();
            for (int m = 0; m < dom.n(); ++m) {
                beta_inside = beta_inside
                              && beta[std::size_t(m)] < dom.inclination_angles()[std::size_t(m)];
            }
            CHECK(beta_inside == is_inside(classify_point(dom, x)));
        }
    }
}

TEST_CASE("classifier agrees with the brute-force oracle")
{
    oracle::SplitMix64 rng(0xfacadeULL);
    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        const oracle::BruteDomain brute(dom.height(), dom.base_vertices());
        const double shell = dom.default_surface_eps();
        for (int i = 0; i < 20000; ++i) {
            const Vec3 x{rng.uniform(-3.5, 3.5), rng.uniform(-3.5, 3.5), rng.uniform(-0.5, 2.5)};
            if (brute.min_plane_distance(x) <= shell) continue;
            const PointClass c = classify_point(dom, x);
            if (brute.strictly_inside(x)) {
                CHECK(is_inside(c));
            } else {
                CHECK(is_outside(c));
            }
        }
    }
}

TEST_CASE("intersect_step benchmark crossing")
{
    const PyramidDomain dom = example1_domain();
    const auto ev = intersect_step(dom, {0.0, 0.0, 1.0}, {2.0, 2.0, 1.0});

    REQUIRE(ev.has_value());
    CHECK(ev->theta == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(ev->point.x == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(ev->point.y == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(ev->point.z == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ev->region == RegionLabel::face(1));
}

TEST_CASE("intersect_step base exit and interior step")
{
    const PyramidDomain dom = example1_domain();

    const auto base_ev = intersect_step(dom, {0.0, 0.0, 0.5}, {0.0, 0.0, -0.5});
    REQUIRE(base_ev.has_value());
    CHECK(base_ev->theta == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(base_ev->point.z == 0.0);
    CHECK(base_ev->region.is_base());

    CHECK_FALSE(intersect_step(dom, {0.0, 0.0, 1.0}, {0.001, 0.001, 1.001}).has_value());
}

TEST_CASE("intersect_step labels hits near a lateral edge as the edge")
{
    const PyramidDomain dom = example1_domain();
    // Aim just inside the lateral edge apex->A2 (edge n+2): its midpoint is
    // (0,1,1); approach along the interior normal direction.
    const Vec3 target{0.0, 1.0, 1.0};
    const Vec3 start{0.0, 0.0, 1.0};
    const Vec3 beyond = start + 1.5 * (target - start);

    const auto ev = intersect_step(dom, start, beyond);
    REQUIRE(ev.has_value());
    CHECK(ev->region == RegionLabel::edge(dom.n() + 2));
}

TEST_CASE("intersect_step endpoint exactly on the surface exits with theta=1")
{
    const PyramidDomain dom = example1_domain();
    const auto ev = intersect_step(dom, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0});
    REQUIRE(ev.has_value());
    CHECK(ev->theta == 1.0);
    CHECK(ev->region.is_base());
}

TEST_CASE("intersect_step reports NoCandidateCrossing when no crossing exists")
{
    // From a strictly interior point every outward segment exits through a
    // face, so this error only fires when the precondition is violated:
    // both endpoints outside, endpoint flagged, no sign change anywhere.
    const PyramidDomain dom = example1_domain();
    try {
        (void)intersect_step(dom, {10.0, 10.0, 1.0}, {11.0, 11.0, 1.0});
        FAIL("expected NoCandidateCrossing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::no_candidate_crossing);
    }
}

TEST_CASE("intersect_step contract on random interior-to-exterior segments")
{
    oracle::SplitMix64 rng(0xc0ffeeULL);
    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        const oracle::BruteDomain brute(dom.height(), dom.base_vertices());
        const double res_tol = 1e-9 * dom.coefficient_scale();

        int done = 0;
        while (done < 3000) {
            const Vec3 a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0, 2)};
            if (!brute.strictly_inside(a) || brute.min_plane_distance(a) < 1e-6) continue;
            // Random direction, scaled either far outside or just beyond.
            Vec3 dir{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const double len = norm(dir);
            if (len < 1e-3) continue;
            dir = (1.0 / len) * dir;
            Vec3 b;
            if (done % 2 == 0) {
                b = a + (2.0 * dom.diameter()) * dir;
            } else {
                const Vec3 far = a + (2.0 * dom.diameter()) * dir;
                const Vec3 surf = brute.bisect_exit(a, far, 1e-7);
                b = a + (1.0 + 1e-4) * (surf - a);
                if (!brute.strictly_outside(b)) continue;
            }
            ++done;

            const auto ev = intersect_step(dom, a, b);
            REQUIRE(ev.has_value());
            CHECK(ev->theta >= 0.0);
            CHECK(ev->theta <= 1.0);

            // On the segment: every coordinate between the endpoint values.
            const double slack = 1e-12 * (1.0 + dom.diameter());
            CHECK(ev->point.x >= std::min(a.x, b.x) - slack);
            CHECK(ev->point.x <= std::max(a.x, b.x) + slack);
            CHECK(ev->point.y >= std::min(a.y, b.y) - slack);
            CHECK(ev->point.y <= std::max(a.y, b.y) + slack);
            CHECK(ev->point.z >= std::min(a.z, b.z) - slack);
            CHECK(ev->point.z <= std::max(a.z, b.z) + slack);
            CHECK(ev->point.z >= -slack);
            CHECK(ev->point.z <= dom.height() + slack);

            // Residual against the region's plane (for edges, the better of
            // the two adjacent faces).
            double residual;
            if (ev->region.is_base()) {
                residual = std::fabs(ev->point.z);
            } else if (ev->region.is_face()) {
                residual = std::fabs(dom.face_planes()[std::size_t(ev->region.index - 1)]
                                         .value_at(ev->point));
            } else {
                residual = std::numeric_limits<double>::infinity();
                for (int m = 1; m <= dom.n(); ++m) {
                    residual = std::min(residual,
                                        std::fabs(dom.face_planes()[std::size_t(m - 1)]
                                                      .value_at(ev->point)));
                }
                residual = std::min(residual, std::fabs(ev->point.z) * dom.coefficient_scale());
            }
            CHECK(residual <= res_tol);

            // Independent dual route: bisection on the brute-force oracle
            // finds the same exit point.
            const Vec3 ref = brute.bisect_exit(a, b, 1e-10);
            CHECK(distance(ev->point, ref) < 1e-6 * dom.diameter());
        }
    }
}

TEST_CASE("relabeling invariance under cyclic vertex rotation")
{
    const std::vector<Vec2> verts{{3.0, 0.0}, {0.0, 2.0}, {-2.0, -2.0}};
    std::vector<Vec2> rotated{verts[1], verts[2], verts[0]};

    const PyramidDomain dom = build_domain(2.0, verts);
    const PyramidDomain rot = build_domain(2.0, rotated);

    oracle::SplitMix64 rng(0xaaULL);
    for (int i = 0; i < 500; ++i) {
        const Vec3 x{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-0.5, 2.5)};
        CHECK(is_inside(classify_point(dom, x)) == is_inside(classify_point(rot, x)));
        CHECK(is_outside(classify_point(dom, x)) == is_outside(classify_point(rot, x)));
    }

    // Exit points are bit-identical; face indices shift by the rotation.
    for (int i = 0; i < 500; ++i) {
        const Vec3 a{rng.uniform(-1, 1) * 0.3, rng.uniform(-1, 1) * 0.3, rng.uniform(0.2, 1.5)};
        if (!is_inside(classify_point(dom, a))) continue;
        Vec3 dir{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (norm(dir) < 1e-3) continue;
        const Vec3 b = a + (8.0 / norm(dir)) * dir;

        const auto ev1 = intersect_step(dom, a, b);
        const auto ev2 = intersect_step(rot, a, b);
        REQUIRE(ev1.has_value());
        REQUIRE(ev2.has_value());
        CHECK(ev1->point.x == ev2->point.x);
        CHECK(ev1->point.y == ev2->point.y);
        CHECK(ev1->point.z == ev2->point.z);
        if (ev1->region.is_face() && ev2->region.is_face()) {
            CHECK((ev1->region.index - 1 + 3) % 3 == (ev2->region.index - 1 + 1) % 3);
        }
    }
}

TEST_SUITE_END();
