#include <doctest.h>

#include <cmath>
#include <random>

#include "sphere7/geometry.hpp"

using namespace sphere7;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpherePoint sp(double x, double y, double z, double r = 1.0) {
    return make_sphere_point({x, y, z}, r);
}

std::mt19937_64& rng() {
    static std::mt19937_64 gen(424242);
    return gen;
}

SpherePoint random_point(double r = 1.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v{g(rng()), g(rng()), g(rng())};
    while (norm(v) < 1e-6) v = {g(rng()), g(rng()), g(rng())};
    return make_sphere_point(v, r);
}

// Small circle of colatitude theta around +z, oriented so the pole is inside.
SphericalCycle small_circle(double theta, int segments, double r = 1.0) {
    SphericalCycle c;
    for (int i = 0; i < segments; ++i) {
        double phi = 2 * kPi * i / segments;
        c.pts.push_back(sp(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                           std::cos(theta), r));
    }
    return c;
}

}  // namespace

TEST_CASE("sphere distances and antipode") {
    auto p = sp(0, 0, 1), q = sp(0, 0, -1);
    CHECK(sphere_distance(p, q) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(chord_distance(p, q) == doctest::Approx(2.0).epsilon(1e-12));
    // angle pi/3 gives a unit chord on the unit sphere
    auto a = sp(1, 0, 0), b = sp(std::cos(kPi / 3), std::sin(kPi / 3), 0);
    CHECK(chord_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
    auto back = antipode(antipode(p));
    CHECK(norm(back.u - p.u) < 1e-15);
    CHECK_THROWS(sphere_distance(p, make_sphere_point({1, 0, 0}, 2.0)));
}

TEST_CASE("triangle inequality and chord bound on random samples") {
    for (int i = 0; i < 2000; ++i) {
        auto a = random_point(), b = random_point(), c = random_point();
        CHECK(sphere_distance(a, c) <= sphere_distance(a, b) + sphere_distance(b, c) + 1e-12);
        CHECK(chord_distance(a, b) <= sphere_distance(a, b) + 1e-12);
    }
}

TEST_CASE("signed cycle distance sign convention") {
    auto c = small_circle(0.6, 40);
    auto pole = sp(0, 0, 1);
    CHECK(signed_cycle_distance(pole, c) > 0);
    // Close to the exact colatitude gap (polygonal cycle, slightly inside).
    CHECK(signed_cycle_distance(pole, c) == doctest::Approx(0.6).epsilon(1e-3));
    auto south = sp(0, 0, -1);
    CHECK(signed_cycle_distance(south, c) < 0);
    CHECK(signed_cycle_distance(c.pts[3], c) == 0.0);
}

TEST_CASE("two-point Lipschitz bound on random samples") {
    for (int i = 0; i < 2000; ++i) {
        std::uniform_real_distribution<double> th(0.2, 2.9);
        auto c = small_circle(th(rng()), 24);
        auto p1 = random_point(), p2 = random_point();
        double d1 = signed_cycle_distance(p1, c);
        double d2 = signed_cycle_distance(p2, c);
        CHECK(std::abs(d1 - d2) <= sphere_distance(p1, p2) + 1e-9);
    }
}

namespace {

// One-sided sup of the distance from cycle a to cycle b, by dense sampling;
// step_out receives the sample spacing (the map is 1-Lipschitz along a).
double cycle_sup_dist(const SphericalCycle& a, const SphericalCycle& b, int per_arc,
                      double* step_out) {
    double sup = 0, step = 0;
    int n = a.length();
    for (int k = 0; k < n; ++k) {
        const Vec3& p0 = a.pts[k].u;
        const Vec3& p1 = a.pts[(k + 1) % n].u;
        step = std::max(step, angle_between(a.pts[k], a.pts[(k + 1) % n]) / per_arc);
        for (int s = 0; s < per_arc; ++s) {
            double t = double(s) / per_arc;
            auto p = make_sphere_point((1 - t) * p0 + t * p1, 1.0);
            sup = std::max(sup, std::abs(signed_cycle_distance(p, b)));
        }
    }
    if (step_out) *step_out = step;
    return sup;
}

}  // namespace

TEST_CASE("nested cycles bound") {
    // int(c1) subset of int(c2). The bound is the Hausdorff distance between
    // the cycles (both one-sided sups): the one-sided form alone is falsified
    // by these polygonal pairs when the point lies beyond the nearer cycle.
    for (int i = 0; i < 40; ++i) {
        std::uniform_real_distribution<double> th(0.3, 1.2);
        double t1 = th(rng());
        double t2 = t1 + 0.4;
        auto c1 = small_circle(t1, 32);
        auto c2 = small_circle(t2, 32);
        double s1 = 0, s2 = 0;
        double rhs = std::max(cycle_sup_dist(c1, c2, 128, &s1), cycle_sup_dist(c2, c1, 128, &s2));
        double step = std::max(s1, s2);
        for (int j = 0; j < 50; ++j) {
            auto p0 = random_point();
            double lhs = std::abs(signed_cycle_distance(p0, c1) - signed_cycle_distance(p0, c2));
            CHECK(lhs <= rhs + step + 1e-9);
        }
    }
}

TEST_CASE("antipodal gap signs") {
    auto c = small_circle(0.4, 30);
    // Antipodes of the cycle vertices sit near the south pole, in the exterior.
    CHECK(antipodal_gap(c, c.pts) < 0);
    auto c_rev = c;
    std::reverse(c_rev.pts.begin(), c_rev.pts.end());
    CHECK(antipodal_gap(c_rev, c_rev.pts) > 0);
    // Equatorial cycle: the antipode set lies on the cycle itself.
    auto eq = small_circle(kPi / 2, 40);
    CHECK(antipodal_gap(eq, eq.pts) == 0.0);
}

TEST_CASE("broken line length and the d1 bound") {
    std::vector<SpherePoint> path{sp(1, 0, 0), sp(std::cos(0.7), std::sin(0.7), 0)};
    auto b = broken_line_bound(path, 2.0);
    CHECK(b.length == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(b.holds);
    std::vector<SpherePoint> tri{sp(1, 0, 0), sp(0, 1, 0), sp(0, 0, 1), sp(1, 0, 0)};
    auto bt = broken_line_bound(tri, 2.0);
    CHECK(bt.length == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
    CHECK(bt.holds);
}

TEST_CASE("geodesic sphere counts") {
    for (int f : {1, 2, 4}) {
        EmbeddedMesh em = geodesic_sphere(f, 5.0);
        CHECK(em.mesh.vertex_count() == 10 * f * f + 2);
        CHECK(em.mesh.euler_characteristic() == 2);
        CHECK(irregular_multiplicity_sum(em.mesh) == 12);
        int deg5 = 0, deg6 = 0;
        for (int v = 0; v < em.mesh.vertex_count(); ++v) {
            if (em.mesh.degree(v) == 5) ++deg5;
            if (em.mesh.degree(v) == 6) ++deg6;
        }
        CHECK(deg5 == 12);
        CHECK(deg5 + deg6 == em.mesh.vertex_count());
        for (const auto& p : em.pos) CHECK(std::abs(norm(p.u) - 1.0) < 1e-12);
    }
    CHECK(geodesic_sphere(2, 1.0).mesh.vertex_count() == 42);
}

TEST_CASE("graph premises report") {
    // Frequency chosen so edges are shorter than d1 = 2 but triangles are too
    // large for the unit-disk certificate at this radius.
    EmbeddedMesh em = geodesic_sphere(2, 14.9);
    em.d1 = 2.0;
    em.d2 = 1.0;
    auto rep = verify_graph_premises(em);
    CHECK_FALSE(rep.covering_certified);
    CHECK(rep.threshold == doctest::Approx(46.5 / kPi).epsilon(1e-12));
    CHECK(rep.nominal_threshold == doctest::Approx(14.80126).epsilon(1e-5));
    CHECK(rep.radius_at_or_above_threshold);

    // Fine subdivision: edges comfortably below d1 and the covering certified.
    EmbeddedMesh fine = geodesic_sphere(40, 14.9);
    fine.d1 = 2.0;
    fine.d2 = 1.0;
    auto rep2 = verify_graph_premises(fine);
    CHECK(rep2.edge_within_d1);
    CHECK(rep2.max_edge_arc < 2.0);
    CHECK(rep2.covering_certified);
    CHECK(rep2.d2_satisfied);

    auto serial = verify_graph_premises(fine, ExecMode::Serial);
    CHECK(serial.max_edge_arc == rep2.max_edge_arc);
    CHECK(serial.max_circumradius == rep2.max_circumradius);
}

TEST_CASE("circumradius of a tiny triangle") {
    auto a = sp(1, 0, 0);
    auto b = sp(std::cos(0.01), std::sin(0.01), 0);
    auto c = sp(std::cos(0.01), 0, std::sin(0.01));
    double cr = triangle_circumradius(a, b, c);
    CHECK(cr > 0);
    CHECK(cr < 0.02);
}
