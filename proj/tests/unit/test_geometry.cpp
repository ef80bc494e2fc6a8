#include "trajcluster/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace trajcluster;

TEST_CASE("make_trajectory drops consecutive duplicates")
{
    const Trajectory t = make_trajectory({{0, 0}, {0, 0}, {1, 0}});
    REQUIRE(t.size() == 2);
    CHECK(t[0] == Point{0, 0});
    CHECK(t[1] == Point{1, 0});
    CHECK(t.length() == 1.0);
}

TEST_CASE("cumulative lengths of a 3-4-5 segment")
{
    const Trajectory t = make_trajectory({{0, 0}, {3, 4}});
    CHECK(t.cum_lengths() == std::vector<double>{0.0, 5.0});
}

TEST_CASE("degenerate inputs are rejected")
{
    CHECK_THROWS_AS(make_trajectory({{0, 0}}), GeometryError);
    CHECK_THROWS_AS(make_trajectory({{1, 1}, {1, 1}, {1, 1}}), GeometryError);
    CHECK_THROWS_AS(make_trajectory({}), GeometryError);
    CHECK_THROWS_AS(make_trajectory({{0, 0}, {NAN, 1}}), GeometryError);
}

TEST_CASE("make_trajectory is idempotent on valid vertex lists")
{
    const Trajectory t = make_trajectory({{0, 0}, {1, 2}, {1, 2}, {4, 0}});
    CHECK(make_trajectory(t.vertices()) == t);
}

TEST_CASE("point_at")
{
    CHECK(point_at(make_trajectory({{0, 0}, {2, 0}}), 1.0) == Point{1, 0});
    const Point p = point_at(make_trajectory({{0, 0}, {1, 0}, {1, 1}}), 1.5);
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(0.5));
    CHECK(point_at(make_trajectory({{0, 0}, {3, 4}}), 5.0) == Point{3, 4});
    CHECK_THROWS(point_at(make_trajectory({{0, 0}, {3, 4}}), 5.5));
    CHECK_THROWS(point_at(make_trajectory({{0, 0}, {3, 4}}), -0.1));
}

TEST_CASE("point_at is 1-Lipschitz in arc length")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Point> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({u(rng), u(rng)});
        const Trajectory t = make_trajectory(pts);
        std::uniform_real_distribution<double> s(0, t.length());
        for (int k = 0; k < 20; ++k) {
            const double a = s(rng), b = s(rng);
            CHECK(dist(t.point_at(a), t.point_at(b)) <= std::abs(a - b) * (1 + 1e-12) + 1e-12);
        }
    }
}

TEST_CASE("sq_dist")
{
    CHECK(sq_dist({0, 0}, {0, 0}) == 0.0);
    CHECK(sq_dist({0, 0}, {3, 4}) == 25.0);
    CHECK(sq_dist({1, 1}, {2, 3}) == 5.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 100; ++i) {
        const Point p{u(rng), u(rng)}, q{u(rng), u(rng)};
        CHECK(sq_dist(p, q) == sq_dist(q, p));
    }
}

TEST_CASE("point_segment_dist")
{
    const Segment s{{0, 0}, {2, 0}};
    CHECK(point_segment_dist({0, 1}, s) == 1.0);
    CHECK(point_segment_dist({-1, 0}, s) == 1.0);
    CHECK(point_segment_dist({1, 0}, s) == 0.0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 200; ++i) {
        const Segment r{{u(rng), u(rng)}, {u(rng), u(rng)}};
        const Point p{u(rng), u(rng)};
        CHECK(point_segment_dist(p, r) <= std::min(dist(p, r.start), dist(p, r.end)) + 1e-15);
    }
}

TEST_CASE("transverse Mercator projection")
{
    const double ref = 8.5;
    const Point origin = project_transverse_mercator(0.0, ref, ref);
    CHECK(origin.x == doctest::Approx(0.0));
    CHECK(origin.y == doctest::Approx(0.0));

    // Small longitude offset on the equator: x = R * atanh(sin(dlon)).
    const double d = 0.01;
    const Point e = project_transverse_mercator(0.0, ref + d, ref);
    const double rad = d * std::numbers::pi / 180.0;
    CHECK(e.x == doctest::Approx(kEarthRadius * std::atanh(std::sin(rad))).epsilon(1e-12));
    CHECK(e.x == doctest::Approx(kEarthRadius * rad).epsilon(1e-8));
    CHECK(std::abs(e.y) < 1e-6);

    // Central meridian: y is meridian arc length.
    for (double lat : {-60.0, 10.0, 47.3}) {
        const Point m = project_transverse_mercator(lat, ref, ref);
        CHECK(std::abs(m.x) < 1e-6);
        CHECK(m.y == doctest::Approx(kEarthRadius * lat * std::numbers::pi / 180.0).epsilon(1e-12));
    }

    CHECK_THROWS(project_transverse_mercator(91.0, 0.0, 0.0));
    CHECK_THROWS(project_transverse_mercator(0.0, 181.0, 0.0));
}
