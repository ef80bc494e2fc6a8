#include "support/oracles.hpp"
#include "trajcluster/cdtw.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace trajcluster;

namespace {

Trajectory random_trajectory(std::mt19937_64& rng, int lo, int hi)
{
    std::uniform_int_distribution<int> count(lo, hi);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    const int n = count(rng);
    while (pts.size() < static_cast<std::size_t>(n)) pts.push_back({u(rng), u(rng)});
    return make_trajectory(pts);
}

Segment random_segment(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {{u(rng), u(rng)}, {u(rng), u(rng)}};
}

}  // namespace

TEST_CASE("cell height matches the coefficient form and direct evaluation")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> f(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const Segment sp = random_segment(rng), sq = random_segment(rng);
        const Cell cell = cell_from_segments(sp, sq);
        for (int k = 0; k < 10; ++k) {
            const double p = f(rng) * cell.width(), q = f(rng) * cell.height_extent();
            const double direct = oracle::height(sp, sq, p, q);
            CHECK(cell.height(p, q) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
            CHECK(cell.height_from_coefficients(p, q) == doctest::Approx(direct).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("parallel cells keep the quadratic identity")
{
    const Segment sp{{0, 0}, {2, 0}};
    for (const Segment& sq : {Segment{{0.5, 1}, {1.5, 1}}, Segment{{1.5, -1}, {0.25, -1}}}) {
        const Cell cell = cell_from_segments(sp, sq);
        CHECK(cell.parallel());
        CHECK(cell.c() == doctest::Approx(1.0));
        for (double p : {0.0, 0.3, 1.7})
            for (double q : {0.0, 0.4, 1.0})
                CHECK(cell.height_from_coefficients(p, q) == doctest::Approx(oracle::height(sp, sq, p, q)));
    }
}

TEST_CASE("lambda is minus the dot product of the directions")
{
    const Cell cell = cell_from_segments({{0, 0}, {1, 0}}, {{0, 0}, {1, 1}});
    CHECK(cell.lambda() == doctest::Approx(-std::sqrt(0.5)));
}

TEST_CASE("ell_m examples")
{
    // Identical segments: minimum along the main diagonal.
    const Cell same = cell_from_segments({{0, 0}, {1, 0}}, {{0, 0}, {1, 0}});
    CHECK(same.ell_m().offset == doctest::Approx(0.0));
    CHECK(same.ell_m().above(0.3, 0.3) == doctest::Approx(0.0));

    // Minimum at (a, b) = (1, 0): the line q = p - 1.
    const Cell shifted = cell_from_segments({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}});
    CHECK(shifted.a() == doctest::Approx(1.0));
    CHECK(shifted.b() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(shifted.ell_m().above(1.5, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("segment_cost is exact for straight pieces")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> f(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const Segment sp = random_segment(rng), sq = random_segment(rng);
        const Cell cell = cell_from_segments(sp, sq);
        const ParamPoint u{f(rng) * cell.width(), f(rng) * cell.height_extent()};
        const ParamPoint v{u.p + f(rng) * (cell.width() - u.p), u.q + f(rng) * (cell.height_extent() - u.q)};
        const auto h = [&](double p, double q) { return oracle::height(sp, sq, p, q); };
        CHECK(segment_cost(cell, u, v) == doctest::Approx(oracle::piece_integral(h, u.p, u.q, v.p, v.q)).epsilon(1e-6));
        CHECK(segment_cost(cell, u, u) == 0.0);
    }
}

TEST_CASE("within-cell optimal paths")
{
    SUBCASE("endpoints on ell_m give the straight slope-1 path")
    {
        const Cell cell = cell_from_segments({{0, 0}, {1, 0}}, {{0, 0.2}, {1, 0.2}});
        const WarpingPath path = cell_optimal_path(cell, {0.1, 0.1}, {0.8, 0.8});
        REQUIRE(path.points.size() == 2);
        CHECK(path.points.front() == ParamPoint{0.1, 0.1});
        CHECK(path.points.back() == ParamPoint{0.8, 0.8});
        CHECK(path.cost == doctest::Approx(0.7 * 2 * 0.04));
    }
    SUBCASE("diagonal cell from corner to corner")
    {
        const Cell cell = cell_from_segments({{0, 0}, {1, 1}}, {{0, 0}, {1, 1}});
        const double w = cell.width();
        const WarpingPath path = cell_optimal_path(cell, {0, 0}, {w, w});
        REQUIRE(path.points.size() == 2);
        CHECK(path.cost == doctest::Approx(0.0));
    }
    SUBCASE("s must be dominated by t")
    {
        const Cell cell = cell_from_segments({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}});
        CHECK_THROWS_AS(cell_optimal_path(cell, {0.5, 0.5}, {0.4, 0.9}), std::invalid_argument);
    }
    SUBCASE("degenerate segment")
    {
        CHECK_THROWS_AS(cell_from_segments({{0, 0}, {0, 0}}, {{0, 1}, {1, 1}}), GeometryError);
    }
}

TEST_CASE("within-cell optimum agrees with a fine staircase search")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> f(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const Segment sp = random_segment(rng), sq = random_segment(rng);
        const Cell cell = cell_from_segments(sp, sq);
        if (cell.width() < 0.05 || cell.height_extent() < 0.05) continue;
        const ParamPoint s{0.3 * f(rng) * cell.width(), 0.3 * f(rng) * cell.height_extent()};
        const ParamPoint t{cell.width() * (1 - 0.3 * f(rng)), cell.height_extent() * (1 - 0.3 * f(rng))};
        const auto h = [&](double p, double q) { return oracle::height(sp, sq, p, q); };
        const WarpingPath path = cell_optimal_path(cell, s, t);
        const double grid = oracle::staircase(h, s.p, s.q, t.p, t.q, 256);

        // The corners form a monotone path whose integral is its cost.
        double integral = 0.0;
        for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
            CHECK(dominates(path.points[k + 1], path.points[k]));
            integral += oracle::piece_integral(h, path.points[k].p, path.points[k].q, path.points[k + 1].p,
                                               path.points[k + 1].q, 2000);
        }
        CHECK(path.cost == doctest::Approx(integral).epsilon(1e-6));
        CHECK(cell_optimal_cost(cell, s, t) == doctest::Approx(path.cost).epsilon(1e-12));
        // The staircase only approaches the optimum from above, up to its
        // trapezoid error.
        const double l1 = (t.p - s.p) + (t.q - s.q);
        CHECK(path.cost <= grid + 1e-5 * (1 + grid));
        CHECK(path.cost >= grid - 4.0 * l1 * l1 / 256.0 - 1e-9);
    }
}

TEST_CASE("cdtw identity and analytic cases")
{
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 10; ++rep) {
        const Trajectory p = random_trajectory(rng, 2, 6);
        for (int level : {0, 3, 5}) {
            const CdtwResult r = cdtw(p, p, {level});
            CHECK(r.cost <= 1e-12 * p.length() * p.length());
            for (const ParamPoint& x : r.path.points) CHECK(std::abs(x.p - x.q) <= 1e-9);
        }
    }

    for (double r : {0.5, 1.0, 2.0}) {
        const Trajectory p = make_trajectory({{0, 0}, {1, 0}});
        const Trajectory q = make_trajectory({{0, r}, {1, r}});
        for (int level = 0; level <= 6; ++level) CHECK(std::abs(cdtw_cost(p, q, {level}) - 2 * r * r) <= 1e-6);
    }

    const Trajectory a = make_trajectory({{0, 0}, {1, 0}});
    const Trajectory b = make_trajectory({{0, 0}, {0, 1}});
    for (int level : {5, 6}) CHECK(std::abs(cdtw_cost(a, b, {level}) - 4.0 / 3.0) <= 0.01);
}

TEST_CASE("grid oracle agrees with an independent staircase")
{
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const Trajectory p = random_trajectory(rng, 2, 4), q = random_trajectory(rng, 2, 4);
        const auto h = [&](double s, double t) {
            return oracle::sqdist(oracle::point_on(p, s), oracle::point_on(q, t));
        };
        // Same grid (uniform over total arc length) so agreement is to rounding.
        CHECK(cdtw_grid_oracle(p, q, 64) == doctest::Approx(oracle::staircase(h, 0, 0, p.length(), q.length(), 64))
                                                .epsilon(1e-9));
    }
}

TEST_CASE("grid oracle self-convergence on perpendicular segments")
{
    const Trajectory a = make_trajectory({{0, 0}, {1, 0}});
    const Trajectory b = make_trajectory({{0, 0}, {0, 1}});
    double prev = oracle::kInf;
    for (int n : {16, 64, 256, 1024}) {
        const double self = cdtw_grid_oracle(a, a, n);
        CHECK(self < prev);
        prev = self;
    }
    CHECK(prev <= 1e-4);
    CHECK(std::abs(cdtw_grid_oracle(a, b, 512) - cdtw_grid_oracle(a, b, 1024)) <= 0.01);
}

TEST_CASE("cdtw path properties")
{
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 30; ++rep) {
        const Trajectory p = random_trajectory(rng, 2, 7), q = random_trajectory(rng, 2, 7);
        const CdtwResult r = cdtw(p, q, {4});
        REQUIRE(r.path.points.size() >= 2);
        CHECK(r.path.points.front() == ParamPoint{0, 0});
        CHECK(r.path.points.back().p == doctest::Approx(p.length()));
        CHECK(r.path.points.back().q == doctest::Approx(q.length()));
        for (std::size_t k = 0; k + 1 < r.path.points.size(); ++k)
            CHECK(dominates(r.path.points[k + 1], r.path.points[k]));
        CHECK(recompute_path_cost(p, q, r.path) == doctest::Approx(r.cost).epsilon(1e-9));
        CHECK(cdtw_cost(p, q, {4}) == doctest::Approx(r.cost).epsilon(1e-12));

        // Upper bound: any monotone path costs at least the optimum, and the
        // grid staircase approximates that optimum from above.
        CHECK(r.cost >= cdtw_grid_oracle(p, q, 256) - 0.02 * (1 + r.cost));
    }
}

TEST_CASE("cdtw symmetry and refinement")
{
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 15; ++rep) {
        const Trajectory p = random_trajectory(rng, 2, 6), q = random_trajectory(rng, 2, 6);
        double prev = oracle::kInf;
        for (int level = 0; level <= 5; ++level) {
            const double pq = cdtw_cost(p, q, {level});
            CHECK(std::abs(pq - cdtw_cost(q, p, {level})) <= 1e-9 * (1 + pq));
            CHECK(pq <= prev + 1e-12);
            prev = pq;
        }
    }
}

TEST_CASE("resolution_for_spacing")
{
    const Trajectory p = make_trajectory({{0, 0}, {1, 0}, {1, 4}});
    const Trajectory q = make_trajectory({{0, 0}, {2, 0}});
    // Longest segment 4: spacing 0.5 needs 8 intervals.
    CHECK(resolution_for_spacing(p, q, 0.5).level == 3);
    CHECK(resolution_for_spacing(p, q, 10.0).level == 0);
    CHECK_THROWS(resolution_for_spacing(p, q, 0.0));
    CHECK_THROWS(cdtw(p, q, {-1}));
}
