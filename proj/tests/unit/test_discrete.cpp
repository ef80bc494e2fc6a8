#include "support/oracles.hpp"
#include "trajcluster/discrete.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace trajcluster;

namespace {

Trajectory random_trajectory(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    while (pts.size() < n) pts.push_back({u(rng), u(rng)});
    return make_trajectory(pts);
}

}  // namespace

TEST_CASE("dtw examples")
{
    const Trajectory p = make_trajectory({{0, 0}, {1, 0}});
    CHECK(dtw(p, p).cost == 0.0);
    const DtwResult r = dtw(p, make_trajectory({{0, 1}, {1, 1}}));
    CHECK(r.cost == 2.0);
    CHECK(r.warping.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
}

TEST_CASE("dtw equals exhaustive enumeration and is symmetric")
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> size(2, 6);
    for (int rep = 0; rep < 100; ++rep) {
        const Trajectory p = random_trajectory(rng, size(rng)), q = random_trajectory(rng, size(rng));
        const DtwResult r = dtw(p, q);
        CHECK(r.cost == oracle::dtw_enumerate(p, q));
        CHECK(dtw_cost(q, p) == r.cost);

        // Warping is legal and sums to the cost.
        const auto& w = r.warping.pairs;
        REQUIRE(!w.empty());
        CHECK(w.front() == std::pair<std::size_t, std::size_t>{0, 0});
        CHECK(w.back() == std::pair<std::size_t, std::size_t>{p.size() - 1, q.size() - 1});
        double sum = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            sum += sq_dist(p[w[k].first], q[w[k].second]);
            if (k == 0) continue;
            const std::size_t di = w[k].first - w[k - 1].first, dj = w[k].second - w[k - 1].second;
            CHECK(di <= 1);
            CHECK(dj <= 1);
            CHECK(di + dj >= 1);
        }
        CHECK(sum == doctest::Approx(r.cost).epsilon(1e-12));
    }
}

TEST_CASE("frechet decision examples")
{
    const Trajectory p = make_trajectory({{0, 0}, {1, 0}, {1, 1}});
    CHECK(frechet_decision(p, p, 0.0));
    const Trajectory a = make_trajectory({{0, 0}, {1, 0}});
    const Trajectory b = make_trajectory({{0, 1}, {1, 1}});
    CHECK_FALSE(frechet_decision(a, b, 0.999));
    CHECK(frechet_decision(a, b, 1.0));
    const Trajectory far = make_trajectory({{5, 0}, {1, 0}});
    CHECK_FALSE(frechet_decision(a, far, 4.9));
}

TEST_CASE("frechet examples")
{
    const Trajectory a = make_trajectory({{0, 0}, {1, 0}});
    CHECK(frechet(a, a) <= 1e-12);
    CHECK(frechet(a, make_trajectory({{0, 1}, {1, 1}})) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(frechet(a, make_trajectory({{1, 0}, {0, 0}})) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("frechet single segments equal the larger endpoint distance")
{
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 50; ++rep) {
        const Trajectory p = random_trajectory(rng, 2), q = random_trajectory(rng, 2);
        const double expected = std::max(dist(p.front(), q.front()), dist(p.back(), q.back()));
        CHECK(frechet(p, q) == doctest::Approx(expected).epsilon(1e-5));
    }
}

TEST_CASE("frechet properties")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    for (int rep = 0; rep < 40; ++rep) {
        const Trajectory p = random_trajectory(rng, size(rng)), q = random_trajectory(rng, size(rng));
        const double f = frechet(p, q);
        CHECK(std::abs(f - frechet(q, p)) <= 2e-6 * std::max(1e-12, f));
        CHECK(f >= std::max(dist(p.front(), q.front()), dist(p.back(), q.back())) * (1 - 1e-9));

        // Bracketed by the discrete Fréchet distance of dense resamplings:
        // the continuous value is at most the discrete one and at least it
        // minus half the sample spacing.
        const double step = 0.002;
        const double discrete = oracle::discrete_frechet(oracle::densify(p, step), oracle::densify(q, step));
        CHECK(f <= discrete * (1 + 2e-6) + 1e-12);
        CHECK(f >= discrete - step);

        for (double e : {0.5 * f, 0.99 * f, f * 1.001, 2 * f}) {
            if (frechet_decision(p, q, e)) CHECK(frechet_decision(p, q, e * 1.5 + 1e-9));
        }
        CHECK(frechet_decision(p, q, f * (1 + 1e-5)));
        CHECK_FALSE(frechet_decision(p, q, f * (1 - 1e-5)));
    }
}

TEST_CASE("frechet matching")
{
    SUBCASE("identical trajectories match diagonally")
    {
        const Trajectory p = make_trajectory({{0, 0}, {1, 0}, {1, 2}, {3, 3}});
        for (auto [s, t] : frechet_matching(p, p).pairs) CHECK(std::abs(s - t) <= 1e-9);
    }
    SUBCASE("translated copy pairs equal arc lengths")
    {
        const Trajectory p = make_trajectory({{0, 0}, {1, 0}, {1, 2}, {3, 3}});
        std::vector<Point> moved;
        for (const Point& v : p.vertices()) moved.push_back(v + Point{0.3, -0.2});
        const FrechetMatching m = frechet_matching(p, make_trajectory(moved));
        for (auto [s, t] : m.pairs) CHECK(std::abs(s - t) <= 1e-6);
    }
    SUBCASE("matched points stay within the threshold")
    {
        std::mt19937_64 rng(4);
        for (int rep = 0; rep < 30; ++rep) {
            const Trajectory p = random_trajectory(rng, 5), q = random_trajectory(rng, 4);
            const FrechetMatching m = frechet_matching(p, q);
            const double f = frechet(p, q);
            REQUIRE(m.pairs.size() >= 2);
            CHECK(m.pairs.front().first == 0.0);
            CHECK(m.pairs.front().second == 0.0);
            CHECK(m.pairs.back().first == doctest::Approx(p.length()));
            CHECK(m.pairs.back().second == doctest::Approx(q.length()));
            for (std::size_t k = 0; k < m.pairs.size(); ++k) {
                const auto [s, t] = m.pairs[k];
                CHECK(dist(p.point_at_clamped(s), q.point_at_clamped(t)) <= f * (1 + 1e-5) + 1e-12);
                if (k > 0) {
                    CHECK(s >= m.pairs[k - 1].first);
                    CHECK(t >= m.pairs[k - 1].second);
                    // Midpoints of linear pieces also stay inside.
                    const double ms = 0.5 * (s + m.pairs[k - 1].first), mt = 0.5 * (t + m.pairs[k - 1].second);
                    CHECK(dist(p.point_at_clamped(ms), q.point_at_clamped(mt)) <= f * (1 + 1e-5) + 1e-12);
                }
            }
        }
    }
}
