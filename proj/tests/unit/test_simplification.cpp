#include "support/oracles.hpp"
#include "trajcluster/simplification.hpp"

#include <doctest.h>

#include <random>

using namespace trajcluster;

namespace {

Trajectory random_walk(std::mt19937_64& rng, std::size_t n)
{
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<Point> pts{{0, 0}};
    while (pts.size() < n) pts.push_back(pts.back() + Point{step(rng), step(rng)});
    return make_trajectory(pts);
}

double summed_error(const Trajectory& t, const std::vector<std::size_t>& idx, DistanceKind kind, Resolution res)
{
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) total += shortcut_error(t, idx[k], idx[k + 1], kind, res);
    return total;
}

double max_error(const Trajectory& t, const std::vector<std::size_t>& idx, DistanceKind kind, Resolution res)
{
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k)
        worst = std::max(worst, shortcut_error(t, idx[k], idx[k + 1], kind, res));
    return worst;
}

void check_shape(const Simplification& s, const Trajectory& t, std::size_t ell)
{
    REQUIRE(s.source_indices.size() >= 2);
    CHECK(s.source_indices.size() <= ell);
    CHECK(s.source_indices.front() == 0);
    CHECK(s.source_indices.back() == t.size() - 1);
    CHECK(std::is_sorted(s.source_indices.begin(), s.source_indices.end()));
    CHECK(s.result.size() == s.source_indices.size());
    for (std::size_t k = 0; k < s.source_indices.size(); ++k) CHECK(s.result[k] == t[s.source_indices[k]]);
}

constexpr DistanceKind kKinds[] = {DistanceKind::Dtw, DistanceKind::Frechet, DistanceKind::Cdtw};

}  // namespace

TEST_CASE("shortcut_error examples")
{
    const Trajectory apex = make_trajectory({{0, 0}, {1, 1}, {2, 0}});
    CHECK(shortcut_error(apex, 0, 2, DistanceKind::Frechet) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(shortcut_error(apex, 0, 2, DistanceKind::Dtw) == doctest::Approx(2.0));

    const Trajectory line = make_trajectory({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK(shortcut_error(line, 0, 3, DistanceKind::Frechet) <= 1e-9);
    // Interior vertices match endpoints of the 2-vertex shortcut.
    CHECK(shortcut_error(line, 0, 3, DistanceKind::Dtw) == doctest::Approx(2.0));
    // Zero only when the interior vertices sit on Steiner points of the
    // shortcut's edge; otherwise the discretization error remains.
    const Trajectory dyadic = make_trajectory({{0, 0}, {1, 0}, {2, 0}, {4, 0}});
    CHECK(shortcut_error(dyadic, 0, 3, DistanceKind::Cdtw) <= 1e-12);
    CHECK(shortcut_error(line, 0, 3, DistanceKind::Cdtw) <= 1e-4);
    CHECK(shortcut_error(line, 0, 3, DistanceKind::Cdtw, {8}) <= 1e-6);

    CHECK(shortcut_error(apex, 0, 1, DistanceKind::Cdtw) == 0.0);
    CHECK_THROWS_AS(shortcut_error(apex, 1, 1, DistanceKind::Dtw), std::out_of_range);
    CHECK_THROWS_AS(shortcut_error(apex, 0, 3, DistanceKind::Dtw), std::out_of_range);

    const Trajectory loop = make_trajectory({{0, 0}, {1, 0}, {1, 1}, {0, 0}});
    CHECK(std::isinf(shortcut_error(loop, 0, 3, DistanceKind::Frechet)));
}

TEST_CASE("trivial simplifications")
{
    std::mt19937_64 rng(1);
    const Trajectory t = random_walk(rng, 7);
    for (DistanceKind kind : kKinds)
        for (auto method : {SimplifyMethod::Greedy, SimplifyMethod::ImaiIri, SimplifyMethod::ImaiIriDp}) {
            const Simplification s = simplify(t, 7, kind, method, {3});
            CHECK(s.result == t);
            CHECK(s.objective == 0.0);
            CHECK(simplify(t, 12, kind, method, {3}).result == t);
            CHECK_THROWS_AS(simplify(t, 1, kind, method, {3}), std::invalid_argument);
        }

    std::vector<Point> line;
    for (int i = 0; i < 10; ++i) line.push_back({static_cast<double>(i), 0.5 * i});
    const Trajectory chain = make_trajectory(line);
    const Simplification g = greedy_simplify(chain, 2, DistanceKind::Frechet);
    CHECK(g.source_indices == std::vector<std::size_t>{0, 9});
}

TEST_CASE("forced single shortcut")
{
    const Trajectory stairs = make_trajectory({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}});
    const Simplification s = imai_iri_dp(stairs, 2, DistanceKind::Cdtw, {4});
    CHECK(s.source_indices == std::vector<std::size_t>{0, 5});
    CHECK(s.objective == shortcut_error(stairs, 0, 5, DistanceKind::Cdtw, {4}));
}

TEST_CASE("dynamic program matches exhaustive subsets")
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::size_t> size(3, 9), budget(2, 4);
    for (DistanceKind kind : kKinds) {
        const Resolution res{3};
        for (int rep = 0; rep < 12; ++rep) {
            const Trajectory t = random_walk(rng, size(rng));
            const std::size_t ell = budget(rng);
            const Simplification s = imai_iri_dp(t, ell, kind, res);
            check_shape(s, t, ell);
            const auto err = [&](std::size_t i, std::size_t j) { return shortcut_error(t, i, j, kind, res); };
            const double best = oracle::best_subset_sum(t.size(), ell, err);
            if (kind == DistanceKind::Cdtw)
                CHECK(s.objective == doctest::Approx(best).epsilon(1e-6));
            else
                CHECK(s.objective == best);
            CHECK(summed_error(t, s.source_indices, kind, res) == doctest::Approx(s.objective).epsilon(1e-12));
        }
    }
}

TEST_CASE("threshold searches reach the min-max error")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> size(3, 9), budget(2, 5);
    for (DistanceKind kind : {DistanceKind::Dtw, DistanceKind::Frechet}) {
        for (int rep = 0; rep < 12; ++rep) {
            const Trajectory t = random_walk(rng, size(rng));
            const std::size_t ell = budget(rng);
            const auto err = [&](std::size_t i, std::size_t j) { return shortcut_error(t, i, j, kind); };
            const Simplification ii = imai_iri_threshold(t, ell, kind);
            check_shape(ii, t, ell);
            CHECK(max_error(t, ii.source_indices, kind, {}) == oracle::best_subset_max(t.size(), ell, err));

            const Simplification g = greedy_simplify(t, ell, kind);
            check_shape(g, t, ell);
            CHECK(max_error(t, ii.source_indices, kind, {}) <= max_error(t, g.source_indices, kind, {}));
        }
    }
}

TEST_CASE("method ordering invariants")
{
    std::mt19937_64 rng(4);
    for (DistanceKind kind : kKinds) {
        const Resolution res{3};
        for (int rep = 0; rep < 5; ++rep) {
            const Trajectory t = random_walk(rng, 20);
            for (std::size_t ell : {3u, 6u}) {
                const Simplification dp = imai_iri_dp(t, ell, kind, res);
                const Simplification g = greedy_simplify(t, ell, kind, res);
                const Simplification ii = imai_iri_threshold(t, ell, kind, res);
                check_shape(dp, t, ell);
                check_shape(g, t, ell);
                check_shape(ii, t, ell);
                CHECK(dp.objective <= summed_error(t, g.source_indices, kind, res) + 1e-12);
                CHECK(dp.objective <= summed_error(t, ii.source_indices, kind, res) + 1e-12);
                CHECK(max_error(t, ii.source_indices, kind, res) <= max_error(t, g.source_indices, kind, res));

                // Deterministic.
                CHECK(imai_iri_dp(t, ell, kind, res).source_indices == dp.source_indices);
                CHECK(greedy_simplify(t, ell, kind, res).source_indices == g.source_indices);
                CHECK(imai_iri_threshold(t, ell, kind, res).source_indices == ii.source_indices);
            }
        }
    }
}

TEST_CASE("repeated positions never become consecutive simplified vertices")
{
    const Trajectory loop = make_trajectory({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 0}, {1, -1}});
    for (DistanceKind kind : kKinds)
        for (auto method : {SimplifyMethod::Greedy, SimplifyMethod::ImaiIri, SimplifyMethod::ImaiIriDp}) {
            const Simplification s = simplify(loop, 3, kind, method, {3});
            for (std::size_t k = 0; k + 1 < s.result.size(); ++k) CHECK_FALSE(s.result[k] == s.result[k + 1]);
        }
}
