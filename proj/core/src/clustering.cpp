#include "trajcluster/clustering.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace trajcluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_k(std::size_t k, std::size_t n)
{
    if (k == 0 || k > n)
        throw std::invalid_argument("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
}

}  // namespace

std::vector<std::size_t> Clustering::members(std::size_t cluster) const
{
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < assignment.size(); ++t)
        if (assignment[t] == cluster) out.push_back(t);
    return out;
}

Clustering assign(std::span<const Trajectory> trajectories, std::span<const Trajectory> centers, DistanceKind kind,
                  Resolution res)
{
    if (centers.empty()) throw std::invalid_argument("assign needs at least one center");
    Clustering out;
    out.centers.assign(centers.begin(), centers.end());
    out.assignment.resize(trajectories.size());
    out.distances.resize(trajectories.size());
    for (std::size_t t = 0; t < trajectories.size(); ++t) {
        double best = kInf;
        std::size_t arg = 0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double d = distance(trajectories[t], centers[c], kind, res);
            if (d < best) {
                best = d;
                arg = c;
            }
        }
        out.assignment[t] = arg;
        out.distances[t] = best;
    }
    return out;
}

ClusterCost cost(const Clustering& clustering)
{
    ClusterCost c;
    for (double d : clustering.distances) {
        c.medians += d;
        c.center = std::max(c.center, d);
    }
    return c;
}

CandidatePool::CandidatePool(std::span<const Trajectory> trajectories, std::size_t ell, DistanceKind kind,
                             Resolution res)
    : trajectories_(trajectories), ell_(ell), kind_(kind), res_(res), candidates_(trajectories.size()),
      columns_(trajectories.size())
{
    if (trajectories.empty()) throw std::invalid_argument("candidate pool needs at least one trajectory");
    if (ell < 2) throw std::invalid_argument("candidate complexity ell must be >= 2");
}

const Trajectory& CandidatePool::candidate(std::size_t c)
{
    auto& slot = candidates_.at(c);
    if (!slot) slot = greedy_simplify(trajectories_[c], ell_, DistanceKind::Frechet).result;
    return *slot;
}

const std::vector<double>& CandidatePool::column(std::size_t c)
{
    auto& col = columns_.at(c);
    if (col.empty()) {
        const Trajectory& center = candidate(c);
        col.resize(trajectories_.size());
        for (std::size_t t = 0; t < trajectories_.size(); ++t)
            col[t] = distance(trajectories_[t], center, kind_, res_);
    }
    return col;
}

Clustering CandidatePool::clustering(std::span<const std::size_t> medoids)
{
    if (medoids.empty()) throw std::invalid_argument("clustering needs at least one center");
    Clustering out;
    out.medoids.assign(medoids.begin(), medoids.end());
    for (std::size_t m : medoids) out.centers.push_back(candidate(m));
    out.assignment.assign(size(), 0);
    out.distances.assign(size(), kInf);
    for (std::size_t c = 0; c < medoids.size(); ++c) {
        const auto& col = column(medoids[c]);
        for (std::size_t t = 0; t < size(); ++t) {
            if (col[t] < out.distances[t]) {
                out.distances[t] = col[t];
                out.assignment[t] = c;
            }
        }
    }
    return out;
}

Clustering gonzalez(CandidatePool& pool, std::size_t k, std::uint64_t seed)
{
    const std::size_t n = pool.size();
    check_k(k, n);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> chosen{static_cast<std::size_t>(rng() % n)};
    std::vector<bool> used(n, false);
    used[chosen[0]] = true;
    std::vector<double> nearest = pool.column(chosen[0]);
    while (chosen.size() < k) {
        std::size_t next = n;
        for (std::size_t t = 0; t < n; ++t)
            if (!used[t] && (next == n || nearest[t] > nearest[next])) next = t;
        chosen.push_back(next);
        used[next] = true;
        const auto& col = pool.column(next);
        for (std::size_t t = 0; t < n; ++t) nearest[t] = std::min(nearest[t], col[t]);
    }
    return pool.clustering(chosen);
}

Clustering gonzalez_best_of(CandidatePool& pool, std::size_t k, std::span<const std::uint64_t> seeds)
{
    if (seeds.empty()) throw std::invalid_argument("gonzalez_best_of needs at least one seed");
    Clustering best = gonzalez(pool, k, seeds[0]);
    double best_cost = cost(best).medians;
    for (std::size_t s = 1; s < seeds.size(); ++s) {
        Clustering c = gonzalez(pool, k, seeds[s]);
        const double v = cost(c).medians;
        if (v < best_cost) {
            best_cost = v;
            best = std::move(c);
        }
    }
    return best;
}

std::vector<std::size_t> pam_greedy_init(CandidatePool& pool, std::size_t k)
{
    const std::size_t n = pool.size();
    check_k(k, n);
    std::vector<double> nearest(n, kInf);
    std::vector<std::size_t> chosen;
    std::vector<bool> used(n, false);
    while (chosen.size() < k) {
        std::size_t arg = n;
        double best = kInf;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c]) continue;
            const auto& col = pool.column(c);
            double total = 0.0;
            for (std::size_t t = 0; t < n; ++t) total += std::min(nearest[t], col[t]);
            if (arg == n || total < best) {
                best = total;
                arg = c;
            }
        }
        chosen.push_back(arg);
        used[arg] = true;
        const auto& col = pool.column(arg);
        for (std::size_t t = 0; t < n; ++t) nearest[t] = std::min(nearest[t], col[t]);
    }
    return chosen;
}

Clustering pam_local_search(CandidatePool& pool, std::vector<std::size_t> medoids, LocalSearchStats* stats)
{
    const std::size_t n = pool.size();
    const std::size_t k = medoids.size();
    check_k(k, n);
    {
        std::vector<std::size_t> sorted = medoids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.back() >= n)
            throw std::invalid_argument("medoids must be distinct candidate indices");
    }

    std::vector<double> near(n), second(n);
    std::vector<std::size_t> near_pos(n);
    auto current_cost = [&] {
        double total = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            near[t] = second[t] = kInf;
            near_pos[t] = 0;
            for (std::size_t m = 0; m < k; ++m) {
                const double d = pool(t, medoids[m]);
                if (d < near[t]) {
                    second[t] = near[t];
                    near[t] = d;
                    near_pos[t] = m;
                } else if (d < second[t]) {
                    second[t] = d;
                }
            }
            total += near[t];
        }
        return total;
    };

    double current = current_cost();
    if (stats) stats->trace.push_back(current);
    std::vector<bool> is_medoid(n, false);
    for (std::size_t m : medoids) is_medoid[m] = true;

    for (;;) {
        double best = current;
        std::size_t best_m = k, best_x = n;
        for (std::size_t x = 0; x < n; ++x) {
            if (is_medoid[x]) continue;
            const auto& col = pool.column(x);
            for (std::size_t m = 0; m < k; ++m) {
                double total = 0.0;
                for (std::size_t t = 0; t < n; ++t)
                    total += std::min(col[t], near_pos[t] == m ? second[t] : near[t]);
                if (total < best) {
                    best = total;
                    best_m = m;
                    best_x = x;
                }
            }
        }
        if (best_x == n || !(best < current - 1e-12 * std::max(1.0, current))) break;
        is_medoid[medoids[best_m]] = false;
        is_medoid[best_x] = true;
        medoids[best_m] = best_x;
        current = current_cost();
        if (stats) {
            ++stats->swaps;
            stats->trace.push_back(current);
        }
    }
    return pool.clustering(medoids);
}

Clustering pam(CandidatePool& pool, std::size_t k) { return pam_local_search(pool, pam_greedy_init(pool, k)); }

}  // namespace trajcluster
